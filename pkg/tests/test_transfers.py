import random

import pytest

from assocdiag.assoc_core import Face, all_faces, render_ops
from assocdiag.diagonal import DiagonalSolution, enumerate_solutions
from assocdiag.transfers import (
    common_facet, common_facet_brute, containing_facets, first_form, lemma2_check, lemma2_triples,
    left_transfer_first, left_transfer_second, random_face_pairs, right_transfer_first,
    right_transfer_second, second_form, selection, selection_z, transfer_facets,
)

RIGHT_COMB = Face(4, ((2, 1), (1, 1)))
LEFT_COMB = Face(4, ((0, 1), (0, 1)))

# the worked example of the selection algorithm
EXAMPLE = DiagonalSolution(8, (7, 6, 4, 2), (1, 1, 2, 3), (0, 1, 1, 0), (1, 1, 2, 4))


def test_right_transfers_of_the_right_comb():
    c = first_form(RIGHT_COMB)
    r1 = right_transfer_first(c, 1)
    assert render_ops(r1.rewritten.ops, True) == "d^2_{(1,1)}d^1_{(2,1)}"
    assert r1.facet() == (2, 1)
    r2 = right_transfer_first(c, 2)
    assert render_ops(r2.rewritten.ops, True) == "d^1_{(1,1)}d^1_{(1,2)}"
    assert r2.facet() == (1, 2)
    assert r2.case == "b"


def test_transfer_rejects_wrong_form_and_range():
    c = first_form(RIGHT_COMB)
    with pytest.raises(ValueError):
        right_transfer_second(c, 1)
    with pytest.raises(ValueError):
        right_transfer_first(c, 3)


@pytest.mark.parametrize("N", range(3, 8))
def test_transfers_preserve_the_face_and_find_every_facet(N):
    for f in all_faces(N):
        m = f.codim
        if m == 0:
            continue
        c1, c2 = first_form(f), second_form(f)
        for k in range(1, m + 1):
            assert left_transfer_first(c1, k).face() == f
            assert right_transfer_first(c1, k).face() == f
            assert left_transfer_second(c2, k).face() == f
            assert right_transfer_second(c2, k).face() == f
        want = containing_facets(f)
        assert len(want) == m
        for form in ("first", "second"):
            got = transfer_facets(f, form)
            assert len(set(got)) == m and set(got) == want


def test_common_facet_small_cases():
    e = Face(4, ((1, 2),))
    assert common_facet(e, e) == (1, 2)
    assert common_facet(RIGHT_COMB, LEFT_COMB) is None
    assert common_facet_brute(RIGHT_COMB, LEFT_COMB) == set()


@pytest.mark.parametrize("N", [4, 5])
def test_common_facet_all_pairs(N):
    faces = all_faces(N)
    for a in faces:
        for b in faces:
            got = common_facet(a, b)
            brute = common_facet_brute(a, b)
            assert (got is None) == (not brute)
            assert got is None or got in brute


@pytest.mark.parametrize("N", [6, 7])
def test_common_facet_random_pairs(N):
    for a, b in random_face_pairs(N, 500, random.Random(N)):
        got = common_facet(a, b)
        brute = common_facet_brute(a, b)
        assert (got is None) == (not brute)
        assert got is None or got in brute


def test_worked_example_is_a_solution():
    assert EXAMPLE in enumerate_solutions(8)
    assert [EXAMPLE.t(u) for u in range(1, 5)] == [5, 4, 3, 4]


def test_selection_printed_rows():
    assert selection_z(EXAMPLE, 1, 0) == 5
    assert selection_z(EXAMPLE, 3, 1) == 3
    assert selection_z(EXAMPLE, 4, 3) == 1


def test_selection_row_two_differs_from_the_table():
    # the table prints 5; item (c) of the second lemma forces 4
    z = selection_z(EXAMPLE, 2, 0)
    assert z == 4
    assert EXAMPLE.IP(2) + 0 == EXAMPLE.I(z) - EXAMPLE.LP(EXAMPLE.o_prime(z))
    assert EXAMPLE.IP(2) + 0 != EXAMPLE.I(5) - EXAMPLE.LP(EXAMPLE.o_prime(5))


def test_selection_argument_checks():
    with pytest.raises(ValueError):
        selection(EXAMPLE, 0, 0)
    with pytest.raises(ValueError):
        selection(EXAMPLE, 1, 1)


def test_lemma_holds_on_the_worked_example():
    for s, k, m in lemma2_triples(8):
        if s == EXAMPLE:
            assert all(lemma2_check(s, k, m).values()), (k, m)


def test_item_c_at_k_equal_one():
    for n in range(1, 6):
        for s, k, m in lemma2_triples(n):
            if k == 1:
                z = selection_z(s, k, m)
                assert s.IP(1) + m == s.I(z)


@pytest.mark.parametrize("n", range(0, 7))
def test_lemma_holds_exhaustively(n):
    for s, k, m in lemma2_triples(n):
        assert all(lemma2_check(s, k, m).values()), (str(s), k, m)
