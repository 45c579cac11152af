import random
from math import comb

import pytest
from hypothesis import given, strategies as st

from assocdiag.assoc_core import (
    SECOND_RULES, Composition, Face, FaceOperator, RelationError, all_faces, apply_relation,
    applicable_rewrites, binary_trees, classify, comp_to_tree, composition, corolla,
    enumerate_faces, facets, factor_arities, fill_superscripts, is_admissible, is_face_of,
    is_face_of_by_contraction, is_type_one, is_type_two, is_valid_tree, key_to_tree, leaf_count,
    left_comb, min_max_vertex, node_intervals, normalize_first, normalize_second, parse_ops, parse_tree,
    random_composition, render_key, render_ops, rewrite_normalize, right_comb, tamari_covers,
    tamari_leq, tamari_poset, to_face, tree_from_intervals, tree_str, tree_to_comp, tree_to_key,
    tree_to_second,
)


def kirkman(n, codim):
    """Dissections of an (n+3)-gon with ``codim`` diagonals."""
    return comb(n, codim) * comb(n + codim + 2, codim) // (codim + 1)


def catalan(m):
    return comb(2 * m, m) // (m + 1)


# -- parsing and rendering ---------------------------------------------------

def test_parse_ops_reads_suppressed_and_explicit_superscripts():
    assert parse_ops("d_{(0,1)}d_{(2,1)}") == (FaceOperator(2, 1), FaceOperator(0, 1))
    assert parse_ops("d^2_{(0,1)}d^1_{(2,1)}") == (FaceOperator(2, 1, 1), FaceOperator(0, 1, 2))


def test_render_ops_round_trip():
    ops = parse_ops("d^3_{(0,1)}d^2_{(2,2)}d^1_{(3,1)}")
    assert parse_ops(render_ops(ops, superscripts=True)) == ops
    assert render_key(()) == "1"


def test_fill_superscripts_defaults_to_the_last_factor():
    ops = fill_superscripts(parse_ops("d_{(0,1)}d_{(0,1)}"))
    assert [op.q for op in ops] == [1, 2]


def test_tree_text_round_trip():
    for f in all_faces(6):
        t = f.tree()
        assert parse_tree(tree_str(t)) == t


def test_tree_helpers():
    assert corolla(3) == ((), (), ())
    assert is_valid_tree(((), ()))
    assert not is_valid_tree(((),))
    assert node_intervals(((), ((), ()))) == [(1, 2), (0, 3)]
    assert tree_from_intervals([(0, 3), (1, 2)], 3) == ((), ((), ()))
    assert leaf_count(left_comb(7)) == 7


# -- forms ------------------------------------------------------------------

def test_classify_small_cases():
    assert classify(composition("d_{(1,1)}d_{(0,1)}", 4)) == "second"
    assert classify(composition("d_{(0,1)}d_{(1,1)}", 4)) == "first"


def test_factor_arities():
    assert factor_arities(parse_ops("d_{(0,1)}d_{(2,2)}"), 6) == [3, 2, 3]


def test_relation_side_condition_is_enforced():
    with pytest.raises(RelationError):
        apply_relation(composition("d_{(0,1)}d_{(0,1)}", 4), 0, "3")


def test_inadmissible_operator_rejected():
    assert not is_admissible(Composition((FaceOperator(3, 2, 1),), 4))
    with pytest.raises(ValueError):
        key_to_tree(((0, 1), (2, 2)), 5)


@pytest.mark.parametrize("N", range(2, 8))
def test_face_key_tree_bijection(N):
    seen = set()
    for f in all_faces(N):
        t = f.tree()
        assert tree_to_key(t) == f.key
        assert tree_to_comp(t) == f
        assert to_face(Composition(tuple(FaceOperator(*p) for p in tree_to_second(t)), N)) == f
        seen.add(t)
    assert len(seen) == len(all_faces(N))


@given(st.integers(3, 9), st.integers(1, 6), st.integers(0, 10 ** 6))
def test_random_compositions_normalize_to_their_face(N, length, seed):
    c = random_composition(N, length, random.Random(seed))
    f = to_face(c)
    first, second = normalize_first(c), normalize_second(c)
    assert first.pairs == f.key
    assert comp_to_tree(first) == comp_to_tree(second) == comp_to_tree(c)
    assert is_type_one(first.pairs)
    assert is_type_two(second.pairs)
    assert classify(second) in ("first", "second")


@given(st.integers(3, 9), st.integers(1, 6), st.integers(0, 10 ** 6))
def test_rewriting_is_confluent(N, length, seed):
    rng = random.Random(seed)
    c = random_composition(N, length, rng)
    a = rewrite_normalize(c)
    b = rewrite_normalize(c, rng=rng)
    assert a.pairs == b.pairs == normalize_first(c).pairs
    assert not list(applicable_rewrites(a))
    s = rewrite_normalize(c, SECOND_RULES, rng=rng)
    assert s.pairs == normalize_second(c).pairs


@given(st.integers(3, 8), st.integers(2, 5), st.integers(0, 10 ** 6))
def test_every_rewrite_keeps_the_tree(N, length, seed):
    c = random_composition(N, length, random.Random(seed))
    t = comp_to_tree(c)
    for site, rule in applicable_rewrites(c):
        assert comp_to_tree(apply_relation(c, site, rule)) == t


# -- counting ---------------------------------------------------------------

@pytest.mark.parametrize("n", range(0, 7))
def test_face_numbers_match_kirkman(n):
    for k in range(n + 1):
        assert len(enumerate_faces(n + 2, k)) == kirkman(n, n - k)


def test_facets_listing_agrees_with_enumeration():
    for N in range(3, 8):
        assert sorted(facets(N)) == sorted(enumerate_faces(N, N - 3))


# -- face order and Tamari ----------------------------------------------------

@pytest.mark.parametrize("N", [3, 4, 5])
def test_face_order_agrees_with_contraction_search(N):
    faces = all_faces(N)
    for a in faces:
        for b in faces:
            assert is_face_of(a, b) == is_face_of_by_contraction(a, b)


def test_face_order_is_a_partial_order_on_k5():
    faces = all_faces(5)
    for a in faces:
        assert is_face_of(a, a)
        assert is_face_of(a, Face(5))
        for b in faces:
            if a != b and is_face_of(a, b):
                assert not is_face_of(b, a)


def test_min_max_vertices_are_combs_on_the_top_cell():
    lo, hi = min_max_vertex(Face(6))
    assert lo == left_comb(6) and hi == right_comb(6)


@pytest.mark.parametrize("N", range(2, 8))
def test_tamari_poset_is_a_lattice(N):
    P = tamari_poset(N)
    assert len(P.elements) == catalan(N - 1)
    assert P.is_lattice()
    assert P.bottom() == left_comb(N)
    assert P.top() == right_comb(N)


def test_tamari_covers_are_the_edges_of_the_associahedron():
    for N in range(3, 7):
        edges = {frozenset((a, b)) for a in binary_trees(N) for b in tamari_covers(a)}
        one_cells = enumerate_faces(N, 1)
        assert len(edges) == len(one_cells)
        for e in one_cells:
            ends = {v.tree() for v in enumerate_faces(N, 0) if is_face_of(v, e)}
            assert frozenset(ends) in edges


def test_tamari_leq_basic():
    assert tamari_leq(left_comb(5), right_comb(5))
    assert not tamari_leq(right_comb(5), left_comb(5))
