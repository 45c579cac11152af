import pytest
from hypothesis import given, strategies as st

from assocdiag.assoc_core import Face, all_faces, enumerate_faces, is_face_of
from assocdiag.chain_complex import (
    Chain, FaceSignContext, TensorChain, boundary, boundary_by_trees, boundary_squared_zero,
    codim_two_pairing, face_sign, facet_terms, koszul_sign, tensor_boundary,
)


def top(N):
    return Face(N)


def test_face_sign_on_the_top_cell():
    assert face_sign(FaceSignContext(2, (), 1, 0, 1)) == -1
    assert face_sign(FaceSignContext(2, (), 1, 1, 2)) == 1
    for n in range(1, 6):
        for l in range(1, n + 1):
            for i in range(0, n + 2 - l):
                assert face_sign(FaceSignContext(n, (), 1, i, l)) == (-1) ** ((i + 1) * l)


def test_single_block_target_inserts_before_the_root():
    assert FaceSignContext(2, (), 1, 0, 1).target() == ((0, 1),)
    assert FaceSignContext(4, (), 1, 2, 3).target() == ((2, 3),)


def test_invalid_operator_rejected():
    with pytest.raises(ValueError):
        face_sign(FaceSignContext(2, (), 1, 2, 2))
    with pytest.raises(ValueError):
        face_sign(FaceSignContext(2, (), 3, 0, 1))


def test_boundary_of_k4():
    expected = {((0, 1),): -1, ((0, 2),): 1, ((1, 1),): 1, ((1, 2),): 1, ((2, 1),): -1}
    assert boundary(top(4)).terms == expected


def test_boundary_of_a_vertex_is_zero():
    for v in enumerate_faces(5, 0):
        assert not boundary(v)


def test_chain_arithmetic_cancels():
    a = Chain(4, {((0, 1),): 2, ((1, 1),): -1})
    assert not (a - a)
    assert (a + a).terms == {((0, 1),): 4, ((1, 1),): -2}
    assert len(a.scaled(0)) == 0


@pytest.mark.parametrize("N", range(2, 8))
def test_boundary_agrees_with_tree_oracle(N):
    for f in all_faces(N):
        assert boundary(f) == boundary_by_trees(f), f


@pytest.mark.parametrize("N", range(2, 8))
def test_boundary_squares_to_zero(N):
    assert boundary_squared_zero(N) == (True, None)


@pytest.mark.parametrize("N", range(3, 7))
def test_codim_two_faces_arise_twice_with_opposite_signs(N):
    assert all(codim_two_pairing(f) for f in all_faces(N))


@pytest.mark.parametrize("N", range(3, 7))
def test_facets_are_exactly_the_codim_one_faces(N):
    for f in all_faces(N):
        got = sorted(g for g, _ in facet_terms(f))
        want = sorted(g for g in all_faces(N) if g.dim == f.dim - 1 and is_face_of(g, f))
        assert got == want
        assert all(s in (1, -1) for _, s in facet_terms(f))


def test_tensor_boundary_of_points_is_zero():
    assert not tensor_boundary(TensorChain(2, {((), ()): 1}))


def test_tensor_boundary_edge_times_edge():
    a, b = ((0, 2),), ((1, 1),)
    got = tensor_boundary(TensorChain(4, {(a, b): 1})).terms
    assert got == {
        (((0, 1), (0, 1)), b): -1,
        (((1, 1), (0, 1)), b): 1,
        (a, ((1, 1), (0, 1))): 1,
        (a, ((1, 1), (1, 1))): -1,
    }


@pytest.mark.parametrize("N", [4, 5])
def test_tensor_boundary_is_leibniz(N):
    faces = all_faces(N)
    for x in faces[::3]:
        for y in faces[::4]:
            want = TensorChain(N)
            for g, c in boundary(x).items():
                want.add(g.key, y.key, c)
            for g, c in boundary(y).items():
                want.add(x.key, g.key, (-1) ** x.dim * c)
            assert tensor_boundary(TensorChain(N, {(x.key, y.key): 1})) == want


@given(st.permutations(list(range(5))), st.lists(st.integers(0, 3), min_size=5, max_size=5))
def test_koszul_sign_is_multiplicative(perm, degs):
    dims = dict(enumerate(degs))
    base = list(range(5))
    mid = sorted(base, key=lambda x: (degs[x], x))
    assert koszul_sign(perm, base, dims) == koszul_sign(perm, mid, dims) * koszul_sign(mid, base, dims)


def test_koszul_sign_of_two_odd_items():
    assert koszul_sign(["b", "a"], ["a", "b"], {"a": 1, "b": 1}) == -1
    assert koszul_sign(["b", "a"], ["a", "b"], {"a": 1, "b": 2}) == 1
