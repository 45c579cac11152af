"""Left and right transfers, the selection algorithm and the two lemmas.

A transfer rewrites a composition in fundamental form so that one chosen
operator moves to the far left (left transfer) or to the far right (right
transfer) while the face it denotes stays the same.  A right transfer ends
with an operator ``d^1_{(i,l)}`` applied first, which exhibits the face as
a face of the facet ``d_{(i,l)}(T_{n+2})``.

Compositions are stored in application order, so ``ops[0]`` is the
operator written rightmost.  Every result carries explicit superscripts.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .assoc_core import (Composition, Face, FaceOperator, all_faces, comp_to_tree, facets,
                         is_face_of, tree_to_key, tree_to_second)
from .diagonal import DiagonalSolution


@dataclass(frozen=True)
class TransferResult:
    rewritten: Composition
    pivot: FaceOperator
    case: str

    def face(self) -> Face:
        return Face(self.rewritten.ambient, tree_to_key(comp_to_tree(self.rewritten)))

    def facet(self) -> tuple[int, int]:
        """``(i, l)`` of the operator applied first."""
        return self.rewritten.ops[0].pair()


def _parts(c: Composition, form: str, k: int):
    if c.form != form:
        raise ValueError(f"expected a composition in {form} form, got {c.form!r}")
    m = len(c.ops)
    if not 1 <= k <= m:
        raise ValueError(f"k={k} out of range 1..{m}")
    i = [0] + [op.i for op in c.ops]
    l = [0] + [op.l for op in c.ops]
    L = [0] * (m + 1)
    for j in range(1, m + 1):
        L[j] = L[j - 1] + l[j]
    return m, i, l, L


class _Builder:
    """Accumulates operators, tracking where the root factor sits."""

    def __init__(self, ambient: int):
        self.ambient = ambient
        self.ops: list[FaceOperator] = []
        self.nfactors = 1

    def root(self, i: int, l: int) -> "_Builder":
        return self.at(i, l, self.nfactors)

    def at(self, i: int, l: int, q: int) -> "_Builder":
        self.ops.append(FaceOperator(i, l, q))
        self.nfactors += 1
        return self

    def done(self, form: str = "raw") -> Composition:
        return Composition(tuple(self.ops), self.ambient, form)


def _single(conds: dict[str, bool]) -> str:
    hits = [name for name, v in conds.items() if v]
    assert len(hits) <= 1, f"transfer cases overlap: {hits}"
    return hits[0] if hits else "c"


def left_transfer_first(c: Composition, k: int) -> TransferResult:
    """``k``-th left transfer of a first-form composition."""
    m, i, l, L = _parts(c, "first", k)
    a = k < m and i[k + 1] + l[k + 1] >= i[k]
    qb = None
    if k < m and i[k + 1] + l[k + 1] < i[k]:
        for q in range(k + 1, m):
            if i[k] <= i[q + 1] + L[q + 1] - L[k]:
                qb = q
                break
    case = _single({"a": a, "b": qb is not None})
    b = _Builder(c.ambient)
    for j in range(1, k):
        b.root(i[j], l[j])
    if case == "a":
        b.root(i[k + 1], l[k + 1] + l[k])
        for j in range(k + 2, m + 1):
            b.root(i[j], l[j])
        pivot = FaceOperator(i[k] - i[k + 1], l[k], k)
    elif case == "b":
        # relation (2) merges the moved operator into operator q+1, which
        # therefore gains l_k inputs
        for j in range(k + 1, m + 1):
            b.root(i[j], l[j] + (l[k] if j == qb + 1 else 0))
        pivot = FaceOperator(i[k] - i[qb + 1] + L[k] - L[qb], l[k], qb)
    else:
        for j in range(k + 1, m + 1):
            b.root(i[j], l[j])
        pivot = FaceOperator(i[k] + L[k] - L[m], l[k], m)
    b.at(pivot.i, pivot.l, pivot.q)
    return TransferResult(b.done(), pivot, case)


def right_transfer_first(c: Composition, k: int) -> TransferResult:
    """``k``-th right transfer of a first-form composition."""
    m, i, l, L = _parts(c, "first", k)
    pa = None
    for p in range(k, 1, -1):
        if i[p] + L[p] <= i[k] + L[k] < i[p - 1] + L[p - 1]:
            pa = p
            break
    case = "a" if pa is not None else "b"
    b = _Builder(c.ambient)
    if case == "a":
        ell = L[k] - L[pa - 1]
        pivot = FaceOperator(i[k], ell, 1)
        b.at(i[k], ell, 1)
        for q, j in enumerate(range(pa, k), start=1):
            b.at(i[j] - i[k], l[j], q)
        for j in range(1, pa):
            b.root(i[j] - ell, l[j])
    else:
        pivot = FaceOperator(i[k], L[k], 1)
        b.at(i[k], L[k], 1)
        for j in range(1, k):
            b.at(i[j] - i[k], l[j], j)
    for j in range(k + 1, m + 1):
        b.root(i[j], l[j])
    return TransferResult(b.done(), pivot, case)


def left_transfer_second(c: Composition, k: int) -> TransferResult:
    """``k``-th left transfer of a second-form composition."""
    m, i, l, L = _parts(c, "second", k)
    a = k < m and i[k + 1] <= i[k]
    qb = None
    if k < m and i[k + 1] > i[k]:
        for q in range(k + 1, m):
            if i[k] >= i[q + 1]:
                qb = q
                break
    case = _single({"a": a, "b": qb is not None})
    b = _Builder(c.ambient)
    for j in range(1, k):
        b.root(i[j], l[j])
    if case == "a":
        b.root(i[k + 1], l[k + 1] + l[k])
        for j in range(k + 2, m + 1):
            b.root(i[j], l[j])
        pivot = FaceOperator(i[k] - i[k + 1], l[k], k)
    elif case == "b":
        for j in range(k + 1, qb + 1):
            b.root(i[j] + l[k], l[j])
        b.root(i[qb + 1], l[qb + 1] + l[k])
        for j in range(qb + 2, m + 1):
            b.root(i[j], l[j])
        pivot = FaceOperator(i[k] - i[qb + 1], l[k], qb)
    else:
        for j in range(k + 1, m + 1):
            b.root(i[j] + l[k], l[j])
        pivot = FaceOperator(i[k], l[k], m)
    b.at(pivot.i, pivot.l, pivot.q)
    return TransferResult(b.done(), pivot, case)


def right_transfer_second(c: Composition, k: int) -> TransferResult:
    """``k``-th right transfer of a second-form composition."""
    m, i, l, L = _parts(c, "second", k)
    pa = None
    for p in range(k, 1, -1):
        if i[p - 1] < i[k] <= i[p]:
            pa = p
            break
    case = "a" if pa is not None else "b"
    b = _Builder(c.ambient)
    if case == "a":
        pivot = FaceOperator(i[k] + L[pa - 1], L[k] - L[pa - 1], 1)
        b.at(pivot.i, pivot.l, 1)
        for q, j in enumerate(range(pa, k), start=1):
            b.at(i[j] - i[k], l[j], q)
        for j in range(1, pa):
            b.root(i[j], l[j])
    else:
        pivot = FaceOperator(i[k], L[k], 1)
        b.at(i[k], L[k], 1)
        for j in range(1, k):
            b.at(i[j] - i[k], l[j], j)
    for j in range(k + 1, m + 1):
        b.root(i[j], l[j])
    return TransferResult(b.done(), pivot, case)


# ---------------------------------------------------------------------------
# facets through transfers, and the brute-force containment oracle


def first_form(f: Face) -> Composition:
    return Composition(tuple(FaceOperator(a, b) for a, b in f.key), f.ambient, "first")


def second_form(f: Face) -> Composition:
    ops = tree_to_second(f.tree())
    return Composition(tuple(FaceOperator(a, b) for a, b in ops), f.ambient, "second")


def transfer_facets(f: Face, form: str = "first") -> list[tuple[int, int]]:
    """Facets ``(i, l)`` produced by the right transfers ``k = 1..m``."""
    if form == "first":
        c = first_form(f)
        return [right_transfer_first(c, k).facet() for k in range(1, len(c) + 1)]
    c = second_form(f)
    return [right_transfer_second(c, k).facet() for k in range(1, len(c) + 1)]


def containing_facets(f: Face) -> set[tuple[int, int]]:
    """Brute force: every facet ``d_{(i,l)}(T)`` whose cell contains ``f``."""
    return {g.key[0] for g in facets(f.ambient) if is_face_of(f, g)}


def common_facet(a1: Face, a2: Face) -> tuple[int, int] | None:
    """A facet containing both faces, found through the index conditions.

    ``a1`` is read in first form and ``a2`` in second form.  For each
    ``k_j`` the greatest ``p_j < k_j`` with the stated inequality is found
    by a downward scan; ``p_j = 0`` stands for no such index.
    """
    if a1.ambient != a2.ambient:
        raise ValueError("faces of different associahedra")
    c1, c2 = first_form(a1), second_form(a2)
    i1 = [a1.ambient] + [op.i for op in c1.ops]
    L1 = _partials([op.l for op in c1.ops])
    i2 = [-1] + [op.i for op in c2.ops]
    L2 = _partials([op.l for op in c2.ops])
    side1 = {}
    for k in range(1, len(c1) + 1):
        p = next(p for p in range(k - 1, -1, -1) if i1[k] + L1[k] - L1[p] < i1[p])
        side1.setdefault((i1[k], L1[k] - L1[p]), k)
    for k in range(1, len(c2) + 1):
        p = next(p for p in range(k - 1, -1, -1) if i2[p] < i2[k])
        key = (i2[k] + L2[p], L2[k] - L2[p])
        if key in side1:
            return key
    return None


def common_facet_brute(a1: Face, a2: Face) -> set[tuple[int, int]]:
    return containing_facets(a1) & containing_facets(a2)


def _partials(xs):
    out = [0]
    for x in xs:
        out.append(out[-1] + x)
    return out


def random_face_pairs(n_leaves: int, count: int, rng: random.Random):
    faces = all_faces(n_leaves)
    for _ in range(count):
        yield rng.choice(faces), rng.choice(faces)


# ---------------------------------------------------------------------------
# selection algorithm and the second lemma


@dataclass(frozen=True)
class SelectionState:
    k: int
    m: int
    z: int
    chain: tuple[int, ...]
    iterations: int


def _lp_single(s: DiagonalSolution, k: int) -> int:
    """``l'_k`` including ``k = q+1`` by the partial-sum convention."""
    return s.LP(k) - s.LP(k - 1)


def selection(s: DiagonalSolution, k: int, m: int) -> SelectionState:
    """Run the selection algorithm.

    The assignment ``i_z = x`` inside the loop is read as choosing the index
    ``z`` with ``i_z = x``.  When it fires, the second test of the same pass
    is skipped; otherwise the value ``z = t_{k_j}`` is tried.
    """
    if not 1 <= k <= s.q + 1:
        raise ValueError(f"k={k} out of range 1..{s.q + 1}")
    if not 0 <= m < _lp_single(s, k):
        raise ValueError(f"m={m} out of range for k={k}")
    target = s.IP(k) + m
    if k == 1:
        return SelectionState(k, m, s.p + 1 - s.IP(1) - m, (), 0)
    index = {s.I(r): r for r in range(1, s.p + 2)}
    z = s.n + 2
    kj = k - 1
    chain = [kj]
    it = 0
    while z >= s.n + 2:
        if kj == 0:
            # the chain has run out; this is the k = 1 rule with k_1 = 0
            z = s.p + 1 - target
            break
        it += 1
        if it > s.q:
            raise RuntimeError(f"selection did not terminate for {s} k={k} m={m}")
        t = s.t(kj)
        nxt = s.o_prime(t)
        if s.IP(kj) < target and s.E(kj) - s.IP(kj) + target in index:
            z = index[s.E(kj) - s.IP(kj) + target]
        elif s.I(t) - s.LP(nxt) == target:
            z = t
        kj = nxt
        chain.append(kj)
    return SelectionState(k, m, z, tuple(chain), it)


def selection_z(s: DiagonalSolution, k: int, m: int) -> int:
    return selection(s, k, m).z


def lemma2_check(s: DiagonalSolution, k: int, m: int) -> dict[str, bool]:
    """Evaluate every item of the second lemma; ``True`` means the item holds."""
    z = selection_z(s, k, m)
    x = s.IP(k) + m
    ok = s.o(k)
    ozp = s.o_prime(z)
    out = {
        "a": z > ok,
        "b": s.I(z) + s.L(z) - s.L(ok) >= s.E(k),
        "c": x == s.I(z) - s.LP(ozp),
        "d": all(x <= s.IP(r) for r in range(ozp + 1, k)),
    }
    tk = s.t(k) if k <= s.q else None
    if tk is None:
        out["e"] = True
        return out
    otk = s.o_prime(tk)
    bound = min([s.IP(r) for r in range(otk + 1, k)] + [s.I(tk) - s.LP(otk)])
    if x > bound:
        e1 = z < tk and s.I(z) + s.L(z) - s.L(ok) == s.E(k)
        cand = [r for r in range(1, z) if s.I(r) > s.I(z) + s.L(z) - s.L(r)]
        e2 = ok == max(cand, default=0)
        cand3 = [r for r in range(1, k) if s.IP(r) < x]
        e3 = ozp == max(cand3, default=0)
        out["e"] = e1 and e2 and e3
    else:
        out["e"] = True
    return out


def lemma2_triples(n: int):
    """Every ``(solution, k, m)`` with ``1 <= k <= q+1`` and ``0 <= m < l'_k``."""
    from .diagonal import enumerate_solutions
    for s in enumerate_solutions(n):
        for k in range(1, s.q + 2):
            for m in range(_lp_single(s, k)):
                yield s, k, m
