"""Integer cellular chains on associahedra and the signed boundary.

Orientation convention: the generator of a face is the ordered product of
the top cells of its tree nodes, taken in first-form creation order (inner
nodes first, root last).  With that convention the index formula for the
face sign agrees with the Leibniz rule followed by the Koszul sign of
moving the new node into canonical position; :func:`boundary_by_trees`
computes the latter and is used as an oracle for :func:`facet_terms`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .assoc_core import (Face, first_form_order, key_to_tree, leaf_count, node_arities,
                         render_key, tree_from_intervals, tree_to_key)

Key = tuple[tuple[int, int], ...]

INF = float("inf")


def _bump(total: int) -> int:
    # coefficients stay tiny in practice; fail loudly if that ever changes
    if abs(total) >= 1 << 62:
        raise OverflowError("chain coefficient out of the checked range")
    return total


class Chain:
    """Formal integer combination of faces of ``K_{ambient}``."""

    __slots__ = ("ambient", "terms")

    def __init__(self, ambient: int, terms: Mapping[Key, int] | None = None):
        self.ambient = ambient
        self.terms: dict[Key, int] = {}
        if terms:
            for k, v in terms.items():
                self.add(k, v)

    @classmethod
    def of(cls, face: Face, coeff: int = 1) -> "Chain":
        return cls(face.ambient, {face.key: coeff})

    def add(self, key: Key, coeff: int) -> None:
        if coeff == 0:
            return
        v = _bump(self.terms.get(key, 0) + coeff)
        if v:
            self.terms[key] = v
        else:
            self.terms.pop(key, None)

    def __add__(self, other: "Chain") -> "Chain":
        self._same(other)
        out = Chain(self.ambient, self.terms)
        for k, v in other.terms.items():
            out.add(k, v)
        return out

    def __sub__(self, other: "Chain") -> "Chain":
        return self + other.scaled(-1)

    def scaled(self, c: int) -> "Chain":
        return Chain(self.ambient, {k: c * v for k, v in self.terms.items()})

    def _same(self, other) -> None:
        if self.ambient != other.ambient:
            raise ValueError("chains on different associahedra")

    def __eq__(self, other) -> bool:
        return isinstance(other, Chain) and self.ambient == other.ambient \
            and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def items(self) -> Iterator[tuple[Face, int]]:
        for k in sorted(self.terms):
            yield Face(self.ambient, k), self.terms[k]

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = [f"{'+' if v > 0 else '-'}{abs(v) if abs(v) != 1 else ''}{render_key(k)}"
                 for k, v in sorted(self.terms.items())]
        return " ".join(parts)


class TensorChain:
    """Formal integer combination of pairs of faces of ``K_{ambient}``."""

    __slots__ = ("ambient", "terms")

    def __init__(self, ambient: int, terms: Mapping[tuple[Key, Key], int] | None = None):
        self.ambient = ambient
        self.terms: dict[tuple[Key, Key], int] = {}
        if terms:
            for k, v in terms.items():
                self.add(k[0], k[1], v)

    def add(self, left: Key, right: Key, coeff: int) -> None:
        if coeff == 0:
            return
        k = (left, right)
        v = _bump(self.terms.get(k, 0) + coeff)
        if v:
            self.terms[k] = v
        else:
            self.terms.pop(k, None)

    def __add__(self, other: "TensorChain") -> "TensorChain":
        if self.ambient != other.ambient:
            raise ValueError("tensor chains on different associahedra")
        out = TensorChain(self.ambient, self.terms)
        for (a, b), v in other.terms.items():
            out.add(a, b, v)
        return out

    def __sub__(self, other: "TensorChain") -> "TensorChain":
        return self + other.scaled(-1)

    def scaled(self, c: int) -> "TensorChain":
        return TensorChain(self.ambient, {k: c * v for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, TensorChain) and self.ambient == other.ambient \
            and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def items(self):
        for (a, b) in sorted(self.terms):
            yield Face(self.ambient, a), Face(self.ambient, b), self.terms[(a, b)]

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " ".join(f"{'+' if v > 0 else '-'}{abs(v) if abs(v) != 1 else ''}"
                        f"{render_key(a)}⊗{render_key(b)}"
                        for (a, b), v in sorted(self.terms.items()))


# ---------------------------------------------------------------------------
# the face sign


@dataclass(frozen=True)
class FaceSignContext:
    """Data of ``d^q_{(i,l)}`` applied to the cell ``T^{I_k}``.

    ``blocks`` is the type I sequence ``(j_1, n_1+1), ..., (j_k, n_k+1)``
    (a canonical key) and ``n`` is the dimension of the ambient ``K_{n+2}``.
    """

    n: int
    blocks: Key
    q: int
    i: int
    l: int

    @property
    def k(self) -> int:
        return len(self.blocks)

    @property
    def ns(self) -> list[int]:
        """``n_1, ..., n_{k+1}``, the root last."""
        inner = [l - 1 for _, l in self.blocks]
        return inner + [self.n - self.k - sum(inner)]

    @property
    def js(self) -> list[int]:
        return [j for j, _ in self.blocks] + [0]

    def validate(self) -> None:
        if not 1 <= self.q <= self.k + 1:
            raise ValueError(f"factor {self.q} out of range 1..{self.k + 1}")
        nq = self.ns[self.q - 1]
        if not (0 <= self.i <= nq and 1 <= self.l <= nq and self.i + self.l <= nq + 1):
            raise ValueError(f"d_({self.i},{self.l}) invalid on a factor with {nq + 2} inputs")

    def j(self, q: int, r: int) -> int:
        """The function ``j(q, r)``, ``1 <= r <= q``."""
        ns, js = self.ns, self.js
        if r == q:
            return self.i + js[q - 1]
        return self.i + js[q - 1] + sum(ns[r - 1:q - 1]) + q - r

    @property
    def beta(self) -> int:
        if self.q == 1:
            return 1
        js = self.js
        best = None
        for r in range(1, self.q + 1):
            bound = INF if r == 1 else js[r - 2]
            if self.j(self.q, r) <= bound:
                best = r
        return best

    @property
    def eps1(self) -> int:
        return (self.i + 1) * self.l + sum(self.ns[:self.q - 1])

    @property
    def eps2(self) -> int:
        b = self.beta
        if b == self.q:
            return 0
        return (self.l - 1) * sum(self.ns[b - 1:self.q - 1])

    def target(self) -> Key:
        """Canonical key of the face: new block inserted at ``beta``."""
        b = self.beta
        blocks = list(self.blocks)
        if self.q <= self.k:
            jq, lq = blocks[self.q - 1]
            blocks[self.q - 1] = (jq, lq - self.l)
        blocks.insert(b - 1, (self.j(self.q, b), self.l))
        return tuple(blocks)


def face_sign(ctx: FaceSignContext) -> int:
    """``(-1)^(eps1 + eps2)``."""
    ctx.validate()
    return -1 if (ctx.eps1 + ctx.eps2) % 2 else 1


def face_contexts(face: Face) -> Iterator[FaceSignContext]:
    """Every ``d^q_{(i,l)}`` applicable to the face, factors in first-form order."""
    n = face.ambient - 2
    base = FaceSignContext(n, face.key, 1, 0, 1)
    for q, nq in enumerate(base.ns, start=1):
        for l in range(1, nq + 1):
            for i in range(0, nq + 2 - l):
                yield FaceSignContext(n, face.key, q, i, l)


@lru_cache(maxsize=None)
def _facet_terms(ambient: int, key: Key) -> tuple[tuple[Key, int], ...]:
    out = []
    for ctx in face_contexts(Face(ambient, key)):
        out.append((ctx.target(), face_sign(ctx)))
    return tuple(out)


def facet_terms(face: Face) -> list[tuple[Face, int]]:
    """Signed codimension-one faces from the index formula."""
    return [(Face(face.ambient, k), s) for k, s in _facet_terms(face.ambient, face.key)]


def boundary(c: Chain | Face) -> Chain:
    """Linear extension of the signed facet sum."""
    if isinstance(c, Face):
        c = Chain.of(c)
    out = Chain(c.ambient)
    for key, v in c.terms.items():
        for k2, s in _facet_terms(c.ambient, key):
            out.add(k2, s * v)
    return out


def face_dim(ambient: int, key: Key) -> int:
    return ambient - 2 - len(key)


def tensor_boundary(t: TensorChain) -> TensorChain:
    """``(d ⊗ 1) + (-1)^{|left|} (1 ⊗ d)``."""
    out = TensorChain(t.ambient)
    amb = t.ambient
    for (a, b), v in t.terms.items():
        for a2, s in _facet_terms(amb, a):
            out.add(a2, b, s * v)
        sign = -1 if face_dim(amb, a) % 2 else 1
        for b2, s in _facet_terms(amb, b):
            out.add(a, b2, sign * s * v)
    return out


# ---------------------------------------------------------------------------
# tree-side oracle


def koszul_sign(order: Sequence, target: Sequence, dims: Mapping) -> int:
    """Sign of reordering graded items from ``order`` into ``target``."""
    pos = {x: j for j, x in enumerate(target)}
    seq = [pos[x] for x in order]
    odd = 0
    for a in range(len(seq)):
        da = dims[order[a]]
        if da % 2 == 0:
            continue
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b] and dims[order[b]] % 2:
                odd ^= 1
    return -1 if odd else 1


def node_order(t: tuple) -> list[tuple[int, int]]:
    """All nodes, first-form order, root last."""
    return first_form_order(t) + [(0, leaf_count(t))]


def node_dims(t: tuple) -> dict[tuple[int, int], int]:
    return {iv: a - 2 for iv, a in node_arities(t).items()}


def split_node(t: tuple, node: tuple[int, int], i: int, l: int):
    """``(i,l)``-surgery at ``node``; returns ``(tree, inner interval)``."""
    kids = _children(t, node)
    if not (0 <= i and 1 <= l and i + l + 1 <= len(kids) and len(kids) - l >= 2):
        raise ValueError("invalid surgery indices")
    start = kids[i][0]
    size = sum(z for _, z in kids[i:i + l + 1])
    inner = (start, size)
    ivs = node_intervals_all(t) + [inner]
    return tree_from_intervals(ivs, leaf_count(t)), inner


def node_intervals_all(t: tuple) -> list[tuple[int, int]]:
    return list(node_arities(t))


def _children(t: tuple, node: tuple[int, int]) -> list[tuple[int, int]]:
    """Children of ``node`` as leaf intervals (leaves are size-one intervals)."""
    out = None

    def walk(x, start):
        nonlocal out
        if x == ():
            return 1
        pos = start
        kids = []
        for c in x:
            z = walk(c, pos)
            kids.append((pos, z))
            pos += z
        if (start, pos - start) == node:
            out = kids
        return pos - start

    walk(t, 0)
    if out is None:
        raise ValueError(f"{node} is not a node")
    return out


def boundary_by_trees(face: Face) -> Chain:
    """Leibniz rule over node factors plus Koszul reordering; an oracle."""
    t = face.tree()
    order = node_order(t)
    dims = node_dims(t)
    out = Chain(face.ambient)
    before = 0
    for node in order:
        arity = dims[node] + 2
        for l in range(1, arity - 1):
            for i in range(0, arity - l):
                t2, inner = split_node(t, node, i, l)
                d2 = node_dims(t2)
                pos = order.index(node)
                produced = order[:pos] + [inner, node] + order[pos + 1:]
                sign = koszul_sign(produced, node_order(t2), d2)
                if ((i + 1) * l + before) % 2:
                    sign = -sign
                out.add(tree_to_key(t2), sign)
        before += dims[node]
    return out


def all_keys(n_leaves: int) -> list[Key]:
    from .assoc_core import all_faces
    return [f.key for f in all_faces(n_leaves)]


def boundary_squared_zero(n_leaves: int) -> tuple[bool, Face | None]:
    """Check ``d∘d = 0`` on every face; return the first counterexample."""
    for key in all_keys(n_leaves):
        if boundary(boundary(Chain(n_leaves, {key: 1}))):
            return False, Face(n_leaves, key)
    return True, None


def codim_two_pairing(face: Face) -> bool:
    """Every face in the expansion of ``d d face`` arises exactly twice, with opposite signs."""
    seen: dict[Key, list[int]] = {}
    for k1, s1 in _facet_terms(face.ambient, face.key):
        for k2, s2 in _facet_terms(face.ambient, k1):
            seen.setdefault(k2, []).append(s1 * s2)
    return all(len(v) == 2 and sum(v) == 0 for v in seen.values())


def tree_of(ambient: int, key: Key) -> tuple:
    return key_to_tree(key, ambient)


def chain_from(ambient: int, pairs: Iterable[tuple[Key, int]]) -> Chain:
    out = Chain(ambient)
    for k, v in pairs:
        out.add(k, v)
    return out
