"""The diagonal on cellular chains of associahedra.

``enumerate_solutions(n)`` solves the inequality system that indexes the
components of the diagonal of the top cell ``T_{n+2}``; ``diagonal_top``
turns each solution into a signed pair (second-form face, first-form face)
and ``diagonal`` extends multiplicatively to every face by treating a face
as the product of its node cells.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterator

from .assoc_core import (Composition, Face, FaceOperator, comp_to_tree, key_to_tree, leaf_count,
                         node_arities, render_key, second_form_order,
                         tree_to_key)
from .chain_complex import Chain, TensorChain, koszul_sign, node_dims, node_order, tensor_boundary, boundary

Key = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class DiagonalSolution:
    """One solution of the system, with every auxiliary quantity.

    Lists are 1-based in the notation; here ``i[0]`` is ``i_1``.  The
    boundary conventions (``i_0 = n+1``, ``i_{p+1} = 0`` and so on) are
    applied by the accessor methods.
    """

    n: int
    i: tuple[int, ...]
    l: tuple[int, ...]
    ip: tuple[int, ...]
    lp: tuple[int, ...]
    t_empty: tuple[int, ...] = field(default=(), compare=False)

    @property
    def p(self) -> int:
        return len(self.i)

    @property
    def q(self) -> int:
        return len(self.ip)

    @property
    def eps(self) -> tuple[int, ...]:
        return complement(self.n, self.i)

    # indexed accessors with the boundary conventions
    def I(self, r: int) -> int:
        if r == 0:
            return self.n + 1
        if r == self.p + 1:
            return 0
        return self.i[r - 1]

    def IP(self, r: int) -> int:
        if r == 0:
            return self.n + 1
        if r == self.q + 1:
            return 0
        return self.ip[r - 1]

    def E(self, r: int) -> int:
        if r == 0:
            return 0
        if r == self.q + 1:
            return self.n + 1
        return self.eps[r - 1]

    def L(self, r: int) -> int:
        """Partial sum ``l_(r)``."""
        if r >= self.p + 1:
            return self.n + 1
        return sum(self.l[:r])

    def LP(self, r: int) -> int:
        """Partial sum ``l'_(r)``."""
        if r >= self.q + 1:
            return self.n + 1
        return sum(self.lp[:r])

    def o(self, u: int) -> int:
        return _o(self.n, self.i, self.E(u))

    def o_prime(self, u: int) -> int:
        return max(r for r in range(0, self.q + 1) if self.E(r) <= self.I(u))

    def t(self, u: int) -> int | None:
        return _t(self.n, self.i, self.l, self.E(u))

    def right(self) -> Composition:
        return Composition(tuple(FaceOperator(a, b) for a, b in zip(self.i, self.l)),
                           self.n + 2, "first")

    def left(self) -> Composition:
        return Composition(tuple(FaceOperator(a, b) for a, b in zip(self.ip, self.lp)),
                           self.n + 2, "second")

    def epsilon(self) -> int:
        p = self.p
        e = sum(a * (b + 1) for a, b in zip(self.ip, self.lp))
        e += sum((a + k + p + 1) * b for k, (a, b) in enumerate(zip(self.i, self.l), start=1))
        return e

    def __str__(self) -> str:
        r = ",".join(f"({a},{b})" for a, b in zip(self.i, self.l))
        lft = ",".join(f"({a},{b})" for a, b in zip(self.ip, self.lp))
        return f"({r};{lft})"


def complement(n: int, i: tuple[int, ...]) -> tuple[int, ...]:
    s = set(i)
    return tuple(e for e in range(1, n + 1) if e not in s)


def _I(n, i, r):
    if r == 0:
        return n + 1
    if r == len(i) + 1:
        return 0
    return i[r - 1]


def _L(n, l, r):
    if r >= len(l) + 1:
        return n + 1
    return sum(l[:r])


def _o(n, i, e):
    return max(r for r in range(0, len(i) + 1) if _I(n, i, r) >= e)


def _t(n, i, l, e):
    lo = _L(n, l, _o(n, i, e))
    for r in range(1, len(i) + 2):
        ir = _I(n, i, r)
        if ir + _L(n, l, r) - lo > e > ir:
            return r
    return None


def _left_bound(n, i, l, eps, ip, lp, k):
    """Upper bound for ``i'_k`` from inequality (3), or ``None`` when ``t_k`` is undefined."""
    e = eps[k - 1]
    t = _t(n, i, l, e)
    if t is None:
        return None
    it = _I(n, i, t)
    q = len(eps)
    # o'(t) = max{ r : eps_r <= i_t }
    op = max(r for r in range(0, q + 1) if (0 if r == 0 else eps[r - 1]) <= it)
    bound = it - sum(lp[:op])
    for r in range(op + 1, k):
        bound = min(bound, ip[r - 1])
    return bound


def _decreasing(n: int, p: int) -> Iterator[tuple[int, ...]]:
    """Strictly decreasing sequences ``n >= i_1 > ... > i_p >= 1``."""
    def rec(prefix, top):
        if len(prefix) == p:
            yield tuple(prefix)
            return
        for v in range(top, 0, -1):
            if v < p - len(prefix):
                break
            yield from rec(prefix + [v], v - 1)
    yield from rec([], n)


def enumerate_solutions(n: int) -> list[DiagonalSolution]:
    """All solutions, ordered by ``p`` then right indices then left indices."""
    if n < 0:
        raise ValueError("n must be non-negative")
    out = []
    for p in range(0, n + 1):
        for i in _decreasing(n, p):
            eps = complement(n, i)
            for l in _right_lengths(n, i):
                for ip, lp, empties in _left_indices(n, i, l, eps):
                    out.append(DiagonalSolution(n, i, l, ip, lp, empties))
    return out


def _right_lengths(n, i):
    def rec(prefix, used):
        j = len(prefix)
        if j == len(i):
            yield tuple(prefix)
            return
        top = n + 1 - i[j] - used
        for v in range(1, top + 1):
            yield from rec(prefix + [v], used + v)
    yield from rec([], 0)


def _left_indices(n, i, l, eps):
    q = len(eps)

    def rec(ip, lp, empties):
        k = len(ip) + 1
        if k > q:
            yield tuple(ip), tuple(lp), tuple(empties)
            return
        e = eps[k - 1]
        used = sum(lp)
        bound = _left_bound(n, i, l, eps, ip, lp, k)
        emp = empties
        if bound is None:
            bound = e - used - 1
            emp = empties + [k]
        for a in range(0, bound + 1):
            b = e - a - used
            if b < 1:
                break
            yield from rec(ip + [a], lp + [b], emp)

    yield from rec([], [], [])


def is_solution(n: int, i, l, ip, lp) -> bool:
    """Direct check of every inequality of the system; the brute-force filter."""
    p, q = len(i), len(ip)
    if len(l) != p or len(lp) != q or p + q != n:
        return False
    ivals = [n + 1] + list(i)
    for j in range(1, p + 1):
        if not 1 <= ivals[j] < ivals[j - 1] <= n + 1:
            return False
        if not 1 <= l[j - 1] <= n + 1 - i[j - 1] - sum(l[:j - 1]):
            return False
    eps = complement(n, tuple(i))
    if len(eps) != q:
        return False
    for k in range(1, q + 1):
        if lp[k - 1] < 1 or lp[k - 1] != eps[k - 1] - ip[k - 1] - sum(lp[:k - 1]):
            return False
        if ip[k - 1] < 0:
            return False
        bound = _left_bound(n, tuple(i), tuple(l), eps, list(ip), list(lp), k)
        if bound is not None and ip[k - 1] > bound:
            return False
    return True


def brute_force_solutions(n: int) -> set[tuple]:
    """Every index tuple in the box that passes :func:`is_solution`."""
    found = set()
    for p in range(0, n + 1):
        q = n - p
        rng_i = range(1, n + 1)
        for i in product(rng_i, repeat=p):
            for l in product(range(1, n + 1), repeat=p):
                for ip in product(range(0, n + 1), repeat=q):
                    for lp in product(range(1, n + 2), repeat=q):
                        if is_solution(n, i, l, ip, lp):
                            found.add((i, l, ip, lp))
    return found


def sign_epsilon(s: DiagonalSolution) -> int:
    return -1 if s.epsilon() % 2 else 1


# ---------------------------------------------------------------------------
# the diagonal of the top cell


@dataclass(frozen=True)
class DiagonalTerm:
    left: Composition
    right: Composition
    sign: int
    solution: DiagonalSolution

    @property
    def left_face(self) -> Face:
        return Face(self.left.ambient, tree_to_key(comp_to_tree(self.left)))

    @property
    def right_face(self) -> Face:
        return Face(self.right.ambient, self.right.pairs)

    def render(self) -> str:
        s = "+" if self.sign > 0 else "-"
        return f"{s}{render_key(self.left.pairs)}⊗{render_key(self.right.pairs)}"


def term_order(t: DiagonalTerm) -> tuple:
    """Primitive terms first, then ``(p, right key, left key)``."""
    n = t.solution.n
    p = t.solution.p
    primitive = 0 if p == 0 else 1 if p == n else 2
    return (primitive, p, t.right.pairs, t.left.pairs)


@lru_cache(maxsize=None)
def diagonal_terms(n: int) -> tuple[DiagonalTerm, ...]:
    terms = [DiagonalTerm(s.left(), s.right(), sign_epsilon(s), s) for s in enumerate_solutions(n)]
    return tuple(sorted(terms, key=term_order))


def left_reorientation(c: Composition) -> int:
    """Sign comparing the second-form node order of a face with its canonical order."""
    t = comp_to_tree(c)
    dims = node_dims(t)
    root = (0, leaf_count(t))
    return koszul_sign(second_form_order(t) + [root], node_order(t), dims)


LEFT_CONVENTIONS = ("canonical", "second-form")


@lru_cache(maxsize=None)
def _top_pairs(n: int, convention: str, corrupt: int | None) -> tuple[tuple[Key, Key, int], ...]:
    out = []
    for idx, term in enumerate(diagonal_terms(n)):
        left_key = tree_to_key(comp_to_tree(term.left))
        s = term.sign
        if convention == "second-form":
            s *= left_reorientation(term.left)
        if corrupt is not None and idx == corrupt:
            s = -s
        out.append((left_key, term.right.pairs, s))
    return tuple(out)


class Diagonal:
    """The multiplicative diagonal; parameters exist for testing only.

    ``convention`` selects how a second-form left factor is oriented:
    ``canonical`` uses the face's own generator, ``second-form`` orients
    it as the product of nodes in second-form creation order.
    ``corrupt = (n, index)`` flips the sign of one term of the diagonal of
    ``T_{n+2}``; it exists to run negative controls.
    """

    def __init__(self, convention: str = "second-form", corrupt: tuple[int, int] | None = None):
        if convention not in LEFT_CONVENTIONS:
            raise ValueError(f"unknown convention {convention!r}")
        self.convention = convention
        self.corrupt = corrupt
        self._cache: dict[tuple[int, Key], dict] = {}

    def top(self, n: int) -> tuple[tuple[Key, Key, int], ...]:
        bad = self.corrupt[1] if self.corrupt and self.corrupt[0] == n else None
        return _top_pairs(n, self.convention, bad)

    def face(self, ambient: int, key: Key) -> dict[tuple[Key, Key], int]:
        memo = self._cache.get((ambient, key))
        if memo is not None:
            return memo
        t = key_to_tree(key, ambient)
        order = node_order(t)
        if len(order) == 1:
            out = {(a, b): s for a, b, s in self.top(ambient - 2)}
            self._cache[(ambient, key)] = out
            return out
        children = _children_map(t)
        per_node = []
        for node in order:
            kids = children[node]
            arity = len(kids)
            mapped = []
            for a, b, s in self.top(arity - 2):
                la = _embed(a, arity, kids)
                lb = _embed(b, arity, kids)
                mapped.append((la, lb, s, _dim(la), _dim(lb)))
            per_node.append(mapped)
        out: dict[tuple[Key, Key], int] = {}
        for combo in product(*per_node):
            sign = 1
            odd = 0
            # interleave (x_1 ⊗ y_1)(x_2 ⊗ y_2)... into (x_1 x_2 ...) ⊗ (y_1 y_2 ...)
            ydeg = 0
            for la, lb, s, da, db in combo:
                sign *= s
                odd ^= (ydeg * da) & 1
                ydeg += db
            if odd:
                sign = -sign
            left_nodes = [x for c in combo for x in c[0]]
            right_nodes = [x for c in combo for x in c[1]]
            ka, sa = _assemble(left_nodes, ambient)
            kb, sb = _assemble(right_nodes, ambient)
            k2 = (ka, kb)
            v = out.get(k2, 0) + sign * sa * sb
            if v:
                out[k2] = v
            else:
                out.pop(k2, None)
        self._cache[(ambient, key)] = out
        return out

    def __call__(self, c: Chain | Face) -> TensorChain:
        if isinstance(c, Face):
            c = Chain.of(c)
        out = TensorChain(c.ambient)
        for key, v in c.terms.items():
            for (a, b), s in self.face(c.ambient, key).items():
                out.add(a, b, s * v)
        return out


def _children_map(t: tuple) -> dict[tuple[int, int], list[tuple[int, int]]]:
    out = {}

    def walk(x, start):
        if x == ():
            return 1
        pos = start
        kids = []
        for c in x:
            z = walk(c, pos)
            kids.append((pos, z))
            pos += z
        out[(start, pos - start)] = kids
        return pos - start

    walk(t, 0)
    return out


@lru_cache(maxsize=None)
def _local_nodes(key: Key, arity: int) -> tuple[tuple[int, int, int], ...]:
    """Nodes of a face of ``K_arity`` in canonical order as ``(start, size, arity)``."""
    t = key_to_tree(key, arity)
    ar = node_arities(t)
    return tuple((s, z, ar[(s, z)]) for s, z in node_order(t))


def _embed(key: Key, arity: int, kids) -> tuple[tuple[int, int, int], ...]:
    out = []
    for s, z, a in _local_nodes(key, arity):
        start = kids[s][0]
        size = sum(kz for _, kz in kids[s:s + z])
        out.append((start, size, a))
    return tuple(out)


def _dim(nodes) -> int:
    return sum(a - 2 for _, _, a in nodes)


def _assemble(nodes, ambient: int) -> tuple[Key, int]:
    """Canonical key of a node list and the Koszul sign of sorting it canonically."""
    target = sorted(nodes, key=lambda x: (x[1] == ambient, -x[0], x[1]))
    pos = {x: j for j, x in enumerate(target)}
    seq = [pos[x] for x in nodes]
    odd = 0
    for a in range(len(seq)):
        if (nodes[a][2] & 1) == 0:
            continue
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b] and nodes[b][2] & 1:
                odd ^= 1
    key = tuple((s, a - 1) for s, z, a in target if z != ambient)
    return key, (-1 if odd else 1)


DEFAULT = Diagonal()


def diagonal_top(n: int) -> TensorChain:
    """Diagonal of the top cell ``T_{n+2}``."""
    return DEFAULT(Face(n + 2, ()))


def diagonal(c: Chain | Face) -> TensorChain:
    return DEFAULT(c)


def product_decomposition(f: Face) -> list[int]:
    """Input counts of the node factors, first-form order, root last."""
    t = f.tree()
    ar = node_arities(t)
    return [ar[node] for node in node_order(t)]


def chain_map_defect(x: Face, delta: Diagonal = DEFAULT) -> TensorChain:
    """``(d⊗1 + 1⊗d)Δx − Δ(dx)``; zero iff the identity holds at ``x``."""
    return tensor_boundary(delta(x)) - delta(boundary(x))


def check_chain_map(n_leaves: int, delta: Diagonal = DEFAULT):
    """First face of ``K_{n_leaves}`` where the chain-map identity fails, or ``None``."""
    from .assoc_core import all_faces
    for f in all_faces(n_leaves):
        if chain_map_defect(f, delta):
            return f
    return None


def iterate_left(t: TensorChain, delta: Diagonal = DEFAULT) -> dict:
    """``(Δ⊗1)`` applied to a tensor chain, as triples of keys."""
    out: dict = {}
    amb = t.ambient
    for (a, b), v in t.terms.items():
        for (x, y), s in delta.face(amb, a).items():
            k = (x, y, b)
            out[k] = out.get(k, 0) + v * s
    return {k: v for k, v in out.items() if v}


def iterate_right(t: TensorChain, delta: Diagonal = DEFAULT) -> dict:
    """``(1⊗Δ)`` applied to a tensor chain; Koszul sign is trivial as Δ has degree 0."""
    out: dict = {}
    amb = t.ambient
    for (a, b), v in t.terms.items():
        for (x, y), s in delta.face(amb, b).items():
            k = (a, x, y)
            out[k] = out.get(k, 0) + v * s
    return {k: v for k, v in out.items() if v}
