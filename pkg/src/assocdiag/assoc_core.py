"""Faces of associahedra as face-operator compositions and planar trees.

A face of ``K_{n+2}`` is stored through its canonical key: the lower-index
sequence ``((i_1, l_1), ..., (i_m, l_m))`` of its first fundamental form,
listed in application order (``(i_1, l_1)`` acts first).  Printed forms use
the usual written order, rightmost operator applied first.

Trees are nested tuples.  A leaf is the empty tuple ``()`` and an internal
node is the tuple of its children, so the corolla on four leaves is
``((), (), (), ())``.
"""

from __future__ import annotations

import random
import re
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

LEAF: tuple = ()

FORMS = ("raw", "first", "second")


@dataclass(frozen=True)
class FaceOperator:
    """The operator ``d^q_{(i,l)}``.

    ``q`` is the 1-based tensor position the operator acts on.  ``None``
    means the superscript was suppressed; see :func:`fill_superscripts`.
    """

    i: int
    l: int
    q: int | None = None

    def pair(self) -> tuple[int, int]:
        return (self.i, self.l)

    def with_q(self, q: int | None) -> "FaceOperator":
        return FaceOperator(self.i, self.l, q)


@dataclass(frozen=True)
class Composition:
    """A sequence of face operators applied to the corolla ``T_{ambient}``.

    ``ops[0]`` is applied first.  ``ambient`` is the number of inputs
    ``n + 2`` of the host cell.
    """

    ops: tuple[FaceOperator, ...]
    ambient: int
    form: str = "raw"

    def __post_init__(self):
        if self.form not in FORMS:
            raise ValueError(f"unknown form tag {self.form!r}")
        object.__setattr__(self, "ops", tuple(self.ops))

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(op.pair() for op in self.ops)

    def __len__(self) -> int:
        return len(self.ops)

    def explicit(self) -> "Composition":
        return Composition(fill_superscripts(self.ops), self.ambient, self.form)

    def __str__(self) -> str:
        return render_ops(self.ops)


@dataclass(frozen=True, order=True)
class Face:
    """A face of ``K_{ambient}`` identified by its first-form key."""

    ambient: int
    key: tuple[tuple[int, int], ...] = field(default=())

    @property
    def n(self) -> int:
        return self.ambient - 2

    @property
    def codim(self) -> int:
        return len(self.key)

    @property
    def dim(self) -> int:
        return self.ambient - 2 - len(self.key)

    def tree(self) -> tuple:
        return key_to_tree(self.key, self.ambient)

    def composition(self) -> Composition:
        ops = tuple(FaceOperator(i, l, j + 1) for j, (i, l) in enumerate(self.key))
        return Composition(ops, self.ambient, "first")

    def __str__(self) -> str:
        return render_key(self.key)


# ---------------------------------------------------------------------------
# parsing and rendering


_OP_RE = re.compile(
    r"d(?:\^\{?(\d+)\}?)?_?\{?\(\s*(\d+)\s*,\s*(\d+)\s*\)\}?|d(\d)(\d)"
)


def parse_ops(text: str) -> tuple[FaceOperator, ...]:
    """Parse a written composition such as ``d_{(1,1)}d_{(2,1)}``.

    Written order: the rightmost operator acts first.
    Accepted spellings per operator are ``d^2_{(0,1)}``, ``d_{(0,1)}``,
    ``d(0,1)`` and the compact ``d01``.  The empty string and ``1`` denote
    the empty composition.
    """
    s = text.strip().replace(" ", "")
    if s in ("", "1", "id"):
        return ()
    ops = []
    pos = 0
    for m in _OP_RE.finditer(s):
        if m.start() != pos:
            raise ValueError(f"cannot parse composition {text!r} at {s[pos:]!r}")
        pos = m.end()
        if m.group(4) is not None:
            ops.append(FaceOperator(int(m.group(4)), int(m.group(5))))
        else:
            q = int(m.group(1)) if m.group(1) is not None else None
            ops.append(FaceOperator(int(m.group(2)), int(m.group(3)), q))
    if pos != len(s):
        raise ValueError(f"cannot parse composition {text!r} at {s[pos:]!r}")
    return tuple(reversed(ops))


def render_ops(ops: Sequence[FaceOperator], superscripts: bool = False) -> str:
    """Written form of a composition, rightmost operator applied first."""
    if not ops:
        return "1"
    parts = []
    for op in reversed(ops):
        sup = f"^{op.q}" if superscripts and op.q is not None else ""
        parts.append(f"d{sup}_{{({op.i},{op.l})}}")
    return "".join(parts)


def render_key(key: Sequence[tuple[int, int]]) -> str:
    return render_ops([FaceOperator(i, l) for i, l in key])


def fill_superscripts(ops: Sequence[FaceOperator]) -> tuple[FaceOperator, ...]:
    """Reconstruct suppressed superscripts as ``q_{j+1} = q_j + 1``, ``q_1 = 1``."""
    out = []
    prev = 0
    for op in ops:
        q = op.q if op.q is not None else prev + 1
        out.append(op.with_q(q))
        prev = q
    return tuple(out)


def composition(text: str, ambient: int, form: str = "raw") -> Composition:
    return Composition(parse_ops(text), ambient, form)


# ---------------------------------------------------------------------------
# trees


def corolla(n_leaves: int) -> tuple:
    return tuple(LEAF for _ in range(n_leaves))


def leaf_count(t: tuple) -> int:
    if t == LEAF:
        return 1
    return sum(leaf_count(c) for c in t)


def is_valid_tree(t) -> bool:
    if not isinstance(t, tuple):
        return False
    if t == LEAF:
        return True
    return len(t) >= 2 and all(is_valid_tree(c) for c in t)


def tree_str(t: tuple) -> str:
    """Parenthesization with bullets, e.g. ``((••)•)``."""
    if t == LEAF:
        return "•"
    return "(" + "".join(tree_str(c) for c in t) + ")"


def parse_tree(text: str) -> tuple:
    """Inverse of :func:`tree_str`; accepts ``•``, ``x``, ``*`` or ``.`` for leaves."""
    stack: list[list] = [[]]
    for ch in text.replace(" ", ""):
        if ch == "(":
            stack.append([])
        elif ch == ")":
            if len(stack) < 2:
                raise ValueError(f"unbalanced tree string {text!r}")
            node = tuple(stack.pop())
            stack[-1].append(node)
        elif ch in "•x*.":
            stack[-1].append(LEAF)
        else:
            raise ValueError(f"unexpected character {ch!r} in tree string")
    if len(stack) != 1 or len(stack[0]) != 1:
        raise ValueError(f"malformed tree string {text!r}")
    t = stack[0][0]
    if t == LEAF or not is_valid_tree(t):
        raise ValueError(f"not a planar tree with internal nodes of arity >= 2: {text!r}")
    return t


def node_intervals(t: tuple) -> list[tuple[int, int]]:
    """Leaf intervals ``(start, size)`` of all internal nodes, root included.

    ``start`` counts the leaves to the left of the node.
    """
    out: list[tuple[int, int]] = []

    def walk(node, start):
        if node == LEAF:
            return 1
        size = 0
        for c in node:
            size += walk(c, start + size)
        out.append((start, size))
        return size

    walk(t, 0)
    return out


def node_arities(t: tuple) -> dict[tuple[int, int], int]:
    """Map each node interval to its arity (number of children)."""
    out: dict[tuple[int, int], int] = {}

    def walk(node, start):
        if node == LEAF:
            return 1
        size = 0
        for c in node:
            size += walk(c, start + size)
        out[(start, size)] = len(node)
        return size

    walk(t, 0)
    return out


def tree_from_intervals(intervals: Iterable[tuple[int, int]], n_leaves: int) -> tuple:
    """Rebuild a tree from a laminar family of leaf intervals."""
    nodes = set(intervals)
    nodes.add((0, n_leaves))

    def build(start, size):
        children = []
        pos = start
        end = start + size
        while pos < end:
            best = None
            for s, z in nodes:
                if s == pos and s + z <= end and (s, z) != (start, size):
                    if best is None or z > best[1]:
                        best = (s, z)
            if best is None:
                children.append(LEAF)
                pos += 1
            else:
                children.append(build(*best))
                pos += best[1]
        return tuple(children)

    return build(0, n_leaves)


def first_form_order(t: tuple) -> list[tuple[int, int]]:
    """Non-root nodes in first-form creation order (post-order, children right to left)."""
    n = leaf_count(t)
    inner = [iv for iv in node_intervals(t) if iv != (0, n)]
    return sorted(inner, key=lambda iv: (-iv[0], iv[1]))


def second_form_order(t: tuple) -> list[tuple[int, int]]:
    """Non-root nodes in second-form creation order (post-order, children left to right)."""
    n = leaf_count(t)
    inner = [iv for iv in node_intervals(t) if iv != (0, n)]
    return sorted(inner, key=lambda iv: (iv[0] + iv[1], iv[1]))


def ops_for_order(t: tuple, order: Sequence[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    """Root-acting lower indices that create the nodes of ``t`` in ``order``.

    ``order`` must list every non-root node after all of its descendants.
    """
    arity = node_arities(t)
    # current root inputs as intervals (leaves are size-1 intervals)
    items = [(j, 1) for j in range(leaf_count(t))]
    out = []
    for start, size in order:
        pos = next(k for k, it in enumerate(items) if it[0] == start)
        width = arity[(start, size)]
        covered = items[pos:pos + width]
        if covered[-1][0] + covered[-1][1] != start + size:
            raise ValueError("creation order visits a node before its descendants")
        items[pos:pos + width] = [(start, size)]
        out.append((pos, width - 1))
    return tuple(out)


@lru_cache(maxsize=None)
def tree_to_key(t: tuple) -> tuple[tuple[int, int], ...]:
    """First-form key of a tree: right-to-left post-order, offset = leaves to the left."""
    arity = node_arities(t)
    return tuple((s, arity[(s, z)] - 1) for s, z in first_form_order(t))


def tree_to_second(t: tuple) -> tuple[tuple[int, int], ...]:
    return ops_for_order(t, second_form_order(t))


@lru_cache(maxsize=None)
def key_to_tree(key: tuple[tuple[int, int], ...], n_leaves: int) -> tuple:
    """Apply root-acting operators to the corolla (all superscripts suppressed)."""
    ops = tuple(FaceOperator(i, l, j + 1) for j, (i, l) in enumerate(key))
    return eval_ops(ops, n_leaves)


class _Node:
    __slots__ = ("children",)

    def __init__(self, children):
        self.children = children

    def freeze(self):
        return tuple(LEAF if c is None else c.freeze() for c in self.children)


def eval_ops(ops: Sequence[FaceOperator], n_leaves: int) -> tuple:
    """Evaluate a composition with explicit or suppressed superscripts.

    Factor bookkeeping: ``d^q_{(i,l)}`` replaces factor ``q`` by the new
    inner node (position ``q``) followed by what remains of the old node
    (position ``q + 1``).  Raises ``ValueError`` on an inadmissible index.
    """
    root = _Node([None] * n_leaves)
    factors = [root]
    for j, op in enumerate(fill_superscripts(ops)):
        q = op.q
        if not 1 <= q <= len(factors):
            raise ValueError(f"operator {j + 1} acts on factor {q} of {len(factors)}")
        node = factors[q - 1]
        nq = len(node.children) - 2
        if not (0 <= op.i <= nq and 1 <= op.l <= nq and op.i + op.l <= nq + 1):
            raise ValueError(
                f"operator {j + 1} d_({op.i},{op.l}) invalid on a factor with {nq + 2} inputs"
            )
        inner = _Node(node.children[op.i:op.i + op.l + 1])
        node.children[op.i:op.i + op.l + 1] = [inner]
        factors[q - 1:q] = [inner, node]
    return root.freeze()


def factor_arities(ops: Sequence[FaceOperator], n_leaves: int) -> list[int] | None:
    """Input counts of the factors after each prefix; ``None`` if inadmissible."""
    sizes = [n_leaves]
    for op in fill_superscripts(ops):
        q = op.q
        if not 1 <= q <= len(sizes):
            return None
        nq = sizes[q - 1] - 2
        if not (0 <= op.i <= nq and 1 <= op.l <= nq and op.i + op.l <= nq + 1):
            return None
        sizes[q - 1:q] = [op.l + 1, nq + 2 - op.l]
    return sizes


def is_admissible(c: Composition) -> bool:
    """True iff every operator is index-valid on the factor it acts on."""
    return factor_arities(c.ops, c.ambient) is not None


def _check(c: Composition) -> None:
    if not is_admissible(c):
        raise ValueError(f"inadmissible composition {render_ops(c.explicit().ops, True)} "
                         f"on {c.ambient} inputs")


def comp_to_tree(c: Composition | Face) -> tuple:
    if isinstance(c, Face):
        return c.tree()
    _check(c)
    return eval_ops(c.ops, c.ambient)


def tree_to_comp(t: tuple) -> Face:
    if not is_valid_tree(t) or t == LEAF:
        raise ValueError("not a valid planar tree")
    return Face(leaf_count(t), tree_to_key(t))


def to_face(c: Composition) -> Face:
    return tree_to_comp(comp_to_tree(c))


def is_type_one(pairs: Sequence[tuple[int, int]]) -> bool:
    return all(pairs[k][0] >= pairs[k + 1][0] for k in range(len(pairs) - 1))


def is_type_two(pairs: Sequence[tuple[int, int]]) -> bool:
    return all(pairs[k][0] <= pairs[k + 1][0] + pairs[k + 1][1]
               for k in range(len(pairs) - 1))


def _root_only(c: Composition) -> bool:
    return all(op.q == j + 1 for j, op in enumerate(fill_superscripts(c.ops)))


def classify(c: Composition) -> str:
    """``first`` / ``second`` / ``raw``; a sequence of both types reports ``first``."""
    if not is_admissible(c) or not _root_only(c):
        return "raw"
    if is_type_one(c.pairs):
        return "first"
    if is_type_two(c.pairs):
        return "second"
    return "raw"


def normalize_first(c: Composition) -> Composition:
    """The unique equivalent composition in first fundamental form."""
    _check(c)
    key = tree_to_key(eval_ops(c.ops, c.ambient))
    return Composition(tuple(FaceOperator(i, l) for i, l in key), c.ambient, "first")


def normalize_second(c: Composition) -> Composition:
    """The unique equivalent composition in second fundamental form."""
    _check(c)
    pairs = tree_to_second(eval_ops(c.ops, c.ambient))
    return Composition(tuple(FaceOperator(i, l) for i, l in pairs), c.ambient, "second")


# ---------------------------------------------------------------------------
# face relations as rewrite rules

RULES = ("1", "1-", "2", "2-", "3", "3'")


class RelationError(ValueError):
    def __init__(self, rule: str, message: str):
        super().__init__(f"rule {rule}: {message}")
        self.rule = rule


def _rewrite_pair(a: FaceOperator, b: FaceOperator, rule: str):
    """Rewrite ``b a`` (``a`` applied first) by ``rule``; return new ``(a', b')`` or None."""
    if rule == "1":
        # d^p d^q = d^{q+1} d^p for p < q
        p, q = b.q, a.q
        if p < q:
            return (b, a.with_q(q + 1))
    elif rule == "1-":
        p, q1 = a.q, b.q
        if q1 - 1 > p:
            return (b.with_q(q1 - 1), a)
    elif rule == "2":
        # d^{q+1}_{(x,y)} d^q_{(c,e)} = d^q_{(c-x,e)} d^q_{(x,y+e)}, x <= c <= x+y
        if b.q == a.q + 1 and b.i <= a.i <= b.i + b.l:
            q = a.q
            return (FaceOperator(b.i, b.l + a.l, q), FaceOperator(a.i - b.i, a.l, q))
    elif rule == "2-":
        if b.q == a.q and b.l < a.l:
            q = a.q
            y = a.l - b.l
            if 0 <= b.i <= y:
                return (FaceOperator(a.i + b.i, b.l, q), FaceOperator(a.i, y, q + 1))
    elif rule == "3":
        # d^{q+1}_{(x,y)} d^q_{(c,e)} = d^{q+1}_{(c,e)} d^q_{(x+e,y)}, c < x
        if b.q == a.q + 1 and a.i < b.i:
            q = a.q
            return (FaceOperator(b.i + a.l, b.l, q), FaceOperator(a.i, a.l, q + 1))
    elif rule == "3'":
        # d^{q+1}_{(x,y)} d^q_{(c,e)} = d^{q+1}_{(c-y,e)} d^q_{(x,y)}, c > x+y
        if b.q == a.q + 1 and a.i > b.i + b.l:
            q = a.q
            return (FaceOperator(b.i, b.l, q), FaceOperator(a.i - b.l, a.l, q + 1))
    else:
        raise ValueError(f"unknown rule {rule!r}")
    return None


def _transport(prefix, later, q, ambient):
    """Re-address ``later`` operators after factors ``q`` and ``q+1`` traded places."""
    sizes = factor_arities(prefix, ambient)
    if sizes is None:
        raise RelationError("3", "inadmissible prefix")
    old = list(range(len(sizes)))
    cur = old[:]
    cur[q - 1], cur[q] = cur[q], cur[q - 1]
    fresh = len(old)
    out = []
    for op in later:
        ident = old[op.q - 1]
        pos = cur.index(ident)
        out.append(op.with_q(pos + 1))
        old[op.q - 1:op.q] = [fresh, ident]
        cur[pos:pos + 1] = [fresh, ident]
        fresh += 1
    return out


def apply_relation(c: Composition, site: int, rule: str) -> Composition:
    """Rewrite the operator pair at ``site`` (``ops[site]`` then ``ops[site + 1]``).

    ``rule`` is one of ``1``, ``2``, ``3``, ``3'`` read left to right as
    displayed, or ``1-`` / ``2-`` for the reverse readings of (1) and (2).
    Relations (3) and (3') exchange the order of the two factors they
    create, so superscripts of later operators that address those two
    positions are swapped to keep referring to the same nodes.  Raises
    :class:`RelationError` when the side condition fails.
    """
    if rule not in RULES:
        raise ValueError(f"unknown rule {rule!r}")
    ops = list(fill_superscripts(c.ops))
    if not 0 <= site < len(ops) - 1:
        raise RelationError(rule, f"site {site} out of range for {len(ops)} operators")
    new = _rewrite_pair(ops[site], ops[site + 1], rule)
    if new is None:
        raise RelationError(rule, "side condition does not hold at site "
                                  f"{site}: {render_ops([ops[site], ops[site + 1]], True)}")
    ops[site:site + 2] = new
    if rule in ("3", "3'"):
        ops[site + 2:] = _transport(ops[:site + 2], ops[site + 2:], new[0].q, c.ambient)
    out = Composition(tuple(ops), c.ambient, "raw")
    if not is_admissible(out):
        raise RelationError(rule, "rewrite produced an inadmissible composition")
    return out


FIRST_RULES = ("2-", "3", "1")
SECOND_RULES = ("2-", "3'", "1")


def applicable_rewrites(c: Composition, rules: Sequence[str] = FIRST_RULES):
    ops = fill_superscripts(c.ops)
    for site in range(len(ops) - 1):
        for rule in rules:
            if _rewrite_pair(ops[site], ops[site + 1], rule) is not None:
                yield site, rule


def rewrite_normalize(c: Composition, rules: Sequence[str] = FIRST_RULES,
                      rng: random.Random | None = None, max_steps: int = 100000) -> Composition:
    """Normalize by rewriting alone.

    Without ``rng`` the leftmost applicable rewrite is taken, trying rules
    in the order given; with ``rng`` a uniformly random applicable rewrite
    is taken at each step.  Stops when no rule applies.
    """
    _check(c)
    cur = Composition(fill_superscripts(c.ops), c.ambient)
    for _ in range(max_steps):
        moves = list(applicable_rewrites(cur, rules))
        if not moves:
            form = "first" if rules == FIRST_RULES else "second" if rules == SECOND_RULES else "raw"
            return Composition(cur.ops, cur.ambient, form)
        site, rule = rng.choice(moves) if rng is not None else moves[0]
        cur = apply_relation(cur, site, rule)
    raise RuntimeError("rewriting did not terminate within max_steps")


def random_composition(ambient: int, length: int, rng: random.Random) -> Composition:
    """A random admissible composition with explicit superscripts."""
    sizes = [ambient]
    ops = []
    for _ in range(length):
        choices = [q for q, s in enumerate(sizes) if s >= 3]
        if not choices:
            break
        q = rng.choice(choices)
        nq = sizes[q] - 2
        l = rng.randint(1, nq)
        i = rng.randint(0, nq + 1 - l)
        ops.append(FaceOperator(i, l, q + 1))
        sizes[q:q + 1] = [l + 1, nq + 2 - l]
    return Composition(tuple(ops), ambient)


# ---------------------------------------------------------------------------
# enumeration


@lru_cache(maxsize=None)
def _trees(n_leaves: int) -> tuple:
    """All planar trees with ``n_leaves`` leaves (a single leaf for 1)."""
    if n_leaves == 1:
        return (LEAF,)
    out = []
    for k in range(2, n_leaves + 1):
        for parts in _compositions(n_leaves, k):
            for kids in _product([_trees(p) for p in parts]):
                out.append(tuple(kids))
    return tuple(out)


def _compositions(total: int, k: int) -> Iterator[tuple[int, ...]]:
    for cuts in combinations(range(1, total), k - 1):
        bounds = (0,) + cuts + (total,)
        yield tuple(bounds[j + 1] - bounds[j] for j in range(k))


def _product(lists):
    if not lists:
        yield ()
        return
    for head in lists[0]:
        for tail in _product(lists[1:]):
            yield (head,) + tail


@lru_cache(maxsize=None)
def all_faces(n_leaves: int) -> tuple[Face, ...]:
    """Every face of ``K_{n_leaves}``, sorted by dimension then key."""
    if n_leaves < 2:
        raise ValueError("associahedra need at least two inputs")
    faces = [Face(n_leaves, tree_to_key(t)) for t in _trees(n_leaves)]
    return tuple(sorted(faces, key=lambda f: (f.dim, f.key)))


def enumerate_faces(n_plus_2: int, k: int) -> list[Face]:
    """All ``k``-dimensional faces, lexicographic in the canonical key."""
    n = n_plus_2 - 2
    if n < 0 or not 0 <= k <= n:
        raise ValueError(f"dimension {k} out of range for K_{n_plus_2}")
    return [f for f in all_faces(n_plus_2) if f.dim == k]


def facets(n_plus_2: int) -> list[Face]:
    n = n_plus_2 - 2
    return [Face(n_plus_2, ((i, l),)) for i in range(n + 1) for l in range(1, n + 1)
            if i + l <= n + 1]


# ---------------------------------------------------------------------------
# face order, contractions, min/max vertices


def contraction(t: tuple, node: tuple[int, int]) -> tuple:
    """Contract the edge between ``node`` (a leaf interval) and its parent."""
    n = leaf_count(t)
    ivs = node_intervals(t)
    if node not in ivs or node == (0, n):
        raise ValueError(f"{node} is not a non-root node of the tree")
    return tree_from_intervals([iv for iv in ivs if iv != node], n)


def is_face_of(a: Face, b: Face) -> bool:
    """True iff ``a`` is a face of ``b`` (``b``'s tree is a contraction of ``a``'s)."""
    if a.ambient != b.ambient:
        raise ValueError("faces of different associahedra")
    return set(node_intervals(b.tree())) <= set(node_intervals(a.tree()))


def is_face_of_by_contraction(a: Face, b: Face) -> bool:
    """Search over contraction sequences; slow, kept as an independent oracle."""
    target = b.tree()
    seen = set()
    todo = [a.tree()]
    while todo:
        t = todo.pop()
        if t == target:
            return True
        if t in seen or leaf_count(t) != leaf_count(target):
            continue
        seen.add(t)
        n = leaf_count(t)
        for iv in node_intervals(t):
            if iv != (0, n):
                todo.append(contraction(t, iv))
    return False


def left_comb(n_leaves: int) -> tuple:
    t = (LEAF, LEAF)
    for _ in range(n_leaves - 2):
        t = (t, LEAF)
    return t


def right_comb(n_leaves: int) -> tuple:
    t = (LEAF, LEAF)
    for _ in range(n_leaves - 2):
        t = (LEAF, t)
    return t


def _replace_nodes(t: tuple, comb) -> tuple:
    if t == LEAF:
        return LEAF
    kids = [_replace_nodes(c, comb) for c in t]
    return comb(kids)


def _left(kids):
    t = (kids[0], kids[1])
    for k in kids[2:]:
        t = (t, k)
    return t


def _right(kids):
    t = (kids[-2], kids[-1])
    for k in reversed(kids[:-2]):
        t = (k, t)
    return t


def min_max_vertex(f: Face) -> tuple[tuple, tuple]:
    """Minimal and maximal vertices: every node becomes a left or right comb."""
    t = f.tree()
    return _replace_nodes(t, _left), _replace_nodes(t, _right)


# ---------------------------------------------------------------------------
# Tamari order


def is_binary(t: tuple) -> bool:
    return t == LEAF or (len(t) == 2 and all(is_binary(c) for c in t))


def tamari_covers(t: tuple) -> set[tuple]:
    """All trees reached by one right-shift ``((A B) C) -> (A (B C))``."""
    if not is_binary(t):
        raise ValueError("Tamari covers are defined on binary trees")
    out: set[tuple] = set()

    def walk(node):
        if node == LEAF:
            return []
        left, right = node
        res = []
        if left != LEAF:
            a, b = left
            res.append((a, (b, right)))
        res.extend((x, right) for x in walk(left))
        res.extend((left, x) for x in walk(right))
        return res

    out.update(walk(t))
    return out


@lru_cache(maxsize=None)
def binary_trees(n_leaves: int) -> tuple:
    return tuple(t for t in _trees(n_leaves) if is_binary(t))


class TamariPoset:
    """Vertices of ``K_{n_leaves}`` with up-sets stored as bit masks."""

    def __init__(self, n_leaves: int):
        self.n_leaves = n_leaves
        self.elements = sorted(binary_trees(n_leaves), key=tree_str)
        self.index = {t: j for j, t in enumerate(self.elements)}
        self.covers = [sorted(self.index[c] for c in tamari_covers(t)) for t in self.elements]
        self.up = [0] * len(self.elements)
        done = [False] * len(self.elements)
        for start in range(len(self.elements)):
            stack = [(start, False)]
            while stack:
                x, expanded = stack.pop()
                if done[x]:
                    continue
                if expanded:
                    mask = 1 << x
                    for y in self.covers[x]:
                        mask |= self.up[y]
                    self.up[x] = mask
                    done[x] = True
                else:
                    stack.append((x, True))
                    stack.extend((y, False) for y in self.covers[x] if not done[y])

    def leq(self, a: tuple, b: tuple) -> bool:
        return bool(self.up[self.index[a]] >> self.index[b] & 1)

    def is_lattice(self) -> bool:
        """Every pair has a join; with a bottom element this makes a finite lattice."""
        by_up = {m: j for j, m in enumerate(self.up)}
        size = len(self.elements)
        full = (1 << size) - 1
        bottoms = [j for j in range(size) if self.up[j] == full]
        if len(bottoms) != 1:
            return False
        for a in range(size):
            ua = self.up[a]
            for b in range(a + 1, size):
                if (ua & self.up[b]) not in by_up:
                    return False
        return True

    def bottom(self) -> tuple:
        full = (1 << len(self.elements)) - 1
        return next(self.elements[j] for j, m in enumerate(self.up) if m == full)

    def top(self) -> tuple:
        return next(t for j, t in enumerate(self.elements) if self.up[j] == 1 << j)

    def hasse_edges(self) -> list[tuple[tuple, tuple]]:
        return [(self.elements[x], self.elements[y])
                for x in range(len(self.elements)) for y in self.covers[x]]


@lru_cache(maxsize=16)
def tamari_poset(n_leaves: int) -> TamariPoset:
    return TamariPoset(n_leaves)


def tamari_leq(a: tuple, b: tuple) -> bool:
    """``a <= b`` iff ``b`` is reachable from ``a`` by right-shifts."""
    na, nb = leaf_count(a), leaf_count(b)
    if na != nb:
        raise ValueError("trees with different leaf counts")
    if na <= 10:
        return tamari_poset(na).leq(a, b)
    seen = {a}
    todo = deque([a])
    while todo:
        t = todo.popleft()
        if t == b:
            return True
        for c in tamari_covers(t):
            if c not in seen:
                seen.add(c)
                todo.append(c)
    return False
