"""Associahedral sets: multi-indexed cells with face and degeneracy operators.

A cell of grade ``((j_1, n_1), ..., (j_{k+1}, n_{k+1}))`` is modelled on a
product ``K_{n_1+2} x ... x K_{n_{k+1}+2}``.  Only free sets are built here:
every cell is a word of degeneracies and faces applied to a generator, and
the generator is itself a face of some ``K_{n+2}`` (its grade is the
canonical key of that face).

Cells are stored geometrically.  Each block lists its inputs in order; an
input is either a leaf interval ``(start, size)`` of the generator or the
marker ``PHANTOM`` for an input that a degeneracy inserted and that the cell
ignores.  Faces regroup consecutive inputs of one block into a new block,
degeneracies insert a phantom input.  Two words name the same cell exactly
when they produce the same blocks, which is what makes the relation list
checkable.

A block with at most one real input is *collapsed*: its factor is projected
to a point.  The unit relations ``d s = 1`` produce such blocks, so identity
"up to collapsed blocks" is exposed separately as :meth:`AssocCell.reduced`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Mapping, Sequence

from .assoc_core import Composition, FaceOperator, all_faces, key_to_tree
from .chain_complex import Chain, FaceSignContext, TensorChain, boundary, face_sign, node_order
from .diagonal import DEFAULT, Diagonal

PHANTOM = "P"

MultiIndex = tuple[tuple[int, int], ...]


def check_multi_index(index: Sequence[tuple[int, int]]) -> int:
    """Validate a grade and return its ``n``.

    Requires ``j`` non-increasing with last ``j`` zero, ``n_q >= 0`` and
    ``j_1 <= n`` where ``n = sum(n_q) + k``.
    """
    if not index:
        raise ValueError("a multi-index has at least one block")
    js = [j for j, _ in index]
    ns = [m for _, m in index]
    if any(m < 0 for m in ns):
        raise ValueError(f"negative block size in {index}")
    if js[-1] != 0:
        raise ValueError(f"last block must have j = 0, got {index}")
    if any(a < b for a, b in zip(js, js[1:])):
        raise ValueError(f"j values must be non-increasing, got {index}")
    n = sum(ns) + len(index) - 1
    if js[0] > n:
        raise ValueError(f"j_1 = {js[0]} exceeds n = {n}")
    return n


def index_to_key(index: MultiIndex) -> tuple[tuple[int, int], ...]:
    """The type I sequence ``(j_q, n_q + 1)`` of the non-root blocks."""
    return tuple((j, m + 1) for j, m in index[:-1])


def key_to_index(key, n: int) -> MultiIndex:
    inner = tuple((j, l - 1) for j, l in key)
    root = n - len(key) - sum(m for _, m in inner)
    return inner + ((0, root),)


def _context(index: MultiIndex, q: int, i: int, l: int) -> FaceSignContext:
    n = sum(m for _, m in index) + len(index) - 1
    return FaceSignContext(n, index_to_key(index), q, i, l)


def _check_face(index: MultiIndex, q: int, i: int, l: int) -> None:
    if not 1 <= q <= len(index):
        raise ValueError(f"factor {q} out of range 1..{len(index)}")
    nq = index[q - 1][1]
    if not (0 <= i <= nq and 1 <= l <= nq and i + l <= nq + 1):
        raise ValueError(f"d^{q}_({i},{l}) needs 0 <= i <= {nq}, 1 <= l <= {nq}, i + l <= {nq + 1}")


def face_target_index(index: MultiIndex, q: int, i: int, l: int) -> MultiIndex:
    """Grade of ``d^q_{(i,l)}`` applied to a cell of grade ``index``.

    The block ``(j(q, beta), l - 1)`` is inserted at position ``beta`` and
    block ``q`` becomes ``(j_q, n_q - l)``.
    """
    index = tuple(index)
    check_multi_index(index)
    _check_face(index, q, i, l)
    ctx = _context(index, q, i, l)
    beta = ctx.beta
    # beta is a maximum over 1..q, so the new block never lands after block q
    assert 1 <= beta <= q
    out = list(index)
    jq, nq = out[q - 1]
    out[q - 1] = (jq, nq - l)
    out.insert(beta - 1, (ctx.j(q, beta), l - 1))
    return tuple(out)


def face_sign_of(index: MultiIndex, q: int, i: int, l: int) -> int:
    """``(-1)^(eps1 + eps2)`` for ``d^q_{(i,l)}`` on a cell of grade ``index``."""
    return face_sign(_context(tuple(index), q, i, l))


def degeneracy_target_index(index: MultiIndex, q: int, j: int) -> MultiIndex:
    index = tuple(index)
    if not 1 <= q <= len(index):
        raise ValueError(f"factor {q} out of range 1..{len(index)}")
    nq = index[q - 1][1]
    if not 1 <= j <= nq + 3:
        raise ValueError(f"s^{q}_{j} needs 1 <= j <= {nq + 3}")
    out = list(index)
    out[q - 1] = (index[q - 1][0], nq + 1)
    return tuple(out)


# ---------------------------------------------------------------------------
# cells


def _real(entries) -> list:
    return [e for e in entries if e != PHANTOM]


def _span(entries):
    """The generator interval covered by the real inputs, or ``PHANTOM``."""
    real = _real(entries)
    if not real:
        return PHANTOM
    start = real[0][0]
    return (start, real[-1][0] + real[-1][1] - start)


@dataclass(frozen=True)
class Block:
    j: int
    entries: tuple
    uid: int = field(compare=False)

    @property
    def n(self) -> int:
        return len(self.entries) - 2

    @property
    def collapsed(self) -> bool:
        return len(_real(self.entries)) <= 1


@dataclass(frozen=True)
class AssocCell:
    """A cell of a free associahedral set.

    ``blocks`` are in grade order (root last).  Equality compares the
    generator and every block's ``j`` and inputs; block ids only track
    identity through a sequence of operators.
    """

    generator: str
    blocks: tuple[Block, ...]

    @property
    def index(self) -> MultiIndex:
        return tuple((b.j, b.n) for b in self.blocks)

    @property
    def n(self) -> int:
        return sum(b.n for b in self.blocks) + len(self.blocks) - 1

    @property
    def k(self) -> int:
        return len(self.blocks) - 1

    @property
    def dim(self) -> int:
        return self.n - self.k

    @property
    def degenerate(self) -> bool:
        return any(PHANTOM in b.entries for b in self.blocks)

    def position(self, uid: int) -> int:
        """1-based position of the block with id ``uid``."""
        for q, b in enumerate(self.blocks, start=1):
            if b.uid == uid:
                return q
        raise KeyError(uid)

    def shape(self) -> tuple:
        """Geometric identity: the generator and the blocks' inputs, ignoring
        block order and ``j`` labels."""
        return (self.generator, tuple(sorted((b.entries for b in self.blocks), key=repr)))

    def reduced(self) -> tuple:
        """Identity up to collapsed blocks: the generator and the set of
        uncollapsed blocks with their inputs."""
        return (self.generator,
                frozenset(b.entries for b in self.blocks if not b.collapsed))

    def core_key(self) -> tuple[tuple[int, int], ...]:
        """First-form key, inside the generator's ambient, of the face the
        cell projects onto (phantoms and collapsed blocks forgotten)."""
        spans = set()
        for b in self.blocks:
            if len(_real(b.entries)) >= 2:
                spans.add(_span(b.entries))
        ambient = _leaves(self)
        spans.discard((0, ambient))
        arity = {}
        for b in self.blocks:
            if len(_real(b.entries)) >= 2:
                arity[_span(b.entries)] = len(_real(b.entries))
        ordered = sorted(spans, key=lambda iv: (-iv[0], iv[1]))
        return tuple((s, arity[(s, z)] - 1) for s, z in ordered)

    def __str__(self) -> str:
        def show(e):
            return "·" if e == PHANTOM else str(e[0]) if e[1] == 1 else f"[{e[0]}:{e[0] + e[1]}]"
        body = " | ".join(f"j={b.j}: " + " ".join(show(e) for e in b.entries) for b in self.blocks)
        return f"{self.generator}<{body}>"


def _leaves(cell: AssocCell) -> int:
    total = 0
    for b in cell.blocks:
        for e in b.entries:
            if e != PHANTOM:
                total = max(total, e[0] + e[1])
    return total


def _fresh(cell: AssocCell) -> int:
    return max(b.uid for b in cell.blocks) + 1


def apply_face(cell: AssocCell, q: int, i: int, l: int) -> AssocCell:
    """``d^q_{(i,l)}``: group inputs ``i+1 .. i+l+1`` of block ``q``.

    The new block sits at ``beta`` with ``j = j(q, beta)``; block ``q``
    keeps its id and moves to position ``q + 1``.
    """
    index = cell.index
    target = face_target_index(index, q, i, l)
    beta = _context(index, q, i, l).beta
    blocks = list(cell.blocks)
    old = blocks[q - 1]
    group = old.entries[i:i + l + 1]
    parent = Block(old.j, old.entries[:i] + (_span(group),) + old.entries[i + l + 1:], old.uid)
    child = Block(target[beta - 1][0], group, _fresh(cell))
    blocks[q - 1] = parent
    blocks.insert(beta - 1, child)
    out = AssocCell(cell.generator, tuple(blocks))
    assert out.index == target
    return out


def apply_degeneracy(cell: AssocCell, q: int, j: int) -> AssocCell:
    """``s^q_j``: insert a phantom as input ``j`` of block ``q``."""
    degeneracy_target_index(cell.index, q, j)
    blocks = list(cell.blocks)
    b = blocks[q - 1]
    blocks[q - 1] = Block(b.j, b.entries[:j - 1] + (PHANTOM,) + b.entries[j - 1:], b.uid)
    return AssocCell(cell.generator, tuple(blocks))


def apply_word(cell: AssocCell, word: Sequence[tuple]) -> AssocCell:
    """Apply ``("d", q, i, l)`` / ``("s", q, j)`` letters, first letter first."""
    for letter in word:
        if letter[0] == "d":
            cell = apply_face(cell, *letter[1:])
        elif letter[0] == "s":
            cell = apply_degeneracy(cell, *letter[1:])
        else:
            raise ValueError(f"unknown letter {letter!r}")
    return cell


def apply_composition(cell: AssocCell, q: int, comp: Composition | Sequence[FaceOperator]) -> AssocCell:
    """Apply a composition of face operators to block ``q`` alone.

    The composition's superscripts address the factors it creates in its
    own convention (a new factor sits just before the one it was cut
    from); they are translated to grade positions through block ids.
    """
    ops = comp.ops if isinstance(comp, Composition) else tuple(comp)
    from .assoc_core import fill_superscripts
    local = [cell.blocks[q - 1].uid]
    for op in fill_superscripts(ops):
        uid = local[op.q - 1]
        before = {b.uid for b in cell.blocks}
        cell = apply_face(cell, cell.position(uid), op.i, op.l)
        (new,) = {b.uid for b in cell.blocks} - before
        local[op.q - 1:op.q] = [new, uid]
    return cell


# ---------------------------------------------------------------------------
# free sets


def generator_cell(name: str, index: MultiIndex) -> AssocCell:
    """The generator of grade ``index`` as a face of ``K_{n+2}``."""
    index = tuple(index)
    n = check_multi_index(index)
    key = index_to_key(index)
    try:
        t = key_to_tree(key, n + 2)
    except (ValueError, IndexError, StopIteration) as exc:
        raise ValueError(f"{index} is not the grade of a face of K_{n + 2}") from exc
    kids = _children_all(t)
    blocks = []
    for uid, node in enumerate(node_order(t)):
        blocks.append(Block(node[0], tuple(kids[node]), uid))
    cell = AssocCell(name, tuple(blocks))
    if cell.index != index:
        raise ValueError(f"{index} is not the grade of a face of K_{n + 2}")
    return cell


def _children_all(t: tuple) -> dict:
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


class FreeAssocSet:
    """The free associahedral set on named generators.

    ``generators`` maps a name to a grade; each grade must be the key of a
    face of ``K_{n+2}`` so that its cell has a geometric model.
    """

    def __init__(self, generators: Mapping[str, Sequence[tuple[int, int]]]):
        self.generators = {name: generator_cell(name, tuple(map(tuple, idx)))
                           for name, idx in generators.items()}

    @classmethod
    def on_tops(cls, ns: Sequence[int]) -> "FreeAssocSet":
        """One top generator ``T_{n+2}`` of grade ``((0, n),)`` per ``n``."""
        return cls({f"T{n + 2}": ((0, n),) for n in ns})

    def nondegenerate(self) -> Iterator[AssocCell]:
        """Every nondegenerate cell: all iterated faces of the generators."""
        for g in self.generators.values():
            seen = {g}
            stack = [g]
            while stack:
                x = stack.pop()
                yield x
                for _, y in face_terms(x):
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)


# ---------------------------------------------------------------------------
# chains


def face_terms(cell: AssocCell) -> list[tuple[int, AssocCell]]:
    """Signed codimension-one faces ``(-1)^(eps1+eps2) d^q_{(i,l)} cell``."""
    out = []
    index = cell.index
    for q, (_, nq) in enumerate(index, start=1):
        for l in range(1, nq + 1):
            for i in range(0, nq + 2 - l):
                out.append((face_sign_of(index, q, i, l), apply_face(cell, q, i, l)))
    return out


def normalized_boundary(cell: AssocCell) -> dict[AssocCell, int]:
    """Boundary in the quotient by degenerate cells."""
    out: dict[AssocCell, int] = {}
    for s, y in face_terms(cell):
        if y.degenerate:
            continue
        out[y] = out.get(y, 0) + s
    return {y: c for y, c in out.items() if c}


def unit_reduction(cell: AssocCell) -> AssocCell | None:
    """Drop collapsed blocks whose only phantom makes them a point.

    Returns the cell a unit relation identifies ``cell`` with, or ``None``
    when ``cell`` is not of that shape (it still has other phantoms, or a
    collapsed block is not a two-input point block).
    """
    keep = []
    for b in cell.blocks:
        if b.collapsed:
            if len(b.entries) != 2 or not _real(b.entries):
                return None
            continue
        if PHANTOM in b.entries:
            return None
        keep.append(b)
    return AssocCell(cell.generator, tuple(keep))


def degenerate_boundary_defect(cell: AssocCell) -> dict[tuple, int]:
    """Image of ``d(cell)`` in normalized chains for a degenerate ``cell``.

    Faces that are still degenerate vanish; faces that a unit relation
    identifies with a nondegenerate cell are kept under that identity.
    The quotient is a chain complex exactly when this is empty.
    """
    out: dict[tuple, int] = {}
    for s, y in face_terms(cell):
        r = unit_reduction(y)
        if r is None:
            continue
        key = r.reduced()
        out[key] = out.get(key, 0) + s * canonical_order_sign(r)
    return {k: c for k, c in out.items() if c}


def canonical_order_sign(cell: AssocCell) -> int:
    """Koszul sign of sorting the blocks of ``cell`` into first-form order
    of their spans (root last), each block graded by its ``n``."""
    order = [b.uid for b in cell.blocks]
    spans = {b.uid: _span(b.entries) for b in cell.blocks}
    total = _leaves(cell)
    target = sorted(order, key=lambda u: (spans[u] == (0, total), -spans[u][0], spans[u][1]))
    return _order_sign_to(cell, order, target)


def cell_diagonal(cell: AssocCell, delta: Diagonal = DEFAULT) -> dict[tuple[AssocCell, AssocCell], int]:
    """``Δ_K`` on a nondegenerate cell by the multiplicative rule.

    Each block ``K_{n_q+2}`` contributes the terms of its top diagonal; the
    chosen left and right faces are applied to that block, and the sign
    collects the Koszul sign of the interleaving together with the sign of
    sorting the product of node cells into grade order.
    """
    per_block = [delta.top(b.n) for b in cell.blocks]
    uids = [b.uid for b in cell.blocks]
    out: dict[tuple[AssocCell, AssocCell], int] = {}
    for combo in product(*per_block):
        sign = 1
        odd = 0
        seen_right = 0
        left, right = cell, cell
        lorder: list[int] = []
        rorder: list[int] = []
        for uid, (a, b, s) in zip(uids, combo):
            sign *= s
            left, la = _apply_key(left, uid, a)
            right, rb = _apply_key(right, uid, b)
            da = sum(left.blocks[left.position(u) - 1].n for u in la)
            db = sum(right.blocks[right.position(u) - 1].n for u in rb)
            # moving this block's left factor past earlier right factors
            odd ^= (da & 1) & (seen_right & 1)
            seen_right += db
            lorder += la
            rorder += rb
        sign *= -1 if odd else 1
        sign *= _order_sign(left, lorder) * _order_sign(right, rorder)
        k = (left, right)
        out[k] = out.get(k, 0) + sign
    return {k: v for k, v in out.items() if v}


def _apply_key(cell: AssocCell, uid: int, key) -> tuple[AssocCell, list[int]]:
    """Apply a first-form key to block ``uid``; return the cell and the ids
    of the block's node cells in the key's canonical order, root last."""
    created = []
    for i, l in key:
        before = {b.uid for b in cell.blocks}
        cell = apply_face(cell, cell.position(uid), i, l)
        (new,) = {b.uid for b in cell.blocks} - before
        created.append(new)
    return cell, created + [uid]


def _order_sign(cell: AssocCell, order: list[int]) -> int:
    return _order_sign_to(cell, order, [b.uid for b in cell.blocks])


def _order_sign_to(cell: AssocCell, order: list[int], target: list[int]) -> int:
    dims = {b.uid: b.n for b in cell.blocks}
    pos = {u: j for j, u in enumerate(target)}
    seq = [pos[u] for u in order]
    odd = 0
    for a in range(len(seq)):
        if dims[order[a]] % 2 == 0:
            continue
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b] and dims[order[b]] % 2:
                odd ^= 1
    return -1 if odd else 1


def _tensor_boundary(t: dict[tuple[AssocCell, AssocCell], int]) -> dict:
    out: dict = {}
    for (a, b), c in t.items():
        for y, s in normalized_boundary(a).items():
            k = (y, b)
            out[k] = out.get(k, 0) + c * s
        sa = -1 if a.dim % 2 else 1
        for y, s in normalized_boundary(b).items():
            k = (a, y)
            out[k] = out.get(k, 0) + c * s * sa
    return {k: v for k, v in out.items() if v}


def normalized_chain_map_defect(cell: AssocCell, delta: Diagonal = DEFAULT) -> dict:
    """``(d⊗1 + 1⊗d)Δx − Δ(dx)`` in normalized chains."""
    lhs = _tensor_boundary(cell_diagonal(cell, delta))
    for y, s in normalized_boundary(cell).items():
        for k, v in cell_diagonal(y, delta).items():
            lhs[k] = lhs.get(k, 0) - s * v
    return {k: v for k, v in lhs.items() if v}


def compare_with_associahedron(n: int, delta: Diagonal = DEFAULT, with_diagonal: bool = True) -> list[str]:
    """Compare normalized chains of the free set on ``T_{n+2}`` with ``C_*(K_{n+2})``.

    Cells are matched to faces through :meth:`AssocCell.core_key`; the
    grade of every cell must equal the canonical key of its face, the
    boundaries must agree coefficientwise and, with ``with_diagonal``, so
    must the diagonals.  Returns a list of mismatch descriptions.
    """
    S = FreeAssocSet.on_tops([n])
    problems = []
    cells = list(S.nondegenerate())
    faces = {f.key for f in all_faces(n + 2)}
    keys = {}
    for x in cells:
        key = x.core_key()
        if index_to_key(x.index) != key:
            problems.append(f"grade {x.index} of {x} differs from its face key {key}")
        keys[x] = key
    if set(keys.values()) != faces or len(keys) != len(faces):
        problems.append(f"{len(keys)} cells for {len(faces)} faces")
        return problems
    ambient = n + 2
    from .assoc_core import Face
    for x in cells:
        got = Chain(ambient, {keys[y]: c for y, c in normalized_boundary(x).items()})
        want = boundary(Face(ambient, keys[x]))
        if got != want:
            problems.append(f"boundary differs at {x}")
        if with_diagonal:
            got_d = TensorChain(ambient)
            for (a, b), c in cell_diagonal(x, delta).items():
                got_d.add(a.core_key(), b.core_key(), c)
            want_d = TensorChain(ambient, delta.face(ambient, keys[x]))
            if got_d != want_d:
                problems.append(f"diagonal differs at {x}")
    return problems


# ---------------------------------------------------------------------------
# the relation list


@dataclass(frozen=True)
class RelationInstance:
    """One instance of a listed relation: ``lhs`` and ``rhs`` words on ``cell``.

    ``unit`` marks the ``d s = 1`` cases, which hold up to collapsed
    blocks.  ``literal_rhs`` is the right side with the superscripts as
    displayed; it differs from ``rhs`` only when a new block lands before
    the block the degeneracy acts on.
    """

    name: str
    cell: AssocCell
    lhs: tuple
    rhs: tuple
    literal_rhs: tuple
    unit: bool = False

    def holds(self) -> bool:
        """Both sides give the same geometric cell."""
        return self._same(self.rhs)

    def literal_holds(self) -> bool:
        try:
            return self._same(self.literal_rhs)
        except ValueError:
            return False

    def grade_agrees(self) -> bool:
        """Both sides also carry the same grade (``j`` labels and block order)."""
        a = apply_word(self.cell, self.lhs)
        b = apply_word(self.cell, self.rhs)
        if self.unit:
            # drop the two-input point block the face left behind
            q = self.lhs[0][1]
            touched = {self.cell.blocks[q - 1].uid, _fresh(self.cell)}
            kept = [x for x in a.blocks
                    if not (x.uid in touched and x.collapsed and len(x.entries) == 2)]
            return len(kept) == len(b.blocks) and tuple((x.j, x.n) for x in kept) == b.index
        return a.index == b.index

    def _same(self, rhs) -> bool:
        a = apply_word(self.cell, self.lhs)
        b = apply_word(self.cell, rhs)
        if self.unit:
            return a.reduced() == b.reduced()
        return a.shape() == b.shape()


DS_CASES = ("p<q", "p>q", "after", "inside", "before", "unit-a", "unit-b", "unit-c", "unit-d")


def _ds_case(nq: int, i: int, l: int, j: int) -> str:
    """Which displayed case ``d^q_{(i,l)} s^q_j`` falls under (``nq`` before ``s``)."""
    if (i, l) == (j - 1, 1) and 1 <= j < nq + 3:
        return "unit-a"
    if (i, l) == (j - 2, 1) and 1 < j <= nq + 3:
        return "unit-b"
    if (i, l) == (0, nq + 1) and j == nq + 3:
        return "unit-c"
    if (i, l) == (1, nq + 1) and j == 1:
        return "unit-d"
    if i + l + 1 < j:
        return "after"
    if i < j < i + l + 2 and l > 1:
        return "inside"
    if i >= j and l <= nq:
        return "before"
    raise ValueError(f"no displayed case covers d_({i},{l}) s_{j} with n_q = {nq}")


def ds_relation(cell: AssocCell, p: int, i: int, l: int, q: int, j: int) -> RelationInstance:
    """``d^p_{(i,l)} s^q_j`` rewritten by the displayed face/degeneracy rules.

    The right side names the degeneracy's block by where it sits after the
    face; ``literal_rhs`` keeps the displayed superscript.
    """
    lhs = (("s", q, j), ("d", p, i, l))
    nq = cell.index[q - 1][1]
    mid = apply_degeneracy(cell, q, j)
    beta = _context(mid.index, p, i, l).beta
    if p < q:
        return RelationInstance("p<q", cell, lhs, (("d", p, i, l), ("s", q + 1, j)),
                                (("d", p, i, l), ("s", q + 1, j)))
    if p > q:
        at = q + 1 if beta <= q else q
        return RelationInstance("p>q", cell, lhs, (("d", p, i, l), ("s", at, j)),
                                (("d", p, i, l), ("s", q, j)))
    case = _ds_case(nq, i, l, j)
    if case == "after":
        rhs = (("d", q, i, l), ("s", q + 1, j - l))
        return RelationInstance(case, cell, lhs, rhs, rhs)
    if case == "inside":
        beta_x = _context(cell.index, q, i, l - 1).beta
        return RelationInstance(case, cell, lhs, (("d", q, i, l - 1), ("s", beta_x, j - i)),
                                (("d", q, i, l - 1), ("s", q, j - i)))
    if case == "before":
        rhs = (("d", q, i - 1, l), ("s", q + 1, j))
        return RelationInstance(case, cell, lhs, rhs, rhs)
    return RelationInstance(case, cell, lhs, (), (), unit=True)


def ss_relation(cell: AssocCell, p: int, j: int, q: int, jp: int) -> RelationInstance:
    """``s^p_j s^q_{j'}`` by the two displayed degeneracy rules."""
    lhs = (("s", q, jp), ("s", p, j))
    if p != q:
        rhs = (("s", p, j), ("s", q, jp))
        return RelationInstance("ss p!=q", cell, lhs, rhs, rhs)
    if j <= jp:
        rhs = (("s", q, j), ("s", q, jp + 1))
        return RelationInstance("ss p=q", cell, lhs, rhs, rhs)
    raise ValueError("the displayed rule needs j <= j' when p = q")


def dd_relations(cell: AssocCell, q: int, comp: Composition) -> Iterator[tuple[str, Composition]]:
    """Every single rewrite of ``comp`` by relations (1)-(3), to be applied on block ``q``."""
    from .assoc_core import RelationError, applicable_rewrites, apply_relation
    for site, rule in applicable_rewrites(comp, ("1", "1-", "2", "2-", "3", "3'")):
        try:
            yield rule, apply_relation(comp, site, rule)
        except RelationError:
            continue


# ---------------------------------------------------------------------------
# random instances


def random_cell(rng: random.Random, max_n: int = 5, max_faces: int = 3, max_degens: int = 3) -> AssocCell:
    """A generator ``T_{n+2}`` followed by random faces, then random degeneracies."""
    n = rng.randint(1, max_n)
    cell = generator_cell(f"T{n + 2}", ((0, n),))
    for _ in range(rng.randint(0, max_faces)):
        opts = [(q, b.n) for q, b in enumerate(cell.blocks, start=1) if b.n >= 1]
        if not opts:
            break
        q, nq = rng.choice(opts)
        l = rng.randint(1, nq)
        i = rng.randint(0, nq + 1 - l)
        cell = apply_face(cell, q, i, l)
    for _ in range(rng.randint(0, max_degens)):
        q = rng.randint(1, len(cell.blocks))
        cell = apply_degeneracy(cell, q, rng.randint(1, cell.blocks[q - 1].n + 3))
    return cell


def random_relation(rng: random.Random, max_n: int = 5) -> RelationInstance:
    """A random face/degeneracy or degeneracy/degeneracy relation instance."""
    cell = random_cell(rng, max_n)
    kq = len(cell.blocks)
    if rng.random() < 0.2:
        p, q = rng.randint(1, kq), rng.randint(1, kq)
        if p == q:
            jp = rng.randint(1, cell.blocks[q - 1].n + 3)
            j = rng.randint(1, jp)
        else:
            jp = rng.randint(1, cell.blocks[q - 1].n + 3)
            j = rng.randint(1, cell.blocks[p - 1].n + 3)
        return ss_relation(cell, p, j, q, jp)
    q = rng.randint(1, kq)
    j = rng.randint(1, cell.blocks[q - 1].n + 3)
    mid = degeneracy_target_index(cell.index, q, j)
    opts = [r for r in range(1, kq + 1) if mid[r - 1][1] >= 1]
    p = q if rng.random() < 0.6 else rng.choice(opts)
    np_ = mid[p - 1][1]
    l = rng.randint(1, np_)
    i = rng.randint(0, np_ + 1 - l)
    return ds_relation(cell, p, i, l, q, j)


def relation_suite(count: int = 10_000, seed: int = 0, max_n: int = 5) -> dict:
    """Check ``count`` random relation instances.

    Returns per-relation counts: instances checked, geometric failures,
    instances where the displayed superscript addresses a different block
    (``readdressed``) and where it then fails (``literal_failed``), and
    instances whose two sides carry different grades (``grade_differs``).
    """
    rng = random.Random(seed)
    stats: dict[str, dict[str, int]] = {}
    first_failure = None
    for _ in range(count):
        r = random_relation(rng, max_n)
        s = stats.setdefault(r.name, {"checked": 0, "failed": 0, "readdressed": 0,
                                      "literal_failed": 0, "grade_differs": 0})
        s["checked"] += 1
        if not r.holds():
            s["failed"] += 1
            if first_failure is None:
                first_failure = r
        if r.rhs != r.literal_rhs:
            s["readdressed"] += 1
        if not r.literal_holds():
            s["literal_failed"] += 1
        if not r.grade_agrees():
            s["grade_differs"] += 1
    return {"stats": stats, "first_failure": first_failure}
