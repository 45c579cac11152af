"""A-infinity (co)algebra operations, their tensor products, and a numeric evaluator.

Symbolic side: an operation ``psi^k`` or ``phi^k`` placed inside a longer
tensor word is a :class:`PositionedOp`; a composite is a tuple of them in
written order (the rightmost one is applied first).  ``xi_face`` and
``zeta_face`` turn a cell of an associahedron into such a composite, and
``tensor_ops_coalg`` / ``tensor_ops_alg`` combine them along the diagonal.

Numeric side: a :class:`GradedModuleInstance` is a finite graded basis
with integer structure constants.  Composites are evaluated on basis words
with Koszul signs, and the tilde bar and cobar differentials are built as
explicit matrices on words.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping, Sequence

from .assoc_core import Face, comp_to_tree, first_form_order, leaf_count, second_form_order, tree_to_key
from .chain_complex import _children
from .diagonal import diagonal_terms

PSI, PHI = "psi", "phi"
GLYPH = {PSI: "ψ", PHI: "φ"}
_SUB = str.maketrans("0123456789-", "₀₁₂₃₄₅₆₇₈₉₋")
_SUP = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")


@dataclass(frozen=True)
class OpSymbol:
    kind: str
    arity: int
    side: str | None = None

    def __post_init__(self):
        if self.kind not in (PSI, PHI):
            raise ValueError(f"unknown operation kind {self.kind!r}")
        if self.arity < 1:
            raise ValueError("arity must be positive")

    @property
    def degree(self) -> int:
        return self.arity - 2


@dataclass(frozen=True)
class PositionedOp:
    """``1^{⊗left} ⊗ op ⊗ 1^{⊗right}``."""

    symbol: OpSymbol
    left: int = 0
    right: int = 0

    @property
    def inputs(self) -> int:
        a = 1 if self.symbol.kind == PSI else self.symbol.arity
        return self.left + a + self.right

    @property
    def outputs(self) -> int:
        a = self.symbol.arity if self.symbol.kind == PSI else 1
        return self.left + a + self.right

    @property
    def degree(self) -> int:
        return self.symbol.degree


Composite = tuple[PositionedOp, ...]


def psi(k: int, left: int = 0, right: int = 0) -> PositionedOp:
    return PositionedOp(OpSymbol(PSI, k), left, right)


def phi(k: int, left: int = 0, right: int = 0) -> PositionedOp:
    return PositionedOp(OpSymbol(PHI, k), left, right)


def composite_degree(c: Composite) -> int:
    return sum(op.degree for op in c)


def composite_arity(c: Composite) -> tuple[int, int]:
    """``(inputs, outputs)`` of a composite; the empty composite is the identity on one slot."""
    if not c:
        return 1, 1
    for a, b in zip(c[1:], c[:-1]):
        if a.outputs != b.inputs:
            raise ValueError("composite does not chain: "
                             f"{render_composite((b,))} after {render_composite((a,))}")
    return c[-1].inputs, c[0].outputs


@dataclass(frozen=True)
class OpExpr:
    """An integer combination of composites with common arity and degree."""

    terms: tuple[tuple[int, Composite], ...]

    def __post_init__(self):
        shapes = {composite_arity(c) for _, c in self.terms}
        degs = {composite_degree(c) for _, c in self.terms}
        if len(shapes) > 1 or len(degs) > 1:
            raise ValueError("inhomogeneous expression")

    def render(self, style: str = "unicode") -> str:
        return render_sum(((s, render_composite(c, style)) for s, c in self.terms))


@dataclass(frozen=True)
class TensorOpExpr:
    """``σ( Σ c · (left ⊗ right) )`` with the shuffle kept symbolic.

    For ``kind == psi`` this is ``(σ_{n,2})_* ι`` applied to the sum, for
    ``kind == phi`` it is ``(σ_{2,n})^* ι``.
    """

    kind: str
    n: int
    terms: tuple[tuple[int, Composite, Composite], ...]

    def render(self, style: str = "unicode") -> str:
        tensor = " \\otimes " if style == "latex" else "⊗"
        inner = render_sum((s, render_composite(a, style) + tensor + render_composite(b, style))
                           for s, a, b in self.terms)
        if self.kind == PSI:
            sig = f"σ_{{{self.n},2}}" if style != "latex" else rf"\sigma_{{{self.n},2}}"
        else:
            sig = f"σ_{{2,{self.n}}}" if style != "latex" else rf"\sigma_{{2,{self.n}}}"
        if self.n == 1:
            return inner
        return f"{sig}({inner})"


def render_op(op: PositionedOp, style: str = "unicode", bare: bool = False) -> str:
    k = op.symbol.arity
    if style == "latex":
        g = "\\psi" if op.symbol.kind == PSI else "\\varphi"
        return f"{g}^{{{k}}}" if bare else f"{g}_{{{op.left}}}^{{{k}}}"
    if style == "ascii":
        g = op.symbol.kind
        return f"{g}^{k}" if bare else f"{g}^{k}_{op.left}"
    g = GLYPH[op.symbol.kind]
    return f"{g}{str(k).translate(_SUP)}" if bare else f"{g}{str(op.left).translate(_SUB)}{str(k).translate(_SUP)}"


def render_composite(c: Composite, style: str = "unicode") -> str:
    """Written order, root rightmost for ψ and leftmost for φ; one subscript, the left offset.

    A single operation with no padding is printed bare (``ψ³``), the
    identity as ``1``.
    """
    if not c:
        return "1"
    if len(c) == 1 and c[0].left == 0 and c[0].right == 0:
        return render_op(c[0], style, bare=True)
    sep = " " if style == "ascii" else ""
    return sep.join(render_op(op, style) for op in c)


def render_sum(items: Iterable[tuple[int, str]]) -> str:
    out = []
    for j, (s, text) in enumerate(items):
        if s == 1:
            out.append(text if j == 0 else f"+{text}")
        elif s == -1:
            out.append(f"-{text}")
        else:
            out.append(f"{s:+d}{text}" if j else f"{s}{text}")
    return "".join(out) if out else "0"


_OP_RE = re.compile(r"(ψ|φ|psi|phi|\\psi|\\varphi)\s*(?:_\{?(\d+)\}?)?\s*\^\{?(\d+)\}?(?:_\{?(\d+)\}?)?")
_UNI_RE = re.compile(r"(ψ|φ)([₀₁₂₃₄₅₆₇₈₉]*)([⁰¹²³⁴⁵⁶⁷⁸⁹]+)")


def parse_composite(text: str, kind: str | None = None) -> Composite:
    """Parse a written composite such as ``ψ₁²ψ₀³`` or ``\\psi_{1}^{2}\\psi_{0}^{3}``.

    Right offsets are filled in from the chaining of arities.
    """
    text = text.strip()
    if text in ("", "1"):
        return ()
    raw = []
    uni = _UNI_RE.findall(text)
    if uni and "".join(a + b + c for a, b, c in uni) == text.replace(" ", ""):
        for g, sub, sup in uni:
            left = int(sub.translate(str.maketrans("₀₁₂₃₄₅₆₇₈₉", "0123456789"))) if sub else 0
            raw.append((PSI if g == "ψ" else PHI, int(sup.translate(str.maketrans("⁰¹²³⁴⁵⁶⁷⁸⁹", "0123456789"))), left))
    else:
        for g, sub1, sup, sub2 in _OP_RE.findall(text):
            k = PSI if "psi" in g or g == "ψ" else PHI
            raw.append((k, int(sup), int(sub1 or sub2 or 0)))
    if not raw:
        raise ValueError(f"cannot parse composite {text!r}")
    if kind is not None and any(k != kind for k, _, _ in raw):
        raise ValueError(f"expected only {kind} operations")
    return _fill_right(raw)


def _fill_right(raw) -> Composite:
    """Attach right offsets; ψ composites chain from the right, φ composites from the root on the left."""
    kinds = {k for k, _, _ in raw}
    if len(kinds) != 1:
        raise ValueError("mixed operation kinds")
    kind = kinds.pop()
    seq = list(reversed(raw)) if kind == PSI else list(raw)
    out = []
    width = 1
    for _, a, left in seq:
        right = width - 1 - left
        if right < 0:
            raise ValueError("offset exceeds word length")
        out.append(psi(a, left, right) if kind == PSI else phi(a, left, right))
        width = width + a - 1
    return tuple(reversed(out)) if kind == PSI else tuple(out)


# ---------------------------------------------------------------------------
# quadratic relations


def quadratic_relation_alg(n: int) -> OpExpr:
    if n < 1:
        raise ValueError("n >= 1")
    terms = []
    for l in range(n):
        for i in range(n - l):
            s = -1 if (l * (i + 1)) % 2 else 1
            terms.append((s, (phi(n - l), phi(l + 1, i, n - l - 1 - i))))
    return OpExpr(tuple(terms))


def quadratic_relation_coalg(n: int) -> OpExpr:
    if n < 1:
        raise ValueError("n >= 1")
    terms = []
    for l in range(n):
        for i in range(n - l):
            s = -1 if (l * (n + i + 1)) % 2 else 1
            terms.append((s, (psi(l + 1, i, n - l - 1 - i), psi(n - l))))
    return OpExpr(tuple(terms))


# ---------------------------------------------------------------------------
# cells to composites


def _creation_order(t: tuple, form: str):
    if form == "first":
        return first_form_order(t)
    if form == "second":
        return second_form_order(t)
    raise ValueError(f"unknown form {form!r}")


def xi_face(f: Face, form: str = "first") -> Composite:
    """Coalgebra composite of a cell.

    The root operation comes first, then the nodes in reverse creation
    order of the chosen fundamental form; each node's offset is the number
    of slots to its left in the word expanded so far.
    """
    t = f.tree()
    n = leaf_count(t)
    order = [(0, n)] + list(reversed(_creation_order(t, form)))
    word: list = [(0, n)]
    applied = []
    for node in order:
        pos = word.index(node)
        kids = _children(t, node)
        applied.append(psi(len(kids), pos, len(word) - pos - 1))
        word[pos:pos + 1] = [kid if kid[1] > 1 else ("leaf", kid[0]) for kid in kids]
    return tuple(reversed(applied))


def zeta_face(f: Face, form: str = "first") -> tuple[int, Composite]:
    """Algebra composite of a cell, with its sign.

    Nodes are applied leaves first in creation order at the offsets of the
    chosen fundamental form; the root is applied last.  The top cell of
    ``K_n`` carries ``(-1)^n``; every proper face carries ``+1``.
    """
    t = f.tree()
    n = leaf_count(t)
    if form == "first":
        pairs = f.key
    else:
        from .assoc_core import tree_to_second
        pairs = tree_to_second(t)
    width = n
    applied = []
    for i, l in pairs:
        applied.append(phi(l + 1, i, width - i - l - 1))
        width -= l
    applied.append(phi(width, 0, 0))
    sign = (-1) ** n if not pairs else 1
    return sign, tuple(reversed(applied))


def _face_of(c) -> Face:
    return Face(c.ambient, tree_to_key(comp_to_tree(c)))


def tensor_ops_coalg(n: int) -> TensorOpExpr:
    """``Ψ^n`` on a tensor product of two A-infinity coalgebras."""
    if n < 1:
        raise ValueError("n >= 1")
    if n == 1:
        return TensorOpExpr(PSI, 1, ((1, (psi(1),), ()), (1, (), (psi(1),))))
    terms = []
    for term in diagonal_terms(n - 2):
        a = xi_face(_face_of(term.left), "second")
        b = xi_face(_face_of(term.right), "first")
        terms.append((term.sign, a, b))
    return TensorOpExpr(PSI, n, tuple(terms))


def tensor_ops_alg(n: int) -> TensorOpExpr:
    """``Φ^n`` on a tensor product of two A-infinity algebras."""
    if n < 1:
        raise ValueError("n >= 1")
    if n == 1:
        return TensorOpExpr(PHI, 1, ((1, (phi(1),), ()), (1, (), (phi(1),))))
    terms = []
    for term in diagonal_terms(n - 2):
        sa, a = zeta_face(_face_of(term.left), "second")
        sb, b = zeta_face(_face_of(term.right), "first")
        terms.append((term.sign * sa * sb, a, b))
    return TensorOpExpr(PHI, n, tuple(terms))


# ---------------------------------------------------------------------------
# numeric instances

Word = tuple[int, ...]
Vec = dict[Word, int]


@dataclass
class GradedModuleInstance:
    """A finite graded free module with structure constants.

    ``ops[(kind, k)]`` maps an input word to a dict of output words with
    integer coefficients.  For ``psi`` the input word has length 1 and the
    outputs have length ``k``; for ``phi`` it is the other way round.
    """

    names: list[str]
    degrees: list[int]
    ops: dict[tuple[str, int], dict[Word, dict[Word, int]]] = field(default_factory=dict)

    def __post_init__(self):
        if len(self.names) != len(self.degrees):
            raise ValueError("names and degrees differ in length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate basis names")
        self._index = {nm: j for j, nm in enumerate(self.names)}

    @property
    def dim(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown basis element {name!r}") from None

    def deg(self, w: Word) -> int:
        return sum(self.degrees[x] for x in w)

    def set_op(self, kind: str, k: int, inp: Sequence[str], out: Sequence[str], coeff: int) -> None:
        w_in = tuple(self.index(x) for x in inp)
        w_out = tuple(self.index(x) for x in out)
        exp_in, exp_out = (1, k) if kind == PSI else (k, 1)
        if len(w_in) != exp_in or len(w_out) != exp_out:
            raise ValueError(f"{kind}^{k} needs {exp_in} inputs and {exp_out} outputs")
        if self.deg(w_out) - self.deg(w_in) != k - 2:
            raise ValueError(f"{kind}^{k}: {' '.join(inp)} -> {' '.join(out)} has degree "
                             f"{self.deg(w_out) - self.deg(w_in)}, expected {k - 2}")
        table = self.ops.setdefault((kind, k), {}).setdefault(w_in, {})
        v = table.get(w_out, 0) + coeff
        if v:
            table[w_out] = v
        else:
            table.pop(w_out, None)

    def op(self, kind: str, k: int, w: Word) -> Mapping[Word, int]:
        return self.ops.get((kind, k), {}).get(w, {})

    def max_arity(self, kind: str) -> int:
        ks = [k for (kd, k), tab in self.ops.items() if kd == kind and any(tab.values())]
        return max(ks, default=0)

    def words(self, length: int) -> Iterable[Word]:
        return product(range(self.dim), repeat=length)

    def render_word(self, w: Word) -> str:
        return " ".join(self.names[x] for x in w) if w else "1"

    def render_vec(self, v: Mapping[Word, int]) -> str:
        return render_sum((c, self.render_word(w)) for w, c in sorted(v.items())) if v else "0"

    def to_text(self) -> str:
        lines = [f"basis {nm} {d}" for nm, d in zip(self.names, self.degrees)]
        for (kind, k), tab in sorted(self.ops.items()):
            for w_in, outs in sorted(tab.items()):
                for w_out, c in sorted(outs.items()):
                    lines.append(f"op {kind} {k} : {self.render_word(w_in)} -> "
                                 f"{self.render_word(w_out)} : {c}")
        return "\n".join(lines) + "\n"


def parse_instance(text: str) -> GradedModuleInstance:
    """Read the line format documented in ``docs/instance_format.md``.

    ``basis <name> <degree>`` declares a basis element, and
    ``op psi|phi <k> : <input names> -> <output names> : <coefficient>``
    adds a structure constant.  ``#`` starts a comment.
    """
    names, degs, entries = [], [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split()[0]
        try:
            if head == "basis":
                _, nm, d = line.split()
                names.append(nm)
                degs.append(int(d))
            elif head == "op":
                left, rest = line[2:].split(":", 1)
                kind, k = left.split()
                words, coeff = rest.rsplit(":", 1)
                w_in, w_out = words.split("->")
                entries.append((kind, int(k), w_in.split(), w_out.split(), int(coeff)))
            else:
                raise ValueError(f"unknown directive {head!r}")
        except ValueError as e:
            raise ValueError(f"line {lineno}: {e}") from None
    m = GradedModuleInstance(names, degs)
    for kind, k, a, b, c in entries:
        if kind not in (PSI, PHI):
            raise ValueError(f"unknown operation kind {kind!r}")
        m.set_op(kind, k, a, b, c)
    return m


def _add(acc: Vec, w: Word, c: int) -> None:
    v = acc.get(w, 0) + c
    if v:
        acc[w] = v
    else:
        acc.pop(w, None)


def apply_positioned(M: GradedModuleInstance, op: PositionedOp, vec: Mapping[Word, int]) -> Vec:
    """``1^{⊗i} ⊗ f ⊗ 1^{⊗j}`` with the Koszul sign ``(-1)^{|f|·|prefix|}``."""
    out: Vec = {}
    k = op.symbol.arity
    width = 1 if op.symbol.kind == PSI else k
    for w, c in vec.items():
        if len(w) != op.inputs:
            raise ValueError(f"word of length {len(w)} fed to an operation with {op.inputs} inputs")
        pre, mid, post = w[:op.left], w[op.left:op.left + width], w[op.left + width:]
        s = -c if (op.degree * M.deg(pre)) % 2 else c
        for img, x in M.op(op.symbol.kind, k, mid).items():
            _add(out, pre + img + post, s * x)
    return out


def evaluate(e: OpExpr | Composite, M: GradedModuleInstance, word: Word | Mapping[Word, int]) -> Vec:
    """Evaluate a composite or an expression on a basis word (or a vector)."""
    vec = dict(word) if isinstance(word, Mapping) else {tuple(word): 1}
    if isinstance(e, OpExpr):
        out: Vec = {}
        for s, c in e.terms:
            for w, x in evaluate(c, M, vec).items():
                _add(out, w, s * x)
        return out
    for op in reversed(e):
        vec = apply_positioned(M, op, vec)
    return vec


def shuffle_sign(da: Sequence[int], db: Sequence[int]) -> int:
    """Koszul sign of ``a_1…a_n b_1…b_n -> a_1 b_1 … a_n b_n``."""
    odd = 0
    for j in range(len(db)):
        if db[j] % 2:
            odd ^= sum(da[j + 1:]) % 2
    return -1 if odd else 1


def evaluate_tensor(e: TensorOpExpr, A: GradedModuleInstance, B: GradedModuleInstance,
                    word: Sequence[tuple[int, int]]) -> dict[tuple[tuple[int, int], ...], int]:
    """Evaluate ``Ψ^n`` (one input pair) or ``Φ^n`` (``n`` input pairs) on ``A ⊗ B``."""
    out: dict = {}
    if e.kind == PSI:
        (a, b), = word
        for s, ca, cb in e.terms:
            sg = -s if (composite_degree(cb) * A.degrees[a]) % 2 else s
            X = evaluate(ca, A, (a,))
            Y = evaluate(cb, B, (b,))
            for wa, x in X.items():
                for wb, y in Y.items():
                    sh = shuffle_sign([A.degrees[t] for t in wa], [B.degrees[t] for t in wb])
                    key = tuple(zip(wa, wb))
                    _add(out, key, sg * x * y * sh)
        return out
    wa = tuple(p[0] for p in word)
    wb = tuple(p[1] for p in word)
    sh = shuffle_sign([A.degrees[t] for t in wa], [B.degrees[t] for t in wb])
    for s, ca, cb in e.terms:
        sg = s * sh
        if (composite_degree(cb) * A.deg(wa)) % 2:
            sg = -sg
        X = evaluate(ca, A, wa)
        Y = evaluate(cb, B, wb)
        for xa, x in X.items():
            for yb, y in Y.items():
                _add(out, tuple(zip(xa, yb)), sg * x * y)
    return out


def tensor_instance(A: GradedModuleInstance, B: GradedModuleInstance, kind: str,
                    max_n: int, exprs: Mapping[int, TensorOpExpr] | None = None) -> GradedModuleInstance:
    """``A ⊗ B`` carrying ``Ψ^n`` (or ``Φ^n``) for ``n ≤ max_n`` as plain structure constants.

    ``exprs`` replaces the generated operation for selected ``n``; it is
    meant for negative controls.
    """
    pairs = [(a, b) for a in range(A.dim) for b in range(B.dim)]
    names = [f"{A.names[a]}|{B.names[b]}" for a, b in pairs]
    degs = [A.degrees[a] + B.degrees[b] for a, b in pairs]
    M = GradedModuleInstance(names, degs)
    pos = {p: j for j, p in enumerate(pairs)}
    for n in range(1, max_n + 1):
        if exprs is not None and n in exprs:
            expr = exprs[n]
        else:
            expr = tensor_ops_coalg(n) if kind == PSI else tensor_ops_alg(n)
        table: dict[Word, dict[Word, int]] = {}
        inputs = [(p,) for p in pairs] if kind == PSI else product(pairs, repeat=n)
        for w in inputs:
            img = evaluate_tensor(expr, A, B, w)
            if img:
                table[tuple(pos[p] for p in w)] = {tuple(pos[p] for p in k): v for k, v in img.items()}
        if table:
            M.ops[(kind, n)] = table
    return M


def relation_defects(M: GradedModuleInstance, kind: str, n: int) -> dict[Word, Vec]:
    """Nonzero values of the n-th quadratic relation on basis words."""
    out = {}
    if kind == PSI:
        e = quadratic_relation_coalg(n)
        inputs = ((x,) for x in range(M.dim))
    else:
        e = quadratic_relation_alg(n)
        inputs = M.words(n)
    for w in inputs:
        v = evaluate(e, M, w)
        if v:
            out[w] = v
    return out


# ---------------------------------------------------------------------------
# tilde bar and cobar constructions


def _susp_parity(degs: Sequence[int]) -> int:
    """Parity of applying a tensor power of an odd map to elements of the given degrees."""
    odd = 0
    run = 0
    for d in degs:
        odd ^= run & 1
        run += d
    return odd


def bar_differential(M: GradedModuleInstance, N: int, variant: str = "closed") -> dict[Word, Vec]:
    """``d`` on words of ``↑A`` of length ``1..N``.

    ``closed`` uses the single-sign closed form with ``↑``/``↓`` applied as
    tensor powers; ``local`` sums ``(↑ φ^k ↓^{⊗k})_{i,n-k-i}`` with Koszul
    signs.  They agree; both are kept so that each checks the other.
    """
    D: dict[Word, Vec] = {}
    kmax = M.max_arity(PHI)
    for n in range(1, N + 1):
        for w in M.words(n):
            out: Vec = {}
            degs = [M.degrees[x] for x in w]
            for k in range(1, min(n, kmax) + 1):
                for i in range(n - k + 1):
                    mid = w[i:i + k]
                    img = M.op(PHI, k, mid)
                    if not img:
                        continue
                    if variant == "closed":
                        s = ((n - k) // 2 + i * (k + 1)) % 2
                        s ^= _susp_parity([d + 1 for d in degs])          # ↓^{⊗n}
                        s ^= ((k - 2) * sum(degs[:i])) % 2                 # φ^k_{i,…}
                    else:
                        s = sum(d + 1 for d in degs[:i]) % 2              # pass ↑φ↓ (odd) over prefix
                        s ^= _susp_parity([d + 1 for d in degs[i:i + k]])  # ↓^{⊗k}
                    for b, c in img.items():
                        nw = w[:i] + b + w[i + k:]
                        t = s
                        if variant == "closed":
                            t ^= _susp_parity([M.degrees[x] for x in nw])  # ↑^{⊗(n-k+1)}
                        _add(out, nw, -c if t else c)
            D[w] = out
    return D


def cobar_differential(M: GradedModuleInstance, N: int, variant: str = "closed") -> dict[Word, Vec]:
    """``d`` on words of ``↓A`` of length ``1..N``; variants as in :func:`bar_differential`."""
    D: dict[Word, Vec] = {}
    kmax = M.max_arity(PSI)
    for n in range(1, N + 1):
        for w in M.words(n):
            out: Vec = {}
            degs = [M.degrees[x] for x in w]
            for k in range(1, kmax + 1):
                for i in range(n):
                    img = M.op(PSI, k, (w[i],))
                    if not img:
                        continue
                    if variant == "closed":
                        s = (n // 2 + i * (k + 1) + k * (n + 1)) % 2
                        s ^= _susp_parity([d - 1 for d in degs])           # ↑^{⊗n}
                        s ^= ((k - 2) * sum(degs[:i])) % 2                  # ψ^k_{i,…}
                    else:
                        s = sum(d - 1 for d in degs[:i]) % 2               # pass ↓ψ↑ (odd) over prefix
                    for b, c in img.items():
                        nw = w[:i] + b + w[i + 1:]
                        t = s
                        if variant == "closed":
                            t ^= _susp_parity([M.degrees[x] for x in nw])   # ↓^{⊗(n+k-1)}
                        else:
                            t ^= _susp_parity([M.degrees[x] for x in b])    # ↓^{⊗k}
                        _add(out, nw, -c if t else c)
            D[w] = out
    return D


def _apply_matrix(D: Mapping[Word, Vec], vec: Mapping[Word, int], N: int | None = None) -> Vec | None:
    out: Vec = {}
    for w, c in vec.items():
        if w not in D:
            return None
        for x, y in D[w].items():
            _add(out, x, c * y)
    return out


def check_square_zero(D: Mapping[Word, Vec], N: int | None = None) -> tuple[bool, Word | None]:
    """``d∘d = 0`` on every word whose image stays inside the computed range.

    Returns ``(True, None)`` or ``(False, witness word)``.  Raises when no
    word could be certified.
    """
    checked = 0
    for w, img in D.items():
        if N is not None and len(w) > N:
            continue
        sq = _apply_matrix(D, img)
        if sq is None:
            continue
        checked += 1
        if sq:
            return False, w
    if not checked:
        raise ValueError("truncation too small to certify any word")
    return True, None


# ---------------------------------------------------------------------------
# built-in instances


def interval_chains() -> GradedModuleInstance:
    """Normalized chains of the 1-simplex with the Alexander-Whitney coproduct."""
    M = GradedModuleInstance(["v0", "v1", "e"], [0, 0, 1])
    M.set_op(PSI, 1, ["e"], ["v1"], 1)
    M.set_op(PSI, 1, ["e"], ["v0"], -1)
    M.set_op(PSI, 2, ["v0"], ["v0", "v0"], 1)
    M.set_op(PSI, 2, ["v1"], ["v1", "v1"], 1)
    M.set_op(PSI, 2, ["e"], ["v0", "e"], 1)
    M.set_op(PSI, 2, ["e"], ["e", "v1"], 1)
    return M


def endomorphism_algebra() -> GradedModuleInstance:
    """``End(V)`` for ``V = Z`` in degrees 0 and 1 with ``∂ = id : V_1 -> V_0``.

    Basis ``Eij`` sends basis vector ``j`` to ``i`` and has degree
    ``deg i - deg j``; the product is composition and the differential is
    the graded commutator with ``∂``.
    """
    vd = [0, 1]
    names, degs = [], []
    for a in range(2):
        for b in range(2):
            names.append(f"E{a}{b}")
            degs.append(vd[a] - vd[b])
    M = GradedModuleInstance(names, degs)
    for a in range(2):
        for b in range(2):
            for c in range(2):
                M.set_op(PHI, 2, [f"E{a}{b}", f"E{b}{c}"], [f"E{a}{c}"], 1)
    # ∂ = E01; d f = ∂ f - (-1)^{|f|} f ∂
    for a in range(2):
        for b in range(2):
            f = f"E{a}{b}"
            fd = vd[a] - vd[b]
            if a == 1:
                M.set_op(PHI, 1, [f], [f"E0{b}"], 1)
            if b == 0:
                M.set_op(PHI, 1, [f], [f"E{a}1"], -1 if fd % 2 == 0 else 1)
    return M


def nonassociative_algebra() -> GradedModuleInstance:
    """A product that fails associativity: ``(x x) x = x`` but ``x (x x) = 0``."""
    M = GradedModuleInstance(["u", "x"], [0, 0])
    M.set_op(PHI, 2, ["u", "u"], ["u"], 1)
    M.set_op(PHI, 2, ["u", "x"], ["x"], 1)
    M.set_op(PHI, 2, ["x", "x"], ["u"], 1)
    return M


def massey_coalgebra() -> GradedModuleInstance:
    """``ψ^3(x) = y y y`` and nothing else; all relations hold since ``ψ^3(y) = 0``."""
    M = GradedModuleInstance(["y", "x"], [1, 2])
    M.set_op(PSI, 3, ["x"], ["y", "y", "y"], 1)
    return M


def massey_algebra() -> GradedModuleInstance:
    """``φ^3(y, y, y) = x`` and nothing else."""
    M = GradedModuleInstance(["y", "x"], [0, 1])
    M.set_op(PHI, 3, ["y", "y", "y"], ["x"], 1)
    return M


def unital_massey_algebra() -> GradedModuleInstance:
    """``massey_algebra`` with a strict unit ``u`` adjoined."""
    M = GradedModuleInstance(["u", "y", "x"], [0, 0, 1])
    for z in M.names:
        M.set_op(PHI, 2, ["u", z], [z], 1)
        if z != "u":
            M.set_op(PHI, 2, [z, "u"], [z], 1)
    M.set_op(PHI, 3, ["y", "y", "y"], ["x"], 1)
    return M


def unital_massey_coalgebra() -> GradedModuleInstance:
    """``massey_coalgebra`` with a counit-like group-like element ``u`` adjoined."""
    M = GradedModuleInstance(["u", "y", "x"], [0, 1, 2])
    M.set_op(PSI, 2, ["u"], ["u", "u"], 1)
    for z in ("y", "x"):
        M.set_op(PSI, 2, [z], ["u", z], 1)
        M.set_op(PSI, 2, [z], [z, "u"], 1)
    M.set_op(PSI, 3, ["x"], ["y", "y", "y"], 1)
    return M


INSTANCES = {
    "unital-massey-algebra": unital_massey_algebra,
    "unital-massey-coalgebra": unital_massey_coalgebra,
    "interval": interval_chains,
    "endomorphisms": endomorphism_algebra,
    "nonassociative": nonassociative_algebra,
    "massey-coalgebra": massey_coalgebra,
    "massey-algebra": massey_algebra,
}
