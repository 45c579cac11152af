"""Command-line front end.

Subcommands::

    faces       --n N --dim K          faces of K_N of one dimension
    diagonal    --n N                  terms of the diagonal on the top cell of K_N
    boundary    --n N --face WORD      signed boundary of a face
    tensor-ops  --side coalg|alg --n n tensor-product A-infinity operations
    tamari      --n N [--dot]          Tamari lattice on the vertices of K_N
    verify      --suite S --max-n n    run property suites, print a JSON certificate

Exit codes: 0 ok, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass
from typing import Callable, Sequence

from . import __version__
from .assoc_core import (Composition, Face, all_faces, enumerate_faces, parse_ops, render_key,
                         tamari_poset, to_face, tree_str)
from .chain_complex import boundary, boundary_squared_zero
from .diagonal import DEFAULT, Diagonal, check_chain_map, diagonal_terms
from .ainfinity import PSI, render_composite, tensor_ops_alg, tensor_ops_coalg

FORMATS = ("text", "json", "latex")
NOTATIONS = ("operator", "parenthesization", "tree")
SUITES = ("chainmap", "dsquare", "transfers", "lemma2", "appendix")

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class RenderedTerm:
    """One signed tensor term as printed; ``left``/``right`` are strings."""

    sign: int
    left: str
    right: str
    notation: str = "operator"

    @classmethod
    def from_json(cls, d: dict) -> "RenderedTerm":
        return cls(int(d["sign"]), d["left"], d["right"], d.get("notation", "operator"))


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# rendering helpers


def latex_key(key) -> str:
    if not key:
        return "1"
    return "".join(f"d_{{({i},{l})}}" for i, l in reversed(key))


def face_text(f: Face, notation: str, fmt: str) -> str:
    if notation == "operator":
        return latex_key(f.key) if fmt == "latex" else render_key(f.key)
    if notation == "parenthesization":
        return tree_str(f.tree())
    return repr(f.tree())


def diagonal_rendered(n_leaves: int, notation: str = "operator", fmt: str = "text") -> list[RenderedTerm]:
    """Terms of the diagonal on ``T_{n_leaves}``: primitive terms first,
    then by ``(p, right, left)``.  Left factors are written in second form
    and right factors in first form, with the printed signs."""
    out = []
    for t in diagonal_terms(n_leaves - 2):
        if notation == "operator":
            left, right = t.left.pairs, t.right.pairs
            if fmt == "latex":
                ls, rs = latex_key(left), latex_key(right)
            else:
                ls, rs = render_key(left), render_key(right)
        else:
            ls = face_text(t.left_face, notation, fmt)
            rs = face_text(t.right_face, notation, fmt)
        out.append(RenderedTerm(t.sign, ls, rs, notation))
    return out


def format_terms(terms: Sequence[RenderedTerm], fmt: str, head: str = "") -> str:
    if fmt == "latex":
        body = "".join(("+" if t.sign > 0 else "-") + f"{t.left} \\otimes {t.right}" for t in terms)
        return head + body.lstrip("+")
    return "\n".join(("+" if t.sign > 0 else "-") + f"{t.left}⊗{t.right}" for t in terms)


def face_label(f: Face) -> str:
    """``d...(T_N)``, or ``T_N`` for the top cell."""
    top = f"T_{f.ambient}"
    return top if not f.key else f"{render_key(f.key)}({top})"


def emit(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2, sort_keys=True)


def parse_face(text: str, ambient: int) -> Face:
    ops = parse_ops(text)
    return to_face(Composition(ops, ambient))


# ---------------------------------------------------------------------------
# commands


def cmd_faces(args) -> tuple[int, str]:
    N, k = args.n, args.dim
    if N < 2 or not 0 <= k <= N - 2:
        raise UsageError(f"need N >= 2 and 0 <= dim <= N-2, got N={N}, dim={k}")
    faces = enumerate_faces(N, k)
    if args.format == "json":
        return 0, emit({"schema": SCHEMA_VERSION, "command": "faces", "n": N, "dim": k,
                        "faces": [{"key": [list(p) for p in f.key], "text": render_key(f.key),
                                   "tree": tree_str(f.tree())} for f in faces]})
    return 0, "\n".join(face_text(f, args.notation, args.format) for f in faces)


def cmd_diagonal(args) -> tuple[int, str]:
    N = args.n
    if N < 2:
        raise UsageError(f"need N >= 2, got {N}")
    terms = diagonal_rendered(N, args.notation, args.format)
    if args.format == "json":
        return 0, emit({"schema": SCHEMA_VERSION, "command": "diagonal", "n": N,
                        "terms": [asdict(t) for t in terms]})
    if args.format == "latex":
        return 0, format_terms(terms, "latex", rf"\Delta T_{{{N}}} = ")
    return 0, format_terms(terms, "text")


def cmd_boundary(args) -> tuple[int, str]:
    try:
        f = parse_face(args.face, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    terms = sorted(boundary(f).items(), key=lambda kv: kv[0].key)
    if args.format == "json":
        return 0, emit({"schema": SCHEMA_VERSION, "command": "boundary", "n": args.n,
                        "face": [list(p) for p in f.key],
                        "terms": [{"sign": c, "key": [list(p) for p in g.key], "text": render_key(g.key)}
                                  for g, c in terms]})
    render = latex_key if args.format == "latex" else render_key
    lines = [("+" if c > 0 else "-") + render(g.key) for g, c in terms]
    if args.format == "latex":
        return 0, "".join(lines).lstrip("+") or "0"
    return 0, "\n".join(lines) or "0"


def cmd_tensor_ops(args) -> tuple[int, str]:
    n = args.n
    if n < 1:
        raise UsageError(f"need n >= 1, got {n}")
    expr = tensor_ops_coalg(n) if args.side == "coalg" else tensor_ops_alg(n)
    letter = "Ψ" if expr.kind == PSI else "Φ"
    sup = str(n).translate(str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹"))
    if args.format == "json":
        return 0, emit({"schema": SCHEMA_VERSION, "command": "tensor-ops", "side": args.side, "n": n,
                        "terms": [asdict(RenderedTerm(s, render_composite(a), render_composite(b)))
                                  for s, a, b in expr.terms]})
    if args.format == "latex":
        g = r"\Psi" if expr.kind == PSI else r"\Phi"
        return 0, f"{g}^{{{n}}} = " + expr.render("latex")
    return 0, f"{letter}{sup} = " + expr.render()


def cmd_tamari(args) -> tuple[int, str]:
    N = args.n
    if not 2 <= N <= 10:
        raise UsageError(f"need 2 <= N <= 10, got {N}")
    P = tamari_poset(N)
    edges = [(tree_str(a), tree_str(b)) for a, b in P.hasse_edges()]
    if args.dot:
        lines = [f"digraph tamari_{N} {{", "  rankdir=BT;"]
        lines += [f'  "{tree_str(t)}";' for t in P.elements]
        lines += [f'  "{a}" -> "{b}";' for a, b in edges]
        lines.append("}")
        return 0, "\n".join(lines)
    if args.format == "json":
        return 0, emit({"schema": SCHEMA_VERSION, "command": "tamari", "n": N,
                        "elements": [tree_str(t) for t in P.elements],
                        "covers": [list(e) for e in edges]})
    return 0, "\n".join(f"{a} < {b}" for a, b in edges)


# ---------------------------------------------------------------------------
# verification suites


def _suite_chainmap(max_n: int, delta: Diagonal) -> dict:
    checks = []
    for N in range(2, max_n + 3):
        bad = check_chain_map(N, delta)
        checks.append({"name": "chain map", "ambient": N, "cells": len(all_faces(N)),
                       "passed": bad is None,
                       "counterexample": None if bad is None else face_label(bad)})
    return {"checks": checks}


def _suite_dsquare(max_n: int, delta: Diagonal) -> dict:
    checks = []
    for N in range(2, max_n + 3):
        ok, bad = boundary_squared_zero(N)
        checks.append({"name": "d^2 = 0", "ambient": N, "cells": len(all_faces(N)), "passed": ok,
                       "counterexample": None if bad is None else face_label(bad)})
    return {"checks": checks}


def _suite_transfers(max_n: int, delta: Diagonal) -> dict:
    from .transfers import (containing_facets, first_form, left_transfer_first,
                            left_transfer_second, right_transfer_first,
                            right_transfer_second, second_form, transfer_facets)
    checks = []
    for N in range(3, max_n + 3):
        bad = None
        count = 0
        for f in all_faces(N):
            if f.codim == 0:
                continue
            count += 1
            c1, c2 = first_form(f), second_form(f)
            m = len(c1)
            kept = all(left_transfer_first(c1, k).face() == f and right_transfer_first(c1, k).face() == f
                       and left_transfer_second(c2, k).face() == f
                       and right_transfer_second(c2, k).face() == f
                       for k in range(1, m + 1))
            want = containing_facets(f)
            ok = kept and all(len(set(fs)) == m and set(fs) == want
                              for fs in (transfer_facets(f, "first"), transfer_facets(f, "second")))
            if not ok and bad is None:
                bad = face_label(f)
        checks.append({"name": "transfers", "ambient": N, "cells": count, "passed": bad is None,
                       "counterexample": bad})
    return {"checks": checks}


def _suite_lemma2(max_n: int, delta: Diagonal) -> dict:
    from .transfers import lemma2_check, lemma2_triples
    checks = []
    for n in range(0, max_n + 1):
        bad = None
        count = 0
        for s, k, m in lemma2_triples(n):
            count += 1
            res = lemma2_check(s, k, m)
            if not all(res.values()) and bad is None:
                bad = {"solution": str(s), "k": k, "m": m,
                       "failed": sorted(x for x, v in res.items() if not v)}
        checks.append({"name": "selection lemma", "ambient": n + 2, "cells": count,
                       "passed": bad is None, "counterexample": bad})
    return {"checks": checks}


def _suite_appendix(max_n: int, delta: Diagonal, count: int = 10_000) -> dict:
    from .assoc_set import compare_with_associahedron, relation_suite
    checks = []
    res = relation_suite(count, seed=0, max_n=min(max_n, 5) or 1)
    failed = sum(v["failed"] for v in res["stats"].values())
    bad = res["first_failure"]
    checks.append({"name": "face/degeneracy relations", "ambient": None, "cells": count,
                   "passed": failed == 0, "details": res["stats"],
                   "counterexample": None if bad is None else {"cell": str(bad.cell), "lhs": bad.lhs,
                                                               "rhs": bad.rhs}})
    for n in range(0, min(max_n, 6) + 1):
        problems = compare_with_associahedron(n, delta)
        checks.append({"name": "normalized chains of the free set", "ambient": n + 2,
                       "cells": len(all_faces(n + 2)), "passed": not problems,
                       "counterexample": problems[0] if problems else None})
    return {"checks": checks}


SUITE_FUNCS: dict[str, Callable[[int, Diagonal], dict]] = {
    "chainmap": _suite_chainmap,
    "dsquare": _suite_dsquare,
    "transfers": _suite_transfers,
    "lemma2": _suite_lemma2,
    "appendix": _suite_appendix,
}


def run_suites(names: Sequence[str], max_n: int, delta: Diagonal = DEFAULT) -> dict:
    """Run suites and return a certificate; ``passed`` is the conjunction."""
    cert = {"schema": SCHEMA_VERSION, "command": "verify", "version": __version__,
            "max_n": max_n, "suites": {}}
    first = None
    for name in names:
        t0 = time.perf_counter()
        res = SUITE_FUNCS[name](max_n, delta)
        res["seconds"] = round(time.perf_counter() - t0, 3)
        res["passed"] = all(c["passed"] for c in res["checks"])
        cert["suites"][name] = res
        if not res["passed"] and first is None:
            first = next({"suite": name, **c} for c in res["checks"] if not c["passed"])
    cert["passed"] = all(s["passed"] for s in cert["suites"].values())
    cert["first_counterexample"] = first
    return cert


def cmd_verify(args) -> tuple[int, str]:
    if args.max_n < 0:
        raise UsageError("--max-n must be non-negative")
    names = SUITES if args.suite == "all" else (args.suite,)
    delta = DEFAULT
    if args.corrupt:
        try:
            n, term = (int(x) for x in args.corrupt.split(":"))
        except ValueError as exc:
            raise UsageError("--corrupt takes N:TERM with integers") from exc
        delta = Diagonal(corrupt=(n, term))
    cert = run_suites(names, args.max_n, delta)
    return (0 if cert["passed"] else 1), emit(cert)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="assocdiag", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, notation=True):
        sp.add_argument("--format", choices=FORMATS, default="text")
        if notation:
            sp.add_argument("--notation", choices=NOTATIONS, default="operator")

    sp = sub.add_parser("faces", help="list faces of K_N of one dimension")
    sp.add_argument("--n", type=int, required=True, help="number of inputs N (the polytope K_N)")
    sp.add_argument("--dim", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_faces)

    sp = sub.add_parser("diagonal", help="diagonal of the top cell of K_N")
    sp.add_argument("--n", type=int, required=True, help="number of inputs N")
    common(sp)
    sp.set_defaults(func=cmd_diagonal)

    sp = sub.add_parser("boundary", help="signed boundary of a face")
    sp.add_argument("--n", type=int, required=True, help="number of inputs N")
    sp.add_argument("--face", required=True, help="written composition, e.g. 'd_{(0,1)}d_{(2,1)}'")
    common(sp, notation=False)
    sp.set_defaults(func=cmd_boundary)

    sp = sub.add_parser("tensor-ops", help="A-infinity operations on a tensor product")
    sp.add_argument("--side", choices=("coalg", "alg"), required=True)
    sp.add_argument("--n", type=int, required=True, help="arity n")
    common(sp, notation=False)
    sp.set_defaults(func=cmd_tensor_ops)

    sp = sub.add_parser("tamari", help="Tamari lattice on the vertices of K_N")
    sp.add_argument("--n", type=int, required=True, help="number of inputs N")
    sp.add_argument("--dot", action="store_true", help="Graphviz DOT output")
    common(sp, notation=False)
    sp.set_defaults(func=cmd_tamari)

    sp = sub.add_parser("verify", help="run verification suites")
    sp.add_argument("--suite", choices=("all",) + SUITES, default="all")
    sp.add_argument("--max-n", type=int, default=3, help="check K_{n+2} for n <= MAX_N")
    sp.add_argument("--corrupt", metavar="N:TERM",
                    help="flip the sign of term TERM of the diagonal on K_{N+2} (negative control)")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, out = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"assocdiag: error: {exc}", file=sys.stderr)
        return 2
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
