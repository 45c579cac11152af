import json
import subprocess
import sys
from collections import Counter

import jsonschema
import pytest

from assocdiag.cli import RenderedTerm, main
from conftest import ROOT, read_terms

SCHEMA = json.loads((ROOT / "schema" / "cli_output.schema.json").read_text(encoding="utf-8"))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out.rstrip("\n")


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--format", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    return code, doc


def test_faces_lists(capsys):
    code, out = run(capsys, "faces", "--n", "4", "--dim", "1")
    assert code == 0
    assert out.splitlines() == ["d_{(0,1)}", "d_{(0,2)}", "d_{(1,1)}", "d_{(1,2)}", "d_{(2,1)}"]
    assert run(capsys, "faces", "--n", "4", "--dim", "2")[1] == "1"
    assert len(run(capsys, "faces", "--n", "5", "--dim", "0")[1].splitlines()) == 14


def test_faces_in_tree_notation(capsys):
    _, out = run(capsys, "faces", "--n", "4", "--dim", "0", "--notation", "parenthesization")
    assert "(((••)•)•)" in out.splitlines()


@pytest.mark.parametrize("N", [3, 4, 5])
def test_diagonal_text_matches_fixture(capsys, N):
    code, out = run(capsys, "diagonal", "--n", str(N))
    assert code == 0
    want = [("+" if s > 0 else "-") + f"{a}⊗{b}" for s, a, b in read_terms(f"delta_T{N}.txt")]
    assert Counter(out.splitlines()) == Counter(want)
    if N <= 4:
        assert out.splitlines() == want


@pytest.mark.parametrize("N", [3, 4, 5])
def test_diagonal_json_round_trip(capsys, N):
    _, doc = run_json(capsys, "diagonal", "--n", str(N))
    terms = [RenderedTerm.from_json(t) for t in doc["terms"]]
    got = [(t.sign, t.left, t.right) for t in terms]
    assert Counter(got) == Counter(read_terms(f"delta_T{N}.txt"))


def test_diagonal_latex_has_the_same_terms(capsys):
    _, out = run(capsys, "diagonal", "--n", "4", "--format", "latex")
    assert out.startswith(r"\Delta T_{4} = ")
    body = out.split(" = ", 1)[1]
    assert body.count(r"\otimes") == 6
    assert r"-d_{(0,1)} \otimes d_{(2,1)}" in body


def test_tensor_ops_text(capsys):
    code, out = run(capsys, "tensor-ops", "--side", "coalg", "--n", "3")
    assert code == 0
    assert out == "Ψ³ = σ_{3,2}(ψ₀²ψ₀²⊗ψ³+ψ³⊗ψ₁²ψ₀²)"


@pytest.mark.parametrize("n", range(1, 6))
def test_tensor_ops_json_matches_fixture(capsys, n):
    _, doc = run_json(capsys, "tensor-ops", "--side", "coalg", "--n", str(n))
    got = [(t["sign"], t["left"], t["right"]) for t in doc["terms"]]
    assert Counter(got) == Counter(read_terms(f"psi_{n}.txt"))


def test_boundary_command(capsys):
    code, out = run(capsys, "boundary", "--n", "4", "--face", "1")
    assert code == 0
    assert out.splitlines() == ["-d_{(0,1)}", "+d_{(0,2)}", "+d_{(1,1)}", "+d_{(1,2)}", "-d_{(2,1)}"]
    _, doc = run_json(capsys, "boundary", "--n", "5", "--face", "d_{(0,1)}")
    assert len(doc["terms"]) == 5


def test_tamari_outputs(capsys):
    _, doc = run_json(capsys, "tamari", "--n", "5")
    assert len(doc["elements"]) == 14
    code, dot = run(capsys, "tamari", "--n", "4", "--dot")
    assert code == 0 and dot.startswith("digraph tamari_4 {") and dot.count("->") == 5


def test_verify_passes(capsys):
    code, out = run(capsys, "verify", "--suite", "dsquare", "--max-n", "3")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    assert code == 0 and doc["passed"] and doc["first_counterexample"] is None


def test_verify_reports_a_corrupted_diagonal(capsys):
    code, out = run(capsys, "verify", "--suite", "chainmap", "--max-n", "4", "--corrupt", "3:2")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    assert code == 1 and not doc["passed"]
    assert doc["first_counterexample"]["ambient"] == 5


@pytest.mark.parametrize("argv", [
    ["faces", "--n", "1", "--dim", "0"],
    ["faces", "--n", "4", "--dim", "3"],
    ["boundary", "--n", "4", "--face", "d_{(5,5)}"],
    ["tamari", "--n", "11"],
    ["verify", "--corrupt", "x"],
    ["verify", "--max-n", "-1"],
    ["tensor-ops", "--side", "alg", "--n", "0"],
])
def test_usage_errors_exit_two(capsys, argv):
    assert main(argv) == 2
    assert "usage:" in capsys.readouterr().err


def test_argparse_errors_exit_two():
    with pytest.raises(SystemExit) as exc:
        main(["faces", "--n", "4"])
    assert exc.value.code == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "assocdiag.cli", "diagonal", "--n", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines() == ["+d_{(0,1)}⊗1", "+1⊗d_{(1,1)}"]
