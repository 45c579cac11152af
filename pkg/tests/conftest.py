from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"

settings.register_profile("default", max_examples=100, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def read_terms(name: str, folder: str = "paper") -> list[tuple[int, str, str]]:
    """Signed ``left⊗right`` terms of a fixture file, in file order."""
    out = []
    for line in (FIXTURES / folder / name).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        sign = -1 if line[0] == "-" else 1
        left, right = line.lstrip("+-").split("⊗")
        out.append((sign, left, right))
    return out


# -- one summary line per acceptance criterion ------------------------------------

_CRITERIA: dict[str, tuple[str, str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if not item.nodeid.split("::")[0].endswith("test_acceptance.py"):
        return
    if report.when == "call" or report.failed:
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        note = dict(item.user_properties).get("note", "")
        verdict = "PASS" if report.passed else "FAIL"
        if item.name not in _CRITERIA or verdict == "FAIL":
            _CRITERIA[item.name] = (verdict, doc, note)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA):
        verdict, doc, note = _CRITERIA[name]
        number = int(name.split("_")[2])
        line = f"criterion {number:2d}: {verdict}  {doc}"
        terminalreporter.write_line(line + (f" ({note})" if note else ""))
