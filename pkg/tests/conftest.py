import sys
from pathlib import Path

import mpmath
import pytest

sys.path.insert(0, str(Path(__file__).parent))

_REPORT: list[str] = []


def last_unit(text: str) -> mpmath.mpf:
    """One unit in the last printed digit of a decimal string."""
    body = text.strip().lstrip("+-").lower()
    exp = 0
    if "e" in body:
        body, e = body.split("e")
        exp = int(e)
    decimals = len(body.split(".")[1]) if "." in body else 0
    return mpmath.mpf(10) ** (exp - decimals)


@pytest.fixture
def report(request, capsys):
    """Print one PASS/FAIL line for an acceptance criterion, then assert."""

    def emit(name: str, ok: bool, detail: str):
        line = f"[acceptance] {name}: {'PASS' if ok else 'FAIL'} ({detail})"
        _REPORT.append(line)
        with capsys.disabled():
            print("\n" + line)
        assert ok, line

    return emit


def pytest_terminal_summary(terminalreporter):
    if _REPORT:
        terminalreporter.section("acceptance criteria")
        for line in _REPORT:
            terminalreporter.write_line(line)
