from pathlib import Path

import pytest

from steiner_orientation.formula import parse_formula

DATA = Path(__file__).parent / "data"


@pytest.fixture
def appendix_path():
    return DATA / "appendix.pm3"


@pytest.fixture
def appendix_formula(appendix_path):
    return parse_formula(appendix_path.read_text())


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if getattr(rep, "when", "call") != "call" and outcome == "passed":
                continue
            criterion = dict(getattr(rep, "user_properties", ())).get("criterion")
            if criterion:
                lines.append((criterion, "PASS" if outcome == "passed" else "FAIL"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for criterion, verdict in sorted(lines, key=lambda x: int(x[0].split()[0])):
            terminalreporter.write_line(f"[{verdict}] criterion {criterion}")
