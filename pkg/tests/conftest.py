import json
from pathlib import Path

import pytest

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def reference_tables():
    """Reference table values, verbatim (including the two known misprints)."""
    return json.loads((GOLDEN / "tables.json").read_text())


@pytest.fixture(scope="session")
def tables(reference_tables):
    """Reference values with the misprinted cells replaced by the true counts."""
    fixed = json.loads(json.dumps(reference_tables))
    for m in fixed["misprints"]:
        fixed[m["stat"]][str(m["r"])][m["n"]][m["l"]] = m["value"]
    return fixed


_ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def record_criterion():
    def record(number: int, passed: bool, detail: str) -> None:
        _ACCEPTANCE[number] = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(_ACCEPTANCE):
            terminalreporter.write_line(_ACCEPTANCE[number])
