import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from contract_wfst.contract import builtin_manufacturing_contract, compile_contract, fixture_text  # noqa: E402
from contract_wfst.serialization import parse_att, parse_symbols  # noqa: E402

_ACCEPTANCE = []



@pytest.fixture
def contract():
    return compile_contract(builtin_manufacturing_contract())


@pytest.fixture
def two_path():
    syms = parse_symbols(fixture_text("two_path.syms"))
    return parse_att(fixture_text("two_path.fst.txt"), syms, syms)


@pytest.fixture
def conflict():
    syms = parse_symbols(fixture_text("conflict.syms"))
    return parse_att(fixture_text("conflict.fst.txt"), syms, syms)


@pytest.fixture
def criterion():
    """Record one acceptance line and fail the test if it did not pass."""

    def record(name, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] {name}" + (f" ({detail})" if detail else "")
        _ACCEPTANCE.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
