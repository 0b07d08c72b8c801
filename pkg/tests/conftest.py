import pytest

from commclass.atoms import enumerate_atoms_all

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def atom_maps():
    """``n -> enumerate_atoms_all(n)`` for n = 1..8, computed once."""
    return {n: enumerate_atoms_all(n) for n in range(1, 9)}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
