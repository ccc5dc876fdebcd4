import itertools

import pytest

from ktq import builtin_ktq
from ktq.algebra import GroupTable, TernaryQuasigroup, from_group_affine, from_group_dehn

# Filled by test_acceptance.report and echoed after the run.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def five():
    return builtin_ktq("five")


@pytest.fixture(scope="session")
def six():
    return builtin_ktq("six")


def dehn(n):
    return from_group_dehn(GroupTable.cyclic(n))


def small_ktqs():
    """A handful of KTQs of different shapes used by property tests."""
    return [
        dehn(2), dehn(3), dehn(5),
        from_group_affine(GroupTable.cyclic(4), 1),
        from_group_dehn(GroupTable.symmetric(3)),
        builtin_ktq("five"), builtin_ktq("six"),
    ]


def cube_from(f, n):
    return TernaryQuasigroup([[[f(x, y, z) for z in range(n)] for y in range(n)] for x in range(n)])


def all_triples(n):
    return itertools.product(range(n), repeat=3)
