from itertools import permutations
from pathlib import Path

import pytest

from dodgson import INTEGERS, RATIONALS, Matrix, Scalar, prime_field

DATA = Path(__file__).parent / "data"

DOMAINS = [INTEGERS, RATIONALS, prime_field(5), prime_field(7)]


def leibniz_det(A: Matrix) -> Scalar:
    """Sum over all permutations; shares no code with either library oracle."""
    n = A.rows
    dom = A.domain
    total = dom.zero
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = dom.one
        for i, p in enumerate(perm):
            term = dom.mul(term, A.data[i][p])
        total = dom.sub(total, term) if inversions % 2 else dom.add(total, term)
    return Scalar(total, dom)


_acceptance_lines = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _acceptance_lines


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
