import numpy as np
import pytest

from kelilemma.states import diagonal_pair


@pytest.fixture
def e1():
    """Commuting qubit pair rho = diag(0.7, 0.3), sigma = diag(0.4, 0.6)."""
    return diagonal_pair([0.7, 0.3], [0.4, 0.6])


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_hermitian(rng, dim, scale=1.0):
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return scale * (a + a.conj().T) / 2


ACCEPTANCE = []


def record(criterion, passed, detail):
    ACCEPTANCE.append((criterion, passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {criterion}: {detail}")
