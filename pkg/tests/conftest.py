import numpy as np
import pytest

from qshare.hilbert import PureState, index_of

ACCEPTANCE_RESULTS: list[str] = []


def kets(spec: dict[str, complex], dims) -> PureState:
    """State from a {'012': amplitude, ...} table of basis labels."""
    vec = np.zeros(int(np.prod(dims)), dtype=np.complex128)
    for label, amp in spec.items():
        vec[index_of(dims, [int(c) for c in label])] += amp
    return PureState.from_vector(vec, dims)


def random_secret(rng, s):
    v = rng.normal(size=s) + 1j * rng.normal(size=s)
    return v / np.linalg.norm(v)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
