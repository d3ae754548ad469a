from fractions import Fraction

import pytest
from hypothesis import settings

from morikit import default_budget, from_k3_hilbert

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def hilbert(pic, n, h_k3, k):
    """S^[n] with polarization k*H - delta, ample for k large."""
    E = from_k3_hilbert(pic, n, h_k3)
    return E.with_ample(tuple(k * x - d for x, d in zip(E.h, E.delta)))


# (picard gram, n, K3 polarization, multiplier)
FIXTURE_MODELS = {
    "n2_deg2": ([[2]], 2, [1], 5),
    "n3_deg2": ([[2]], 3, [1], 8),
    "n5_deg2": ([[2]], 5, [1], 20),
    "n2_deg4": ([[4]], 2, [1], 5),
    "n2_rank3": ([[2, 1], [1, -2]], 2, [1, 0], 4),
}


@pytest.fixture(scope="session")
def n2_deg2():
    return hilbert(*FIXTURE_MODELS["n2_deg2"])


@pytest.fixture(scope="session")
def models():
    return {k: hilbert(*v) for k, v in FIXTURE_MODELS.items()}


@pytest.fixture(scope="session")
def n2_budget(n2_deg2):
    return default_budget(n2_deg2)


def F(s):
    return Fraction(s)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
