import math

import numpy as np
import pytest

from crwscatter import WaveguideParams, coefficients, dispersion
from crwscatter.potential import effective_potential

ACCEPTANCE_LINES = []


def packet_averaged(wg, cavity, k0, sigma, n=4001):
    """T and R averaged over the momentum distribution of a Gaussian packet of width sigma."""
    ks = np.linspace(max(1e-3, k0 - 8 / (2 * sigma)), min(math.pi - 1e-3, k0 + 8 / (2 * sigma)), n)
    w = np.exp(-2 * sigma**2 * (ks - k0) ** 2)
    res = [coefficients(k, effective_potential(dispersion(k, wg), cavity), wg) for k in ks]
    big_t = np.array([r.big_t for r in res])
    big_r = np.array([r.big_r for r in res])
    return float(w @ big_t / w.sum()), float(w @ big_r / w.sum())


@pytest.fixture
def wg4():
    return WaveguideParams(10.0, 4.0)


@pytest.fixture
def wg10():
    return WaveguideParams(10.0, 10.0)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
