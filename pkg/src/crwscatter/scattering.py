"""Plane-wave scattering off the effective potential at site 0.

With ``alpha_j = e^{ikj} + r e^{-ikj}`` left of the scatterer and
``t e^{ikj}`` to the right, continuity gives ``t = 1 + r`` and the site-0
equation fixes

    t = 2iJ sin k / (2iJ sin k - V),    r = V / (2iJ sin k - V).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import DegenerateInput, OutOfBand
from .model import WaveguideParams, dispersion, momentum_from_energy
from .potential import (
    ComplexPotential,
    LorentzianCavityParams,
    PerfectCavityParams,
    effective_potential,
)

# Absolute agreement required between the |amplitude|^2 and closed-form routes.
TWO_ROUTE_TOL = 1e-12

DEFAULT_EPSILON = 1e-9
DEFAULT_POINTS = 1001


@dataclass(frozen=True)
class ScatteringResult:
    t: complex
    r: complex
    big_t: float
    big_r: float

    @property
    def retained(self) -> float:
        """Probability left in the cavity reservoir, ``1 - T - R``."""
        return 1.0 - self.big_t - self.big_r


def _half_denominator(k: float, wg: WaveguideParams) -> float:
    # 2 J sin k, pinned to zero at the band edges
    if k == 0.0 or k == math.pi:
        return 0.0
    return 2 * wg.hopping * math.sin(k)


def amplitudes(k: float, v: ComplexPotential, wg: WaveguideParams) -> tuple[complex, complex]:
    """Transmission and reflection amplitudes ``(t, r)`` at momentum ``k``."""
    if not 0 <= k <= math.pi:
        raise OutOfBand(k, message=f"momentum {k!r} is outside [0, pi]")
    if v.is_resonant:
        return 0j, -1 + 0j
    s = _half_denominator(k, wg)
    denom = complex(-v.re, s - v.im)
    if denom == 0:
        raise DegenerateInput(f"sin k = 0 and V = 0 at k={k!r}: free band-edge mode")
    return 1j * s / denom, complex(v) / denom


def _closed_form_coefficients(k: float, v: ComplexPotential, wg: WaveguideParams) -> tuple[float, float]:
    s = _half_denominator(k, wg)
    denom = v.re**2 + (s - v.im) ** 2
    return s**2 / denom, (v.re**2 + v.im**2) / denom


def coefficients(k: float, v: ComplexPotential, wg: WaveguideParams) -> ScatteringResult:
    """Amplitudes and coefficients; T and R are cross-checked against the closed form."""
    t, r = amplitudes(k, v, wg)
    if v.is_resonant:
        return ScatteringResult(t, r, 0.0, 1.0)
    big_t = abs(t) ** 2
    big_r = abs(r) ** 2
    alt_t, alt_r = _closed_form_coefficients(k, v, wg)
    if abs(big_t - alt_t) > TWO_ROUTE_TOL or abs(big_r - alt_r) > TWO_ROUTE_TOL:
        raise ArithmeticError(
            f"T/R routes disagree at k={k!r}, V={complex(v)!r}: "
            f"|t|^2={big_t!r} vs {alt_t!r}, |r|^2={big_r!r} vs {alt_r!r}"
        )
    return ScatteringResult(t, r, big_t, big_r)


def conservation_deficit(k: float, v: ComplexPotential, wg: WaveguideParams) -> float:
    """``T + R - 1 = 4 J sin k Im V / (Re V^2 + (2 J sin k - Im V)^2)``; never positive for Im V <= 0."""
    amplitudes(k, v, wg)  # shared validation
    if v.is_resonant:
        return 0.0
    s = _half_denominator(k, wg)
    return 2 * s * v.im / (v.re**2 + (s - v.im) ** 2)


class SweepRow(NamedTuple):
    k: float
    energy: float
    re_v: float
    im_v: float
    big_t: float
    big_r: float
    total: float


COLUMNS = ("k", "E_k", "Re_V", "Im_V", "T", "R", "T+R")

Cavity = PerfectCavityParams | LorentzianCavityParams


def _row(k: float, e: float, cavity: Cavity, wg: WaveguideParams) -> SweepRow:
    v = effective_potential(e, cavity)
    res = coefficients(k, v, wg)
    return SweepRow(k, e, v.re, v.im, res.big_t, res.big_r, res.big_t + res.big_r)


def _grid_points(grid: Sequence[float], axis: str, cavity: Cavity, wg: WaveguideParams) -> Iterable[tuple[int, float, float]]:
    """Yield ``(index, k, E)`` for every grid value, validating band membership."""
    lo, hi = wg.band
    for i, x in enumerate(grid):
        x = float(x)
        if axis == "momentum":
            if not 0 <= x <= math.pi:
                raise OutOfBand(x, i)
            yield i, x, dispersion(x, wg)
            continue
        if axis == "energy":
            e = x
        elif axis == "detuning":
            e = x + cavity.omega_c
        else:
            raise ValueError(f"unknown sweep axis {axis!r}")
        try:
            k = momentum_from_energy(e, wg)
        except OutOfBand:
            raise OutOfBand(x, i) from None
        yield i, k, min(max(e, lo), hi)


def sweep(
    grid: Sequence[float],
    cavity: Cavity,
    wg: WaveguideParams,
    axis: str = "momentum",
    epsilon: float = DEFAULT_EPSILON,
) -> list[SweepRow]:
    """Scattering table over a momentum, energy or detuning grid.

    Rows keep the grid order.  For the Lorentzian cavity a point landing exactly
    on ``E_k = 0`` is emitted as two rows at ``E_k = -epsilon`` and
    ``+epsilon`` (whichever lie in the band), so the jump of the potential is
    never smoothed over.
    """
    if len(grid) == 0:
        raise ValueError("sweep grid is empty")
    rows = []
    for _, k, e in _grid_points(grid, axis, cavity, wg):
        if e == 0 and isinstance(cavity, LorentzianCavityParams):
            for side in (-epsilon, epsilon):
                try:
                    ks = momentum_from_energy(side, wg)
                except OutOfBand:
                    continue
                rows.append(_row(ks, side, cavity, wg))
            continue
        rows.append(_row(k, e, cavity, wg))
    return rows


def default_grid(axis: str, wg: WaveguideParams, omega_c: float, points: int = DEFAULT_POINTS) -> list[float]:
    """Evenly spaced grid covering the whole band on the requested axis."""
    lo, hi = wg.band
    if axis == "momentum":
        return list(np.linspace(0.0, math.pi, points))
    if axis == "energy":
        return list(np.linspace(lo, hi, points))
    if axis == "detuning":
        return list(np.linspace(lo - omega_c, hi - omega_c, points))
    raise ValueError(f"unknown sweep axis {axis!r}")
