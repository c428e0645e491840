"""Waveguide parameters and the cosine band of the coupled-resonator chain.

Energies and frequencies are dimensionless and share one unit; hbar = 1.
Momenta are in radians per lattice site.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import OutOfBand

# Relative slack for energies that overshoot a band edge through rounding.
_EDGE_SLACK = 1e-12


@dataclass(frozen=True)
class WaveguideParams:
    """Bare resonator frequency ``omega`` and hopping ``hopping`` (J > 0)."""

    omega: float
    hopping: float

    def __post_init__(self):
        if not math.isfinite(self.omega):
            raise ValueError(f"omega must be finite, got {self.omega!r}")
        if not (math.isfinite(self.hopping) and self.hopping > 0):
            raise ValueError(f"hopping must be positive and finite, got {self.hopping!r}")

    @property
    def band(self) -> tuple[float, float]:
        return self.omega - 2 * self.hopping, self.omega + 2 * self.hopping


def dispersion(k: float, wg: WaveguideParams) -> float:
    """Single-photon energy ``omega - 2 J cos k``."""
    return wg.omega - 2 * wg.hopping * math.cos(k)


def momentum_from_energy(e: float, wg: WaveguideParams) -> float:
    """Invert the dispersion on ``[0, pi]``.

    Raises :class:`OutOfBand` when ``e`` is outside ``[omega - 2J, omega + 2J]``.
    """
    x = (wg.omega - e) / (2 * wg.hopping)
    if not math.isfinite(x) or abs(x) > 1 + _EDGE_SLACK:
        raise OutOfBand(e)
    return math.acos(min(1.0, max(-1.0, x)))


def group_velocity(k: float, wg: WaveguideParams) -> float:
    """``dE/dk = 2 J sin k``; exactly zero at both band edges."""
    if k == 0.0 or k == math.pi:
        return 0.0
    return 2 * wg.hopping * math.sin(k)


def is_propagating(k: float) -> bool:
    """False at the band edges k = 0, pi where the group velocity vanishes."""
    return 0 < k < math.pi
