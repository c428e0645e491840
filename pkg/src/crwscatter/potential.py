"""Effective on-site potential produced by the side-coupled cavity.

Eliminating the cavity modes from the single-excitation eigenproblem leaves a
complex, energy-dependent potential ``V(E)`` on resonator 0:

    V(E) = sum_q g_q^2 / (E - w_q) = int_0^inf J(w) / (E + i0 - w) dw

For a single lossless mode this is real.  For the Lorentzian reservoir the
real part is the principal value and the imaginary part is ``-pi J(E)`` for
``E > 0`` (there are no reservoir modes below zero frequency).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import BranchPoint


@dataclass(frozen=True)
class PerfectCavityParams:
    """Single lossless mode at ``omega_c`` coupled with strength ``eta``."""

    omega_c: float
    eta: float

    def __post_init__(self):
        if not self.omega_c > 0:
            raise ValueError(f"omega_c must be positive, got {self.omega_c!r}")
        if not self.eta >= 0:
            raise ValueError(f"eta must be non-negative, got {self.eta!r}")


@dataclass(frozen=True)
class LorentzianCavityParams:
    """Leaky cavity: Lorentzian spectral density with peak ``lam/(2 pi)`` and width ``gamma``."""

    omega_c: float
    lam: float
    gamma: float

    def __post_init__(self):
        for name in ("omega_c", "lam", "gamma"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be positive and finite, got {value!r}")

    @classmethod
    def from_single_mode(cls, eta: float, gamma: float, omega_c: float) -> "LorentzianCavityParams":
        """Lorentzian cavity whose narrow-width limit is a single mode of coupling ``eta``.

        Uses ``eta**2 = lam * gamma / 2``.
        """
        return cls(omega_c=omega_c, lam=2 * eta**2 / gamma, gamma=gamma)


@dataclass(frozen=True)
class ComplexPotential:
    re: float
    im: float

    @classmethod
    def resonant(cls) -> "ComplexPotential":
        """Divergent potential of a lossless mode hit exactly on resonance."""
        return cls(math.inf, 0.0)

    @property
    def is_resonant(self) -> bool:
        return math.isinf(self.re)

    def __complex__(self) -> complex:
        return complex(self.re, self.im)


def spectral_density(omega: float, cav: LorentzianCavityParams) -> float:
    """Lorentzian ``J(w) = lam gamma^2 / (2 pi ((w_c - w)^2 + gamma^2))``."""
    return cav.lam * cav.gamma**2 / (2 * math.pi * ((cav.omega_c - omega) ** 2 + cav.gamma**2))


def spectral_weight(cav: LorentzianCavityParams, lower: float = 0.0, upper: float = math.inf) -> float:
    """Integral of the spectral density over ``[lower, upper]``."""
    c = cav.lam * cav.gamma / (2 * math.pi)

    def antiderivative(w):
        if math.isinf(w):
            return math.copysign(math.pi / 2, w)
        return math.atan((w - cav.omega_c) / cav.gamma)

    return c * (antiderivative(upper) - antiderivative(lower))


def potential_perfect(e: float, cav: PerfectCavityParams) -> ComplexPotential:
    """``eta^2 / (E - w_c)``, or :meth:`ComplexPotential.resonant` at ``E == w_c``."""
    detuning = e - cav.omega_c
    if detuning == 0:
        if cav.eta == 0:
            return ComplexPotential(0.0, 0.0)
        return ComplexPotential.resonant()
    return ComplexPotential(cav.eta**2 / detuning, 0.0)


def imag_potential(e: float, cav: LorentzianCavityParams) -> float:
    """Imaginary part of the Lorentzian potential; zero below zero energy."""
    if e == 0:
        raise BranchPoint(e)
    if e < 0:
        return 0.0
    return -cav.lam * cav.gamma**2 / (2 * ((e - cav.omega_c) ** 2 + cav.gamma**2))


def real_potential(e: float, cav: LorentzianCavityParams) -> float:
    """Principal-value real part of the Lorentzian potential.

    Closed form of ``PV int_0^inf J(w)/(E - w) dw``; ``L`` below is the
    principal logarithm of ``-1/(w_c - i gamma)``, whose argument never sits on
    the branch cut because ``gamma > 0``.
    """
    if e == 0:
        raise BranchPoint(e)
    w_c, lam, gamma = cav.omega_c, cav.lam, cav.gamma
    log_c = cmath.log(-1 / complex(w_c, -gamma))
    detuning = e - w_c
    numer = gamma * (log_c.real + math.log(abs(e))) - detuning * log_c.imag
    return lam * gamma * numer / (2 * math.pi * (detuning**2 + gamma**2))


def potential_imperfect(e: float, cav: LorentzianCavityParams) -> ComplexPotential:
    """Complex effective potential of the Lorentzian cavity at incident energy ``e``.

    Raises :class:`BranchPoint` at ``e == 0`` where the imaginary part jumps.
    """
    return ComplexPotential(real_potential(e, cav), imag_potential(e, cav))


def potential_resonant(cav: LorentzianCavityParams) -> ComplexPotential:
    """Lorentzian potential at ``E = w_c``: ``(lam/2pi) (ln(w_c/sqrt(w_c^2+gamma^2)) - i pi)``."""
    w_c = cav.omega_c
    return ComplexPotential(
        cav.lam / (2 * math.pi) * math.log(w_c / math.hypot(w_c, cav.gamma)),
        -cav.lam / 2,
    )


def effective_potential(e: float, cavity: PerfectCavityParams | LorentzianCavityParams) -> ComplexPotential:
    if isinstance(cavity, PerfectCavityParams):
        return potential_perfect(e, cavity)
    return potential_imperfect(e, cavity)
