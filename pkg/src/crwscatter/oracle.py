"""Brute-force cross-checks for the effective potential and the scattering coefficients.

Two routes that share no algebra with :mod:`crwscatter.potential`:

* adaptive quadrature of the principal-value integral over the reservoir
  spectrum (singularity removed by subtraction), and
* time evolution of a Gaussian wavepacket under the full single-excitation
  Hamiltonian with the reservoir replaced by a finite set of modes.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import integrate

from .errors import (
    BranchPoint,
    IntegratorFailure,
    InvalidDiscretization,
    LatticeTooSmall,
    ToleranceNotMet,
)
from .model import WaveguideParams, dispersion, group_velocity
from .potential import (
    ComplexPotential,
    LorentzianCavityParams,
    PerfectCavityParams,
    effective_potential,
    potential_imperfect,
    spectral_density,
)
from .propagate import get_stepper
from .scattering import coefficients

BRANCH_GUARD = 1e-6
NORM_TOL = 1e-8
EDGE_TOL = 1e-6

_QUAD_LIMIT = 400


# ---------------------------------------------------------------------------
# principal-value quadrature


def default_cutoff(cav: LorentzianCavityParams) -> float:
    return cav.omega_c + 50 * cav.gamma


def _quad(f, a, b, tol, points=None):
    # QUADPACK warnings are superseded by the explicit error-estimate check of the caller
    kwargs = dict(epsabs=tol, epsrel=1e-13, limit=_QUAD_LIMIT)
    points = [p for p in (points or ()) if a < p < b]
    if points and not math.isinf(b):
        kwargs["points"] = points
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        return integrate.quad(f, a, b, **kwargs)


def pv_quadrature_potential(
    e: float,
    cav: LorentzianCavityParams,
    tol: float = 1e-10,
    cutoff: float | None = None,
) -> ComplexPotential:
    """``int_0^inf J(w)/(E + i0 - w) dw`` by numerical quadrature.

    For ``E > 0`` the pole is handled by subtraction::

        PV int_0^W J/(E-w) = int_0^W (J(w) - J(E))/(E-w) dw + J(E) ln(E/(W-E))

    and the region ``[W, inf)`` is integrated directly; the imaginary part is
    ``-pi J(E)``.  Raises :class:`ToleranceNotMet` when the summed error
    estimate of the pieces exceeds ``tol``.
    """
    if abs(e) <= BRANCH_GUARD:
        raise BranchPoint(e)
    W = max(cutoff or default_cutoff(cav), 2 * e + 10 * cav.gamma)
    piece_tol = tol / 4

    def density(w):
        return spectral_density(w, cav)

    if e < 0:
        head, err_head = _quad(lambda w: density(w) / (e - w), 0.0, W, piece_tol, points=[cav.omega_c])
        tail, err_tail = _quad(lambda w: density(w) / (e - w), W, math.inf, piece_tol)
        err = err_head + err_tail
        if err > tol:
            raise ToleranceNotMet(err, tol)
        return ComplexPotential(head + tail, 0.0)

    j_e = density(e)

    def subtracted(w):
        if w == e:
            return 0.0  # removable; measure zero for the adaptive rule
        return (density(w) - j_e) / (e - w)

    head, err_head = _quad(subtracted, 0.0, W, piece_tol, points=sorted({e, cav.omega_c}))
    tail, err_tail = _quad(lambda w: density(w) / (e - w), W, math.inf, piece_tol)
    err = err_head + err_tail
    if err > tol:
        raise ToleranceNotMet(err, tol)
    pv_log = j_e * math.log(e / (W - e))
    return ComplexPotential(head + pv_log + tail, -math.pi * j_e)


@dataclass(frozen=True)
class OracleReport:
    max_abs_re: float
    max_abs_im: float
    max_rel_re: float
    max_rel_im: float
    worst_energy: float
    passed: bool
    points: int


def _deviation(value: float, ref: float) -> tuple[float, float]:
    diff = abs(value - ref)
    return diff, (diff / abs(ref) if ref != 0 else (0.0 if diff == 0 else math.inf))


def compare_oracle(
    grid: Sequence[float],
    cav: LorentzianCavityParams,
    tol: float = 1e-8,
    abs_floor: float = 1e-10,
    quad_tol: float = 1e-11,
) -> OracleReport:
    """Closed-form potential vs. quadrature over an energy grid.

    A point passes when each part agrees to ``tol`` relative, or to
    ``abs_floor`` absolute where the reference part is (near) zero.
    """
    if len(grid) == 0:
        raise ValueError("oracle grid is empty")
    worst = (-1.0, 0.0)
    stats = np.zeros(4)
    passed = True
    for e in grid:
        e = float(e)
        if abs(e) < 1e-3:
            raise ValueError(f"oracle grid point {e!r} is too close to the branch point E_k = 0")
        closed = potential_imperfect(e, cav)
        quad = pv_quadrature_potential(e, cav, tol=quad_tol)
        abs_re, rel_re = _deviation(closed.re, quad.re)
        abs_im, rel_im = _deviation(closed.im, quad.im)
        ok = all(a <= max(tol * abs(r), abs_floor) for a, r in ((abs_re, quad.re), (abs_im, quad.im)))
        passed &= ok
        score = max(abs_re / max(tol * abs(quad.re), abs_floor), abs_im / max(tol * abs(quad.im), abs_floor))
        if score > worst[0]:
            worst = (score, e)
        stats = np.maximum(stats, [abs_re, abs_im, rel_re if abs_re > abs_floor else 0.0,
                                   rel_im if abs_im > abs_floor else 0.0])
    return OracleReport(*map(float, stats), worst_energy=worst[1], passed=bool(passed), points=len(grid))


# ---------------------------------------------------------------------------
# reservoir discretization


@dataclass(frozen=True)
class ModeDiscretization:
    frequencies: np.ndarray
    couplings: np.ndarray

    def __post_init__(self):
        if self.frequencies.shape != self.couplings.shape:
            raise InvalidDiscretization("frequencies and couplings differ in length")
        if np.any(np.diff(self.frequencies) <= 0):
            raise InvalidDiscretization("mode frequencies must be strictly increasing")
        if np.any(self.couplings < 0):
            raise InvalidDiscretization("couplings must be non-negative")

    def __len__(self):
        return len(self.frequencies)

    @property
    def weight(self) -> float:
        return float(np.sum(self.couplings**2))

    @classmethod
    def single_mode(cls, cav: PerfectCavityParams) -> "ModeDiscretization":
        return cls(np.array([cav.omega_c]), np.array([cav.eta]))


def discretize_modes(
    cav: LorentzianCavityParams,
    count: int,
    omega_max: float | None = None,
    rule: str = "midpoint",
) -> ModeDiscretization:
    """Replace the Lorentzian continuum on ``(0, omega_max]`` by ``count`` modes.

    Modes sit at the midpoints of ``count`` equal cells.  ``rule="midpoint"``
    uses ``g_q^2 = J(w_q) dw``; ``rule="cell"`` uses the exact weight of each
    cell, which stays correct when ``gamma`` is narrower than a cell.
    """
    if omega_max is None:
        omega_max = default_cutoff(cav)
    if count < 2:
        raise InvalidDiscretization(f"need at least 2 modes, got {count}")
    if not omega_max > cav.omega_c + 10 * cav.gamma:
        raise InvalidDiscretization(
            f"omega_max={omega_max!r} must exceed omega_c + 10 gamma = {cav.omega_c + 10 * cav.gamma!r}"
        )
    dw = omega_max / count
    freqs = (np.arange(count) + 0.5) * dw
    if rule == "midpoint":
        g2 = cav.lam * cav.gamma**2 / (2 * np.pi * ((cav.omega_c - freqs) ** 2 + cav.gamma**2)) * dw
    elif rule == "cell":
        edges = np.arange(count + 1) * dw
        g2 = cav.lam * cav.gamma / (2 * np.pi) * np.diff(np.arctan((edges - cav.omega_c) / cav.gamma))
    else:
        raise InvalidDiscretization(f"unknown rule {rule!r}")
    return ModeDiscretization(freqs, np.sqrt(g2))


# ---------------------------------------------------------------------------
# wavepacket dynamics


@dataclass(frozen=True)
class WavepacketSpec:
    """Gaussian packet ``exp(i k0 j - (j - j0)^2 / (4 sigma^2))`` launched from the left."""

    center_momentum: float
    width_sites: float
    center_site: int

    def __post_init__(self):
        if not 0 < self.center_momentum < math.pi:
            raise ValueError(f"center_momentum must lie in (0, pi), got {self.center_momentum!r}")
        if self.width_sites < 5:
            raise ValueError(f"width_sites must be >= 5, got {self.width_sites!r}")
        if not self.center_site + 4 * self.width_sites < 0:
            raise ValueError("packet must start clear of site 0: center_site + 4 width_sites < 0")

    def amplitudes(self, sites: np.ndarray) -> np.ndarray:
        psi = np.exp(1j * self.center_momentum * sites - (sites - self.center_site) ** 2 / (4 * self.width_sites**2))
        return psi / np.linalg.norm(psi)


@dataclass(frozen=True)
class SimulationOutcome:
    transmitted: float
    reflected: float
    retained: float
    norm_error: float


def suggest_run(wg: WaveguideParams, packet: WavepacketSpec, dt: float = 0.02) -> tuple[int, float]:
    """Lattice size and end time that let the packet clear site 0 by 4 sigma both ways.

    Uses the group velocity of the Crank-Nicolson dynamics, which is slower
    than the exact one by ``1 / (1 + (E dt / 2)^2)``.
    """
    k0, sigma = packet.center_momentum, packet.width_sites
    e0 = dispersion(k0, wg)
    v = group_velocity(k0, wg) / (1 + (e0 * dt / 2) ** 2)
    t_final = (abs(packet.center_site) + 6 * sigma) / v
    reach = max(abs(packet.center_site), v * t_final) + 8 * sigma
    return 2 * int(math.ceil(reach)) + 2, t_final


def _edge_probability(alpha: np.ndarray, margin: int) -> float:
    return float(np.sum(np.abs(alpha[:margin]) ** 2) + np.sum(np.abs(alpha[-margin:]) ** 2))


def evolve_wavepacket(
    wg: WaveguideParams,
    modes: ModeDiscretization,
    packet: WavepacketSpec,
    lattice_sites: int,
    dt: float = 0.02,
    t_final: float | None = None,
    *,
    checkpoints: int = 20,
    backend: str | None = None,
    snapshot_path=None,
) -> SimulationOutcome:
    """Scatter a Gaussian packet off the discretized cavity and measure where it ends up.

    The chain occupies sites ``-(N//2) .. N - 1 - N//2`` with open ends; the
    cavity modes couple to site 0.  Integration is Crank-Nicolson with fixed
    step ``dt``.  Boundary contamination and norm drift are checked at
    ``checkpoints`` evenly spaced times.  When ``snapshot_path`` is given,
    ``|alpha_j|^2`` at every checkpoint is written there as CSV.
    """
    if t_final is None:
        t_final = suggest_run(wg, packet, dt)[1]
    n = int(lattice_sites)
    sites = np.arange(n) - n // 2
    site0 = n // 2
    margin = int(math.ceil(3 * packet.width_sites))
    if packet.center_site - 3 * packet.width_sites <= sites[0] + margin:
        raise LatticeTooSmall(f"packet start {packet.center_site} is within 3 sigma of the lattice edge")

    alpha = packet.amplitudes(sites.astype(float)).astype(np.complex128)
    beta = np.zeros(len(modes), dtype=np.complex128)
    freqs = np.ascontiguousarray(modes.frequencies, dtype=np.float64)
    couplings = np.ascontiguousarray(modes.couplings, dtype=np.float64)
    step = get_stepper(backend)

    nsteps = int(math.ceil(t_final / dt))
    bounds = np.linspace(0, nsteps, max(1, checkpoints) + 1).astype(int)
    snapshots = []
    norm_error = 0.0
    for a, b in zip(bounds[:-1], bounds[1:]):
        step(alpha, beta, wg.omega, wg.hopping, freqs, couplings, site0, dt, int(b - a))
        norm_error = max(norm_error, abs(np.vdot(alpha, alpha).real + np.vdot(beta, beta).real - 1.0))
        if norm_error > NORM_TOL:
            raise IntegratorFailure(f"norm drift {norm_error:.3e} exceeds {NORM_TOL:.0e} at t={b * dt:.4g}")
        edge = _edge_probability(alpha, margin)
        if edge > EDGE_TOL:
            raise LatticeTooSmall(
                f"probability {edge:.3e} within 3 sigma of the lattice edge at t={b * dt:.4g}; "
                f"use more than {n} sites"
            )
        if snapshot_path is not None:
            snapshots.append((b * dt, np.abs(alpha) ** 2))

    if snapshot_path is not None:
        with open(snapshot_path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["time", "site", "probability"])
            for t, prob in snapshots:
                for j, p in zip(sites, prob):
                    writer.writerow([f"{t:.17g}", int(j), f"{p:.17g}"])

    prob = np.abs(alpha) ** 2
    return SimulationOutcome(
        transmitted=float(prob[site0 + 1:].sum()),
        reflected=float(prob[:site0].sum()),
        retained=float(prob[site0] + np.sum(np.abs(beta) ** 2)),
        norm_error=norm_error,
    )


@dataclass(frozen=True)
class WavepacketReport:
    outcome: SimulationOutcome
    big_t: float
    big_r: float
    retained: float
    tol: float
    deviations: tuple[float, float, float] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "deviations", (
            abs(self.outcome.transmitted - self.big_t),
            abs(self.outcome.reflected - self.big_r),
            abs(self.outcome.retained - self.retained),
        ))

    @property
    def passed(self) -> bool:
        return max(self.deviations) < self.tol and self.outcome.norm_error < NORM_TOL


def compare_wavepacket(
    wg: WaveguideParams,
    cavity: PerfectCavityParams | LorentzianCavityParams,
    packet: WavepacketSpec,
    modes: int = 2000,
    lattice_sites: int | None = None,
    dt: float = 0.02,
    t_final: float | None = None,
    tol: float = 0.02,
    omega_max: float | None = None,
    backend: str | None = None,
) -> WavepacketReport:
    """Wavepacket outcome vs. stationary T, R, 1-T-R at the packet's central momentum."""
    if isinstance(cavity, PerfectCavityParams):
        discretization = ModeDiscretization.single_mode(cavity)
    else:
        discretization = discretize_modes(cavity, modes, omega_max)
    n_sugg, t_sugg = suggest_run(wg, packet, dt)
    outcome = evolve_wavepacket(
        wg, discretization, packet,
        lattice_sites=lattice_sites or n_sugg,
        dt=dt,
        t_final=t_final or t_sugg,
        backend=backend,
    )
    k0 = packet.center_momentum
    res = coefficients(k0, effective_potential(dispersion(k0, wg), cavity), wg)
    return WavepacketReport(outcome, res.big_t, res.big_r, res.retained, tol)
