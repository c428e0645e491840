"""Oracle checks driven by a run configuration."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import OracleConfig, RunConfig
from .errors import ConfigError, ScatteringError
from .oracle import WavepacketSpec, compare_oracle, compare_wavepacket
from .potential import LorentzianCavityParams


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


@dataclass
class ValidationReport:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def exit_status(self) -> int:
        return 0 if self.passed else 1

    def render(self) -> str:
        lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.name}: {c.detail}" for c in self.checks]
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"


def _oracle_energy_grid(config: RunConfig, points: int) -> list[float]:
    start, stop = config.sweep_range()
    grid = np.linspace(start, stop, points)
    if config.sweep.axis == "momentum":
        wg = config.waveguide
        grid = wg.omega - 2 * wg.hopping * np.cos(grid)
    elif config.sweep.axis == "detuning":
        grid = grid + config.cavity.omega_c
    return [float(e) for e in grid if abs(e) >= 1e-3]


def _potential_check(config: RunConfig, oc: OracleConfig) -> CheckResult:
    if not isinstance(config.cavity, LorentzianCavityParams):
        return CheckResult("potential", True, "skipped (perfect cavity potential is exact)")
    report = compare_oracle(_oracle_energy_grid(config, oc.grid_points), config.cavity,
                            tol=oc.potential_tol, quad_tol=oc.quadrature_tol)
    return CheckResult(
        "potential",
        report.passed,
        f"{report.points} points, max |dRe|={report.max_abs_re:.3e}, max |dIm|={report.max_abs_im:.3e}, "
        f"max rel Re={report.max_rel_re:.3e}, max rel Im={report.max_rel_im:.3e}, "
        f"worst E_k={report.worst_energy:.6g}, tol={oc.potential_tol:g}",
    )


def _wavepacket_check(config: RunConfig, oc: OracleConfig) -> CheckResult:
    packet = WavepacketSpec(oc.center_momentum, oc.width_sites, oc.center_site)
    rep = compare_wavepacket(
        config.waveguide, config.cavity, packet,
        modes=oc.modes, lattice_sites=oc.lattice_sites, dt=oc.dt, t_final=oc.t_final,
        tol=oc.wavepacket_tol, omega_max=oc.omega_max,
    )
    o = rep.outcome
    dt_, dr, dk = rep.deviations
    return CheckResult(
        "wavepacket",
        rep.passed,
        f"transmitted={o.transmitted:.6f} (T={rep.big_t:.6f}, dev {dt_:.3e}), "
        f"reflected={o.reflected:.6f} (R={rep.big_r:.6f}, dev {dr:.3e}), "
        f"retained={o.retained:.6f} (1-T-R={rep.retained:.6f}, dev {dk:.3e}), "
        f"norm error={o.norm_error:.2e}, tol={oc.wavepacket_tol:g}",
    )


def run_validation(config: RunConfig) -> ValidationReport:
    """Run the configured oracle checks; a numerical failure is reported, not raised."""
    oc = config.oracle
    if oc is None:
        raise ConfigError("validation requires an [oracle] section")
    report = ValidationReport()
    for name, check in (("potential", _potential_check), ("wavepacket", _wavepacket_check)):
        if name not in oc.checks:
            continue
        try:
            report.checks.append(check(config, oc))
        except ScatteringError as exc:
            report.checks.append(CheckResult(name, False, f"{type(exc).__name__}: {exc}"))
    return report
