"""Data tables behind each published figure, with the captions' parameters built in."""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .model import WaveguideParams
from .potential import LorentzianCavityParams, PerfectCavityParams, spectral_density
from .scattering import COLUMNS, DEFAULT_EPSILON, default_grid, sweep
from .tables import audit_rows, render

FIGURES = ("fig2a", "fig2b", "fig2c", "fig3", "fig4", "fig5", "fig6")

OMEGA = 10.0
OMEGA_C = 10.0
ETA = 0.1
POINTS = 1001


def _label(value: float) -> str:
    return format(value, "g")


def _zero_snapped_energy_grid(wg: WaveguideParams, points: int) -> list[float]:
    lo, hi = wg.band
    grid = np.linspace(lo, hi, points)
    grid[np.isclose(grid, 0.0, rtol=0.0, atol=1e-9 * (hi - lo))] = 0.0
    return list(grid)


def figure_tables(name: str, points: int = POINTS) -> list[tuple[str, tuple[str, ...], list, list[str]]]:
    """``(stem, columns, rows, comments)`` for each curve of a figure."""
    wg4 = WaveguideParams(OMEGA, 4.0)
    out = []

    def scattering_table(stem, cavity, wg, axis, grid=None, extra=()):
        grid = default_grid(axis, wg, cavity.omega_c, points) if grid is None else grid
        rows = sweep(grid, cavity, wg, axis=axis, epsilon=DEFAULT_EPSILON)
        audit_rows(rows)
        comments = [f"Omega={wg.omega!r} J={wg.hopping!r} cavity={cavity!r} axis={axis}", *extra]
        out.append((stem, COLUMNS, rows, comments))

    if name == "fig2a":
        scattering_table("fig2a", PerfectCavityParams(OMEGA_C, ETA), wg4, "momentum")
    elif name == "fig2b":
        gamma = 0.01
        cav = LorentzianCavityParams.from_single_mode(ETA, gamma, OMEGA_C)
        scattering_table("fig2b", cav, wg4, "momentum", extra=(
            f"lambda derived from eta={ETA!r} via lambda=2*eta^2/gamma (={cav.lam!r}), "
            "not the caption's lambda=800 which is inconsistent with eta=sqrt(lambda*gamma/2)",
        ))
    elif name == "fig2c":
        scattering_table("fig2c", LorentzianCavityParams(OMEGA_C, 8.0, 1.0), wg4, "momentum")
    elif name == "fig3":
        for lam in (0.5, 5.0, 10.0, 20.0):
            scattering_table(f"fig3_lambda_{_label(lam)}", LorentzianCavityParams(OMEGA_C, lam, 0.5), wg4, "detuning")
    elif name == "fig4":
        for gamma in (0.1, 0.5, 1.0, 5.0):
            scattering_table(f"fig4_gamma_{_label(gamma)}", LorentzianCavityParams(OMEGA_C, 20.0, gamma), wg4, "detuning")
    elif name == "fig5":
        omegas = np.linspace(0.0, 2 * OMEGA_C, points)
        for gamma in (0.1, 0.5, 1.0, 5.0):
            cav = LorentzianCavityParams(OMEGA_C, 20.0, gamma)
            rows = [(w, spectral_density(w, cav)) for w in omegas]
            out.append((f"fig5_gamma_{_label(gamma)}", ("omega", "J"), rows, [f"cavity={cav!r}"]))
    elif name == "fig6":
        wg10 = WaveguideParams(OMEGA, 10.0)
        scattering_table("fig6", LorentzianCavityParams(OMEGA_C, 20.0, 4.0), wg10, "energy",
                         grid=_zero_snapped_energy_grid(wg10, points),
                         extra=(f"E_k = 0 split into rows at -/+{DEFAULT_EPSILON!r}",))
    else:
        raise ValueError(f"unknown figure {name!r}; choose from {', '.join(FIGURES)}")
    return out


def run_figure(name: str, outdir, fmt: str = "csv", points: int = POINTS) -> list[Path]:
    """Write one table per curve of figure ``name`` into ``outdir``; returns the paths."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for stem, columns, rows, comments in figure_tables(name, points):
        path = outdir / f"{stem}.{fmt}"
        with open(path, "w", newline="") as fh:
            fh.write(render(columns, rows, fmt, comments))
        written.append(path)
    return written
