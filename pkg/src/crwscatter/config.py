"""Run configuration: an INI document parsed with :mod:`configparser`.

Grammar (one canonical format; ``#`` or ``;`` start comments)::

    [waveguide]
    omega = 10            # bare resonator frequency
    hopping = 4           # J > 0

    [perfect_cavity]      # exactly one of the two cavity sections
    omega_c = 10
    eta = 0.1

    [lorentzian_cavity]
    omega_c = 10
    lambda = 8
    gamma = 1

    [sweep]
    axis = momentum       # momentum | energy | detuning
    start = 0             # optional, defaults to the band edge
    stop = 3.141592653589793
    points = 1001
    epsilon = 1e-9        # half-gap used to split a grid point at E_k = 0

    [output]
    format = csv          # csv | json
    path = out.csv        # optional; stdout when omitted

    [oracle]              # optional; required by `validate`
    checks = potential, wavepacket
    potential_tol = 1e-8
    quadrature_tol = 1e-11
    grid_points = 200
    modes = 2000
    omega_max = 60
    center_momentum = 1.5707963267948966
    width_sites = 15
    center_site = -90
    lattice_sites = 600
    dt = 0.02
    t_final = 25
    wavepacket_tol = 0.02
"""

from __future__ import annotations

import configparser
import math
import re
from dataclasses import dataclass, field

from .errors import ConfigError
from .model import WaveguideParams
from .potential import LorentzianCavityParams, PerfectCavityParams

AXES = ("momentum", "energy", "detuning")
FORMATS = ("csv", "json")
CHECKS = ("potential", "wavepacket")

_SCHEMA = {
    "waveguide": {"omega": float, "hopping": float},
    "perfect_cavity": {"omega_c": float, "eta": float},
    "lorentzian_cavity": {"omega_c": float, "lambda": float, "gamma": float},
    "sweep": {"axis": str, "start": float, "stop": float, "points": int, "epsilon": float},
    "output": {"format": str, "path": str},
    "oracle": {
        "checks": str,
        "potential_tol": float,
        "quadrature_tol": float,
        "grid_points": int,
        "modes": int,
        "omega_max": float,
        "center_momentum": float,
        "width_sites": float,
        "center_site": int,
        "lattice_sites": int,
        "dt": float,
        "t_final": float,
        "wavepacket_tol": float,
    },
}
_REQUIRED = {
    "waveguide": ("omega", "hopping"),
    "perfect_cavity": ("omega_c", "eta"),
    "lorentzian_cavity": ("omega_c", "lambda", "gamma"),
}


@dataclass(frozen=True)
class SweepConfig:
    axis: str = "momentum"
    start: float | None = None
    stop: float | None = None
    points: int = 1001
    epsilon: float = 1e-9


@dataclass(frozen=True)
class OracleConfig:
    checks: tuple[str, ...] = CHECKS
    potential_tol: float = 1e-8
    quadrature_tol: float = 1e-11
    grid_points: int = 200
    modes: int = 2000
    omega_max: float | None = None
    center_momentum: float = math.pi / 2
    width_sites: float = 15.0
    center_site: int = -90
    lattice_sites: int | None = None
    dt: float = 0.02
    t_final: float | None = None
    wavepacket_tol: float = 0.02


@dataclass(frozen=True)
class RunConfig:
    waveguide: WaveguideParams
    cavity: PerfectCavityParams | LorentzianCavityParams
    sweep: SweepConfig = field(default_factory=SweepConfig)
    output_format: str = "csv"
    output_path: str | None = None
    oracle: OracleConfig | None = None

    def sweep_range(self) -> tuple[float, float]:
        lo, hi = axis_limits(self.sweep.axis, self.waveguide, self.cavity.omega_c)
        start = lo if self.sweep.start is None else self.sweep.start
        stop = hi if self.sweep.stop is None else self.sweep.stop
        return start, stop


def axis_limits(axis: str, wg: WaveguideParams, omega_c: float) -> tuple[float, float]:
    lo, hi = wg.band
    if axis == "momentum":
        return 0.0, math.pi
    if axis == "energy":
        return lo, hi
    return lo - omega_c, hi - omega_c


def _line_index(text: str) -> dict[tuple[str | None, str | None], int]:
    """Map ``(section, key)`` and ``(section, None)`` to 1-based line numbers."""
    index: dict[tuple[str | None, str | None], int] = {}
    section = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped[0] in "#;":
            continue
        m = re.match(r"\[([^\]]+)\]", stripped)
        if m:
            section = m.group(1).strip()
            index.setdefault((section, None), lineno)
            continue
        key = re.split(r"[=:]", stripped, maxsplit=1)[0].strip().lower()
        index.setdefault((section, key), lineno)
    return index


def parse_config(text: str) -> RunConfig:
    """Parse and validate a run configuration; raises :class:`ConfigError` with location."""
    lines = _line_index(text)
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"), interpolation=None)
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(str(exc).splitlines()[0], line=getattr(exc, "lineno", None)) from None

    def fail(message, section, key=None):
        raise ConfigError(message, key=f"{section}.{key}" if key else f"[{section}]",
                          line=lines.get((section, key)))

    values: dict[str, dict] = {}
    for section in parser.sections():
        if section not in _SCHEMA:
            fail(f"unknown section (expected one of {', '.join(_SCHEMA)})", section)
        values[section] = {}
        for key, raw in parser.items(section):
            convert = _SCHEMA[section].get(key)
            if convert is None:
                fail("unknown key", section, key)
            try:
                values[section][key] = convert(raw.strip())
            except ValueError:
                fail(f"cannot parse {raw!r} as {convert.__name__}", section, key)
        for key in _REQUIRED.get(section, ()):
            if key not in values[section]:
                fail(f"missing required key '{key}'", section)

    if "waveguide" not in values:
        raise ConfigError("missing section [waveguide]")
    cavities = [s for s in ("perfect_cavity", "lorentzian_cavity") if s in values]
    if len(cavities) != 1:
        raise ConfigError(
            "exactly one of [perfect_cavity] or [lorentzian_cavity] is required"
            + (" (both given)" if cavities else ""),
            line=lines.get((cavities[-1], None)) if cavities else None,
        )

    w = values["waveguide"]
    try:
        waveguide = WaveguideParams(w["omega"], w["hopping"])
    except ValueError as exc:
        key = "hopping" if "hopping" in str(exc) else "omega"
        fail(str(exc), "waveguide", key)

    c = values[cavities[0]]
    try:
        if cavities[0] == "perfect_cavity":
            cavity = PerfectCavityParams(c["omega_c"], c["eta"])
        else:
            cavity = LorentzianCavityParams(c["omega_c"], c["lambda"], c["gamma"])
    except ValueError as exc:
        bad = next((k for k in c if k in str(exc) or (k == "lambda" and "lam" in str(exc))), None)
        fail(str(exc), cavities[0], bad)

    if "sweep" not in values:
        raise ConfigError("missing section [sweep]")
    s = values["sweep"]
    sweep = SweepConfig(**s)
    if sweep.axis not in AXES:
        fail(f"axis must be one of {', '.join(AXES)}", "sweep", "axis")
    if sweep.points < 2:
        fail("points must be >= 2", "sweep", "points")
    if not sweep.epsilon > 0:
        fail("epsilon must be positive", "sweep", "epsilon")
    lo, hi = axis_limits(sweep.axis, waveguide, cavity.omega_c)
    slack = 1e-12 * max(1.0, abs(lo), abs(hi))
    for key in ("start", "stop"):
        value = s.get(key)
        if value is not None and not lo - slack <= value <= hi + slack:
            fail(f"{value!r} is outside the band [{lo!r}, {hi!r}] for axis '{sweep.axis}'", "sweep", key)

    out = values.get("output", {})
    fmt = out.get("format", "csv")
    if fmt not in FORMATS:
        fail(f"format must be one of {', '.join(FORMATS)}", "output", "format")

    oracle = None
    if "oracle" in values:
        o = dict(values["oracle"])
        if "checks" in o:
            checks = tuple(x.strip() for x in o["checks"].split(",") if x.strip())
            unknown = [x for x in checks if x not in CHECKS]
            if unknown or not checks:
                fail(f"checks must be drawn from {', '.join(CHECKS)}", "oracle", "checks")
            o["checks"] = checks
        oracle = OracleConfig(**o)

    return RunConfig(
        waveguide=waveguide,
        cavity=cavity,
        sweep=sweep,
        output_format=fmt,
        output_path=out.get("path"),
        oracle=oracle,
    )


def load_config(path) -> RunConfig:
    with open(path) as fh:
        return parse_config(fh.read())
