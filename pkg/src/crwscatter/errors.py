"""Exception types raised across the package."""

from __future__ import annotations


class ScatteringError(Exception):
    """Base class for all errors raised by crwscatter."""


class OutOfBand(ScatteringError, ValueError):
    """An energy or momentum lies outside the propagating band."""

    def __init__(self, value: float, index: int | None = None, message: str | None = None):
        self.value = value
        self.index = index
        if message is None:
            where = f" at grid index {index}" if index is not None else ""
            message = f"value {value!r} is outside the band{where}"
        super().__init__(message)


class BranchPoint(ScatteringError, ValueError):
    """The imperfect-cavity potential is discontinuous at zero incident energy."""

    def __init__(self, energy: float):
        self.energy = energy
        super().__init__(
            f"effective potential is discontinuous at E_k = 0 (got E_k={energy!r}); "
            "evaluate on one side explicitly"
        )


class DegenerateInput(ScatteringError, ValueError):
    """Zero denominator in the scattering amplitudes (band edge with V = 0)."""


class ToleranceNotMet(ScatteringError, RuntimeError):
    def __init__(self, achieved: float, tol: float):
        self.achieved = achieved
        self.tol = tol
        super().__init__(f"quadrature error estimate {achieved:.3e} exceeds tolerance {tol:.3e}")


class InvalidDiscretization(ScatteringError, ValueError):
    pass


class LatticeTooSmall(ScatteringError, RuntimeError):
    pass


class IntegratorFailure(ScatteringError, RuntimeError):
    pass


class ConfigError(ScatteringError, ValueError):
    """Invalid run configuration; carries the offending key and line when known."""

    def __init__(self, message: str, key: str | None = None, line: int | None = None):
        self.key = key
        self.line = line
        loc = []
        if key is not None:
            loc.append(f"key '{key}'")
        if line is not None:
            loc.append(f"line {line}")
        prefix = f"{', '.join(loc)}: " if loc else ""
        super().__init__(prefix + message)
