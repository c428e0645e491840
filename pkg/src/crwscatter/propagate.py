"""Backend selection for the time-stepping kernel.

The compiled Cython kernel is used when it was built; otherwise, or when
``CRWSCATTER_BACKEND=python`` is set, the NumPy/SciPy implementation runs.
Both advance the single-excitation state with the Crank-Nicolson (Cayley)
propagator, which is exactly unitary for a Hermitian Hamiltonian, so the norm
only drifts by floating-point round-off.
"""

from __future__ import annotations

import os

from . import _propagate_py

try:
    from . import _kernels
except ImportError:  # extension not built
    _kernels = None

AVAILABLE = ("compiled", "python") if _kernels is not None else ("python",)

BACKEND = "python" if os.environ.get("CRWSCATTER_BACKEND") == "python" or _kernels is None else "compiled"


def get_stepper(backend: str | None = None):
    backend = backend or BACKEND
    if backend == "compiled":
        if _kernels is None:
            raise RuntimeError("compiled kernel is not built; install with the Cython extension")
        return _kernels.cn_evolve
    if backend == "python":
        return _propagate_py.cn_evolve
    raise ValueError(f"unknown backend {backend!r}")
