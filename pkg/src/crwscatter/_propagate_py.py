"""NumPy/SciPy Crank-Nicolson stepper; same contract as the compiled kernel."""

from __future__ import annotations

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import splu


def cn_evolve(alpha, beta, onsite, hopping, freqs, couplings, site0, dt, nsteps):
    """Advance ``(alpha, beta)`` in place by ``nsteps`` Crank-Nicolson steps."""
    n = alpha.shape[0]
    tau = 0.5 * dt
    itau = 1j * tau
    inv_d = 1.0 / (1.0 + itau * freqs)
    self_energy = np.sum(couplings**2 * inv_d)

    diag = np.full(n, 1.0 + itau * onsite, dtype=np.complex128)
    diag[site0] += tau * tau * self_energy
    off = np.full(n - 1, -itau * hopping, dtype=np.complex128)
    lu = splu(sparse.diags([off, diag, off], [-1, 0, 1], format="csc"))

    rhs = np.empty(n, dtype=np.complex128)
    for _ in range(nsteps):
        feed = couplings @ beta
        rhs_beta = beta - itau * (freqs * beta + couplings * alpha[site0])

        rhs[:] = (1.0 - itau * onsite) * alpha
        rhs[1:] += itau * hopping * alpha[:-1]
        rhs[:-1] += itau * hopping * alpha[1:]
        rhs[site0] -= itau * (feed + couplings @ (rhs_beta * inv_d))

        alpha[:] = lu.solve(rhs)
        beta[:] = (rhs_beta - itau * couplings * alpha[site0]) * inv_d
