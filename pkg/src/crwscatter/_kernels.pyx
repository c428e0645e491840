# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Crank-Nicolson stepper for the chain + side-reservoir Hamiltonian."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def cn_evolve(double complex[::1] alpha, double complex[::1] beta,
              double onsite, double hopping,
              const double[::1] freqs, const double[::1] couplings,
              Py_ssize_t site0, double dt, Py_ssize_t nsteps):
    """Advance ``(alpha, beta)`` in place by ``nsteps`` Crank-Nicolson steps."""
    cdef Py_ssize_t n = alpha.shape[0]
    cdef Py_ssize_t m = beta.shape[0]
    cdef Py_ssize_t i, q, step
    cdef double tau = 0.5 * dt
    cdef double complex itau = 1j * tau
    cdef double complex off = -itau * hopping
    cdef double complex diag = 1.0 + itau * onsite
    cdef double complex self_energy = 0.0
    cdef double complex acc, h

    inv_d_arr = np.empty(m, dtype=np.complex128)
    rhs_beta_arr = np.empty(m, dtype=np.complex128)
    cp_arr = np.empty(n, dtype=np.complex128)
    inv_den_arr = np.empty(n, dtype=np.complex128)
    work_arr = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] inv_d = inv_d_arr
    cdef double complex[::1] rhs_beta = rhs_beta_arr
    cdef double complex[::1] cp = cp_arr
    cdef double complex[::1] inv_den = inv_den_arr
    cdef double complex[::1] work = work_arr

    for q in range(m):
        inv_d[q] = 1.0 / (1.0 + itau * freqs[q])
        self_energy += couplings[q] * couplings[q] * inv_d[q]

    # LU factors of the (constant) reduced tridiagonal matrix
    cdef double complex b
    for i in range(n):
        b = diag
        if i == site0:
            b = b + tau * tau * self_energy
        if i > 0:
            b = b - off * cp[i - 1]
        inv_den[i] = 1.0 / b
        cp[i] = off * inv_den[i]

    cdef double complex a_site, rb
    cdef double complex lo = 1.0 - itau * onsite
    cdef double complex hop = itau * hopping
    for step in range(nsteps):
        # reservoir pass: feed into site 0, explicit half step, and its reduced contribution
        a_site = alpha[site0]
        h = 0.0
        acc = 0.0
        for q in range(m):
            h = h + couplings[q] * beta[q]
            rb = beta[q] - itau * (freqs[q] * beta[q] + couplings[q] * a_site)
            rhs_beta[q] = rb
            acc = acc + couplings[q] * rb * inv_d[q]

        # chain explicit half step
        if n == 1:
            work[0] = lo * alpha[0]
        else:
            work[0] = lo * alpha[0] + hop * alpha[1]
            for i in range(1, n - 1):
                work[i] = lo * alpha[i] + hop * (alpha[i - 1] + alpha[i + 1])
            work[n - 1] = lo * alpha[n - 1] + hop * alpha[n - 2]
        work[site0] = work[site0] - itau * (h + acc)

        # forward/back substitution
        work[0] = work[0] * inv_den[0]
        for i in range(1, n):
            work[i] = (work[i] - off * work[i - 1]) * inv_den[i]
        alpha[n - 1] = work[n - 1]
        for i in range(n - 2, -1, -1):
            alpha[i] = work[i] - cp[i] * alpha[i + 1]

        a_site = alpha[site0]
        for q in range(m):
            beta[q] = (rhs_beta[q] - itau * couplings[q] * a_site) * inv_d[q]
