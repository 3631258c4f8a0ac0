# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled stepping kernels: fused pointwise nonlinear/damping substep and the
Crank-Nicolson tridiagonal apply/solve for the radial scheme."""

import numpy as np

cimport cython
from libc.math cimport cos, exp, expm1, log1p, pow, sin

BACKEND = "cython"


def nl_substep(
    double complex[::1] psi,
    double dt,
    double nl,
    double sigma,
    double delta,
    double p,
    double eps_sat,
    double qm1_half,
    double lin_gain,
    sponge,
):
    cdef Py_ssize_t n = psi.shape[0]
    cdef Py_ssize_t j
    cdef double i2, u, famp, phase, e, phi_u, c, s, re, im, g
    cdef bint crit_damp = (delta > 0.0) and (p - 2.0 * sigma < 1e-12) and (p - 2.0 * sigma > -1e-12)
    cdef bint sig1 = sigma == 1.0
    cdef bint sig2 = sigma == 2.0
    cdef bint half_p1 = p == 2.0
    cdef bint half_p2 = p == 4.0
    cdef double[::1] w
    cdef bint has_sponge = sponge is not None
    if has_sponge:
        w = sponge
    e = 1.0 - 2.0 * sigma / p if p != 0.0 else 0.0
    g = exp(lin_gain * dt) if lin_gain != 0.0 else 1.0
    for j in range(n):
        re = psi[j].real
        im = psi[j].imag
        i2 = re * re + im * im
        if delta > 0.0:
            if half_p2:
                u = p * delta * dt * i2 * i2
            elif half_p1:
                u = p * delta * dt * i2
            else:
                u = p * delta * dt * pow(i2, 0.5 * p)
            famp = pow(1.0 + u, -1.0 / p)
            if crit_damp:
                phi_u = log1p(u) / u if u > 1e-12 else 1.0 - 0.5 * u
            else:
                phi_u = expm1(e * log1p(u)) / (e * u) if u > 1e-12 else 1.0 + 0.5 * (e - 1.0) * u
        else:
            famp = 1.0
            phi_u = 1.0
        if sig2:
            phase = nl * dt * i2 * i2 * phi_u
        elif sig1:
            phase = nl * dt * i2 * phi_u
        else:
            phase = nl * dt * pow(i2, sigma) * phi_u
        if eps_sat != 0.0:
            phase = phase - eps_sat * dt * pow(i2, qm1_half)
        if lin_gain != 0.0:
            famp = famp * g
        if has_sponge:
            famp = famp * exp(-dt * w[j])
        c = famp * cos(phase)
        s = famp * sin(phase)
        psi[j] = (re * c - im * s) + 1j * (re * s + im * c)


def cn_apply(
    double complex[::1] bl,
    double complex[::1] bd,
    double complex[::1] bu,
    double complex[::1] al,
    double complex[::1] ad,
    double complex[::1] au,
    double complex[::1] psi,
    double complex[::1] work,
):
    """psi <- A^(-1) (B psi): tridiagonal matvec then Thomas solve in place."""
    cdef Py_ssize_t n = psi.shape[0]
    cdef Py_ssize_t j
    cdef double complex denom
    work[0] = bd[0] * psi[0] + bu[0] * psi[1]
    for j in range(1, n - 1):
        work[j] = bl[j] * psi[j - 1] + bd[j] * psi[j] + bu[j] * psi[j + 1]
    work[n - 1] = bl[n - 1] * psi[n - 2] + bd[n - 1] * psi[n - 1]
    # Thomas: forward sweep, c' stored in psi, d' in work
    psi[0] = au[0] / ad[0]
    work[0] = work[0] / ad[0]
    for j in range(1, n):
        denom = ad[j] - al[j] * psi[j - 1]
        if j < n - 1:
            psi[j] = au[j] / denom
        work[j] = (work[j] - al[j] * work[j - 1]) / denom
    psi[n - 1] = work[n - 1]
    for j in range(n - 2, -1, -1):
        psi[j] = work[j] - psi[j] * psi[j + 1]
