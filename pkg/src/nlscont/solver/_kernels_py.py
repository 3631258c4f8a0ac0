"""Pure numpy/scipy stepping kernels (fallback when the extension is absent).

Semantics must match nlscont.solver._kernels exactly; the test suite runs the
stepper against both backends and compares bit-for-bit tolerances.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import solve_banded

BACKEND = "numpy"


def nl_substep(
    psi: np.ndarray,
    dt: float,
    nl: float,
    sigma: float,
    delta: float,
    p: float,
    eps_sat: float,
    qm1_half: float,
    lin_gain: float,
    sponge: np.ndarray | None,
) -> None:
    """Pointwise substep: nonlinear phase rotation with the closed-form
    power-law damped amplitude, saturation phase, linear gain/loss, sponge."""
    i2 = psi.real ** 2 + psi.imag ** 2
    if delta > 0.0:
        u = (p * delta * dt) * i2 ** (p / 2.0)
        famp = (1.0 + u) ** (-1.0 / p)
        if abs(p - 2.0 * sigma) < 1e-12:
            phi_u = np.where(u > 1e-12, np.log1p(u) / np.where(u > 0, u, 1.0), 1.0 - 0.5 * u)
        else:
            e = 1.0 - 2.0 * sigma / p
            small = u < 1e-12
            safe_u = np.where(small, 1.0, u)
            phi_u = np.where(
                small, 1.0 + 0.5 * (e - 1.0) * u, np.expm1(e * np.log1p(u)) / (e * safe_u)
            )
        phase = (nl * dt) * i2 ** sigma * phi_u
    else:
        famp = 1.0
        phase = (nl * dt) * i2 ** sigma
    if eps_sat != 0.0:
        phase = phase - (eps_sat * dt) * i2 ** qm1_half
    factor = famp * np.exp(1j * phase)
    if lin_gain != 0.0:
        factor = factor * np.exp(lin_gain * dt)
    if sponge is not None:
        factor = factor * np.exp(-dt * sponge)
    psi *= factor


def cn_apply(
    bl: np.ndarray,
    bd: np.ndarray,
    bu: np.ndarray,
    al: np.ndarray,
    ad: np.ndarray,
    au: np.ndarray,
    psi: np.ndarray,
    work: np.ndarray,
) -> None:
    """psi <- A^(-1) (B psi) for tridiagonal A, B given as (lower, diag, upper)."""
    n = psi.shape[0]
    work[:] = bd * psi
    work[1:] += bl[1:] * psi[:-1]
    work[:-1] += bu[:-1] * psi[1:]
    ab = np.zeros((3, n), dtype=np.complex128)
    ab[0, 1:] = au[:-1]
    ab[1, :] = ad
    ab[2, :-1] = al[1:]
    psi[:] = solve_banded((1, 1), ab, work)
