"""Ground-state and ring profiles of the critical focusing NLS, with the
modulation-theory constants derived from them.

Measure conventions: `pcr` is the physical full-space power (d=1 integrates
over the whole line, d=2 carries the 2*pi angular factor), while `big_m`,
`c_d`, `pcr_radial` and the tail amplitude `a_r` live on the radial half-line
measure int_0^inf . rho^(d-1) drho, which is the normalization the reduced
equations are calibrated in (delta_tilde = 2 c_d delta / M, c_nu = 2 A_R^2 / M).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import simpson, solve_ivp
from scipy.interpolate import CubicSpline


class ShootingError(RuntimeError):
    """Shooting bracket lost; carries the last bracket tried."""

    def __init__(self, message: str, bracket: tuple[float, float]):
        super().__init__(f"{message} (last bracket: {bracket})")
        self.bracket = bracket


@dataclass(frozen=True)
class GroundStateData:
    """Positive decaying solution of R'' + (d-1)/rho R' - R + R^(2 sigma + 1) = 0."""

    d: int
    sigma: float
    rho: np.ndarray
    profile: np.ndarray
    pcr: float          # full-space power of R
    pcr_radial: float   # int_0^inf R^2 rho^(d-1) drho
    big_m: float        # (1/4) int_0^inf rho^2 R^2 rho^(d-1) drho
    a_r: float          # lim e^rho rho^((d-1)/2) R
    c_nu: float         # 2 a_r^2 / big_m
    c_d: float          # int_0^inf R^(2 sigma + 2) rho^(d-1) drho
    _spline: CubicSpline = field(repr=False, compare=False, default=None)

    @property
    def r0(self) -> float:
        return float(self.profile[0])

    def __call__(self, rho):
        rho = np.asarray(rho, dtype=float)
        out = np.zeros(rho.shape)
        inside = rho <= self.rho[-1]
        out[inside] = self._spline(rho[inside])
        if np.any(~inside):
            # exponential far tail, matched at the grid edge
            edge = self.rho[-1]
            q = self.profile[-1] * math.exp(edge) * edge ** ((self.d - 1) / 2.0)
            rr = rho[~inside]
            out[~inside] = q * np.exp(-rr) * rr ** (-(self.d - 1) / 2.0)
        return out

    def to_json(self) -> str:
        return json.dumps(
            {
                "kind": "ground_state",
                "d": self.d,
                "sigma": self.sigma,
                "rho": self.rho.tolist(),
                "profile": self.profile.tolist(),
                "constants": {
                    "pcr": self.pcr,
                    "pcr_radial": self.pcr_radial,
                    "big_m": self.big_m,
                    "a_r": self.a_r,
                    "c_nu": self.c_nu,
                    "c_d": self.c_d,
                },
            }
        )


@dataclass(frozen=True)
class RingProfileData:
    """Single-ring G profile of G'' + G'/rho + [alpha^4 rho^2/16 - 1] G + G^3 = 0."""

    alpha: float
    g0: float
    rho: np.ndarray
    profile: np.ndarray
    rho_peak: float
    g_max: float
    _spline: CubicSpline = field(repr=False, compare=False, default=None)

    @property
    def t_c(self) -> float:
        return 1.0 / self.alpha ** 2

    def __call__(self, rho):
        rho = np.asarray(rho, dtype=float)
        out = np.zeros(rho.shape)
        inside = rho <= self.rho[-1]
        out[inside] = self._spline(rho[inside])
        return out

    def to_json(self) -> str:
        return json.dumps(
            {
                "kind": "ring_profile",
                "alpha": self.alpha,
                "g0": self.g0,
                "rho": self.rho.tolist(),
                "profile": self.profile.tolist(),
                "constants": {"rho_peak": self.rho_peak, "g_max": self.g_max, "t_c": self.t_c},
            }
        )


def _angular_factor(d: int) -> float:
    # surface measure for the full-space power; d=1 counts both half-lines
    return 2.0 if d == 1 else 2.0 * math.pi


def _constants_from_profile(d: int, sigma: float, rho: np.ndarray, R: np.ndarray) -> dict:
    w = rho ** (d - 1)
    pcr_radial = simpson(R ** 2 * w, x=rho)
    big_m = 0.25 * simpson(rho ** 2 * R ** 2 * w, x=rho)
    c_d = simpson(np.abs(R) ** (2.0 * sigma + 2.0) * w, x=rho)
    a_r = _tail_amplitude(d, rho, R)
    return {
        "pcr": _angular_factor(d) * pcr_radial,
        "pcr_radial": pcr_radial,
        "big_m": big_m,
        "c_d": c_d,
        "a_r": a_r,
        "c_nu": 2.0 * a_r ** 2 / big_m,
    }


def _tail_amplitude(d: int, rho: np.ndarray, R: np.ndarray) -> float:
    q = np.exp(rho) * rho ** ((d - 1) / 2.0) * R
    lo, hi = (4.0, 9.0) if d == 1 else (9.0, 16.0)
    sel = (rho >= lo) & (rho <= hi) & (R > 0)
    qs, rs = q[sel], rho[sel]
    spread = np.ptp(qs) / np.mean(qs)
    if spread < 1e-6:
        return float(np.mean(qs))
    # algebraic 1/rho corrections (d >= 2): quadratic Richardson fit in 1/rho
    coef = np.polyfit(1.0 / rs, qs, 2)
    return float(coef[-1])


def ground_state_1d(sigma: float, rho_max: float = 25.0, n: int = 4001) -> GroundStateData:
    """Closed-form line ground state (1 + sigma)^(1/(2 sigma)) sech^(1/sigma)(sigma x)."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    rho = np.linspace(0.0, rho_max, n)
    R = (1.0 + sigma) ** (1.0 / (2.0 * sigma)) * np.cosh(sigma * rho) ** (-1.0 / sigma)
    consts = _constants_from_profile(1, sigma, rho, R)
    return GroundStateData(
        d=1, sigma=sigma, rho=rho, profile=R, _spline=CubicSpline(rho, R), **consts
    )


def _profile_rhs(d: int, sigma: float):
    def rhs(rho, y):
        R, Rp = y
        return [Rp, R - np.sign(R) * np.abs(R) ** (2.0 * sigma + 1.0) - (d - 1) * Rp / rho]

    return rhs


def _shoot(d: int, sigma: float, r0: float, rho_end: float):
    """Integrate outward from the origin; classify zero crossing vs turn-up."""
    eps = 1e-6
    Rpp0 = (r0 - r0 ** (2.0 * sigma + 1.0)) / d
    y0 = [r0 + 0.5 * Rpp0 * eps ** 2, Rpp0 * eps]

    def crossed(rho, y):
        return y[0]

    crossed.terminal = True
    crossed.direction = -1

    def turned(rho, y):
        return y[1] - 1e-14

    turned.terminal = True
    turned.direction = 1

    sol = solve_ivp(
        _profile_rhs(d, sigma),
        (eps, rho_end),
        y0,
        method="DOP853",
        rtol=1e-12,
        atol=1e-14,
        events=(crossed, turned),
        dense_output=True,
    )
    if sol.t_events[0].size:
        return "crossed", sol
    if sol.t_events[1].size:
        return "turned", sol
    return "decayed", sol


def _cheb_nodes_matrix(npts: int, length: float) -> tuple[np.ndarray, np.ndarray]:
    """Chebyshev-Lobatto nodes on [0, length] (ascending) and the differentiation matrix."""
    n = npts - 1
    x = np.cos(np.pi * np.arange(n + 1) / n)  # 1 .. -1
    c = np.ones(n + 1)
    c[0] = c[-1] = 2.0
    c *= (-1.0) ** np.arange(n + 1)
    X = np.tile(x, (n + 1, 1)).T
    dX = X - X.T
    D = np.outer(c, 1.0 / c) / (dX + np.eye(n + 1))
    D -= np.diag(D.sum(axis=1))
    rho = (1.0 - x) * (length / 2.0)  # ascending 0 .. length
    return rho, D * (-2.0 / length)


def _bary_eval(nodes: np.ndarray, values: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Barycentric evaluation on Chebyshev-Lobatto nodes (exact at nodes)."""
    lam = (-1.0) ** np.arange(len(nodes))
    lam[0] *= 0.5
    lam[-1] *= 0.5
    out = np.empty_like(np.asarray(x, dtype=float))
    diff = x[:, None] - nodes[None, :]
    exact = np.isclose(diff, 0.0).any(axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        wq = lam / diff
        out = (wq @ values) / wq.sum(axis=1)
    if np.any(exact):
        idx = np.argmin(np.abs(diff[exact]), axis=1)
        out[exact] = values[idx]
    return out


def _cheb_polish_profile(d: int, sigma: float, rho_max: float, guess_fn, npts: int = 320):
    """Global polynomial collocation for the ground-state ODE."""
    rho, D = _cheb_nodes_matrix(npts, rho_max)
    D2 = D @ D
    w = np.zeros_like(rho)
    w[1:-1] = (d - 1.0) / rho[1:-1]
    R = guess_fn(rho)
    p = 2.0 * sigma
    for _ in range(60):
        F = D2 @ R + w * (D @ R) - R + np.abs(R) ** p * R
        J = D2 + w[:, None] * D - np.eye(npts) + np.diag((p + 1.0) * np.abs(R) ** p)
        # origin: regularity u'(0)=0; far end: decay u(L)=0
        F[0] = D[0] @ R
        J[0] = D[0]
        F[-1] = R[-1]
        J[-1] = 0.0
        J[-1, -1] = 1.0
        dR = np.linalg.solve(J, -F)
        R = R + dR
        if np.max(np.abs(dR)) < 1e-13:
            break
    else:
        raise ShootingError("collocation polish did not converge", (0.0, 0.0))
    return rho, R


def ground_state_radial(
    d: int,
    sigma: float,
    rho_max: float = 25.0,
    n: int = 4001,
    bracket: tuple[float, float] = (1.5, 4.0),
) -> GroundStateData:
    """Minimal-power positive profile: bisection shooting on R(0) + tail polish.

    Too-large R(0) produces a zero crossing, too-small a turn-up; the ground
    state sits on the boundary.  Bisection localizes the flip in R(0) to 1e-12;
    a collocation pass then removes the growing-mode contamination that any
    float64 shooting trajectory picks up in the far tail.
    """
    if d < 2:
        raise ValueError("use ground_state_1d for d=1")
    lo, hi = bracket
    kind_lo, _ = _shoot(d, sigma, lo, rho_max)
    kind_hi, _ = _shoot(d, sigma, hi, rho_max)
    tries = 0
    while kind_lo == "crossed" and tries < 8:
        lo = 1.0 + 0.5 * (lo - 1.0)
        kind_lo, _ = _shoot(d, sigma, lo, rho_max)
        tries += 1
    while kind_hi != "crossed" and tries < 16:
        hi *= 1.6
        kind_hi, _ = _shoot(d, sigma, hi, rho_max)
        tries += 1
    if kind_lo != "turned" or kind_hi != "crossed":
        raise ShootingError("could not bracket the ground state", (lo, hi))

    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        kind, _ = _shoot(d, sigma, mid, rho_max)
        if kind == "crossed":
            hi = mid
        else:
            lo = mid

    r0 = 0.5 * (lo + hi)
    _, sol = _shoot(d, sigma, r0, rho_max)
    cut = min(sol.t[-1], 0.5 * math.log(1e10))  # before e^rho contamination

    def guess_fn(rho):
        out = np.empty_like(rho)
        clean = rho <= cut
        out[clean] = sol.sol(np.clip(rho[clean], 1e-6, None))[0]
        q = sol.sol(cut)[0] * math.exp(cut) * cut ** ((d - 1) / 2.0)
        far = rho[~clean]
        out[~clean] = q * np.exp(-far) * far ** (-(d - 1) / 2.0)
        return out

    nodes, vals = _cheb_polish_profile(d, sigma, rho_max, guess_fn)
    grid = np.linspace(0.0, rho_max, n)
    R = _bary_eval(nodes, vals, grid)
    if np.any(R[:-1] <= 0.0) or np.any(np.diff(R) > 1e-10):
        raise ShootingError("polished profile not positive/monotone", (lo, hi))
    R[-1] = max(R[-1], 0.0)

    consts = _constants_from_profile(d, sigma, grid, R)
    return GroundStateData(
        d=d, sigma=sigma, rho=grid, profile=R, _spline=CubicSpline(grid, R), **consts
    )


# 8th-order central stencils; applied with a stride so truncation and roundoff
# amplification both stay below the 1e-8 residual budget.
_D1 = np.array([1 / 280, -4 / 105, 1 / 5, -4 / 5, 0, 4 / 5, -1 / 5, 4 / 105, -1 / 280])
_D2 = np.array(
    [-1 / 560, 8 / 315, -1 / 5, 8 / 5, -205 / 72, 8 / 5, -1 / 5, 8 / 315, -1 / 560]
)


def _fd_derivatives(y: np.ndarray, h: float, stride: int) -> tuple[np.ndarray, slice]:
    m = 4 * stride
    sl = slice(m, len(y) - m)
    d1 = np.zeros(len(y) - 2 * m)
    d2 = np.zeros(len(y) - 2 * m)
    for k, (c1, c2) in enumerate(zip(_D1, _D2)):
        seg = y[k * stride : k * stride + len(d1)]
        d1 += c1 * seg
        d2 += c2 * seg
    return d1 / (stride * h), d2 / (stride * h) ** 2, sl


def profile_residual_max(gs: GroundStateData, stride: int = 2) -> float:
    """Max-norm residual of the defining ODE over the sample grid."""
    h = gs.rho[1] - gs.rho[0]
    d1, d2, sl = _fd_derivatives(gs.profile, h, stride)
    rho, R = gs.rho[sl], gs.profile[sl]
    res = d2 + (gs.d - 1) / rho * d1 - R + np.abs(R) ** (2 * gs.sigma) * R
    return float(np.max(np.abs(res)))


def ring_residual_max(ring: RingProfileData, stride: int = 2) -> float:
    h = ring.rho[1] - ring.rho[0]
    d1, d2, sl = _fd_derivatives(ring.profile, h, stride)
    rho, G = ring.rho[sl], ring.profile[sl]
    res = d2 + d1 / rho + (ring.alpha ** 4 / 16.0 * rho ** 2 - 1.0) * G + G ** 3
    return float(np.max(np.abs(res)))


def _ring_rhs(alpha: float):
    a4 = alpha ** 4 / 16.0

    def rhs(rho, y):
        G, Gp = y
        return [Gp, -Gp / rho - (a4 * rho ** 2 - 1.0) * G - G ** 3]

    return rhs


def _ring_shoot(alpha: float, g0: float, rho_end: float):
    """Outward integration; classify the post-peak tail (turn-up vs crossing)."""
    eps = 1e-6
    Gpp0 = (g0 - g0 ** 3) / 2.0
    y0 = [g0 + 0.5 * Gpp0 * eps ** 2, Gpp0 * eps]
    sol = solve_ivp(
        _ring_rhs(alpha),
        (eps, rho_end),
        y0,
        method="DOP853",
        rtol=1e-13,
        atol=1e-30,
        dense_output=True,
    )
    t = np.linspace(eps, sol.t[-1], 8000)
    G = sol.sol(t)[0]
    ipk = int(np.argmax(G))
    after = G[ipk:]
    neg = np.where(after < 0)[0]
    ups = np.where(np.diff(after) > 0)[0]
    first_neg = neg[0] if neg.size else np.inf
    first_up = ups[0] if ups.size else np.inf
    if first_neg < first_up:
        return "crossed", sol, t, G, ipk
    if np.isfinite(first_up):
        return "turned", sol, t, G, ipk
    return "decayed", sol, t, G, ipk


def ring_profile(
    alpha: float,
    g0: float,
    rho_max: float = 28.0,
    n: int = 5601,
    polish: bool = True,
) -> RingProfileData:
    """Integrate the ring ODE outward and verify the single-ring shape.

    `g0` is refined within +-25% (bisection on the post-peak turn-up vs
    zero-crossing dichotomy) so the tail decays cleanly; published
    (alpha, G(0)) pairs carry few digits and raw integration with them grows
    back exponentially before the tail is resolved.  A collocation pass then
    cleans the stored samples, as for the ground state.
    """
    if alpha <= 0 or g0 < 0:
        raise ValueError("need alpha > 0 and g0 > 0")
    if g0 == 0.0:
        raise ValueError("trivial solution G == 0 rejected (G(0) must be nonzero)")

    if polish:
        lo, hi = 0.75 * g0, 1.25 * g0
        kind_lo, *_ = _ring_shoot(alpha, lo, rho_max)
        kind_hi, *_ = _ring_shoot(alpha, hi, rho_max)
        if kind_lo != kind_hi and "decayed" not in (kind_lo, kind_hi):
            while (hi - lo) / g0 > 1e-13:
                mid = 0.5 * (lo + hi)
                kind, *_ = _ring_shoot(alpha, mid, rho_max)
                if kind == kind_lo:
                    lo = mid
                else:
                    hi = mid
            g0 = 0.5 * (lo + hi)

    kind, sol, t, G, ipk = _ring_shoot(alpha, g0, rho_max)
    if kind == "crossed" and sol.t_events and sol.t[-1] < 0.8 * rho_max:
        raise ValueError(f"non-admissible pair (alpha={alpha}, g0={g0}): profile lost sign")
    if ipk == 0 or t[ipk] <= 0.1:
        raise ValueError(f"non-admissible pair (alpha={alpha}, g0={g0}): no interior ring peak")
    peaks = [
        i
        for i in range(1, len(G) - 1)
        if G[i] > G[i - 1] and G[i] >= G[i + 1] and G[i] > 0.5 * G[ipk]
    ]
    if len(peaks) != 1:
        raise ValueError(f"non-admissible pair (alpha={alpha}, g0={g0}): not a single ring")

    # global polynomial collocation polish, ending at the first tail zero
    npts = 560
    nodes, D = _cheb_nodes_matrix(npts, rho_max)
    D2 = D @ D
    w = np.zeros_like(nodes)
    w[1:-1] = 1.0 / nodes[1:-1]
    a4 = alpha ** 4 / 16.0
    coef = a4 * nodes ** 2 - 1.0
    G = sol.sol(np.clip(nodes, 1e-6, sol.t[-1]))[0]
    bad = np.where((nodes > t[ipk]) & (np.abs(G) < 1e-10))[0]
    if bad.size:
        G[bad[0]:] = 0.0
    for _ in range(60):
        F = D2 @ G + w * (D @ G) + coef * G + G ** 3
        J = D2 + w[:, None] * D + np.diag(coef + 3.0 * G ** 2)
        F[0] = D[0] @ G
        J[0] = D[0]
        F[-1] = G[-1]
        J[-1] = 0.0
        J[-1, -1] = 1.0
        dG = np.linalg.solve(J, -F)
        G = G + dG
        if np.max(np.abs(dG)) < 1e-13:
            break
    else:
        raise ValueError("ring collocation polish did not converge")

    grid = np.linspace(0.0, rho_max, n)
    prof = _bary_eval(nodes, G, grid)
    prof[-1] = 0.0
    g0 = float(prof[0])

    j = int(np.argmax(prof))
    dj = 0.5 * (prof[j - 1] - prof[j + 1]) / (prof[j - 1] - 2 * prof[j] + prof[j + 1])
    h = grid[1] - grid[0]
    rho_peak = grid[j] + dj * h
    g_max = float(prof[j] - 0.25 * (prof[j - 1] - prof[j + 1]) * dj)

    return RingProfileData(
        alpha=alpha,
        g0=g0,
        rho=grid,
        profile=prof,
        rho_peak=float(rho_peak),
        g_max=g_max,
        _spline=CubicSpline(grid, prof),
    )
