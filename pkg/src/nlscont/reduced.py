"""Modulation-theory reduced system for the collapsing core and its exact
Airy-function solution.

The system is integrated in the rescaled time tau (dt = L^2 dtau), where it is
linear and nonstiff:

    A_tautau = beta A,   beta_tau = -nu(beta) - delta_tilde,   A = 1/L,

and physical time is recovered by quadrature of 1/A^2.  With nu off the
solution is an exact combination of Airy functions of s = s0 - delta^(1/3) tau;
`AiryClosedForm` packages it together with the closed form of t(s).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .specfun import GroundStateData, airy_ai_bi, first_negative_root
from .specfun.airy import AI_ZERO, AIP_ZERO, BI_ZERO, BIP_ZERO


@dataclass(frozen=True)
class ReducedState:
    big_l: float
    big_l_t: float
    beta: float
    tau: float = 0.0

    def __post_init__(self):
        if self.big_l <= 0:
            raise ValueError("width must be positive")


def nu(beta: float, gs: GroundStateData) -> float:
    """Exponentially small power radiation c_nu e^(-pi/sqrt(beta)), zero for beta <= 0."""
    if beta <= 0.0:
        return 0.0
    return gs.c_nu * math.exp(-math.pi / math.sqrt(beta))


@dataclass
class ReducedSeries:
    """Dense reduced-system trajectory with samplers in physical time."""

    tau: np.ndarray
    t: np.ndarray
    big_l: np.ndarray
    big_l_t: np.ndarray
    beta: np.ndarray
    delta_tilde: float
    collapsed: bool = False
    t_c: float | None = None
    _dense: object = None

    def sample(self, t_grid: np.ndarray) -> dict:
        """Interpolate (L, L_t, beta, tau) onto a physical-time grid."""
        t_grid = np.asarray(t_grid, dtype=float)
        slack = 1e-9 * max(1.0, abs(float(self.t[-1])))
        if np.any(t_grid > self.t[-1] + slack) or np.any(t_grid < self.t[0] - slack):
            raise ValueError("t_grid outside integrated range")
        t_grid = np.clip(t_grid, self.t[0], self.t[-1])
        # invert the monotone t(tau) on a fine table, then polish with clamped
        # Newton steps (dt/dtau = 1/A^2 can vary by many orders near arrest)
        tau_fine = np.linspace(self.tau[0], self.tau[-1], 1 << 18)
        t_fine = self._dense(tau_fine)[3]
        taus = np.interp(t_grid, t_fine, tau_fine)
        dtab = tau_fine[1] - tau_fine[0]
        for _ in range(8):
            y = self._dense(taus)
            resid = y[3] - t_grid
            step = np.clip(-resid * y[0] ** 2, -dtab, dtab)
            taus = np.clip(taus + step, self.tau[0], self.tau[-1])
            if np.max(np.abs(resid)) < 1e-12 * max(1.0, float(np.max(np.abs(t_grid)))):
                break
        y = self._dense(taus)
        return {
            "tau": taus,
            "L": 1.0 / y[0],
            "L_t": -y[1],
            "beta": y[2],
            "t": y[3],
        }


def integrate_reduced(
    init: ReducedState,
    delta_tilde: float,
    t_end: float,
    include_nu: bool = False,
    gs: GroundStateData | None = None,
    rtol: float = 1e-12,
    atol: float = 1e-14,
) -> ReducedSeries:
    """Integrate the reduced system in tau out to physical time t_end.

    With delta_tilde = 0 and beta > 0 the width vanishes in finite time; the
    collapse event is reported with a T_c estimate from a local linear fit of L.
    """
    a0 = 1.0 / init.big_l
    b0 = -init.big_l_t  # A_tau = -L_t
    c_nu_val = None
    if include_nu:
        if gs is None:
            raise ValueError("include_nu needs ground-state data for c_nu")
        c_nu_val = gs.c_nu

    def rhs(tau, y):
        a, b, beta, _ = y
        nub = 0.0
        if c_nu_val is not None and beta > 0.0:
            nub = c_nu_val * math.exp(-math.pi / math.sqrt(beta))
        return (b, beta * a, -nub - delta_tilde, 1.0 / a ** 2)

    collapse_ratio = 1e6
    # overshoot the target: the event's t-precision is limited by the local
    # slope 1/A^2, which can be enormous after arrest
    t_stop = 1.05 * t_end + 0.01

    def reached_end(tau, y):
        return y[3] - t_stop

    reached_end.terminal = True

    def collapsed_ev(tau, y):
        return y[0] - collapse_ratio * a0

    collapsed_ev.terminal = True
    collapsed_ev.direction = 1

    def diffracted(tau, y):
        return y[0] - 1e-12 * a0

    diffracted.terminal = True
    diffracted.direction = -1

    # crude tau budget: damped runs stop near s = s*, undamped ones at t_end
    if delta_tilde > 0:
        s0 = max(init.beta, 0.0) * delta_tilde ** (-2.0 / 3.0)
        tau_max = (s0 + 6.0) / delta_tilde ** (1.0 / 3.0)
    else:
        tau_max = 1e4 * (1.0 + abs(init.beta)) / init.big_l ** 2 + 1e3 * t_end / init.big_l ** 2

    sol = solve_ivp(
        rhs,
        (0.0, tau_max),
        (a0, b0, init.beta, 0.0),
        method="DOP853",
        rtol=rtol,
        atol=atol,
        dense_output=True,
        events=(reached_end, collapsed_ev, diffracted),
        max_step=tau_max / 50.0,
    )
    taus = np.linspace(0.0, sol.t[-1], 4000)
    y = sol.sol(taus)
    series = ReducedSeries(
        tau=taus,
        t=y[3],
        big_l=1.0 / y[0],
        big_l_t=-y[1],
        beta=y[2],
        delta_tilde=delta_tilde,
        _dense=sol.sol,
    )
    if sol.t_events[1].size:
        series.collapsed = True
        # local linear fit of L(t) over the last decade of widths
        mask = series.big_l < 10.0 / collapse_ratio * init.big_l
        if mask.sum() >= 2:
            coef = np.polyfit(series.t[mask], series.big_l[mask], 1)
            series.t_c = float(-coef[1] / coef[0])
        else:
            series.t_c = float(series.t[-1])
    return series


@dataclass(frozen=True)
class AiryClosedForm:
    """Exact nu-off solution A(s) = k1 Ai(s) + k2 Bi(s), L = 1/A."""

    k1: float
    k2: float
    s0: float
    delta_tilde: float
    a0: float

    @property
    def s_star_delta(self) -> float:
        """First root of A below s0 (complete-diffraction point, t -> infinity)."""
        return first_negative_root(self.a_of_s, scan_step=0.05) if self.s0 == 0.0 else (
            self._root_below_s0()
        )

    def _root_below_s0(self) -> float:
        f = self.a_of_s
        a = self.s0
        fa = f(a)
        step = 0.05
        b = a - step
        while b > -20.0:
            fb = f(b)
            if fa * fb <= 0.0:
                break
            a, fa, b = b, fb, b - step
        else:
            raise RuntimeError("no root of A(s) found")
        while a - b > 1e-12:
            m = 0.5 * (a + b)
            if fa * f(m) <= 0.0:
                b = m
            else:
                a, fa = m, f(m)
        return 0.5 * (a + b)

    def a_of_s(self, s):
        ai, _, bi, _ = airy_ai_bi(s)
        return self.k1 * ai + self.k2 * bi

    def a_prime_of_s(self, s):
        _, aip, _, bip = airy_ai_bi(s)
        return self.k1 * aip + self.k2 * bip

    def big_l_of_s(self, s):
        return 1.0 / self.a_of_s(s)

    def big_l_t_of_s(self, s):
        # L_t = delta^(1/3) A_s along the flow
        return self.delta_tilde ** (1.0 / 3.0) * self.a_prime_of_s(s)

    def t_of_s(self, s):
        """Closed form of the quadrature t(s) via the Wronskian identity."""
        _, _, bi0, _ = airy_ai_bi(self.s0)
        _, _, bis, _ = airy_ai_bi(s)
        pref = math.pi / (self.k1 * self.delta_tilde ** (1.0 / 3.0))
        return pref * (bi0 / self.a0 - bis / self.a_of_s(s))

    def s_of_t(self, t: float, s_lo: float | None = None) -> float:
        """Invert the monotone t(s) by bisection on (s*, s0]."""
        if s_lo is None:
            s_lo = self.s_star_delta
        a, b = s_lo, self.s0  # t(a) = +inf, t(b) = 0
        for _ in range(200):
            m = 0.5 * (a + b)
            if self.t_of_s(m) > t:
                a = m
            else:
                b = m
            if b - a < 1e-15 * max(1.0, abs(a)):
                break
        return 0.5 * (a + b)

    def big_l_of_t(self, t, s_lo: float | None = None):
        if s_lo is None:
            s_lo = self.s_star_delta
        return np.array([1.0 / self.a_of_s(self.s_of_t(ti, s_lo)) for ti in np.atleast_1d(t)])

    def big_l_t_of_t(self, t, s_lo: float | None = None):
        if s_lo is None:
            s_lo = self.s_star_delta
        return np.array([self.big_l_t_of_s(self.s_of_t(ti, s_lo)) for ti in np.atleast_1d(t)])

    def post_collapse_slope(self) -> float:
        """Expansion velocity lim_{t->inf} L_t = delta^(1/3) A_s(s*)."""
        return float(self.big_l_t_of_s(self.s_star_delta))


def airy_closed_form(t_c: float, delta_tilde: float) -> AiryClosedForm:
    """Explicit-data case: beta(0) = 0, L(0) = T_c, L_t(0) = -1 (so s0 = 0)."""
    if delta_tilde <= 0 or t_c <= 0:
        raise ValueError("need delta_tilde > 0 and t_c > 0")
    dm13 = delta_tilde ** (-1.0 / 3.0)
    k1 = math.pi * (dm13 * BI_ZERO + BIP_ZERO / t_c)
    k2 = -math.pi * (dm13 * AI_ZERO + AIP_ZERO / t_c)
    return AiryClosedForm(k1=k1, k2=k2, s0=0.0, delta_tilde=delta_tilde, a0=1.0 / t_c)


def airy_closed_form_loglog(
    a0: float, a0_t: float, beta0: float, delta_tilde: float
) -> AiryClosedForm:
    """Loglog-data case: A(0) = a0 = 1/L0, A_t(0) = a0_t, beta(0) = beta0 > 0."""
    if delta_tilde <= 0 or beta0 <= 0 or a0 <= 0:
        raise ValueError("need delta_tilde > 0, beta0 > 0, a0 > 0")
    s0 = beta0 * delta_tilde ** (-2.0 / 3.0)
    ai0, aip0, bi0, bip0 = airy_ai_bi(s0)
    dm13 = delta_tilde ** (-1.0 / 3.0)
    k1 = math.pi * (a0_t / a0 ** 2 * dm13 * bi0 + a0 * bip0)
    k2 = -math.pi * (a0_t / a0 ** 2 * dm13 * ai0 + a0 * aip0)
    return AiryClosedForm(k1=k1, k2=k2, s0=float(s0), delta_tilde=delta_tilde, a0=a0)


def loglog_s0(beta0: float, delta_tilde: float) -> float:
    return beta0 * delta_tilde ** (-2.0 / 3.0)


def adiabatic_t_c(big_l0: float, big_l_t0: float, beta0: float) -> float:
    """Adiabatic collapse-time estimate L0^2 / (sqrt(beta0) - L0 L_t(0))."""
    return big_l0 ** 2 / (math.sqrt(beta0) - big_l0 * big_l_t0)


def post_collapse_slope_loglog(
    a0: float, t_c: float, beta0: float, delta_tilde: float
) -> float:
    """Asymptotic post-arrest expansion velocity of the loglog-case flow.

    sqrt(pi)/A0 * (1/T_c) * s0^(-1/4) e^((2/3) s0^(3/2)) Ai'(s*), with s* the
    first root of Ai; diverges as delta_tilde -> 0+.
    """
    if beta0 <= 0 or delta_tilde <= 0:
        raise ValueError("need beta0 > 0 and delta_tilde > 0")
    s0 = loglog_s0(beta0, delta_tilde)
    s_star = first_negative_root("ai")
    _, aip, _, _ = airy_ai_bi(s_star)
    return (
        math.sqrt(math.pi)
        / a0
        / t_c
        * s0 ** -0.25
        * math.exp(2.0 / 3.0 * s0 ** 1.5)
        * float(aip)
    )


def h_over_m(series: ReducedSeries) -> np.ndarray:
    """Hamiltonian surrogate H/M = L_t^2 - beta/L^2 along a reduced trajectory."""
    return series.big_l_t ** 2 - series.beta / series.big_l ** 2


def delta_h(gs: GroundStateData) -> float:
    """Hamiltonian jump of the vanishing-damping continuation, M (kappa^2 - 1)."""
    from .specfun import kappa

    return gs.big_m * (kappa() ** 2 - 1.0)


def cgl_delta_tilde(eps2: float, eps3: float, gs: GroundStateData) -> float:
    """Equivalent damping parameter of the Ginzburg-Landau limit, 2 Pcr/M (eps2 + 2 eps3)."""
    return 2.0 * gs.pcr_radial / gs.big_m * (eps2 + 2.0 * eps3)


def neville_to_zero(x: np.ndarray, y: np.ndarray) -> float:
    """Polynomial (Richardson) extrapolation of y(x) to x = 0."""
    x = np.asarray(x, dtype=float)
    tab = np.asarray(y, dtype=float).copy()
    n = len(x)
    for level in range(1, n):
        for i in range(n - level):
            tab[i] = tab[i + 1] + (tab[i + 1] - tab[i]) * x[i + level] / (
                x[i] - x[i + level]
            )
    return float(tab[0])
