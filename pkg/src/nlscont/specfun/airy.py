"""Airy and Bairy functions with derivatives, roots, and the expansion slope kappa.

Self-contained evaluator for A'' = s A: Maclaurin series near the origin,
continued over |s| <= 20 by marching the local Taylor recursion
c_{k+2} = (s0 c_k + c_{k-1}) / ((k+1)(k+2)) between anchor points.  Bi and the
negative-axis Ai are marched outward from s = 0; the positive-axis Ai is seeded
from the large-s asymptotic series and marched inward, because outward marching
cannot keep the recessive solution separated from Bi in float64.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

S_SUPPORT = 20.0

_H = 0.25          # anchor spacing
_NANCH = 85        # anchors at j*_H, j = -_NANCH.._NANCH  (covers +-21.25)
_NTERMS = 26       # Taylor terms per anchor step; truncation ~1e-24 at |h|<=0.125

# values at s=0 (DLMF 9.2): Ai(0) = 3^(-2/3)/Gamma(2/3), Ai'(0) = -3^(-1/3)/Gamma(1/3)
AI_ZERO = 3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0)
AIP_ZERO = -(3.0 ** (-1.0 / 3.0)) / math.gamma(1.0 / 3.0)
BI_ZERO = math.sqrt(3.0) * AI_ZERO
BIP_ZERO = -math.sqrt(3.0) * AIP_ZERO


@dataclass(frozen=True)
class AiryPair:
    """Ai, Bi and their derivatives at one real argument."""

    ai: float
    bi: float
    ai_prime: float
    bi_prime: float

    def wronskian(self) -> float:
        return self.ai * self.bi_prime - self.ai_prime * self.bi


def _taylor_coeffs(s0: float, y0: float, y1: float, n: int) -> np.ndarray:
    c = np.empty(n)
    c[0], c[1] = y0, y1
    c[2] = 0.5 * s0 * c[0]
    for k in range(1, n - 2):
        c[k + 2] = (s0 * c[k] + c[k - 1]) / ((k + 1.0) * (k + 2.0))
    return c


def _taylor_step(c: np.ndarray, h: float) -> tuple[float, float]:
    y = 0.0
    yp = 0.0
    for k in range(len(c) - 1, 0, -1):
        y = (y + c[k]) * h
        yp = (yp + k * c[k]) * h
    return y + c[0], yp / h if h != 0.0 else c[1]


def _asymptotic_ai(s: float) -> tuple[float, float]:
    # DLMF 9.7.5/9.7.6; at s >= 21 the series reaches float64 roundoff.
    zeta = (2.0 / 3.0) * s ** 1.5
    u = 1.0
    su, sv = 1.0, 1.0
    sign = 1.0
    for k in range(1, 16):
        u *= (6 * k - 1) * (6 * k - 3) * (6 * k - 5) / (216.0 * k * (2 * k - 1))
        v = u * (6 * k + 1) / (1.0 - 6 * k)
        sign = -sign
        su += sign * u / zeta ** k
        sv += sign * v / zeta ** k
    pref = math.exp(-zeta) / (2.0 * math.sqrt(math.pi))
    return pref * su / s ** 0.25, -pref * sv * s ** 0.25


class _AnchorTable:
    """Anchor values and per-anchor Taylor coefficients for Ai and Bi."""

    def __init__(self) -> None:
        n = 2 * _NANCH + 1
        vals = np.empty((n, 4))  # ai, aip, bi, bip

        def idx(j: int) -> int:
            return j + _NANCH

        vals[idx(0)] = (AI_ZERO, AIP_ZERO, BI_ZERO, BIP_ZERO)
        # outward marches from 0: Bi both ways, Ai to the left only
        for direction in (+1, -1):
            ai, aip = AI_ZERO, AIP_ZERO
            bi, bip = BI_ZERO, BIP_ZERO
            for j in range(0, direction * _NANCH, direction):
                s0 = j * _H
                h = direction * _H
                bi, bip = _taylor_step(_taylor_coeffs(s0, bi, bip, _NTERMS), h)
                if direction < 0:
                    ai, aip = _taylor_step(_taylor_coeffs(s0, ai, aip, _NTERMS), h)
                    vals[idx(j + direction), 0:2] = (ai, aip)
                vals[idx(j + direction), 2:4] = (bi, bip)
        # inward march for Ai on s > 0, seeded asymptotically at the top anchor
        ai, aip = _asymptotic_ai(_NANCH * _H)
        vals[idx(_NANCH), 0:2] = (ai, aip)
        for j in range(_NANCH, 0, -1):
            ai, aip = _taylor_step(_taylor_coeffs(j * _H, ai, aip, _NTERMS), -_H)
            vals[idx(j - 1), 0:2] = (ai, aip)

        self.values = vals
        self.coeff_ai = np.empty((n, _NTERMS))
        self.coeff_bi = np.empty((n, _NTERMS))
        for j in range(-_NANCH, _NANCH + 1):
            s0 = j * _H
            self.coeff_ai[idx(j)] = _taylor_coeffs(s0, *vals[idx(j), 0:2], _NTERMS)
            self.coeff_bi[idx(j)] = _taylor_coeffs(s0, *vals[idx(j), 2:4], _NTERMS)


_TABLE: _AnchorTable | None = None


def _table() -> _AnchorTable:
    global _TABLE
    if _TABLE is None:
        _TABLE = _AnchorTable()
    return _TABLE


def airy_ai_bi(s) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized (Ai, Ai', Bi, Bi') on |s| <= 20."""
    s = np.asarray(s, dtype=float)
    if s.size and np.max(np.abs(s)) > S_SUPPORT:
        raise ValueError(f"airy argument outside supported range [-{S_SUPPORT}, {S_SUPPORT}]")
    tab = _table()
    j = np.rint(s / _H).astype(int)
    h = s - j * _H
    rows = j + _NANCH
    k = np.arange(_NTERMS)
    hp = h[..., None] ** k                      # h^k
    hd = np.zeros_like(hp)                      # k h^(k-1)
    hd[..., 1:] = k[1:] * h[..., None] ** (k[1:] - 1)
    ca = tab.coeff_ai[rows]
    cb = tab.coeff_bi[rows]
    ai = np.sum(ca * hp, axis=-1)
    aip = np.sum(ca * hd, axis=-1)
    bi = np.sum(cb * hp, axis=-1)
    bip = np.sum(cb * hd, axis=-1)
    return ai, aip, bi, bip


def airy_eval(s: float) -> AiryPair:
    """All four Airy values at a scalar argument in [-20, 20]."""
    ai, aip, bi, bip = airy_ai_bi(float(s))
    return AiryPair(ai=float(ai), bi=float(bi), ai_prime=float(aip), bi_prime=float(bip))


def g_combination(s) -> np.ndarray:
    """G(s) = sqrt(3) Ai(s) - Bi(s); G(0) = 0 and the first negative root sets kappa."""
    ai, _, bi, _ = airy_ai_bi(s)
    return math.sqrt(3.0) * ai - bi


def first_negative_root(which="g", scan_step: float = 0.05, tol: float = 1e-12) -> float:
    """Root of Ai (which='ai') or of G = sqrt(3) Ai - Bi (which='g') nearest 0 on s < 0.

    Bracket by scanning down from just below zero (G itself vanishes at s = 0),
    then plain bisection to `tol`.
    """
    if callable(which):
        f = which
    elif which == "ai":
        f = lambda s: float(airy_ai_bi(s)[0])
    elif which == "g":
        f = lambda s: float(g_combination(s))
    else:
        raise ValueError(f"unknown function {which!r}")

    a = -1e-3
    fa = f(a)
    b = a
    while b > -S_SUPPORT:
        b = a - scan_step
        fb = f(b)
        if fa * fb <= 0.0:
            break
        a, fa = b, fb
    else:
        raise RuntimeError("no sign change found on the negative axis")

    while b - a > tol if a < b else a - b > tol:
        m = 0.5 * (a + b)
        fm = f(m)
        if fa * fm <= 0.0:
            b = m
        else:
            a, fa = m, fm
    return 0.5 * (a + b)


def kappa() -> float:
    """Post-collapse expansion slope pi [Bi(0) Ai'(s*) - Ai(0) Bi'(s*)], ~1.614."""
    s_star = first_negative_root("g")
    p = airy_eval(s_star)
    return math.pi * (BI_ZERO * p.ai_prime - AI_ZERO * p.bi_prime)


def kappa_amplitude_form() -> float:
    """Equivalent expression Ai(0)/|Ai(s*)| obtained from the Hamiltonian jump."""
    s_star = first_negative_root("g")
    return AI_ZERO / abs(airy_eval(s_star).ai)
