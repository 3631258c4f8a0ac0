"""Closed-form solution evaluators: explicit blow-up family, explicit ring
solution, and the focused linear Gaussian beam (exact and geometrical-optics).

All accumulated phases are normalized to zero at t = 0 (definite integrals of
1/L^2 from 0), so different solution families are directly comparable; constant
offsets can be supplied through the spec's `theta`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .specfun import GroundStateData, RingProfileData, ground_state_1d


@dataclass(frozen=True)
class ExplicitBlowupSpec:
    """Self-similar blow-up solution with width alpha (t_c - t), optionally tilted."""

    alpha: float = 1.0
    t_c: float = 1.0
    tilt_c: float = 0.0   # Galilean velocity (1D)
    x0: float = 0.0       # initial center
    theta: float = 0.0    # constant phase
    d: int = 1
    gs: GroundStateData | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.alpha <= 0 or self.t_c <= 0:
            raise ValueError("need alpha > 0 and t_c > 0")
        if self.gs is None:
            if self.d != 1:
                raise ValueError("supply a GroundStateData for d != 1")
            object.__setattr__(self, "gs", ground_state_1d(2.0))

    def width(self, t: float) -> float:
        return self.alpha * (self.t_c - t)

    def tau(self, t: float) -> float:
        # int_0^t ds / L^2; the closed form 1/(alpha^2 (T_c - t)) minus its t=0 value
        return (1.0 / (self.t_c - t) - 1.0 / self.t_c) / self.alpha ** 2


def eval_explicit(spec: ExplicitBlowupSpec, t: float, x: np.ndarray) -> np.ndarray:
    """Explicit blow-up solution at time t < t_c on the given grid."""
    if t >= spec.t_c:
        raise ValueError(f"explicit solution is singular at t_c={spec.t_c}; got t={t}")
    L = spec.width(t)
    c = spec.tilt_c
    u = np.asarray(x, dtype=float) - spec.x0 - c * t
    d = spec.d
    amp = spec.gs(np.abs(u)) / L ** (d / 2.0)
    phase = (
        spec.tau(t)
        + spec.theta
        - u ** 2 / (4.0 * (spec.t_c - t))    # (L_t/L) r^2/4 with L_t = -alpha
        + 0.5 * c * (np.asarray(x) - spec.x0)
        - 0.25 * c ** 2 * t
    )
    return amp * np.exp(1j * phase)


def eval_ring_explicit(ring: RingProfileData, t: float, r: np.ndarray) -> np.ndarray:
    """Explicit shrinking-ring solution (1/L) G(r/L) e^{i tau + i L_t r^2/(4L)}."""
    a2 = ring.alpha ** 2
    if t >= 1.0 / a2:
        raise ValueError(f"ring solution blows up at t_c={1.0 / a2}; got t={t}")
    L2 = 1.0 - a2 * t
    L = math.sqrt(L2)
    tau = -math.log1p(-a2 * t) / a2
    r = np.asarray(r, dtype=float)
    # L_t/L = -alpha^2 / (2 L^2)
    phase = tau - a2 * r ** 2 / (8.0 * L2)
    return ring(r / L) / L * np.exp(1j * phase)


def ring_width(ring: RingProfileData, t: float) -> float:
    a2 = ring.alpha ** 2
    return math.sqrt(1.0 - a2 * t) if t < 1.0 / a2 else float("nan")


@dataclass(frozen=True)
class LinearGaussianSpec:
    """Focused Gaussian beam of the linear equation 2 i k0 psi_t + Lap psi = 0."""

    k0: float
    focal_f: float
    d: int = 1

    def __post_init__(self):
        if self.k0 <= 0 or self.focal_f <= 0:
            raise ValueError("need k0 > 0 and focal_f > 0")

    @property
    def t_min(self) -> float:
        return self.focal_f / (1.0 + self.focal_f ** 2 / self.k0 ** 2)

    @property
    def l_min(self) -> float:
        return self.focal_f / math.sqrt(self.focal_f ** 2 + self.k0 ** 2)

    def width(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        return np.sqrt(
            (t - self.t_min) ** 2 / (self.focal_f * self.t_min) + self.l_min ** 2
        )

    def tau(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        return -(self.d / 2.0) * (
            np.arctan((t - self.t_min) / (self.l_min * math.sqrt(self.focal_f * self.t_min)))
            + math.atan(self.k0 / self.focal_f)
        )


def eval_linear_exact(spec: LinearGaussianSpec, t: float, r: np.ndarray):
    """Exact beam; returns (field, L(t), tau(t)). Exists for all t >= 0."""
    if t < 0:
        raise ValueError("t must be >= 0")
    L = float(spec.width(t))
    tau = float(spec.tau(t))
    r = np.asarray(r, dtype=float)
    # L L_t reconstructed from the width formula
    l_lt = (t - spec.t_min) / (spec.focal_f * spec.t_min)
    phase = spec.k0 * r ** 2 / 2.0 * l_lt / L ** 2 + tau
    field = L ** (-spec.d / 2.0) * np.exp(-(r ** 2) / (2.0 * L ** 2)) * np.exp(1j * phase)
    return field, L, tau


def eval_linear_go(spec: LinearGaussianSpec, t: float, r: np.ndarray) -> np.ndarray:
    """Geometrical-optics beam; singular at the focal time t = F."""
    if not 0 <= t < spec.focal_f:
        raise ValueError(f"geometrical-optics solution needs 0 <= t < F={spec.focal_f}")
    L = 1.0 - t / spec.focal_f
    lt_over_l = -1.0 / (spec.focal_f * L)
    r = np.asarray(r, dtype=float)
    phase = spec.k0 * r ** 2 / 2.0 * lt_over_l
    return L ** (-spec.d / 2.0) * np.exp(-(r ** 2) / (2.0 * L ** 2)) * np.exp(1j * phase)
