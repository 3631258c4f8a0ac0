"""Observables extracted from fields and time series: width, accumulated
phase, focusing time, ring radius, core/tail profile residuals, and the
time-reflection symmetry check."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field as dc_field

import numpy as np
from scipy.interpolate import CubicSpline

from .field import CARTESIAN_1D, RADIAL_2D, Field
from .specfun import GroundStateData, RingProfileData

SERIES_COLUMNS = ("t", "L", "phase0", "power", "hamiltonian", "rmax", "amp_max")


@dataclass
class SeriesBundle:
    """Per-run diagnostic series; `phase0` is unwrapped and zero-based at t[0]."""

    t: np.ndarray
    width_L: np.ndarray
    phase0: np.ndarray
    power: np.ndarray
    hamiltonian: np.ndarray
    rmax: np.ndarray
    amp_max: np.ndarray
    phase_resolved: bool = True

    def __post_init__(self):
        n = len(self.t)
        for name in ("width_L", "phase0", "power", "hamiltonian", "rmax", "amp_max"):
            if len(getattr(self, name)) != n:
                raise ValueError(f"series length mismatch on {name}")

    @classmethod
    def from_raw(cls, t, width, phase_raw, power, hamiltonian, rmax, amp_max):
        phase = np.unwrap(np.asarray(phase_raw, dtype=float))
        phase -= phase[0]
        resolved = bool(np.all(np.abs(np.diff(phase)) < np.pi / 2))
        return cls(
            t=np.asarray(t, dtype=float),
            width_L=np.asarray(width, dtype=float),
            phase0=phase,
            power=np.asarray(power, dtype=float),
            hamiltonian=np.asarray(hamiltonian, dtype=float),
            rmax=np.asarray(rmax, dtype=float),
            amp_max=np.asarray(amp_max, dtype=float),
            phase_resolved=resolved,
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(",".join(SERIES_COLUMNS) + "\n")
        cols = (self.t, self.width_L, self.phase0, self.power,
                self.hamiltonian, self.rmax, self.amp_max)
        for row in zip(*cols):
            buf.write(",".join(f"{v:.17g}" for v in row) + "\n")
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "SeriesBundle":
        rows = text.strip().splitlines()
        if rows[0].split(",") != list(SERIES_COLUMNS):
            raise ValueError("unexpected series header")
        data = np.array([[float(v) for v in r.split(",")] for r in rows[1:]])
        return cls(*(data[:, j] for j in range(7)))

    def interp(self, name: str, t_grid: np.ndarray) -> np.ndarray:
        """Cubic interpolation of one series onto a common time grid."""
        return CubicSpline(self.t, getattr(self, name))(t_grid)


def width_from_amp(amp, ref_amp: float, d: int):
    """Core width |ref/amp|^(2/d) (Eq.-of-width with the profile's peak value)."""
    amp = np.asarray(amp, dtype=float)
    return np.where(amp > 0, (ref_amp / np.where(amp > 0, amp, 1.0)) ** (2.0 / d), np.nan)


def width(field: Field, gs: GroundStateData) -> float:
    """On-axis width |R(0)/psi(t,0)|^(2/d); NaN flags a vanishing axis value."""
    i0 = int(np.argmin(np.abs(field.grid)))
    a = abs(field.values[i0])
    if a <= 0.0:
        return float("nan")
    return float((gs.r0 / a) ** (2.0 / gs.d))


def ring_width_of_field(field: Field, ring: RingProfileData) -> float:
    """Ring-run width from the peak amplitude, L = G(rho_peak)/max|psi|."""
    a = float(np.max(np.abs(field.values)))
    return ring.g_max / a if a > 0 else float("nan")


@dataclass(frozen=True)
class TMaxResult:
    t_max: float
    at_boundary: bool


def t_max(series: SeriesBundle) -> TMaxResult:
    """Arrest time argmax_t amp_max, refined by parabolic interpolation."""
    a = series.amp_max
    j = int(np.argmax(a))
    if j == 0 or j == len(a) - 1:
        return TMaxResult(float(series.t[j]), True)
    denom = a[j - 1] - 2 * a[j] + a[j + 1]
    if denom == 0:
        return TMaxResult(float(series.t[j]), False)
    dj = 0.5 * (a[j - 1] - a[j + 1]) / denom
    tloc = series.t[j] + dj * 0.5 * (series.t[j + 1] - series.t[j - 1])
    return TMaxResult(float(tloc), False)


def profile_residual(
    field: Field,
    gs: GroundStateData,
    core_window: tuple[float, float] = (0.0, 5.0),
    tail_window: tuple[float, float] = (6.0, 10.0),
    width_value: float | None = None,
) -> tuple[float, float]:
    """Core/tail mismatch of the rescaled amplitude against the ground state.

    Returns max over each rho window of |L^(d/2) |psi(L rho)| - R(rho)| / R(0).
    """
    L = width(field, gs) if width_value is None else width_value
    if not np.isfinite(L):
        raise ValueError("width undefined; cannot rescale")
    absf = np.abs(field.values)
    if field.geometry == CARTESIAN_1D:
        sel = field.grid >= 0
        spl = CubicSpline(field.grid[sel], absf[sel])
    else:
        spl = CubicSpline(field.grid, absf)
    out = []
    for lo, hi in (core_window, tail_window):
        rho = np.linspace(lo, hi, 257)
        r = L * rho
        r = r[r <= field.grid[-1]]
        rho = rho[: len(r)]
        resid = np.abs(L ** (gs.d / 2.0) * spl(r) - gs(rho)) / gs.r0
        out.append(float(np.max(resid)) if len(resid) else float("nan"))
    return out[0], out[1]


def _integration_weights(f: Field) -> np.ndarray:
    if f.geometry == CARTESIAN_1D:
        return np.full(f.grid.size, f.spacing)
    w = f.grid * f.spacing
    w[0] = f.spacing ** 2 / 8.0 if f.grid[0] == 0 else 0.0
    w[-1] *= 0.5
    return 2.0 * np.pi * w


def fit_global_phase(minus: Field, plus: Field) -> tuple[float, float]:
    """Best theta and relative mismatch for psi_plus ~ e^(i theta) conj(psi_minus)."""
    w = _integration_weights(plus)
    inner = np.sum(w * minus.values * plus.values)
    theta = float(np.angle(inner))
    diff = plus.values - np.exp(1j * theta) * np.conj(minus.values)
    num = math.sqrt(float(np.sum(w * np.abs(diff) ** 2)))
    den = math.sqrt(float(np.sum(w * np.abs(plus.values) ** 2)))
    return theta, num / den


def symmetry_check(
    snapshots: list[Field], t_ref: float, deltas: list[float]
) -> list[dict]:
    """Reflection test psi(t_ref + dt) vs e^(i theta) conj(psi(t_ref - dt)).

    Snapshots must contain fields at all t_ref +- dt (matched to 1e-9 in time).
    """
    bytime = {round(f.time, 9): f for f in snapshots}

    def grab(tv: float) -> Field:
        key = round(tv, 9)
        if key in bytime:
            return bytime[key]
        times = np.array(sorted(bytime))
        j = int(np.argmin(np.abs(times - tv)))
        if abs(times[j] - tv) > 1e-6 * max(1.0, abs(tv)):
            raise KeyError(f"no snapshot near t={tv}")
        return bytime[round(float(times[j]), 9)]

    out = []
    for dlt in deltas:
        minus, plus = grab(t_ref - dlt), grab(t_ref + dlt)
        theta, mism = fit_global_phase(minus, plus)
        out.append({"delta": dlt, "theta": theta, "mismatch": mism})
    return out
