"""Run driver: adaptive tau-uniform stepping, series recording, snapshot
landing on exact times, and termination flags (collapse floor, zero field,
non-finite values)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from ..diagnostics import SeriesBundle
from ..field import CARTESIAN_1D, RADIAL_2D, Field
from .cartesian import CartesianStepper
from .params import ModelParams, RunConfig
from .radial import RadialStepper


@dataclass
class RunResult:
    series: SeriesBundle
    snapshots: list
    final: Field
    collapsed: bool = False
    t_collapse: float | None = None
    ended_early: bool = False
    aborted: str | None = None
    under_resolved: bool = False
    width_kind: str = "peak"


def make_stepper(field: Field, params: ModelParams, cfg: RunConfig):
    if field.geometry == CARTESIAN_1D:
        return CartesianStepper(field, params, cfg)
    if field.geometry == RADIAL_2D:
        return RadialStepper(field, params, cfg)
    raise ValueError(field.geometry)


def run(
    initial: Field,
    params: ModelParams,
    cfg: RunConfig,
    width_ref: tuple[str, float],
    gs=None,
) -> RunResult:
    """Integrate to cfg.t_end.

    width_ref is ("peak", reference_amplitude) for peak-type runs (width from
    the on-axis value) or ("ring", G_peak) for ring runs (width from the
    global maximum).  The step is cfg.dt (L/L0)^2, floored and clipped to land
    exactly on requested snapshot times.
    """
    kind, ref = width_ref
    if kind not in ("peak", "ring"):
        raise ValueError(kind)
    stepper = make_stepper(initial, params, cfg)
    grid = stepper.grid
    h = stepper.h
    n = grid.size
    d = params.d
    i0 = int(np.argmin(np.abs(grid)))

    def probe():
        psi = stepper.psi
        i2 = psi.real ** 2 + psi.imag ** 2
        ipk = int(np.argmax(i2))
        amp_pk = math.sqrt(float(i2[ipk]))
        if 0 < ipk < n - 1:
            den = i2[ipk - 1] - 2 * i2[ipk] + i2[ipk + 1]
            dj = 0.5 * (i2[ipk - 1] - i2[ipk + 1]) / den if den != 0 else 0.0
        else:
            dj = 0.0
        rpk = abs(float(grid[ipk] + dj * h))
        a0 = math.sqrt(float(i2[i0]))
        if kind == "peak":
            L = (ref / a0) ** (2.0 / d) if a0 > 0 else float("inf")
        else:
            L = ref / amp_pk if amp_pk > 0 else float("inf")
        phase = float(np.angle(psi[ipk if kind == "ring" else i0]))
        return L, a0, amp_pk, rpk, phase

    L0, _, amp_max0, _, _ = probe()
    if not np.isfinite(L0):
        raise ValueError("width probe undefined on the initial data")
    # keep >= 40 steps per unit of tau
    dt_base = min(cfg.dt, L0 * L0 / 40.0) if cfg.adapt else cfg.dt
    dt_floor = dt_base * cfg.dt_floor_factor

    rows = {k: [] for k in ("t", "L", "ph", "pw", "ha", "rm", "am")}

    def record():
        L, a0, apk, rpk, phase = probe()
        rows["t"].append(stepper.time)
        rows["L"].append(L)
        rows["ph"].append(phase)
        rows["pw"].append(stepper.power())
        rows["ha"].append(stepper.hamiltonian())
        rows["rm"].append(rpk)
        rows["am"].append(apk)
        return L, apk

    record()
    snapshots = []
    pending = sorted(set(float(tv) for tv in cfg.snapshot_times if tv <= cfg.t_end))
    res = RunResult(series=None, snapshots=snapshots, final=None, width_kind=kind)
    floor = cfg.stop_below_width if cfg.stop_below_width is not None else (
        None if kind == "ring" else 0.0  # 0 disables; callers opt in for bisection
    )
    if floor == 0.0:
        floor = None

    steps = 0
    L_now = L0
    while stepper.time < cfg.t_end - 1e-13:
        dt = dt_base * min(1.0, (L_now / L0) ** 2) if cfg.adapt else dt_base
        dt = max(dt, dt_floor)
        t_next = pending[0] if pending else cfg.t_end
        t_next = min(t_next, cfg.t_end)
        land = False
        if stepper.time + dt >= t_next - 1e-13:
            dt = t_next - stepper.time
            land = True
        if dt <= 0:
            if pending and abs(pending[0] - stepper.time) <= 1e-12:
                snapshots.append(stepper.field())
                pending.pop(0)
                continue
            break
        stepper.step(dt)
        steps += 1
        if land and pending and abs(stepper.time - pending[0]) <= 1e-9:
            snapshots.append(stepper.field())
            pending.pop(0)

        if steps % cfg.snapshot_stride == 0 or land or stepper.time >= cfg.t_end - 1e-13:
            L_now, apk = record()
            if floor is not None and L_now < floor:
                res.collapsed = True
                res.t_collapse = stepper.time
                break
            if cfg.stop_on_zero_field and apk < 1e-9 * amp_max0:
                res.ended_early = True
                break
        else:
            # cheap width-only probe for adaptivity
            psi = stepper.psi
            if kind == "peak":
                a0 = abs(psi[i0])
                L_now = (ref / a0) ** (2.0 / d) if a0 > 0 else float("inf")
            else:
                apk = math.sqrt(float(np.max(psi.real ** 2 + psi.imag ** 2)))
                L_now = ref / apk if apk > 0 else float("inf")

        if steps % cfg.check_interval == 0:
            if not np.all(np.isfinite(stepper.psi.view(np.float64))):
                res.aborted = "non-finite values"
                break
        if steps >= cfg.max_steps:
            res.aborted = "max_steps exceeded"
            break

    if rows["t"][-1] < stepper.time and res.aborted is None:
        record()
    width_arr = np.asarray(rows["L"])
    res.series = SeriesBundle.from_raw(
        rows["t"], width_arr, rows["ph"], rows["pw"], rows["ha"], rows["rm"], rows["am"]
    )
    res.final = stepper.field()
    if gs is not None and kind == "peak":
        finite = width_arr[np.isfinite(width_arr)]
        if finite.size and np.min(finite) < 8.0 * h:
            from ..diagnostics import profile_residual

            jmin = int(np.argmin(np.where(np.isfinite(width_arr), width_arr, np.inf)))
            if rows["t"][jmin] >= res.final.time - 1e-12:
                core, _ = profile_residual(res.final, gs)
                res.under_resolved = core > 0.1
    return res
