"""Model coefficients and run controls for the perturbed critical NLS."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class ModelParams:
    """i psi_t + dispersion*Lap psi + nonlinear_coeff*(1 + i delta_nl)|psi|^(2 sigma) psi
    + i delta_lin psi - eps_sat |psi|^(q-1) psi - i eps1 psi - i eps2 Lap psi
    + i eps3 |psi|^(2 sigma) psi = 0 on d = 1 or radial d = 2.

    At most one continuation mechanism (damping / linear damping / saturation /
    Ginzburg-Landau terms / hole) may be active per run.
    """

    d: int = 1
    sigma: float | None = None          # None -> critical 2/d
    delta_nl: float = 0.0               # nonlinear damping strength
    damping_exponent: float | None = None  # p; None -> 4/d (critical damping)
    delta_lin: float = 0.0
    eps_sat: float = 0.0
    q: float | None = None              # saturation exponent, |psi|^(q-1) psi
    cgl: tuple[float, float, float] = (0.0, 0.0, 0.0)
    hole_r0: float = 0.0
    dispersion: float = 1.0             # 1/(2 k0) for the linear beam runs
    nonlinear_coeff: float = 1.0        # 0 for linear runs

    def __post_init__(self):
        if self.d not in (1, 2):
            raise ValueError("d must be 1 or 2")
        if self.sigma is None:
            object.__setattr__(self, "sigma", 2.0 / self.d)
        if self.damping_exponent is None:
            object.__setattr__(self, "damping_exponent", 4.0 / self.d)
        if self.eps_sat > 0 and self.q is None:
            raise ValueError("saturation needs the exponent q")
        active = [
            name
            for name, on in [
                ("nonlinear_damping", self.delta_nl > 0),
                ("linear_damping", self.delta_lin > 0),
                ("saturation", self.eps_sat > 0),
                ("cgl", any(abs(e) > 0 for e in self.cgl)),
                ("hole", self.hole_r0 > 0),
            ]
            if on
        ]
        if len(active) > 1:
            raise ValueError(f"at most one continuation mechanism per run, got {active}")
        object.__setattr__(self, "_mechanism", active[0] if active else None)

    @property
    def mechanism(self) -> str | None:
        return self._mechanism

    @property
    def is_critical(self) -> bool:
        return abs(self.sigma * self.d - 2.0) < 1e-12


@dataclass(frozen=True)
class RunConfig:
    """Time-stepping controls.

    `dt` is the base step at the initial width; with `adapt` on, the step is
    scaled by (L/L0)^2 (tau-uniform), which keeps >= 1/dt_tau steps per unit of
    the rescaled time tau.
    """

    dt: float
    t_end: float
    snapshot_stride: int = 8
    boundary: str = "periodic"          # periodic | absorbing_layer | dirichlet
    sponge_width: float = 0.0           # 0 with absorbing_layer -> 12% of domain
    sponge_strength: float = 20.0
    adapt: bool = True
    dt_floor_factor: float = 1e-9
    snapshot_times: tuple = ()
    stop_below_width: float | None = None
    stop_on_zero_field: bool = True
    max_steps: int = 50_000_000
    check_interval: int = 500

    def __post_init__(self):
        if self.dt <= 0 or self.t_end <= 0:
            raise ValueError("dt and t_end must be positive")
        if self.boundary not in ("periodic", "absorbing_layer", "dirichlet"):
            raise ValueError(f"unknown boundary {self.boundary!r}")
        if self.snapshot_stride < 1:
            raise ValueError("snapshot_stride must be >= 1")
