"""Strang-split semi-implicit stepper for the radially symmetric 2D equation.

The radial Laplacian is discretized in flux form (self-adjoint under the
finite-volume weights, so Crank-Nicolson conserves the discrete power exactly);
the hole's Dirichlet row is pinned, and without a hole the origin row uses the
regularized Laplacian 4 (psi_1 - psi_0)/h^2.
"""

from __future__ import annotations

import numpy as np

from ..field import RADIAL_2D, Field
from . import kernels
from .cartesian import _nl_args, make_sponge
from .params import ModelParams, RunConfig


class RadialStepper:
    geometry = RADIAL_2D

    def __init__(self, field: Field, params: ModelParams, cfg: RunConfig):
        if field.geometry != RADIAL_2D or params.d != 2:
            raise ValueError("RadialStepper needs a radial field and d=2")
        self.grid = field.grid
        self.psi = field.values.copy()
        self.params = params
        self.h = field.spacing
        n = self.grid.size
        self.hole = params.hole_r0 > 0.0
        if self.hole and abs(field.r0 - params.hole_r0) > 1e-12:
            raise ValueError("field grid must start at the hole radius")
        if not self.hole and abs(field.r0) > 1e-12:
            raise ValueError("field grid must start at r = 0 without a hole")

        r = self.grid
        h = self.h
        # Laplacian couplings: lower/upper of L, scaled by r_(j +- 1/2)/(r_j h^2)
        self._lo = np.zeros(n)
        self._up = np.zeros(n)
        j = np.arange(1, n - 1)
        self._lo[j] = (r[j] - 0.5 * h) / (r[j] * h * h)
        self._up[j] = (r[j] + 0.5 * h) / (r[j] * h * h)
        if not self.hole:
            self._up[0] = 4.0 / (h * h)
        # finite-volume weights for the conserved power
        self.weights = r * h
        self.weights[-1] = 0.5 * r[-1] * h
        self.weights[0] = h * h / 8.0 if not self.hole else 0.0
        if self.hole:
            self.psi[0] = 0.0
        self.psi[-1] = 0.0

        self._gamma = 1j * params.dispersion + params.cgl[1]
        self._diag_cache: dict[float, tuple] = {}
        self._nl = _nl_args(params)
        self._work = np.empty(n, dtype=np.complex128)
        self.sponge = None
        if cfg.boundary == "absorbing_layer":
            width = cfg.sponge_width or 0.12 * (r[-1] - r[0])
            if width < 0.10 * (r[-1] - r[0]):
                raise ValueError("absorbing layer must span at least 10% of the domain")
            s = make_sponge(r, width, cfg.sponge_strength)
            s[r - r[0] < width] = 0.0  # absorb only at the outer edge
            self.sponge = s
        self.time = field.time

    def _diags(self, dt: float) -> tuple:
        cached = self._diag_cache.get(dt)
        if cached is None:
            c = 0.5 * dt * self._gamma
            cl, cu = c * self._lo, c * self._up
            al, au = -cl, -cu
            ad = 1.0 + cl + cu
            bl, bu = cl.copy(), cu.copy()
            bd = 1.0 - cl - cu
            # pinned Dirichlet rows (outer edge always; inner edge with a hole)
            for idx in ([0, -1] if self.hole else [-1]):
                al[idx] = au[idx] = bl[idx] = bu[idx] = bd[idx] = 0.0
                ad[idx] = 1.0
            if len(self._diag_cache) > 80:
                self._diag_cache.clear()
            cached = (bl, bd, bu, al, ad, au)
            self._diag_cache[dt] = cached
        return cached

    def step(self, dt: float) -> None:
        a = self._nl
        kernels.nl_substep(
            self.psi, 0.5 * dt, a["nl"], a["sigma"], a["delta"], a["p"],
            a["eps_sat"], a["qm1_half"], a["lin_gain"], self.sponge,
        )
        bl, bd, bu, al, ad, au = self._diags(dt)
        kernels.cn_apply(bl, bd, bu, al, ad, au, self.psi, self._work)
        kernels.nl_substep(
            self.psi, 0.5 * dt, a["nl"], a["sigma"], a["delta"], a["p"],
            a["eps_sat"], a["qm1_half"], a["lin_gain"], self.sponge,
        )
        self.time += dt

    def power(self) -> float:
        i2 = self.psi.real ** 2 + self.psi.imag ** 2
        return float(2.0 * np.pi * np.sum(self.weights * i2))

    def hamiltonian(self) -> float:
        grad = np.gradient(self.psi, self.h)
        g2 = grad.real ** 2 + grad.imag ** 2
        i2 = self.psi.real ** 2 + self.psi.imag ** 2
        s = self.params.sigma
        dens = g2 - self.params.nonlinear_coeff / (s + 1.0) * i2 ** (s + 1.0)
        return float(2.0 * np.pi * np.sum(self.weights * dens))

    def field(self) -> Field:
        return Field(RADIAL_2D, self.grid, self.psi.copy(), self.time)

    def peak_index(self) -> int:
        return int(np.argmax(self.psi.real ** 2 + self.psi.imag ** 2))
