"""Complex field samples on a 1D Cartesian or radial grid, plus snapshot IO."""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

import numpy as np

CARTESIAN_1D = "cartesian1d"
RADIAL_2D = "radial2d"


@dataclass
class Field:
    geometry: str
    grid: np.ndarray
    values: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        if self.geometry not in (CARTESIAN_1D, RADIAL_2D):
            raise ValueError(f"unknown geometry {self.geometry!r}")
        if self.grid.shape != self.values.shape:
            raise ValueError("grid/values shape mismatch")
        self.values = np.asarray(self.values, dtype=np.complex128)

    @property
    def spacing(self) -> float:
        return float(self.grid[1] - self.grid[0])

    @property
    def r0(self) -> float:
        """Inner grid edge (hole radius for radial grids with a hole)."""
        return float(self.grid[0])

    def copy(self) -> "Field":
        return replace(self, grid=self.grid, values=self.values.copy())

    def check_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.values.view(np.float64))))

    def to_json(self) -> str:
        return json.dumps(
            {
                "geometry": self.geometry,
                "grid": {
                    "start": float(self.grid[0]),
                    "stop": float(self.grid[-1]),
                    "n": int(self.grid.size),
                },
                "time": self.time,
                "values": [[float(v.real), float(v.imag)] for v in self.values],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "Field":
        doc = json.loads(text)
        g = doc["grid"]
        grid = np.linspace(g["start"], g["stop"], g["n"])
        vals = np.array([complex(re, im) for re, im in doc["values"]])
        return cls(geometry=doc["geometry"], grid=grid, values=vals, time=doc["time"])


def cartesian_grid(x_min: float, x_max: float, n: int) -> np.ndarray:
    """Periodic grid: n points, right endpoint excluded."""
    h = (x_max - x_min) / n
    return x_min + h * np.arange(n)


def radial_grid(r0: float, r_max: float, n: int) -> np.ndarray:
    return np.linspace(r0, r_max, n)
