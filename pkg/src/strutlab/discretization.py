"""Uniform grid on [0, 1], trapezoid quadrature, and shape reconstruction.

Every spatial integral, cumulative integral and norm in the code base
goes through a :class:`Grid`, so the whole artifact shares one O(h^2)
convergence order.  Nodal collocation (values live at the nodes, not in
cells) keeps the quadrature weights compatible with a symmetric Nystrom
matrix downstream.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "Grid",
    "Field",
    "integral",
    "cumulative",
    "tail_sine_integral",
    "l2_norm",
    "product_norm",
    "reconstruct_shape",
]


class Grid:
    """Uniform nodes s_i = i/n with trapezoid weights (h/2, h, ..., h, h/2)."""

    __slots__ = ("n", "h", "nodes", "weights")

    def __init__(self, n: int) -> None:
        n = int(n)
        if n < 8:
            raise ValueError(f"grid.n must be >= 8, got {n}")
        self.n = n
        self.h = 1.0 / n
        self.nodes = np.linspace(0.0, 1.0, n + 1)
        w = np.full(n + 1, self.h)
        w[0] = w[-1] = 0.5 * self.h
        self.weights = w
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)

    def __repr__(self) -> str:
        return f"Grid(n={self.n})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Grid) and other.n == self.n

    def __hash__(self) -> int:
        return hash(("Grid", self.n))

    # Array-level quadrature used throughout the package.
    def quad(self, values: np.ndarray) -> float:
        """Trapezoid approximation of the integral over [0, 1]."""
        return float(self.weights @ values)

    def cumtrapz(self, values: np.ndarray) -> np.ndarray:
        """Composite trapezoid over [0, s_i] per node; first entry exactly 0."""
        out = np.empty_like(values, dtype=float)
        out[0] = 0.0
        np.cumsum(0.5 * self.h * (values[1:] + values[:-1]), out=out[1:])
        return out

    def l2(self, values: np.ndarray) -> float:
        return float(np.sqrt(max(self.quad(values * values), 0.0)))


@dataclass(frozen=True)
class Field:
    """Nodal samples of a scalar function on a grid."""

    values: np.ndarray
    grid: Grid

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=float)
        if v.shape != (self.grid.n + 1,):
            raise ValueError(
                f"field needs {self.grid.n + 1} nodal values, got shape {v.shape}"
            )
        object.__setattr__(self, "values", v)

    @classmethod
    def zeros(cls, grid: Grid) -> "Field":
        return cls(np.zeros(grid.n + 1), grid)

    @classmethod
    def constant(cls, grid: Grid, value: float) -> "Field":
        return cls(np.full(grid.n + 1, float(value)), grid)

    @classmethod
    def from_function(cls, grid: Grid, fn: Callable[[np.ndarray], np.ndarray]) -> "Field":
        return cls(np.asarray(fn(grid.nodes), dtype=float), grid)

    def __len__(self) -> int:
        return self.values.size


def integral(field: Field) -> float:
    """Trapezoid approximation of the integral of the field over [0, 1]."""
    return field.grid.quad(field.values)


def cumulative(field: Field) -> Field:
    """Field of running integrals s -> integral over [0, s]; starts at 0 exactly."""
    return Field(field.grid.cumtrapz(field.values), field.grid)


def tail_sine_integral(mu: Field) -> Field:
    """g(s) = integral over [s, 1] of sin(integral of mu over [0, sigma]).

    Computed as total-minus-cumulative of sin(cumulative(mu)), which makes
    g(1) = 0 exact for any input.
    """
    grid = mu.grid
    theta = grid.cumtrapz(mu.values)
    c = grid.cumtrapz(np.sin(theta))
    return Field(c[-1] - c, grid)


def l2_norm(field: Field) -> float:
    return field.grid.l2(field.values)


def product_norm(field: Field, scalar_part: float) -> float:
    """Norm on the product space: L2 norm of the field plus |scalar|."""
    return field.grid.l2(field.values) + abs(float(scalar_part))


def reconstruct_shape(mu: Field) -> tuple[np.ndarray, np.ndarray]:
    """Planar center line of a unit-length rod with curvature field mu.

    The tangent angle is the running integral of mu and the clamped end
    sits at the origin with horizontal tangent, so
    x = cumulative(cos theta), y = cumulative(sin theta).
    """
    grid = mu.grid
    theta = grid.cumtrapz(mu.values)
    x = grid.cumtrapz(np.cos(theta))
    y = grid.cumtrapz(np.sin(theta))
    return x, y
