"""Equilibrium states via shooting on the pendulum equation.

Every equilibrium curvature profile is the derivative of a solution of

    phi''(s) + gamma sin phi(s) = 0,   phi(0) = 0,

so the initial slope alpha = phi'(0) parameterizes all candidates:
(nu, nu_nat) = (phi', phi'(1)).  No root finding is involved; a candidate
is a genuine rest point exactly when the driving force passes the
admissibility test |D| <= Theta(nu_nat).  The shooting map is integrated
with classical RK4 on a fine subgrid and restricted to the working grid.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .discretization import Field, Grid, product_norm
from .dynamics import ModelParams, RodState, eval_F

__all__ = [
    "EquilibriumPoint",
    "BranchCurve",
    "TangentCheck",
    "InadmissibleEquilibriumError",
    "shoot",
    "equilibrium_from_alpha",
    "branch_sweep",
    "tangent_check",
    "refine",
]


class InadmissibleEquilibriumError(ValueError):
    """The candidate violates the strict admissibility the caller requires."""


@dataclass(frozen=True)
class EquilibriumPoint:
    """Shooting solution restricted to the grid, with its admissibility data.

    ``d_value`` uses phi(1) from the fine integration rather than grid
    quadrature of nu, so it carries the shooting accuracy, not O(h^2).
    """

    alpha: float
    gamma: float
    phi: Field
    nu: Field
    nu_nat: float
    d_value: float
    threshold: float
    admissible: bool
    strict: bool
    n_fine: int


@dataclass(frozen=True)
class BranchCurve:
    """Equilibria sampled over an alpha range plus located admissibility boundaries."""

    points: tuple[EquilibriumPoint, ...]
    boundaries: tuple[float, ...]

    def __post_init__(self) -> None:
        alphas = [p.alpha for p in self.points]
        if any(b >= a for a, b in zip(alphas[1:], alphas[:-1])):
            raise ValueError("branch points must have strictly increasing alpha")


@dataclass(frozen=True)
class TangentCheck:
    fd_tangent: tuple[Field, float]
    theta0_tangent: tuple[Field, float]
    discrepancy: float


def _resolve_n_fine(grid: Grid, n_fine: int | None) -> int:
    if n_fine is None:
        n_fine = 10 * grid.n
    n_fine = int(n_fine)
    if n_fine < grid.n:
        raise ValueError(f"n_fine must be >= grid.n = {grid.n}, got {n_fine}")
    if n_fine % grid.n != 0:
        raise ValueError(f"n_fine must be a multiple of grid.n = {grid.n}, got {n_fine}")
    return n_fine


def shoot(
    alpha: float, gamma: float, grid: Grid, n_fine: int | None = None
) -> tuple[Field, Field]:
    """Integrate phi'' = -gamma sin phi from (0, alpha); return (phi, phi') on the grid."""
    n_fine = _resolve_n_fine(grid, n_fine)
    m = n_fine // grid.n
    hf = 1.0 / n_fine
    sin = math.sin
    phi = 0.0
    v = float(alpha)
    phis = np.empty(grid.n + 1)
    vs = np.empty(grid.n + 1)
    phis[0], vs[0] = phi, v
    idx = 0
    for i in range(n_fine):
        k1v = -gamma * sin(phi)
        p2 = phi + 0.5 * hf * v
        k2v = -gamma * sin(p2)
        k2p = v + 0.5 * hf * k1v
        p3 = phi + 0.5 * hf * k2p
        k3v = -gamma * sin(p3)
        k3p = v + 0.5 * hf * k2v
        p4 = phi + hf * k3p
        k4v = -gamma * sin(p4)
        k4p = v + hf * k3v
        phi += hf * (v + 2.0 * k2p + 2.0 * k3p + k4p) / 6.0
        v += hf * (k1v + 2.0 * k2v + 2.0 * k3v + k4v) / 6.0
        if (i + 1) % m == 0:
            idx += 1
            phis[idx], vs[idx] = phi, v
    return Field(phis, grid), Field(vs, grid)


def equilibrium_from_alpha(
    alpha: float, params: ModelParams, grid: Grid, n_fine: int | None = None
) -> EquilibriumPoint:
    """Shoot at alpha and package the candidate with its admissibility verdict."""
    n_fine = _resolve_n_fine(grid, n_fine)
    phi, nu = shoot(alpha, params.gamma, grid, n_fine)
    nu_nat = float(nu.values[-1])
    cset = params.constitutive
    d = float(phi.values[-1]) - nu_nat - cset.kappa.prime(nu_nat)
    th = cset.theta.eval(nu_nat)
    return EquilibriumPoint(
        alpha=float(alpha),
        gamma=params.gamma,
        phi=phi,
        nu=nu,
        nu_nat=nu_nat,
        d_value=d,
        threshold=th,
        admissible=abs(d) <= th,
        strict=abs(d) < th,
        n_fine=n_fine,
    )


def residual(point: EquilibriumPoint, params: ModelParams) -> float:
    """Product norm of the evolution law applied to the candidate."""
    vel = eval_F(RodState(point.nu, point.nu_nat), params)
    return product_norm(vel.mu, vel.mu_nat)


def branch_sweep(
    alpha_min: float,
    alpha_max: float,
    n_points: int,
    params: ModelParams,
    grid: Grid,
    n_fine: int | None = None,
    boundary_width: float = 1e-10,
) -> BranchCurve:
    """Sample equilibria at uniformly spaced alpha and bisect admissibility boundaries.

    Each sign change of |D| - Theta(nu_nat) between consecutive samples is
    refined by bisection on alpha to the requested width and recorded.  A
    boundary point gets located, never classified: stability exactly on
    |D| = Theta is outside what this artifact claims.
    """
    if not alpha_min < alpha_max:
        raise ValueError(f"need alpha_min < alpha_max, got [{alpha_min}, {alpha_max}]")
    if n_points < 2:
        raise ValueError(f"n_points must be >= 2, got {n_points}")
    alphas = np.linspace(alpha_min, alpha_max, n_points)
    points = [equilibrium_from_alpha(a, params, grid, n_fine) for a in alphas]

    def gap(point: EquilibriumPoint) -> float:
        return abs(point.d_value) - point.threshold

    boundaries: list[float] = []
    for left, right in zip(points[:-1], points[1:]):
        g0, g1 = gap(left), gap(right)
        if g0 == 0.0:
            boundaries.append(left.alpha)
            continue
        if g0 * g1 < 0.0:
            lo, hi = left.alpha, right.alpha
            glo = g0
            while hi - lo > boundary_width:
                mid = 0.5 * (lo + hi)
                gm = gap(equilibrium_from_alpha(mid, params, grid, n_fine))
                if gm == 0.0:
                    lo = hi = mid
                    break
                if glo * gm < 0.0:
                    hi = mid
                else:
                    lo, glo = mid, gm
            boundaries.append(0.5 * (lo + hi))
    if points and gap(points[-1]) == 0.0:
        boundaries.append(points[-1].alpha)
    return BranchCurve(tuple(points), tuple(boundaries))


def tangent_check(
    alpha: float,
    params: ModelParams,
    grid: Grid,
    fd_step: float = 1e-4,
    n_fine: int | None = None,
) -> TangentCheck:
    """Compare the finite-difference branch tangent against the variational solution.

    The derivative of the shooting family in alpha solves the linearized
    pendulum equation with unit initial slope, so the analytic tangent is
    exactly what ``spectral.theta0_solve`` produces at the base point.
    """
    base = equilibrium_from_alpha(alpha, params, grid, n_fine)
    if not base.strict:
        raise InadmissibleEquilibriumError(
            f"tangent check needs a strictly admissible base point; "
            f"|D| = {abs(base.d_value):.6g} vs Theta = {base.threshold:.6g} at alpha = {alpha}"
        )
    plus = equilibrium_from_alpha(alpha + fd_step, params, grid, n_fine)
    minus = equilibrium_from_alpha(alpha - fd_step, params, grid, n_fine)
    fd_field = Field((plus.nu.values - minus.nu.values) / (2.0 * fd_step), grid)
    fd_scalar = (plus.nu_nat - minus.nu_nat) / (2.0 * fd_step)

    from .spectral import theta0_solve  # local import; spectral depends on this module

    th_field, th_scalar = theta0_solve(base, params)
    disc = product_norm(
        Field(fd_field.values - th_field.values, grid), fd_scalar - th_scalar
    )
    return TangentCheck((fd_field, fd_scalar), (th_field, th_scalar), disc)


def refine(
    point: EquilibriumPoint,
    params: ModelParams,
    max_rounds: int = 5,
) -> tuple[EquilibriumPoint, float]:
    """Re-shoot at increasing n_fine until the evolution residual stalls.

    The shooting map needs no Newton correction (every alpha already is an
    equilibrium candidate), so refinement only sharpens the integration.
    The residual bottoms out at the grid quadrature floor; the first round
    that fails to improve it ends the loop.
    """
    best = point
    best_res = residual(point, params)
    n_fine = point.n_fine
    grid = point.nu.grid
    for _ in range(max_rounds):
        n_fine *= 2
        candidate = equilibrium_from_alpha(point.alpha, params, grid, n_fine)
        res = residual(candidate, params)
        if res < best_res:
            best, best_res = candidate, res
        else:
            break
    return best, best_res
