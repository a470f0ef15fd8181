"""Linearization at equilibria: kernel assembly, eigenanalysis, derivatives.

About an equilibrium with tangent angle phi, the linearized field
component acts as

    xi -> xi_nat - xi + gamma * integral K(s, z) xi(z) dz,
    K(s, z) = integral of cos phi over [max(s, z), 1],

with a frozen scalar component.  K is continuous and symmetric with only
a diagonal kink, and the kink sits on grid nodes, so trapezoid Nystrom
discretization keeps O(h^2) accuracy and a symmetric matrix after the
usual similarity transform by the square-rooted quadrature weights.

The eigenvalues of the field block are rho - 1 for Nystrom eigenvalues
rho; the exact eigenvalue 0 of the full product-space operator comes with
the eigenvector (theta0', theta0'(1)) built from the variational equation
theta'' + gamma cos(phi) theta = 0, theta(0) = 0, theta'(0) = 1.

``apply_DF`` is the derivative of the *discrete* evolution law, term by
term (same quadrature path as ``dynamics.eval_F``), so central finite
differences of eval_F reproduce it to roundoff; the scalar component uses
the chain rule through D, which contributes -(1 + kappa'') xi_nat, and
through Theta, which contributes -+ Theta' xi_nat on the two rate terms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .discretization import Field, Grid, product_norm
from .dynamics import ModelParams, RodState
from .equilibria import EquilibriumPoint, equilibrium_from_alpha

__all__ = [
    "KernelMatrix",
    "SpectrumReport",
    "assemble_kernel",
    "spectrum",
    "theta0_solve",
    "apply_L",
    "apply_DF",
    "buckling_threshold",
]


@dataclass(frozen=True)
class KernelMatrix:
    """Nystrom discretization of the linearized integral operator.

    ``kernel_values[i, j] = gamma * K(s_i, s_j)`` and ``sym`` is the
    weight-symmetrized matrix W^1/2 A W^1/2 whose eigenvalues equal those
    of the quadrature operator A W.
    """

    sym: np.ndarray
    kernel_values: np.ndarray
    grid: Grid


@dataclass(frozen=True)
class SpectrumReport:
    """Eigenvalues of the linearization at an equilibrium.

    ``eigenvalues`` lists the field-block values rho - 1 in descending
    order; the product-space operator additionally has the exact
    eigenvalue 0 carried by ``zero_eigenvector``.  ``n_unstable`` counts
    field-block eigenvalues above ``pos_tol``; -1 is the only
    accumulation point, which ``near_minus_one_count`` quantifies.
    """

    eigenvalues: np.ndarray
    zero_eigenvector: tuple[Field, float]
    zero_residual: float
    n_unstable: int
    pos_tol: float
    near_minus_one_count: int
    cluster_point_note: bool


def _check_pair(equilibrium: EquilibriumPoint, params: ModelParams) -> None:
    if equilibrium.gamma != params.gamma:
        raise ValueError(
            f"equilibrium was shot at gamma = {equilibrium.gamma}, params carry {params.gamma}"
        )


def _tail_cos(equilibrium: EquilibriumPoint) -> np.ndarray:
    grid = equilibrium.phi.grid
    c = grid.cumtrapz(np.cos(equilibrium.phi.values))
    return c[-1] - c


def assemble_kernel(equilibrium: EquilibriumPoint, params: ModelParams) -> KernelMatrix:
    """Build the symmetrized Nystrom matrix of the linearized integral operator."""
    _check_pair(equilibrium, params)
    grid = equilibrium.phi.grid
    tail_cos = _tail_cos(equilibrium)
    idx = np.arange(grid.n + 1)
    a = params.gamma * tail_cos[np.maximum.outer(idx, idx)]
    sw = np.sqrt(grid.weights)
    return KernelMatrix(sym=a * np.outer(sw, sw), kernel_values=a, grid=grid)


def theta0_solve(
    equilibrium: EquilibriumPoint, params: ModelParams, n_fine: int | None = None
) -> tuple[Field, float]:
    """Solve theta'' + gamma cos(phi) theta = 0, theta(0) = 0, theta'(0) = 1.

    Integrates jointly with the pendulum equation (RK4 on the fine
    subgrid) so cos(phi) is available continuously; returns theta' on the
    grid together with theta'(1).
    """
    _check_pair(equilibrium, params)
    grid = equilibrium.phi.grid
    if n_fine is None:
        n_fine = equilibrium.n_fine
    n_fine = int(n_fine)
    if n_fine < grid.n or n_fine % grid.n != 0:
        raise ValueError(f"n_fine must be a positive multiple of grid.n, got {n_fine}")
    m = n_fine // grid.n
    hf = 1.0 / n_fine
    gamma = params.gamma
    sin, cos = math.sin, math.cos

    def deriv(y):
        return (y[1], -gamma * sin(y[0]), y[3], -gamma * cos(y[0]) * y[2])

    y = (0.0, float(equilibrium.alpha), 0.0, 1.0)
    out = np.empty(grid.n + 1)
    out[0] = 1.0
    idx = 0
    for i in range(n_fine):
        k1 = deriv(y)
        k2 = deriv(tuple(y[j] + 0.5 * hf * k1[j] for j in range(4)))
        k3 = deriv(tuple(y[j] + 0.5 * hf * k2[j] for j in range(4)))
        k4 = deriv(tuple(y[j] + hf * k3[j] for j in range(4)))
        y = tuple(
            y[j] + hf * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]) / 6.0 for j in range(4)
        )
        if (i + 1) % m == 0:
            idx += 1
            out[idx] = y[3]
    return Field(out, grid), float(out[-1])


def apply_L(
    equilibrium: EquilibriumPoint,
    params: ModelParams,
    direction: tuple[Field, float],
) -> tuple[Field, float]:
    """Apply the equilibrium linearization to (xi, xi_nat); scalar output is 0.

    Matrix-free prefix/suffix evaluation of the Nystrom action: the
    result is algebraically identical to kernel_values @ (weights * xi),
    so the two discretizations agree to roundoff.
    """
    _check_pair(equilibrium, params)
    xi_field, xi_nat = direction
    grid = xi_field.grid
    xi = xi_field.values
    tail_cos = _tail_cos(equilibrium)
    wxi = grid.weights * xi
    prefix = np.cumsum(wxi)
    q = wxi * tail_cos
    suffix = q.sum() - np.cumsum(q)
    action = params.gamma * (tail_cos * prefix + suffix)
    return Field(xi_nat - xi + action, grid), 0.0


def apply_DF(
    state: RodState,
    params: ModelParams,
    direction: tuple[Field, float],
) -> tuple[Field, float]:
    """Directional derivative of the discrete evolution law at a general state."""
    xi_field, xi_nat = direction
    grid = state.grid
    xi = xi_field.values
    cset = params.constitutive

    theta = grid.cumtrapz(state.mu.values)
    cum_xi = grid.cumtrapz(xi)
    c = grid.cumtrapz(np.cos(theta) * cum_xi)
    df1 = xi_nat - xi + params.gamma * (c[-1] - c)

    mu_nat = state.mu_nat
    d = grid.quad(state.mu.values) - mu_nat - cset.kappa.prime(mu_nat)
    th = cset.theta.eval(mu_nat)
    base = grid.quad(xi) - (1.0 + cset.kappa.second(mu_nat)) * xi_nat
    th_term = cset.theta.prime(mu_nat) * xi_nat
    df2 = cset.f.prime(d - th) * (base - th_term) + cset.f.prime(-th - d) * (base + th_term)
    return Field(df1, grid), float(df2)


def spectrum(
    equilibrium: EquilibriumPoint,
    params: ModelParams,
    pos_tol: float | None = None,
) -> SpectrumReport:
    """Eigenanalysis of the linearization at an equilibrium.

    The instability count uses ``pos_tol`` scaled to the measured
    discretization error of the exact zero mode unless overridden.
    """
    km = assemble_kernel(equilibrium, params)
    try:
        rho = scipy.linalg.eigh(km.sym, eigvals_only=True)
    except scipy.linalg.LinAlgError as exc:
        raise RuntimeError(
            f"symmetric eigensolve failed on a {km.sym.shape} kernel matrix "
            f"(norm {np.linalg.norm(km.sym):.3e})"
        ) from exc
    lam = np.sort(rho - 1.0)[::-1]

    zero_vec = theta0_solve(equilibrium, params)
    l1, l2 = apply_L(equilibrium, params, zero_vec)
    zero_residual = product_norm(l1, l2)
    if pos_tol is None:
        pos_tol = max(1e-8, 10.0 * zero_residual)
    near = int(np.count_nonzero(np.abs(lam + 1.0) < 0.05))
    return SpectrumReport(
        eigenvalues=lam,
        zero_eigenvector=zero_vec,
        zero_residual=zero_residual,
        n_unstable=int(np.count_nonzero(lam > pos_tol)),
        pos_tol=float(pos_tol),
        near_minus_one_count=near,
        cluster_point_note=near >= lam.size // 2,
    )


def buckling_threshold(
    constitutive,
    grid: Grid,
    gamma_bracket: tuple[float, float],
    width: float = 1e-6,
    n_fine: int | None = None,
) -> float:
    """Bisect the load at which the straight state loses linear stability.

    Locates the sign change of the largest field-block eigenvalue at the
    trivial equilibrium within the bracket, to the requested width.
    """
    lo, hi = float(gamma_bracket[0]), float(gamma_bracket[1])
    if not 0.0 <= lo < hi:
        raise ValueError(f"need 0 <= lo < hi in the gamma bracket, got {gamma_bracket}")

    def lam_max(gamma: float) -> float:
        params = ModelParams(gamma, constitutive)
        eq = equilibrium_from_alpha(0.0, params, grid, n_fine)
        km = assemble_kernel(eq, params)
        top = scipy.linalg.eigh(
            km.sym, eigvals_only=True, subset_by_index=(grid.n, grid.n)
        )
        return float(top[0] - 1.0)

    g_lo, g_hi = lam_max(lo), lam_max(hi)
    if g_lo == 0.0:
        return lo
    if g_hi == 0.0:
        return hi
    if g_lo * g_hi > 0.0:
        raise ValueError(
            f"no sign change of the leading eigenvalue in [{lo}, {hi}]: "
            f"{g_lo:.3e} and {g_hi:.3e}"
        )
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        g_mid = lam_max(mid)
        if g_mid == 0.0:
            return mid
        if g_lo * g_mid < 0.0:
            hi = mid
        else:
            lo, g_lo = mid, g_mid
    return 0.5 * (lo + hi)
