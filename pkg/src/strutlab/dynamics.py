"""Quasistatic evolution of the strut on L2(0,1) x R.

State is the pair (mu, mu_nat): the curvature field and the scalar
natural curvature.  The evolution law is

    d/dt mu(s)   = mu_nat - mu(s) + gamma * g(s),
    d/dt mu_nat  = f(D - Theta(mu_nat)) - f(-Theta(mu_nat) - D),

where g is the tail sine integral of mu and D is the driving force

    D = integral(mu) - mu_nat - kappa'(mu_nat).

The energy functional

    V = 1/2 integral (mu - mu_nat)^2 + kappa(mu_nat) + gamma integral cos theta

decreases along every trajectory at the rate -integral(mu_t^2) - |D||mu_nat_t|,
which is what makes long-time convergence to an equilibrium observable.

Time integration is an explicit embedded Dormand-Prince 5(4) pair with a
PI step controller.  The stiff part is only the semilinear -mu term
(Lipschitz constant O(1 + gamma)), so explicit stepping is adequate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from .constitutive import ConstitutiveSet
from .discretization import Field, Grid

__all__ = [
    "ModelParams",
    "RodState",
    "Regime",
    "Tolerances",
    "TrajectoryRecord",
    "IntegrationError",
    "StiffnessError",
    "NonFiniteStateError",
    "driving_force",
    "eval_F",
    "liapunov",
    "dissipation_rate",
    "regime",
    "contact_moment",
    "step",
    "simulate",
    "global_bound_check",
]


@dataclass(frozen=True)
class ModelParams:
    """Dimensionless load gamma plus the constitutive triple."""

    gamma: float
    constitutive: ConstitutiveSet

    def __post_init__(self) -> None:
        if not self.gamma >= 0.0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma}")


@dataclass(frozen=True)
class RodState:
    """A point of the dynamical system: curvature field plus natural curvature."""

    mu: Field
    mu_nat: float

    def __post_init__(self) -> None:
        if not (np.isfinite(self.mu.values).all() and math.isfinite(self.mu_nat)):
            raise ValueError("rod state must be finite")

    @property
    def grid(self) -> Grid:
        return self.mu.grid


class Regime(Enum):
    STICK = "stick"
    SLIP_POSITIVE = "slip_positive"
    SLIP_NEGATIVE = "slip_negative"


@dataclass(frozen=True)
class Tolerances:
    """Step-control tolerances; the defaults suit desk-scale runs."""

    rel_tol: float = 1e-8
    abs_tol: float = 1e-8
    dt_min: float = 1e-12

    def __post_init__(self) -> None:
        for name in ("rel_tol", "abs_tol", "dt_min"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)}")


class IntegrationError(RuntimeError):
    """Base class for time-integration failures; carries diagnostic state."""

    def __init__(self, message: str, t: float, state: "RodState") -> None:
        super().__init__(message)
        self.t = t
        self.state = state


class StiffnessError(IntegrationError):
    """Step size collapsed below dt_min."""


class NonFiniteStateError(IntegrationError):
    """The integrator produced a non-finite state."""


# ---------------------------------------------------------------------------
# Packed right-hand side.  The integrator works on y = [mu_0..mu_n, mu_nat].


def _forces(mu: np.ndarray, mu_nat: float, params: ModelParams, grid: Grid):
    """Return (F1 array, F2, D, Theta(mu_nat)) without intermediate objects."""
    cset = params.constitutive
    theta = grid.cumtrapz(mu)
    c = grid.cumtrapz(np.sin(theta))
    tail = c[-1] - c
    f1 = mu_nat - mu + params.gamma * tail
    d = grid.quad(mu) - mu_nat - cset.kappa.prime(mu_nat)
    th = cset.theta.eval(mu_nat)
    f2 = cset.f.eval(d - th) - cset.f.eval(-th - d)
    return f1, f2, d, th


def _rhs(y: np.ndarray, params: ModelParams, grid: Grid) -> np.ndarray:
    f1, f2, _, _ = _forces(y[:-1], y[-1], params, grid)
    out = np.empty_like(y)
    out[:-1] = f1
    out[-1] = f2
    return out


def _pack(state: RodState) -> np.ndarray:
    return np.concatenate([state.mu.values, [state.mu_nat]])


def _unpack(y: np.ndarray, grid: Grid) -> RodState:
    return RodState(Field(y[:-1].copy(), grid), float(y[-1]))


# ---------------------------------------------------------------------------
# Model observables.


def driving_force(state: RodState, params: ModelParams) -> float:
    """D = integral(mu) - mu_nat - kappa'(mu_nat)."""
    grid = state.grid
    return grid.quad(state.mu.values) - state.mu_nat - params.constitutive.kappa.prime(
        state.mu_nat
    )


def eval_F(state: RodState, params: ModelParams) -> RodState:
    """Velocity of the state; shares the RodState shape."""
    f1, f2, _, _ = _forces(state.mu.values, state.mu_nat, params, state.grid)
    return RodState(Field(f1, state.grid), float(f2))


def liapunov(state: RodState, params: ModelParams) -> float:
    """Stored energy minus terminal-thrust work; nonincreasing along runs."""
    grid = state.grid
    mu = state.mu.values
    dev = mu - state.mu_nat
    theta = grid.cumtrapz(mu)
    return (
        0.5 * grid.quad(dev * dev)
        + params.constitutive.kappa.eval(state.mu_nat)
        + params.gamma * grid.quad(np.cos(theta))
    )


def dissipation_rate(state: RodState, params: ModelParams) -> float:
    """dV/dt along the flow: -integral(F1^2) - |D| |F2|.  Always <= 0."""
    grid = state.grid
    f1, f2, d, _ = _forces(state.mu.values, state.mu_nat, params, grid)
    return -grid.quad(f1 * f1) - abs(d) * abs(f2)


def regime(state: RodState, params: ModelParams) -> Regime:
    """Stick iff |D| <= Theta(mu_nat); otherwise slip with the sign of D."""
    d = driving_force(state, params)
    th = params.constitutive.theta.eval(state.mu_nat)
    if abs(d) <= th:
        return Regime.STICK
    return Regime.SLIP_POSITIVE if d > 0.0 else Regime.SLIP_NEGATIVE


def contact_moment(state: RodState, params: ModelParams) -> Field:
    """Diagnostic bending moment (mu - mu_nat) + mu_t with mu_t taken from F1.

    It vanishes identically exactly when the rod sits in its natural
    configuration, which is what earns mu_nat its name.
    """
    f1, _, _, _ = _forces(state.mu.values, state.mu_nat, params, state.grid)
    return Field(state.mu.values - state.mu_nat + f1, state.grid)


# ---------------------------------------------------------------------------
# Dormand-Prince 5(4) with PI step control.

_DP_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_DP_A = (
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
)
# Error row of the embedded pair; applies to k1..k7 with k7 = f(y_new).
_DP_E = np.array(
    [71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40]
)

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 10.0
# PI exponents for a 5th-order propagator (Gustafsson-style).
_PI_ALPHA = 0.17
_PI_BETA = 0.04


def _attempt(rhs, y: np.ndarray, f0: np.ndarray, dt: float):
    """One raw embedded step: returns (y_new, f_new, error_vector)."""
    k = np.empty((7, y.size))
    k[0] = f0
    for i, a in enumerate(_DP_A[:-1]):
        k[i + 1] = rhs(y + dt * (a @ k[: i + 1]))
    y_new = y + dt * (_DP_A[-1] @ k[:6])
    k[6] = rhs(y_new)
    err = dt * (_DP_E @ k)
    return y_new, k[6], err


def _error_norm(err: np.ndarray, y: np.ndarray, y_new: np.ndarray, tol: Tolerances) -> float:
    scale = tol.abs_tol + tol.rel_tol * np.maximum(np.abs(y), np.abs(y_new))
    return float(np.sqrt(np.mean((err / scale) ** 2)))


def _initial_dt(rhs, y: np.ndarray, f0: np.ndarray, tol: Tolerances, t_span: float) -> float:
    """Standard small-step probe to seed the controller."""
    scale = tol.abs_tol + tol.rel_tol * np.abs(y)
    d0 = float(np.sqrt(np.mean((y / scale) ** 2)))
    d1 = float(np.sqrt(np.mean((f0 / scale) ** 2)))
    h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
    y1 = y + h0 * f0
    f1 = rhs(y1)
    d2 = float(np.sqrt(np.mean(((f1 - f0) / scale) ** 2))) / h0
    if d1 <= 1e-15 and d2 <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** 0.2
    return min(100 * h0, h1, t_span)


def step(
    state: RodState,
    params: ModelParams,
    dt_suggestion: float,
    tolerances: Tolerances | None = None,
) -> tuple[RodState, float, float]:
    """Take one accepted embedded step.

    Shrinks the step until the weighted local error estimate is within
    tolerance, then returns (new state, accepted dt, scaled error norm);
    a scaled norm <= 1 means the estimate met the tolerance.  Raises
    :class:`StiffnessError` if dt falls below ``tolerances.dt_min``.
    """
    tol = tolerances or Tolerances()
    if not dt_suggestion > 0.0:
        raise ValueError(f"dt_suggestion must be > 0, got {dt_suggestion}")
    grid = state.grid
    rhs = lambda y: _rhs(y, params, grid)
    y = _pack(state)
    f0 = rhs(y)
    dt = float(dt_suggestion)
    while True:
        y_new, _, err = _attempt(rhs, y, f0, dt)
        err_norm = _error_norm(err, y, y_new, tol)
        if err_norm <= 1.0:
            return _unpack(y_new, grid), dt, err_norm
        dt *= max(_MIN_FACTOR, _SAFETY * err_norm ** -0.2)
        if dt < tol.dt_min:
            raise StiffnessError(
                f"step size underflow: dt = {dt:.3e} < dt_min = {tol.dt_min:.3e}",
                t=math.nan,
                state=state,
            )


# ---------------------------------------------------------------------------
# Trajectory record and the driver loop.


@dataclass
class TrajectoryRecord:
    """Per-accepted-step history of a run, including the initial snapshot."""

    times: np.ndarray
    states: list[RodState]
    liapunov: np.ndarray
    driving: np.ndarray
    threshold: np.ndarray
    regimes: list[Regime]
    dts: np.ndarray
    norm_F: np.ndarray
    converged: bool

    def __post_init__(self) -> None:
        m = len(self.times)
        lengths = {
            len(self.states),
            self.liapunov.size,
            self.driving.size,
            self.threshold.size,
            len(self.regimes),
            self.dts.size,
            self.norm_F.size,
        }
        if lengths != {m}:
            raise ValueError("trajectory record arrays have inconsistent lengths")
        if m > 1 and not np.all(np.diff(self.times) > 0.0):
            raise ValueError("trajectory times must be strictly increasing")

    def __len__(self) -> int:
        return len(self.times)

    @property
    def final_state(self) -> RodState:
        return self.states[-1]

    def regime_crossings(self) -> list[float]:
        """Times at which the recorded regime flag changes."""
        return [
            float(self.times[i])
            for i in range(1, len(self.regimes))
            if self.regimes[i] is not self.regimes[i - 1]
        ]


class _RecordBuilder:
    def __init__(self) -> None:
        self.times: list[float] = []
        self.states: list[RodState] = []
        self.liapunov: list[float] = []
        self.driving: list[float] = []
        self.threshold: list[float] = []
        self.regimes: list[Regime] = []
        self.dts: list[float] = []
        self.norm_F: list[float] = []

    def add(self, t, state, v, d, th, reg, dt, nf) -> None:
        self.times.append(t)
        self.states.append(state)
        self.liapunov.append(v)
        self.driving.append(d)
        self.threshold.append(th)
        self.regimes.append(reg)
        self.dts.append(dt)
        self.norm_F.append(nf)

    def build(self, converged: bool) -> TrajectoryRecord:
        return TrajectoryRecord(
            times=np.array(self.times),
            states=self.states,
            liapunov=np.array(self.liapunov),
            driving=np.array(self.driving),
            threshold=np.array(self.threshold),
            regimes=self.regimes,
            dts=np.array(self.dts),
            norm_F=np.array(self.norm_F),
            converged=converged,
        )


def simulate(
    initial_state: RodState,
    params: ModelParams,
    t_end: float,
    tolerances: Tolerances | None = None,
    eq_tol: float = 1e-10,
) -> TrajectoryRecord:
    """Integrate until t_end or until the product norm of F drops below eq_tol.

    Every accepted step is recorded.  The default eq_tol sits far below
    the spatial discretization error, so a converged flag means the state
    reached the discrete equilibrium, not merely its neighborhood.
    """
    if not t_end > 0.0:
        raise ValueError(f"t_end must be > 0, got {t_end}")
    if not eq_tol > 0.0:
        raise ValueError(f"eq_tol must be > 0, got {eq_tol}")
    tol = tolerances or Tolerances()
    grid = initial_state.grid
    rhs = lambda y: _rhs(y, params, grid)

    def diagnostics(state: RodState, f_packed: np.ndarray):
        nf = grid.l2(f_packed[:-1]) + abs(float(f_packed[-1]))
        d = driving_force(state, params)
        th = params.constitutive.theta.eval(state.mu_nat)
        if abs(d) <= th:
            reg = Regime.STICK
        else:
            reg = Regime.SLIP_POSITIVE if d > 0.0 else Regime.SLIP_NEGATIVE
        return nf, d, th, reg

    rec = _RecordBuilder()
    t = 0.0
    y = _pack(initial_state)
    f0 = rhs(y)
    state = initial_state
    nf, d, th, reg = diagnostics(state, f0)
    rec.add(t, state, liapunov(state, params), d, th, reg, 0.0, nf)
    if nf < eq_tol:
        return rec.build(converged=True)

    dt = _initial_dt(rhs, y, f0, tol, t_end)
    err_prev = 1e-4
    rejected = False
    while t < t_end:
        dt = min(dt, t_end - t)
        if dt < tol.dt_min:
            raise StiffnessError(
                f"step size underflow at t = {t:.6g}: dt = {dt:.3e}", t=t, state=state
            )
        y_new, f_new, err = _attempt(rhs, y, f0, dt)
        err_norm = _error_norm(err, y, y_new, tol)
        if err_norm > 1.0:
            dt *= max(_MIN_FACTOR, _SAFETY * err_norm ** -0.2)
            rejected = True
            continue
        t += dt
        y, f0 = y_new, f_new
        if not np.isfinite(y).all():
            raise NonFiniteStateError(
                f"non-finite state at t = {t:.6g}", t=t, state=state
            )
        state = _unpack(y, grid)
        nf, d, th, reg = diagnostics(state, f0)
        rec.add(t, state, liapunov(state, params), d, th, reg, dt, nf)
        if nf < eq_tol:
            return rec.build(converged=True)
        # PI controller; growth is frozen right after a rejection.
        if err_norm == 0.0:
            factor = _MAX_FACTOR
        else:
            factor = _SAFETY * err_norm ** -_PI_ALPHA * err_prev ** _PI_BETA
            factor = min(_MAX_FACTOR, max(_MIN_FACTOR, factor))
        if rejected:
            factor = min(1.0, factor)
            rejected = False
        dt *= factor
        err_prev = max(err_norm, 1e-10)
    return rec.build(converged=False)


def global_bound_check(record: TrajectoryRecord, params: ModelParams) -> tuple[bool, float]:
    """Check 1/2 integral (mu - mu_nat)^2 + kappa(mu_nat) <= V(initial) + gamma.

    Returns (holds, minimal margin) over all snapshots.
    """
    if len(record) == 0:
        raise ValueError("record is empty")
    bound = record.liapunov[0] + params.gamma
    margin = math.inf
    for state in record.states:
        grid = state.grid
        dev = state.mu.values - state.mu_nat
        lhs = 0.5 * grid.quad(dev * dev) + params.constitutive.kappa.eval(state.mu_nat)
        margin = min(margin, bound - lhs)
    slack = 1e-12 * (1.0 + abs(bound))
    return margin >= -slack, float(margin)
