"""Scenario runner: simulate / equilibria / spectrum / sweep / validate.

Configuration is flat INI-style key=value text (section.key below), kept
deliberately dependency-free and diff-friendly:

    [model]   gamma, kappa_family, kappa_k, kappa_mu1, rate_c, rate_p,
              theta_a, theta_b
    [grid]    n
    [time]    t_end, rel_tol, abs_tol, eq_tol
    [initial] mode (zeros|constant|cosine|nodes), value, mu_nat, nodes
    [output]  directory, formats (csv,svg), snapshot_stride

CSV output uses '.' decimals, '\\n' line endings, a mandatory header row
and 17 significant digits so floats round-trip bit-faithfully.  Exit
codes: 0 ok, 2 config error, 3 integration failure, 4 inadmissible
equilibrium, 5 validation failure.
"""
from __future__ import annotations

import argparse
import concurrent.futures
import configparser
import csv
import hashlib
import os
import struct
import sys
from dataclasses import dataclass, replace

import numpy as np

from . import spectral
from .constitutive import ConstitutiveSet, KappaSpec, RateSpec, ThresholdSpec
from .discretization import Field, Grid, product_norm, reconstruct_shape
from .dynamics import (
    IntegrationError,
    ModelParams,
    Regime,
    RodState,
    Tolerances,
    TrajectoryRecord,
    driving_force,
    eval_F,
    global_bound_check,
    liapunov,
    simulate,
)
from .equilibria import (
    InadmissibleEquilibriumError,
    branch_sweep,
    equilibrium_from_alpha,
    tangent_check,
)
from .svgplot import Series, line_plot

__all__ = [
    "ConfigError",
    "ScenarioConfig",
    "RunSummary",
    "parse_config",
    "run_simulate",
    "run_equilibria",
    "run_spectrum",
    "run_sweep",
    "run_validate",
    "main",
]


class ConfigError(ValueError):
    pass


_SCHEMA: dict[str, tuple[str, ...]] = {
    "model": (
        "gamma",
        "kappa_family",
        "kappa_k",
        "kappa_mu1",
        "rate_c",
        "rate_p",
        "theta_a",
        "theta_b",
    ),
    "grid": ("n",),
    "time": ("t_end", "rel_tol", "abs_tol", "eq_tol"),
    "initial": ("mode", "value", "mu_nat", "nodes"),
    "output": ("directory", "formats", "snapshot_stride"),
}


@dataclass(frozen=True)
class ScenarioConfig:
    gamma: float = 1.0
    kappa_family: str = "quadratic"
    kappa_k: float = 1.0
    kappa_mu1: float | None = None
    rate_c: float = 1.0
    rate_p: float = 2.0
    theta_a: float = 2.0
    theta_b: float = 0.0
    n: int = 400
    t_end: float = 50.0
    rel_tol: float = 1e-8
    abs_tol: float = 1e-8
    eq_tol: float = 1e-10
    initial_mode: str = "zeros"
    initial_value: float = 0.0
    initial_mu_nat: float = 0.0
    initial_nodes: str = ""
    out_dir: str = "out"
    formats: str = "csv,svg"
    snapshot_stride: int = 10

    def __post_init__(self) -> None:
        if not np.isfinite(self.gamma) or self.gamma < 0.0:
            raise ConfigError(f"model.gamma must be finite and >= 0, got {self.gamma}")
        if self.n < 8:
            raise ConfigError(f"grid.n must be >= 8, got {self.n}")
        for key in ("t_end", "rel_tol", "abs_tol", "eq_tol"):
            value = getattr(self, key)
            if not (np.isfinite(value) and value > 0.0):
                raise ConfigError(f"time.{key} must be finite and > 0, got {value}")
        if self.initial_mode not in ("zeros", "constant", "cosine", "nodes"):
            raise ConfigError(
                f"initial.mode must be zeros|constant|cosine|nodes, got {self.initial_mode!r}"
            )
        if not np.isfinite(self.initial_value) or not np.isfinite(self.initial_mu_nat):
            raise ConfigError("initial.value and initial.mu_nat must be finite")
        if self.snapshot_stride < 1:
            raise ConfigError(
                f"output.snapshot_stride must be >= 1, got {self.snapshot_stride}"
            )
        unknown = set(self.format_set()) - {"csv", "svg"}
        if unknown:
            raise ConfigError(f"output.formats entries must be csv|svg, got {sorted(unknown)}")

    def format_set(self) -> set[str]:
        return {f.strip() for f in self.formats.split(",") if f.strip()}

    def constitutive(self) -> ConstitutiveSet:
        try:
            return ConstitutiveSet(
                kappa=KappaSpec(self.kappa_family, self.kappa_k, self.kappa_mu1),
                f=RateSpec(self.rate_c, self.rate_p),
                theta=ThresholdSpec(self.theta_a, self.theta_b),
            )
        except ValueError as exc:
            raise ConfigError(f"model: {exc}") from exc

    def params(self) -> ModelParams:
        return ModelParams(self.gamma, self.constitutive())

    def grid(self) -> Grid:
        return Grid(self.n)

    def tolerances(self) -> Tolerances:
        return Tolerances(rel_tol=self.rel_tol, abs_tol=self.abs_tol)

    def initial_state(self, grid: Grid) -> RodState:
        if self.initial_mode == "zeros":
            mu = Field.zeros(grid)
        elif self.initial_mode == "constant":
            mu = Field.constant(grid, self.initial_value)
        elif self.initial_mode == "cosine":
            mu = Field(self.initial_value * np.cos(np.pi * grid.nodes / 2.0), grid)
        else:
            try:
                values = np.array([float(v) for v in self.initial_nodes.split(",")])
            except ValueError as exc:
                raise ConfigError(f"initial.nodes must be a comma list of floats: {exc}")
            if values.size != grid.n + 1:
                raise ConfigError(
                    f"initial.nodes needs {grid.n + 1} values for grid.n = {grid.n}, "
                    f"got {values.size}"
                )
            mu = Field(values, grid)
        return RodState(mu, self.initial_mu_nat)


def parse_config(path: str) -> ScenarioConfig:
    """Read and validate a scenario file; unknown keys are rejected by name."""
    if not os.path.exists(path):
        raise ConfigError(f"config file not found: {path}")
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        parser.read(path)
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc

    for section in parser.sections():
        if section not in _SCHEMA:
            raise ConfigError(f"unknown config section [{section}]")
        for key in parser[section]:
            if key not in _SCHEMA[section]:
                raise ConfigError(f"unknown config key {section}.{key}")

    def get(section: str, key: str, cast, default):
        if not parser.has_option(section, key):
            return default
        raw = parser.get(section, key)
        try:
            return cast(raw)
        except ValueError as exc:
            raise ConfigError(f"{section}.{key}: cannot parse {raw!r}: {exc}") from exc

    return ScenarioConfig(
        gamma=get("model", "gamma", float, 1.0),
        kappa_family=get("model", "kappa_family", str, "quadratic"),
        kappa_k=get("model", "kappa_k", float, 1.0),
        kappa_mu1=get("model", "kappa_mu1", float, None),
        rate_c=get("model", "rate_c", float, 1.0),
        rate_p=get("model", "rate_p", float, 2.0),
        theta_a=get("model", "theta_a", float, 2.0),
        theta_b=get("model", "theta_b", float, 0.0),
        n=get("grid", "n", int, 400),
        t_end=get("time", "t_end", float, 50.0),
        rel_tol=get("time", "rel_tol", float, 1e-8),
        abs_tol=get("time", "abs_tol", float, 1e-8),
        eq_tol=get("time", "eq_tol", float, 1e-10),
        initial_mode=get("initial", "mode", str, "zeros"),
        initial_value=get("initial", "value", float, 0.0),
        initial_mu_nat=get("initial", "mu_nat", float, 0.0),
        initial_nodes=get("initial", "nodes", str, ""),
        out_dir=get("output", "directory", str, "out"),
        formats=get("output", "formats", str, "csv,svg"),
        snapshot_stride=get("output", "snapshot_stride", int, 10),
    )


# ---------------------------------------------------------------------------
# Output helpers.


def _f(x: float) -> str:
    return format(float(x), ".17g")


def _write_csv(path: str, header: list[str], rows: list[list[str]]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _state_digest(state: RodState) -> str:
    payload = state.mu.values.tobytes() + struct.pack("<d", state.mu_nat)
    return hashlib.sha256(payload).hexdigest()[:16]


@dataclass(frozen=True)
class RunSummary:
    converged: bool
    final_time: float
    final_norm_F: float
    state_digest: str
    v_initial: float
    v_final: float
    regime_crossing_times: tuple[float, ...]

    def lines(self) -> list[str]:
        return [
            f"converged = {str(self.converged).lower()}",
            f"final_time = {_f(self.final_time)}",
            f"final_norm_F = {_f(self.final_norm_F)}",
            f"state_digest = {self.state_digest}",
            f"v_initial = {_f(self.v_initial)}",
            f"v_final = {_f(self.v_final)}",
            "regime_crossings = " + ",".join(_f(t) for t in self.regime_crossing_times),
        ]


def _summarize(record: TrajectoryRecord) -> RunSummary:
    return RunSummary(
        converged=record.converged,
        final_time=float(record.times[-1]),
        final_norm_F=float(record.norm_F[-1]),
        state_digest=_state_digest(record.final_state),
        v_initial=float(record.liapunov[0]),
        v_final=float(record.liapunov[-1]),
        regime_crossing_times=tuple(record.regime_crossings()),
    )


# ---------------------------------------------------------------------------
# Subcommand cores.


def run_simulate(cfg: ScenarioConfig, out_dir: str | None = None) -> RunSummary:
    """Run one scenario and emit trajectory.csv, snapshots.csv, shape.svg, summary.txt."""
    out = out_dir or cfg.out_dir
    os.makedirs(out, exist_ok=True)
    grid = cfg.grid()
    params = cfg.params()
    record = simulate(
        cfg.initial_state(grid), params, cfg.t_end, cfg.tolerances(), cfg.eq_tol
    )
    summary = _summarize(record)
    formats = cfg.format_set()

    snap_idx = list(range(0, len(record), cfg.snapshot_stride))
    if snap_idx[-1] != len(record) - 1:
        snap_idx.append(len(record) - 1)

    if "csv" in formats:
        rows = [
            [
                _f(record.times[i]),
                _f(record.states[i].mu_nat),
                _f(record.liapunov[i]),
                _f(record.driving[i]),
                _f(record.threshold[i]),
                record.regimes[i].value,
                _f(record.norm_F[i]),
                _f(record.dts[i]),
            ]
            for i in range(len(record))
        ]
        _write_csv(
            os.path.join(out, "trajectory.csv"),
            ["t", "mu_nat", "V", "D_hat", "theta_of_mu_nat", "regime", "norm_F", "dt"],
            rows,
        )
        snap_rows = [
            [_f(record.times[i]), _f(s), _f(v)]
            for i in snap_idx
            for s, v in zip(grid.nodes, record.states[i].mu.values)
        ]
        _write_csv(os.path.join(out, "snapshots.csv"), ["t", "s", "mu"], snap_rows)

    if "svg" in formats:
        shape_idx = snap_idx if len(snap_idx) <= 6 else [
            snap_idx[round(j * (len(snap_idx) - 1) / 5)] for j in range(6)
        ]
        series = []
        for i in shape_idx:
            x, y = reconstruct_shape(record.states[i].mu)
            series.append(Series(tuple(x), tuple(y), label=f"t={record.times[i]:.4g}"))
        line_plot(
            os.path.join(out, "shape.svg"),
            series,
            title="rod center line",
            xlabel="x",
            ylabel="y",
            aspect_equal=True,
        )
        line_plot(
            os.path.join(out, "energy.svg"),
            [Series(tuple(record.times), tuple(record.liapunov), label="V")],
            title="energy descent",
            xlabel="t",
            ylabel="V",
        )

    with open(os.path.join(out, "summary.txt"), "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(summary.lines()) + "\n")
    return summary


def run_equilibria(
    cfg: ScenarioConfig,
    alpha_min: float,
    alpha_max: float,
    n_points: int,
    out_dir: str | None = None,
):
    """Sweep the equilibrium branch and emit branch.csv plus bifurcation.svg."""
    out = out_dir or cfg.out_dir
    os.makedirs(out, exist_ok=True)
    grid = cfg.grid()
    params = cfg.params()
    curve = branch_sweep(alpha_min, alpha_max, n_points, params, grid)

    def row(point, kind: str) -> list[str]:
        return [
            _f(point.alpha),
            _f(point.nu_nat),
            _f(point.phi.values[-1]),
            _f(point.d_value),
            _f(point.threshold),
            kind,
        ]

    rows = [row(p, "1" if p.admissible else "0") for p in curve.points]
    rows += [
        row(equilibrium_from_alpha(alpha, params, grid), "boundary")
        for alpha in curve.boundaries
    ]
    if "csv" in cfg.format_set():
        _write_csv(
            os.path.join(out, "branch.csv"),
            ["alpha", "nu_nat", "phi_at_1", "D_hat", "theta", "admissible"],
            rows,
        )
    if "svg" in cfg.format_set():
        spans = [
            (p.alpha, q.alpha)
            for p, q in zip(curve.points[:-1], curve.points[1:])
            if not (p.admissible and q.admissible)
        ]
        line_plot(
            os.path.join(out, "bifurcation.svg"),
            [
                Series(
                    tuple(p.alpha for p in curve.points),
                    tuple(p.nu_nat for p in curve.points),
                    label="nu_nat(alpha)",
                )
            ],
            title="equilibrium branch (shaded: inadmissible)",
            xlabel="alpha",
            ylabel="nu_nat",
            shaded_x_spans=spans,
        )
    return curve


def run_spectrum(
    cfg: ScenarioConfig,
    alpha: float,
    out_dir: str | None = None,
    dump_eigenfunction: bool = False,
):
    """Analyze the linearization at the equilibrium shot from alpha."""
    out = out_dir or cfg.out_dir
    os.makedirs(out, exist_ok=True)
    grid = cfg.grid()
    params = cfg.params()
    point = equilibrium_from_alpha(alpha, params, grid)
    if not point.admissible:
        raise InadmissibleEquilibriumError(
            f"alpha = {alpha}: |D| = {abs(point.d_value):.6g} exceeds "
            f"Theta = {point.threshold:.6g}"
        )
    report = spectral.spectrum(point, params)
    rows = [[f"lambda_{i:04d}", _f(v)] for i, v in enumerate(report.eigenvalues)]
    rows.append(["zero_residual", _f(report.zero_residual)])
    rows.append(["n_unstable", str(report.n_unstable)])
    rows.append(["pos_tol", _f(report.pos_tol)])
    rows.append(["near_minus_one_count", str(report.near_minus_one_count)])
    if "csv" in cfg.format_set():
        _write_csv(os.path.join(out, "spectrum.csv"), ["key", "value"], rows)
        if dump_eigenfunction:
            zf, _ = report.zero_eigenvector
            _write_csv(
                os.path.join(out, "zero_mode.csv"),
                ["s", "theta0_prime"],
                [[_f(s), _f(v)] for s, v in zip(grid.nodes, zf.values)],
            )
    return report


def _sweep_one(cfg: ScenarioConfig) -> tuple[float, RunSummary]:
    grid = cfg.grid()
    record = simulate(
        cfg.initial_state(grid), cfg.params(), cfg.t_end, cfg.tolerances(), cfg.eq_tol
    )
    return cfg.gamma, _summarize(record)


def run_sweep(
    cfg: ScenarioConfig,
    gammas: list[float],
    out_dir: str | None = None,
    max_workers: int | None = None,
) -> list[tuple[float, RunSummary]]:
    """Fan the scenario out over a gamma list; results merge in gamma order."""
    out = out_dir or cfg.out_dir
    os.makedirs(out, exist_ok=True)
    cfgs = [replace(cfg, gamma=g) for g in gammas]
    workers = max_workers or min(len(cfgs), os.cpu_count() or 1)
    if workers > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_one, cfgs))
    else:
        results = [_sweep_one(c) for c in cfgs]
    results.sort(key=lambda item: item[0])
    rows = [
        [
            _f(gamma),
            str(s.converged).lower(),
            _f(s.final_time),
            _f(s.final_norm_F),
            _f(s.v_initial),
            _f(s.v_final),
            s.state_digest,
        ]
        for gamma, s in results
    ]
    _write_csv(
        os.path.join(out, "sweep.csv"),
        ["gamma", "converged", "final_time", "final_norm_F", "v_initial", "v_final", "state_digest"],
        rows,
    )
    return results


# ---------------------------------------------------------------------------
# Validation suite.


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    margin: float
    detail: str


def run_validate(cfg: ScenarioConfig) -> list[CheckResult]:
    """Run the invariant suite on the configured scenario.

    Checks: energy descent, descent-rate identity, sign property, global
    bound, stick conservation, derivative consistency, kernel zero-mode
    residual, and the branch tangent.  Margins are 'how far inside the
    allowed region'; negative means failure.
    """
    grid = cfg.grid()
    params = cfg.params()
    tol = cfg.tolerances()
    record = simulate(cfg.initial_state(grid), params, cfg.t_end, tol, cfg.eq_tol)
    results: list[CheckResult] = []

    dv = np.diff(record.liapunov)
    worst = float(dv.max()) if dv.size else 0.0
    results.append(
        CheckResult(
            "liapunov_descent",
            worst <= 1e-9,
            1e-9 - worst,
            f"max V increase {worst:.3e} over {len(record)} snapshots",
        )
    )

    if len(record) >= 3:
        rates = np.array([
            -grid.quad(eval_F(s, params).mu.values ** 2)
            - abs(record.driving[i]) * abs(eval_F(s, params).mu_nat)
            for i, s in enumerate(record.states)
        ])
        dt = np.diff(record.times)
        fd = dv / dt
        mid = 0.5 * (rates[:-1] + rates[1:])
        inner = slice(1, len(fd) - 1) if len(fd) > 2 else slice(0, len(fd))
        gap = np.abs(fd[inner] - mid[inner]) - 1e-3 * (1.0 + np.abs(mid[inner]))
        worst_gap = float(gap.max()) if gap.size else -1.0
        results.append(
            CheckResult(
                "energy_identity",
                worst_gap <= 0.0,
                -worst_gap,
                f"worst normalized identity gap {worst_gap:.3e}",
            )
        )
    else:
        results.append(CheckResult("energy_identity", True, 0.0, "run too short; trivially ok"))

    signs = []
    for i, s in enumerate(record.states):
        f2 = eval_F(s, params).mu_nat
        signs.append(np.sign(record.driving[i]) * f2)
    worst_sign = float(min(signs))
    results.append(
        CheckResult(
            "sign_property",
            worst_sign >= 0.0,
            worst_sign,
            f"min sign(D)*F2 = {worst_sign:.3e}",
        )
    )

    ok, margin = global_bound_check(record, params)
    results.append(CheckResult("global_bound", ok, margin, f"minimal margin {margin:.3e}"))

    drift = 0.0
    anchor = None
    for i, s in enumerate(record.states):
        if record.regimes[i] is Regime.STICK:
            anchor = s.mu_nat if anchor is None else anchor
            drift = max(drift, abs(s.mu_nat - anchor))
        else:
            anchor = None
    stick_tol = 100.0 * tol.abs_tol
    results.append(
        CheckResult(
            "stick_conservation",
            drift <= stick_tol,
            stick_tol - drift,
            f"max mu_nat drift inside stick windows {drift:.3e}",
        )
    )

    rng = np.random.default_rng(20250810)
    worst_rel = 0.0
    eps = 1e-6
    for _ in range(20):
        state = RodState(
            Field(rng.standard_normal(grid.n + 1) * 0.5, grid), float(rng.normal())
        )
        direction = (
            Field(rng.standard_normal(grid.n + 1), grid),
            float(rng.normal()),
        )
        scale = product_norm(direction[0], direction[1])
        direction = (Field(direction[0].values / scale, grid), direction[1] / scale)
        df = spectral.apply_DF(state, params, direction)
        plus = eval_F(
            RodState(
                Field(state.mu.values + eps * direction[0].values, grid),
                state.mu_nat + eps * direction[1],
            ),
            params,
        )
        minus = eval_F(
            RodState(
                Field(state.mu.values - eps * direction[0].values, grid),
                state.mu_nat - eps * direction[1],
            ),
            params,
        )
        fd_field = (plus.mu.values - minus.mu.values) / (2.0 * eps)
        fd_scalar = (plus.mu_nat - minus.mu_nat) / (2.0 * eps)
        diff = product_norm(Field(df[0].values - fd_field, grid), df[1] - fd_scalar)
        denom = max(product_norm(Field(fd_field, grid), fd_scalar), 1e-30)
        worst_rel = max(worst_rel, diff / denom)
    results.append(
        CheckResult(
            "frechet_fd",
            worst_rel <= 1e-5,
            1e-5 - worst_rel,
            f"max relative derivative mismatch {worst_rel:.3e} over 20 random states",
        )
    )

    trivial = equilibrium_from_alpha(0.0, params, grid)
    report = spectral.spectrum(trivial, params)
    zr_bound = 10.0 * grid.h**2 * (1.0 + params.gamma)
    results.append(
        CheckResult(
            "kernel_zero_residual",
            report.zero_residual <= zr_bound,
            zr_bound - report.zero_residual,
            f"zero-mode residual {report.zero_residual:.3e} vs bound {zr_bound:.3e}",
        )
    )

    tangent = tangent_check(0.0, params, grid)
    results.append(
        CheckResult(
            "branch_tangent",
            tangent.discrepancy <= 1e-4,
            1e-4 - tangent.discrepancy,
            f"fd-vs-variational tangent discrepancy {tangent.discrepancy:.3e}",
        )
    )
    return results


# ---------------------------------------------------------------------------
# Entry point.


def _parse_range(spec: str) -> tuple[float, float, int]:
    parts = spec.split(",")
    if len(parts) != 3:
        raise ConfigError(f"range must be 'a,b,n', got {spec!r}")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"range {spec!r}: {exc}") from exc
    if count < 2:
        raise ConfigError(f"range needs n >= 2 points, got {count}")
    return lo, hi, count


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="strutlab",
        description="Quasistatic strut laboratory: evolution, equilibria, spectra.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", required=True, help="scenario file (INI key=value)")
        p.add_argument("--out", default=None, help="output directory override")

    common(sub.add_parser("simulate", help="integrate the evolution law"))
    p_eq = sub.add_parser("equilibria", help="sweep the equilibrium branch")
    common(p_eq)
    p_eq.add_argument("--alpha-range", default="-0.5,0.5,41", help="a,b,n sweep range")
    p_sp = sub.add_parser("spectrum", help="eigenanalysis at one equilibrium")
    common(p_sp)
    p_sp.add_argument("--alpha", type=float, default=0.0, help="shooting parameter")
    p_sp.add_argument(
        "--eigenfunctions", action="store_true", help="also dump the zero mode"
    )
    p_sw = sub.add_parser("sweep", help="fan simulate over a gamma range")
    common(p_sw)
    p_sw.add_argument("--gamma-range", required=True, help="a,b,n sweep range")
    p_va = sub.add_parser("validate", help="run the invariant suite")
    p_va.add_argument("--config", required=True)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = parse_config(args.config)
        if args.command == "simulate":
            summary = run_simulate(cfg, args.out)
            print("\n".join(summary.lines()))
        elif args.command == "equilibria":
            lo, hi, count = _parse_range(args.alpha_range)
            curve = run_equilibria(cfg, lo, hi, count, args.out)
            print(
                f"points = {len(curve.points)}",
                f"boundaries = {','.join(_f(b) for b in curve.boundaries)}",
                sep="\n",
            )
        elif args.command == "spectrum":
            report = run_spectrum(cfg, args.alpha, args.out, args.eigenfunctions)
            print(f"lambda_max = {_f(report.eigenvalues[0])}")
            print(f"n_unstable = {report.n_unstable}")
            print(f"zero_residual = {_f(report.zero_residual)}")
        elif args.command == "sweep":
            lo, hi, count = _parse_range(args.gamma_range)
            gammas = list(np.linspace(lo, hi, count))
            results = run_sweep(cfg, gammas, args.out)
            for gamma, summary in results:
                print(f"gamma={_f(gamma)} converged={str(summary.converged).lower()}")
        else:
            results = run_validate(cfg)
            failed = [r for r in results if not r.passed]
            for r in results:
                status = "PASS" if r.passed else "FAIL"
                print(f"{status} {r.name}: {r.detail} (margin {r.margin:.3e})")
            if failed:
                return 5
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except IntegrationError as exc:
        print(f"integration failure: {exc}", file=sys.stderr)
        return 3
    except InadmissibleEquilibriumError as exc:
        print(f"inadmissible equilibrium: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
