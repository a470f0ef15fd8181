"""Constitutive functions of the rod model.

Three scalar material functions drive the model:

* ``kappa``  -- stored energy of the natural curvature.  Two families:
  ``quadratic``   kappa(x) = (k/2) x^2
  ``triple_well`` kappa(x) = k x^2 (x^2 - mu1^2)^2 / mu1^4
  Both are C^2, non-negative, even, coercive, and vanish together with
  their derivative at x = 0; the triple well has two additional wells at
  x = +-mu1.

* ``f`` -- kinetic rate, f(x) = c max(x, 0)^p with p >= 2, so f is C^1
  with f'(0) = 0 and vanishes identically on x <= 0.

* ``Theta`` -- activation threshold, Theta(x) = theta_a + theta_b x^2,
  positive, even, bounded below by theta_a > 0.

Specs are frozen dataclasses validated at construction; evaluation never
raises.  All ``eval``/``prime``/``second`` methods accept scalars or
numpy arrays.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

__all__ = [
    "KappaFamily",
    "KappaSpec",
    "RateSpec",
    "ThresholdSpec",
    "ConstitutiveSet",
    "HypothesisViolation",
    "HypothesisReport",
    "validate_hypotheses",
]


class KappaFamily(str, Enum):
    QUADRATIC = "quadratic"
    TRIPLE_WELL = "triple_well"


@dataclass(frozen=True)
class KappaSpec:
    """Stored-energy function for the natural curvature."""

    family: KappaFamily = KappaFamily.QUADRATIC
    k: float = 1.0
    mu1: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", KappaFamily(self.family))
        if not self.k > 0.0:
            raise ValueError(f"kappa.k must be > 0, got {self.k}")
        if self.family is KappaFamily.TRIPLE_WELL:
            if self.mu1 is None or not self.mu1 > 0.0:
                raise ValueError(f"kappa.mu1 must be > 0 for the triple well, got {self.mu1}")

    def eval(self, x):
        x = np.asarray(x, dtype=float)
        if self.family is KappaFamily.QUADRATIC:
            out = 0.5 * self.k * x * x
        else:
            m2 = self.mu1 * self.mu1
            out = self.k * x * x * (x * x - m2) ** 2 / (m2 * m2)
        return out if out.ndim else float(out)

    def prime(self, x):
        x = np.asarray(x, dtype=float)
        if self.family is KappaFamily.QUADRATIC:
            out = self.k * x
        else:
            m2 = self.mu1 * self.mu1
            out = 2.0 * self.k * x * (x * x - m2) * (3.0 * x * x - m2) / (m2 * m2)
        return out if out.ndim else float(out)

    def second(self, x):
        x = np.asarray(x, dtype=float)
        if self.family is KappaFamily.QUADRATIC:
            out = np.full_like(x, self.k)
        else:
            m2 = self.mu1 * self.mu1
            x2 = x * x
            out = 2.0 * self.k * (15.0 * x2 * x2 - 12.0 * m2 * x2 + m2 * m2) / (m2 * m2)
        return out if out.ndim else float(out)


@dataclass(frozen=True)
class RateSpec:
    """Kinetic rate f(x) = c max(x, 0)^p; p >= 2 keeps f in C^1 with f'(0) = 0."""

    c: float = 1.0
    p: float = 2.0

    def __post_init__(self) -> None:
        if not self.c > 0.0:
            raise ValueError(f"rate.c must be > 0, got {self.c}")
        if not self.p >= 2.0:
            raise ValueError(f"rate.p must be >= 2, got {self.p}")

    def eval(self, x):
        x = np.asarray(x, dtype=float)
        out = self.c * np.maximum(x, 0.0) ** self.p
        return out if out.ndim else float(out)

    def prime(self, x):
        x = np.asarray(x, dtype=float)
        out = self.c * self.p * np.maximum(x, 0.0) ** (self.p - 1.0)
        return out if out.ndim else float(out)


@dataclass(frozen=True)
class ThresholdSpec:
    """Activation threshold Theta(x) = theta_a + theta_b x^2 with inf Theta = theta_a > 0."""

    theta_a: float = 2.0
    theta_b: float = 0.0

    def __post_init__(self) -> None:
        if not self.theta_a > 0.0:
            raise ValueError(f"threshold.theta_a must satisfy inf Theta > 0, got {self.theta_a}")
        if not self.theta_b >= 0.0:
            raise ValueError(f"threshold.theta_b must be >= 0, got {self.theta_b}")

    def eval(self, x):
        x = np.asarray(x, dtype=float)
        out = self.theta_a + self.theta_b * x * x
        return out if out.ndim else float(out)

    def prime(self, x):
        x = np.asarray(x, dtype=float)
        out = 2.0 * self.theta_b * x
        return out if out.ndim else float(out)


@dataclass(frozen=True)
class ConstitutiveSet:
    """The material triple (kappa, f, Theta).  Immutable, safe to share."""

    kappa: KappaSpec = field(default_factory=KappaSpec)
    f: RateSpec = field(default_factory=RateSpec)
    theta: ThresholdSpec = field(default_factory=ThresholdSpec)

    @classmethod
    def default(cls) -> "ConstitutiveSet":
        """Quadratic kappa (k=1), quadratic rate (c=1, p=2), constant threshold 2."""
        return cls()


@dataclass(frozen=True)
class HypothesisViolation:
    hypothesis: str
    x: float
    detail: str


@dataclass(frozen=True)
class HypothesisReport:
    checks: tuple[str, ...]
    violations: tuple[HypothesisViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_hypotheses(
    cset: ConstitutiveSet,
    sample_range: tuple[float, float] = (-5.0, 5.0),
    n_samples: int = 201,
) -> HypothesisReport:
    """Sample-check the structural hypotheses on (kappa, f, Theta).

    The families are built to satisfy them, so a clean report is the
    expected outcome; the checks exist to catch a corrupted or
    hand-modified spec.  Each violation records the witnessing sample.
    """
    if n_samples < 2:
        raise ValueError(f"n_samples must be >= 2, got {n_samples}")
    lo, hi = float(sample_range[0]), float(sample_range[1])
    if not lo < hi:
        raise ValueError(f"empty sample range {sample_range}")
    xs = np.linspace(lo, hi, n_samples)

    checks: list[str] = []
    bad: list[HypothesisViolation] = []

    def check(name: str, mask: np.ndarray, detail) -> None:
        checks.append(name)
        idx = np.flatnonzero(~mask)
        if idx.size:
            i = int(idx[0])
            bad.append(HypothesisViolation(name, float(xs[i]), detail(i)))

    kv = cset.kappa.eval(xs)
    check("kappa >= 0", kv >= 0.0, lambda i: f"kappa({xs[i]}) = {kv[i]}")
    check(
        "kappa even",
        cset.kappa.eval(xs) == cset.kappa.eval(-xs),
        lambda i: f"kappa({xs[i]}) != kappa({-xs[i]})",
    )
    checks.append("kappa(0) = kappa'(0) = 0")
    if cset.kappa.eval(0.0) != 0.0 or cset.kappa.prime(0.0) != 0.0:
        bad.append(
            HypothesisViolation(
                "kappa(0) = kappa'(0) = 0",
                0.0,
                f"kappa(0) = {cset.kappa.eval(0.0)}, kappa'(0) = {cset.kappa.prime(0.0)}",
            )
        )
    checks.append("kappa grows at range endpoints")
    mid = 0.5 * (lo + hi)
    if not (cset.kappa.eval(lo) > cset.kappa.eval(mid) < cset.kappa.eval(hi)):
        bad.append(
            HypothesisViolation(
                "kappa grows at range endpoints",
                mid,
                f"kappa({lo}) = {cset.kappa.eval(lo)}, kappa({mid}) = {cset.kappa.eval(mid)}, "
                f"kappa({hi}) = {cset.kappa.eval(hi)}",
            )
        )
    if cset.kappa.family is KappaFamily.TRIPLE_WELL:
        m = cset.kappa.mu1
        checks.append("kappa(+-mu1) = kappa'(+-mu1) = 0")
        vals = [cset.kappa.eval(m), cset.kappa.eval(-m), cset.kappa.prime(m), cset.kappa.prime(-m)]
        if any(v != 0.0 for v in vals):
            bad.append(
                HypothesisViolation("kappa(+-mu1) = kappa'(+-mu1) = 0", m, f"well values {vals}")
            )

    fv = cset.f.eval(xs)
    check("f >= 0", fv >= 0.0, lambda i: f"f({xs[i]}) = {fv[i]}")
    neg = xs <= 0.0
    check("f vanishes on x <= 0", ~neg | (fv == 0.0), lambda i: f"f({xs[i]}) = {fv[i]}")

    tv = cset.theta.eval(xs)
    check("inf Theta > 0", tv >= cset.theta.theta_a, lambda i: f"Theta({xs[i]}) = {tv[i]}")
    check(
        "Theta even",
        cset.theta.eval(xs) == cset.theta.eval(-xs),
        lambda i: f"Theta({xs[i]}) != Theta({-xs[i]})",
    )

    return HypothesisReport(tuple(checks), tuple(bad))
