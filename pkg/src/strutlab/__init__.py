"""strutlab: numerical laboratory for a clamped viscoelastic strut.

The model couples a curvature field on [0, 1] with a scalar natural
curvature that evolves through a thresholded kinetic law.  The package
provides time evolution with energy-descent diagnostics, equilibrium
computation by shooting on the pendulum equation, eigenanalysis of the
linearization, and a scenario-driven CLI with CSV/SVG output.
"""
from .constitutive import (
    ConstitutiveSet,
    HypothesisReport,
    KappaFamily,
    KappaSpec,
    RateSpec,
    ThresholdSpec,
    validate_hypotheses,
)
from .discretization import (
    Field,
    Grid,
    cumulative,
    integral,
    l2_norm,
    product_norm,
    reconstruct_shape,
    tail_sine_integral,
)
from .dynamics import (
    IntegrationError,
    ModelParams,
    NonFiniteStateError,
    Regime,
    RodState,
    StiffnessError,
    Tolerances,
    TrajectoryRecord,
    contact_moment,
    dissipation_rate,
    driving_force,
    eval_F,
    global_bound_check,
    liapunov,
    regime,
    simulate,
    step,
)
from .equilibria import (
    BranchCurve,
    EquilibriumPoint,
    InadmissibleEquilibriumError,
    TangentCheck,
    branch_sweep,
    equilibrium_from_alpha,
    refine,
    shoot,
    tangent_check,
)
from .spectral import (
    KernelMatrix,
    SpectrumReport,
    apply_DF,
    apply_L,
    assemble_kernel,
    buckling_threshold,
    spectrum,
    theta0_solve,
)

__version__ = "0.1.0"

__all__ = [
    "ConstitutiveSet",
    "HypothesisReport",
    "KappaFamily",
    "KappaSpec",
    "RateSpec",
    "ThresholdSpec",
    "validate_hypotheses",
    "Field",
    "Grid",
    "cumulative",
    "integral",
    "l2_norm",
    "product_norm",
    "reconstruct_shape",
    "tail_sine_integral",
    "IntegrationError",
    "ModelParams",
    "NonFiniteStateError",
    "Regime",
    "RodState",
    "StiffnessError",
    "Tolerances",
    "TrajectoryRecord",
    "contact_moment",
    "dissipation_rate",
    "driving_force",
    "eval_F",
    "global_bound_check",
    "liapunov",
    "regime",
    "simulate",
    "step",
    "BranchCurve",
    "EquilibriumPoint",
    "InadmissibleEquilibriumError",
    "TangentCheck",
    "branch_sweep",
    "equilibrium_from_alpha",
    "refine",
    "shoot",
    "tangent_check",
    "KernelMatrix",
    "SpectrumReport",
    "apply_DF",
    "apply_L",
    "assemble_kernel",
    "buckling_threshold",
    "spectrum",
    "theta0_solve",
    "__version__",
]
