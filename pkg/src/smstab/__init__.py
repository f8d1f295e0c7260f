"""
Spectral-mimetic stability analysis of difference schemes for periodic 1D
convection-diffusion problems.

Periodic stencil operators with closed-form spectra, Pade two-level time
integrators, SM-stability classification and exact-vs-discrete harmonic
evolution.
"""

__version__ = "0.1.0"

from .classify import (
    OperatorReport,
    SelfAdjointClassification,
    SelfAdjointVerdict,
    SkewClassification,
    SkewResult,
    SMStabilityWarning,
    SpectralMonotonicityWarning,
    classify_operator_problem,
    classify_selfadjoint,
    classify_skew,
    symbolic_skew_verdict,
)
from .grid import (
    Grid,
    GridFunction,
    fourier_mode,
    harmonic_coefficients,
    inner_product,
    make_grid,
    norm,
    synthesize,
)
from .operators import (
    ConvectionScheme,
    DiffusionScheme,
    MixedScheme,
    StencilOperator,
    adjoint,
    apply,
    build_convection,
    build_convection_diffusion,
    build_diffusion,
    build_operator,
    energy,
    parse_scheme,
    split_symmetric_skew,
    to_dense,
)
from .pade import (
    PadeScheme,
    PoleError,
    SchemeMatrices,
    eval_R,
    order_residual,
    pade_coeffs,
    scheme_matrices,
    stability_modulus,
)
from .spectral import (
    EigenvaluePair,
    Spectrum,
    continuous_eigenvalue,
    discrete_eigenvalue,
    exact_evolution,
    numeric_eigenvalue,
    spectral_convergence,
    spectrum_table,
)
from .stepper import (
    InitialData,
    PhysicalStepper,
    SimulationConfig,
    SingularSchemeError,
    Trajectory,
    convergence_study,
    simulate,
    stability_estimate_check,
    step_physical,
    step_spectral,
)
