"""Bezier curves via Hankel-form Vandermonde factorizations.

Evaluate degree-(n-1) curves in O(m) per point (n = 2m-1) from per-axis
Hankel factorizations, with the Casteljau recurrence and a Pascal/Toeplitz
power-basis method as baselines, plus a skew-diagonal shift for
ill-conditioned instances.
"""

from .backend import BACKEND, available_backends
from .bench import (
    BenchmarkConfig,
    BenchmarkReport,
    BenchmarkRow,
    GenerationExhausted,
    compare_backends,
    emit_report,
    generate_conditioned_instance,
    generate_control_points,
    max_axis_condition,
    report_from_json,
    run_benchmark,
)
from .bezier import (
    METHODS,
    ControlPolygon,
    CurveSamples,
    EvenControlCount,
    FactorizationFailed,
    HankelCurveModel,
    ImaginaryRemnant,
    build_hankel_model,
    casteljau_eval,
    degree_elevate,
    evaluate_curve,
    factorize_coordinates,
    hankel_form_eval,
    pascal_method_build,
    pascal_method_eval,
    power_basis_coeffs,
    power_basis_eval,
    reciprocal_form,
    uniform_grid,
)
from .hankel import (
    FactorizationConfig,
    FactorizationError,
    HankelMatrix,
    IllConditionedVandermonde,
    MultipleRoots,
    NonConvergence,
    PredictionSolution,
    ResidualImaginary,
    RetriesExhausted,
    SingularMatrix,
    VandermondeFactorization,
    companion_spectrum,
    condition_estimate,
    factorize,
    hankel_from_coords,
    precondition_shift,
    reconstruct,
    solve_prediction,
    vandermonde_weights,
)
from .pascal import (
    bernstein_matrix,
    bernstein_matvec,
    geometric_diagonal,
    hankel_congruence,
    pascal_compose_check,
    pascal_hankel_identity_check,
    pascal_matrix,
    pascal_matvec,
    pascal_matvec_fast,
    toeplitz_kernel_column,
    toeplitz_scale_param,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
