"""Finite computations with measures on the torus T^n.

Atomic measures, their Fourier moments and mixed-coefficient (RP) defects,
LP searches for positive annihilating measures with half-plane certificates,
and L2(mu) projection diagnostics onto spans of analytic monomials.
"""

__version__ = "0.1.0"

from .errors import InvalidInputError, NumericalFailure
from .core import (
    TWO_PI,
    TorusPoint,
    MultiIndex,
    AtomicMeasure,
    MomentTable,
    CurveSpec,
    moment,
    moment_table,
    rp_defect,
    a00_defect,
    is_rp_candidate,
    pushforward_T,
    poisson_eval,
    sample_graph_curve,
    sample_monomial_arc,
    cantor_points,
    lebesgue_on_points,
)
from .poly import (
    TrigPolynomial,
    AnalyticPolynomial,
    HalfPlane,
    CoverReport,
    eval_poly,
    pair_integral,
    halfplane_cover_check,
    min_margin,
)
from .simplex import LinearProgram, LPSolution, solve_lp
from .duality import (
    FeasibilityReport,
    Certificate,
    AuditRecord,
    framing_indices,
    primal_positive_annihilator,
    dual_halfplane_certificate,
    duality_audit,
)
from .projection import (
    MonomialBasis,
    ProjectionResult,
    AnnihilatorResult,
    BestApproximation,
    gram_matrix,
    l2_norm,
    project,
    residual_profile,
    generate_annihilator,
    uniform_best_approx,
)

from .scenarios import ScenarioSpec, RunReport, run_scenario, list_scenarios
from .report import emit_report
