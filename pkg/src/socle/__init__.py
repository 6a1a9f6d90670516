"""Exact computations around local cohomology D-modules.

Four layers:

- exact arithmetic: sparse multivariate polynomials (`MultiPoly`), truncated
  power series (`TruncatedSeries`), labelled sparse linear algebra
  (`GradedMatrix`), and a small text grammar for both;
- the operator algebra: normally ordered differential operators (`WeylOp`),
  formal adjoints, inverse-monomial modules (`EElement`), localization
  elements (`PoleElement`);
- de Rham engines: closed forms, pole-filtration truncation with a
  stabilization certificate, rank-one connections, and the long-exact-sequence
  splicer;
- structure predictions: Betti-profile bookkeeping, cone homology, E-copy
  counts, simplicity and vanishing verdicts, plus the series decomposition
  along a regular operator that powers the one-variable reductions.

The `socle` console script exposes predict/derham/decompose/verify/catalog.
"""

from .errors import (
    DimensionMismatch,
    DomainError,
    EmptyComplexError,
    InconsistentSequenceError,
    InternalCheckError,
    NonUnitError,
    NotLefschetzError,
    ParseError,
    RangeError,
    SocleError,
    UnsupportedSpecError,
)
from .poly import MultiPoly, default_names, graded_piece_basis
from .series import TruncatedSeries
from .linalg import GradedMatrix, eliminate_columns, rank_of_columns, solve_cokernel
from .grammar import parse_operator, parse_poly
from .weyl import (
    EElement,
    PoleElement,
    WeylOp,
    check_euler_identity,
    formal_adjoint,
    normal_order,
    right_coefficients,
)
from .derham import (
    DeRhamDims,
    DirectSum,
    HypersurfaceLocalization,
    InjectiveHull,
    MonomialLocalization,
    PolynomialRing,
    RankOneConnection,
    TruncationReport,
    ambient_vars,
    completion_flattening,
    derham_closed_form,
    derham_rank_one,
    derham_truncated,
    jacobian_ring_is_finite,
    les_splice,
    spec_from_json,
    spec_to_json,
)
from .structure import (
    BettiProfile,
    CurveData,
    StructureReport,
    cone_homology,
    lichtenbaum_check,
    ogus_criterion,
    predict,
    projective_space_cohomology,
    singular_curve_cohomology,
    singular_curve_h1,
    smooth_curve_cohomology,
)
from .catalog import HYPERSURFACES, PROFILES, CatalogHypersurface, CatalogProfile
from .seriesdecomp import (
    Decomposition,
    OperatorAnalysis,
    RegularOperator,
    analyze_operator,
    decompose,
    expansion_coeffs,
    expansion_condition_report,
    valuation_growth_probe,
)

__version__ = "1.0.0"

__all__ = [
    "SocleError",
    "DimensionMismatch",
    "NonUnitError",
    "DomainError",
    "ParseError",
    "UnsupportedSpecError",
    "EmptyComplexError",
    "InconsistentSequenceError",
    "NotLefschetzError",
    "RangeError",
    "InternalCheckError",
    "MultiPoly",
    "default_names",
    "graded_piece_basis",
    "TruncatedSeries",
    "GradedMatrix",
    "eliminate_columns",
    "rank_of_columns",
    "solve_cokernel",
    "parse_poly",
    "parse_operator",
    "WeylOp",
    "normal_order",
    "right_coefficients",
    "formal_adjoint",
    "check_euler_identity",
    "EElement",
    "PoleElement",
    "DeRhamDims",
    "TruncationReport",
    "PolynomialRing",
    "InjectiveHull",
    "MonomialLocalization",
    "HypersurfaceLocalization",
    "RankOneConnection",
    "DirectSum",
    "spec_to_json",
    "spec_from_json",
    "ambient_vars",
    "derham_closed_form",
    "derham_truncated",
    "derham_rank_one",
    "completion_flattening",
    "jacobian_ring_is_finite",
    "les_splice",
    "BettiProfile",
    "CurveData",
    "StructureReport",
    "projective_space_cohomology",
    "smooth_curve_cohomology",
    "singular_curve_h1",
    "singular_curve_cohomology",
    "lichtenbaum_check",
    "cone_homology",
    "ogus_criterion",
    "predict",
    "PROFILES",
    "HYPERSURFACES",
    "CatalogProfile",
    "CatalogHypersurface",
    "RegularOperator",
    "OperatorAnalysis",
    "Decomposition",
    "analyze_operator",
    "expansion_coeffs",
    "expansion_condition_report",
    "decompose",
    "valuation_growth_probe",
]
