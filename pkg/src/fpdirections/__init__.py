"""Direction sets in AG(2,p) and degree bounds for polynomials over F_p.

The package computes direction sets of planar point sets over prime fields,
interpolates projection polynomials, checks the classical direction-count
and value-sum degree bounds on exhaustive or sampled instance streams, and
classifies the extremal objects up to affine equivalence.
"""

from .census import (
    DEFAULT_SEED,
    EnumerationPlan,
    OrbitClass,
    PolynomialClassification,
    SetClassification,
    classify_extremal_sets,
    classify_half_degree_polynomials,
    enumerate_functions,
    enumerate_half_degree_polynomials,
    enumerate_point_sets,
    enumerate_products,
    hunt_counterexamples,
    run_function_census,
    run_product_census,
    run_subset_census,
    verify_statement,
)
from .checkers import (
    STATEMENT_IDS,
    STATEMENT_TITLES,
    CheckReport,
    check_dsw_product,
    check_gacs_gap,
    check_kiss_somlai,
    check_main,
    check_parity_identity,
    check_projection_support,
    check_proposition,
    check_redei,
    check_sum_criterion,
    check_szonyi,
)
from .errors import GuardError
from .fp import FieldElement, PrimeModulus
from .plane import (
    AffineTransform,
    Direction,
    Point,
    PointSet,
    all_directions,
    apply_affine,
    canonical_form,
    cartesian_product,
    direction_of,
    direction_set,
    direction_set_by_projections,
    full_line,
    function_graph,
    induced_direction_map,
    is_line,
    projection_polynomial,
    projection_values,
)
from .poly import Polynomial, one_plus_legendre

__all__ = [
    "AffineTransform",
    "CheckReport",
    "DEFAULT_SEED",
    "Direction",
    "EnumerationPlan",
    "FieldElement",
    "GuardError",
    "OrbitClass",
    "Point",
    "PointSet",
    "Polynomial",
    "PolynomialClassification",
    "PrimeModulus",
    "STATEMENT_IDS",
    "STATEMENT_TITLES",
    "SetClassification",
    "all_directions",
    "apply_affine",
    "canonical_form",
    "cartesian_product",
    "check_dsw_product",
    "check_gacs_gap",
    "check_kiss_somlai",
    "check_main",
    "check_parity_identity",
    "check_projection_support",
    "check_proposition",
    "check_redei",
    "check_sum_criterion",
    "check_szonyi",
    "classify_extremal_sets",
    "classify_half_degree_polynomials",
    "direction_of",
    "direction_set",
    "direction_set_by_projections",
    "enumerate_functions",
    "enumerate_half_degree_polynomials",
    "enumerate_point_sets",
    "enumerate_products",
    "full_line",
    "function_graph",
    "hunt_counterexamples",
    "induced_direction_map",
    "is_line",
    "one_plus_legendre",
    "projection_polynomial",
    "projection_values",
    "run_function_census",
    "run_product_census",
    "run_subset_census",
    "verify_statement",
]
