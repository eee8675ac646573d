"""Constructive local arithmetic: valuations, p-adic numbers, Newton
polygons, ramification filtrations and tame extension counting.

Everything is exact: rationals are fractions.Fraction, p-adic values
carry explicit precision, and no floating point enters any computation.
"""

from .bernoulli import BernoulliTable, bernoulli, power_sum, power_sum_faulhaber, staudt_clausen
from .errors import (
    ExcludedCaseError,
    HypothesisFailedError,
    InconsistencyError,
    InvalidArgumentError,
    LocalArithError,
    NotASquareError,
    PrecisionLossError,
    ResourceLimitError,
)
from .extensions import (
    GaloisPresentation,
    TameExtensionDescriptor,
    classify_tame,
    count_tame_extensions,
    eisenstein_invariants,
    galois_census,
    orbit_count_oracle,
    splitting_degree_of_unity,
    unit_group_structure,
)
from .finitefield import FiniteField, FqPoly, factor_monic, monic_irreducibles
from .numtheory import INFINITY
from .padic import (
    DEFAULT_PRECISION,
    DigitExpansion,
    PadicNumber,
    expansion,
    is_square,
    newton_lift,
    pth_power_on_units,
    sqrt,
    square_class_basis,
    teichmuller,
    unit_filtration_level,
)
from .polynomials import (
    NewtonPolygon,
    PadicPolynomial,
    TruncatedSeries,
    cyclotomic,
    discriminant,
    eisenstein_test,
    hensel_lift_factors,
    newton_polygon,
    primitive_rescale,
    refine_factorization,
    resultant,
    resultant_mn,
    root_valuations,
    slope_factorization,
    sylvester_matrix,
    weierstrass_prepare,
)
from .ramification import (
    FilteredGroup,
    PiecewiseLinear,
    RamificationReport,
    UpperNumbering,
    all_subgroups,
    cyclotomic_group,
    cyclotomic_reduction_kernel,
    different_discriminant,
    herbrand_functions,
    lower_filtration,
    phi_via_infimum,
    quotient_filtration,
    subgroup_filtration,
    upper_numbering,
)
from .valuations import (
    FunctionFieldPlace,
    GaussParameter,
    ProductFormulaReport,
    RationalPlace,
    SumFormulaReport,
    ff_valuation,
    gauss_valuation,
    normalized_absolute_value,
    product_formula_report,
    sum_formula_check,
    vp_rational,
    weak_approximation,
)

__all__ = [name for name in dir() if not name.startswith("_")]
