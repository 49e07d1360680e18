"""Operational calculus on Mikusinski functions.

Continuous functions on an interval containing 0 form a module over the ring
of convergent power series in t (t acting as integration).  Its fraction space
holds the Mikusinski functions ``s**n u`` (s = 1/t); dividing out the
"derivatives of constants" gives generalized functions, on which
differentiation is multiplication by s and constant-coefficient ODEs are
solved by polynomial division.
"""

from .errors import (
    DegreeZero,
    DivisionByZeroSeries,
    ExpressionError,
    IntervalMismatch,
    InvalidInterval,
    NoConvergence,
    NotAUnit,
    NotMaterializable,
    OpcalcError,
    OutOfDomain,
    SchemaError,
    SingularSystem,
    ZeroLeadingCoefficient,
    ZeroPolynomial,
)
from .funcrep import (
    DEFAULT_INTERVAL,
    ChebFunction,
    Interval,
    cf_derivative,
    cf_eval,
    cf_from_callable,
    cf_integral_J,
    e_transform,
    module_mul,
)
from .generalized import (
    GeneralizedFunction,
    gf_derivative,
    gf_equals,
    gf_from_continuous,
    gf_materialize,
    gf_zero,
    n_membership,
)
from .mikusinski import (
    MikusinskiFunction,
    mf_add,
    mf_equals,
    mf_from_continuous,
    mf_integrate,
    mf_normalize,
    mf_scalar_mul,
)
from .series import (
    LaurentSeries,
    PolynomialS,
    PowerSeries,
    laurent_arith,
    laurent_ratio,
    poly_divmod,
    poly_s_to_laurent,
    ps_arith,
    ps_invert,
    ps_valuation,
)
from .solvers import (
    OdeProblem,
    apply_poly_D,
    initial_value_solve,
    is_solution,
    recover_remainder,
    solve_homogeneous_basis,
    solve_particular,
)

__version__ = "0.1.0"

__all__ = [
    "apply_poly_D",
    "cf_derivative",
    "cf_eval",
    "cf_from_callable",
    "cf_integral_J",
    "ChebFunction",
    "DEFAULT_INTERVAL",
    "DegreeZero",
    "DivisionByZeroSeries",
    "e_transform",
    "ExpressionError",
    "GeneralizedFunction",
    "gf_derivative",
    "gf_equals",
    "gf_from_continuous",
    "gf_materialize",
    "gf_zero",
    "initial_value_solve",
    "Interval",
    "IntervalMismatch",
    "InvalidInterval",
    "is_solution",
    "laurent_arith",
    "laurent_ratio",
    "LaurentSeries",
    "mf_add",
    "mf_equals",
    "mf_from_continuous",
    "mf_integrate",
    "mf_normalize",
    "mf_scalar_mul",
    "MikusinskiFunction",
    "module_mul",
    "n_membership",
    "NoConvergence",
    "NotAUnit",
    "NotMaterializable",
    "OdeProblem",
    "OpcalcError",
    "OutOfDomain",
    "poly_divmod",
    "poly_s_to_laurent",
    "PolynomialS",
    "PowerSeries",
    "ps_arith",
    "ps_invert",
    "ps_valuation",
    "recover_remainder",
    "SchemaError",
    "SingularSystem",
    "solve_homogeneous_basis",
    "solve_particular",
    "ZeroLeadingCoefficient",
    "ZeroPolynomial",
]
