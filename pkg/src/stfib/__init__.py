"""Exact calculus of generalized Fibonacci sequences: fibotorials and
fibonomials, deformed exponential series, certified rational-interval
enclosures of the deformed Euler numbers, and computational certificates
of the irrationality-proof inequalities.
"""

__version__ = "0.1.0"

from .errors import (
    DepthTooSmall,
    EmptySeries,
    HypothesisViolated,
    IndexOutOfRange,
    IntegerU,
    MismatchedRadicand,
    NegativeDiscriminant,
    NegativeRadicand,
    NonConvergentTail,
    NonNegativeT,
    NotConvergentAtOne,
    NotInStarSet,
    StfibError,
    UnitModulusQ,
    WidthUnreachable,
    WrongRegime,
    ZeroFactorInFactorial,
    ZeroScale,
)
from .exact import (
    Enclosure,
    QuadElem,
    Rational,
    Regime,
    STParams,
    as_rational,
    decimal_ceil,
    decimal_floor,
    decimal_trunc,
    enclose_decimal,
    exact_sqrt,
    format_rational,
    parse_rational,
    phi,
    phi_prime,
    quad_arith,
    quad_pow,
    sqrt_enclosure,
)
from .sequences import (
    SeqCache,
    abs_identity_check,
    deform_params,
    fib,
    fib_binet,
    fib_fast,
    fib_pair_fast,
    fibonomial,
    fibotorial,
    get_cache,
    lemma_gap_start,
    lemma_n_le_fib_start,
    load_cache_file,
    save_cache_file,
)
from .degenerate import (
    NegDiscValue,
    ZeroDiscValue,
    factorial_neg_disc,
    factorial_zero_disc,
    fib_neg_disc,
    fib_zero_disc,
    fibonomial_zero_disc,
    zero_disc_params,
)
from .series import (
    ConvergenceClass,
    ConvergenceTag,
    PhiKind,
    StarSet,
    TruncatedSeries,
    admits_unit_argument,
    classify_convergence,
    classify_zero_disc,
    exp_series,
    phi_star_membership,
    st_derivative,
    star_membership,
    verify_functional_eq,
)
from .euler import (
    EulerSpec,
    PhiEulerSpec,
    Sign,
    enclosure,
    estimate_bounds,
    estimate_comparison,
    partial_sum,
    phi_euler_enclosure,
    scaling_identity_check,
    tail_bound_alternating,
    tail_bound_plus,
)
from .witness import (
    FractionalUReport,
    Verdict,
    WitnessReport,
    fractional_u_divisibility,
    witness_direct,
    witness_inverse,
    witness_scan,
)

__all__ = [name for name in dir() if not name.startswith("_")]
