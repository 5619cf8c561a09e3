"""Closed forms for the double-root (delta = 0) and oscillatory (delta < 0) regimes.

For delta = 0 the recurrence parameters are s = -2*e*sqrt(-t), t < 0,
where e = -1 picks the "+" branch and e = +1 the "-" branch of the double
root rho = e*sqrt(-t). Values stay exact: a rational coefficient times at
most one symbolic factor sqrt(-t).

For delta < 0 the terms follow r^(n-1) * sin(n*theta) / sin(theta) with
r = sqrt(-t) and theta = atan2(sqrt(-delta), s). That form is evaluated
at 50 significant digits and reported as a float together with an error
bound that covers the final rounding; the exact recurrence remains the
oracle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

import mpmath

from .errors import IndexOutOfRange, NonNegativeT, WrongRegime, ZeroFactorInFactorial
from .exact import RationalLike, STParams, as_rational, exact_sqrt
from .sequences import fib

Branch = Literal["+", "-"]

_BRANCH_SIGN = {"+": -1, "-": 1}


def _root_sign(branch: Branch) -> int:
    try:
        return _BRANCH_SIGN[branch]
    except KeyError:
        raise ValueError(f"branch must be '+' or '-', got {branch!r}") from None


def _check_t(t: Fraction) -> Fraction:
    t = as_rational(t)
    if t >= 0:
        raise NonNegativeT(f"the double-root regime requires t < 0, got t = {t}")
    return t


@dataclass(frozen=True, eq=False)
class ZeroDiscValue:
    """Exact value coefficient * sqrt(-t)^root_power with root_power in {0, 1}.

    The branch sign is folded into the coefficient, and even powers of the
    double root are folded via rho^2 = -t, so equal values compare equal
    regardless of how they were produced.
    """

    coefficient: Fraction
    root_power: int
    t: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficient", as_rational(self.coefficient))
        object.__setattr__(self, "t", _check_t(self.t))
        c, k = self.coefficient, self.root_power
        if k < 0:
            raise ValueError("root_power must be nonnegative")
        if k >= 2:
            c *= (-self.t) ** (k // 2)
            k %= 2
        if k == 1:
            root = exact_sqrt(-self.t)
            if root is not None:
                c, k = c * root, 0
        if c == 0:
            k = 0
        object.__setattr__(self, "coefficient", c)
        object.__setattr__(self, "root_power", k)

    @property
    def is_rational(self) -> bool:
        return self.root_power == 0

    def as_fraction(self) -> Fraction:
        if self.root_power != 0:
            raise ValueError(f"{self!r} is irrational")
        return self.coefficient

    def approx(self) -> float:
        if self.root_power == 0:
            return float(self.coefficient)
        return float(self.coefficient) * math.sqrt(float(-self.t))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (Fraction, int)):
            return self.root_power == 0 and self.coefficient == other
        if not isinstance(other, ZeroDiscValue):
            return NotImplemented
        return (
            self.coefficient == other.coefficient
            and self.root_power == other.root_power
            and (self.root_power == 0 or self.t == other.t)
        )

    def __hash__(self) -> int:
        if self.root_power == 0:
            return hash(self.coefficient)
        return hash((self.coefficient, self.root_power, self.t))

    def __repr__(self) -> str:
        if self.root_power == 0:
            return f"ZeroDiscValue({self.coefficient})"
        return f"ZeroDiscValue({self.coefficient}*sqrt({-self.t}))"


def zero_disc_params(t: RationalLike, branch: Branch) -> STParams:
    """Recurrence parameters (s, t) of the chosen branch, when s is rational."""
    t = _check_t(as_rational(t))
    root = exact_sqrt(-t)
    if root is None:
        raise ValueError(
            f"sqrt({-t}) is irrational; this branch has no rational recurrence"
        )
    return STParams(2 * _root_sign(branch) * root, t)


def fib_zero_disc(t: RationalLike, branch: Branch, n: int) -> ZeroDiscValue:
    """n * rho^(n-1) with rho the double root of the chosen branch."""
    t = as_rational(t)
    eps = _root_sign(branch)
    if n < 0:
        raise ValueError("index must be nonnegative")
    if n == 0:
        return ZeroDiscValue(Fraction(0), 0, _check_t(t))
    k = n - 1
    return ZeroDiscValue(Fraction(n) * eps**k, k, t)


def factorial_zero_disc(t: RationalLike, branch: Branch, n: int) -> ZeroDiscValue:
    """rho^C(n,2) * n! exactly."""
    t = as_rational(t)
    eps = _root_sign(branch)
    if n < 0:
        raise ValueError("index must be nonnegative")
    k = math.comb(n, 2)
    return ZeroDiscValue(Fraction(math.factorial(n)) * eps**k, k, t)


def fibonomial_zero_disc(t: RationalLike, branch: Branch, n: int, k: int) -> ZeroDiscValue:
    """rho^(k(n-k)) * C(n, k) exactly."""
    t = as_rational(t)
    eps = _root_sign(branch)
    if k < 0 or k > n:
        raise IndexOutOfRange(f"k={k} outside [0, {n}]")
    power = k * (n - k)
    return ZeroDiscValue(Fraction(math.comb(n, k)) * eps**power, power, t)


@dataclass(frozen=True)
class NegDiscValue:
    """Float evaluation with |value - true| <= error_bound, true defined by the recurrence."""

    value: float
    error_bound: float


_WORK_DPS = 50


def _mpf(x: Fraction) -> mpmath.mpf:
    return mpmath.mpf(x.numerator) / x.denominator


def _to_float_with_bound(value: mpmath.mpf, slack: str = "1e-25") -> NegDiscValue:
    # the 50-digit evaluation error is far below the slack term
    f = float(value)
    err = float(abs(value - mpmath.mpf(f)) * (1 + mpmath.mpf("1e-10")) + mpmath.mpf(slack))
    return NegDiscValue(f, err)


def _polar_parts(params: STParams) -> tuple[mpmath.mpf, mpmath.mpf]:
    r = mpmath.sqrt(_mpf(-params.t))
    theta = mpmath.atan2(mpmath.sqrt(_mpf(-params.delta)), _mpf(params.s))
    return r, theta


def fib_neg_disc(params: STParams, n: int) -> NegDiscValue:
    """{n} = r^(n-1) sin(n theta)/sin(theta) for delta < 0, with error bound."""
    if params.delta >= 0:
        raise WrongRegime(f"discriminant {params.delta} is not negative")
    if n < 0:
        raise ValueError("index must be nonnegative")
    if n == 0:
        return NegDiscValue(0.0, 0.0)
    with mpmath.workdps(_WORK_DPS):
        r, theta = _polar_parts(params)
        value = r ** (n - 1) * mpmath.sin(n * theta) / mpmath.sin(theta)
        return _to_float_with_bound(value)


def factorial_neg_disc(params: STParams, n: int) -> NegDiscValue:
    """Product of the first n oscillatory terms, with accumulated error bound."""
    if params.delta >= 0:
        raise WrongRegime(f"discriminant {params.delta} is not negative")
    if n < 0:
        raise ValueError("index must be nonnegative")
    for k in range(1, n + 1):
        if fib(params, k) == 0:
            raise ZeroFactorInFactorial(
                f"{{{k}}}_{params} = 0: theta hits a rational multiple of pi"
            )
    if n == 0:
        return NegDiscValue(1.0, 0.0)
    with mpmath.workdps(_WORK_DPS):
        r, theta = _polar_parts(params)
        sin_theta = mpmath.sin(theta)
        product = mpmath.mpf(1)
        for k in range(1, n + 1):
            product *= r ** (k - 1) * mpmath.sin(k * theta) / sin_theta
        return _to_float_with_bound(product)
