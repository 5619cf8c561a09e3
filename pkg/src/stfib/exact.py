"""Exact scalar kernel: rationals, quadratic-field elements, enclosures.

Everything here is exact. Rationals are `fractions.Fraction` (always
reduced, positive denominator); irrational quantities only ever appear
as elements a + b*sqrt(delta) of a quadratic extension or as rational
interval enclosures. Decimal rendering is directed (floor/ceiling),
never nearest, on every certified path.
"""
from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Optional, Union

from .errors import MismatchedRadicand, NegativeDiscriminant, NegativeRadicand

Rational = Fraction
RationalLike = Union[Fraction, int, str]


def parse_rational(text: str) -> Fraction:
    """Parse "p/q", "p", or a decimal literal into an exact rational."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational literal: {text!r}") from exc


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ints, strings, and Fractions; floats are rejected on purpose."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(x: Fraction) -> str:
    return str(x)


def _attach_point(n: int, digits: int) -> str:
    sign = "-" if n < 0 else ""
    n = abs(n)
    unit = 10**digits
    return f"{sign}{n // unit}.{n % unit:0{digits}d}"


def decimal_floor(x: RationalLike, digits: int) -> str:
    """Decimal string with `digits` fractional digits, rounded toward -inf."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    x = as_rational(x) * 10**digits
    return _attach_point(x.numerator // x.denominator, digits)


def decimal_ceil(x: RationalLike, digits: int) -> str:
    """Decimal string with `digits` fractional digits, rounded toward +inf."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    x = as_rational(x) * 10**digits
    return _attach_point(-((-x.numerator) // x.denominator), digits)


def decimal_trunc(x: RationalLike, digits: int) -> str:
    """Decimal string rounded toward zero (reproduction-style printing)."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    x = as_rational(x) * 10**digits
    n = abs(x.numerator) // x.denominator
    return _attach_point(-n if x < 0 else n, digits)


@dataclass(frozen=True)
class Enclosure:
    """Pair of exact rationals lo <= hi certifying a real value."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", as_rational(self.lo))
        object.__setattr__(self, "hi", as_rational(self.hi))
        if self.lo > self.hi:
            raise ValueError("enclosure endpoints out of order")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: RationalLike) -> bool:
        x = as_rational(x)
        return self.lo <= x <= self.hi

    def encloses(self, other: "Enclosure") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def __add__(self, other: Union["Enclosure", RationalLike]) -> "Enclosure":
        if isinstance(other, Enclosure):
            return Enclosure(self.lo + other.lo, self.hi + other.hi)
        x = as_rational(other)
        return Enclosure(self.lo + x, self.hi + x)

    __radd__ = __add__

    def __neg__(self) -> "Enclosure":
        return Enclosure(-self.hi, -self.lo)

    def __sub__(self, other: Union["Enclosure", RationalLike]) -> "Enclosure":
        if isinstance(other, Enclosure):
            return self + (-other)
        return self + (-as_rational(other))

    def scale(self, c: RationalLike) -> "Enclosure":
        c = as_rational(c)
        if c >= 0:
            return Enclosure(self.lo * c, self.hi * c)
        return Enclosure(self.hi * c, self.lo * c)

    def to_decimal(self, digits: int) -> tuple[str, str]:
        return decimal_floor(self.lo, digits), decimal_ceil(self.hi, digits)


def enclose_decimal(e: Enclosure, digits: int) -> tuple[str, str]:
    """Directed decimal rendering; the printed interval contains [lo, hi]."""
    return e.to_decimal(digits)


_SQRT_CACHE: dict[Fraction, Optional[Fraction]] = {}


def exact_sqrt(x: Fraction) -> Optional[Fraction]:
    """Rational square root of x >= 0, or None when it is irrational."""
    if x in _SQRT_CACHE:
        return _SQRT_CACHE[x]
    rp = math.isqrt(x.numerator)
    rq = math.isqrt(x.denominator)
    root = Fraction(rp, rq) if rp * rp == x.numerator and rq * rq == x.denominator else None
    _SQRT_CACHE[x] = root
    return root


def sqrt_enclosure(x: RationalLike, width: RationalLike) -> Enclosure:
    """Enclosure [lo, hi] of sqrt(x) with lo^2 <= x <= hi^2 and hi - lo <= width.

    Deterministic: one integer square root on a power-of-two scaled value.
    """
    x = as_rational(x)
    width = as_rational(width)
    if width <= 0:
        raise ValueError("width must be positive")
    if x < 0:
        raise NegativeRadicand(f"cannot enclose sqrt of {x}")
    if x == 0:
        return Enclosure(Fraction(0), Fraction(0))
    root = exact_sqrt(x)
    if root is not None:
        return Enclosure(root, root)
    # scale S = 2^k with 1/S <= width, then isqrt gives adjacent grid points
    need = -((-width.denominator) // width.numerator)  # ceil(1/width)
    scale = 1 << max(1, need.bit_length())
    n = (x.numerator * scale * scale) // x.denominator
    a = math.isqrt(n)
    # a^2 <= floor(x S^2) <= x S^2 and (a+1)^2 >= floor(x S^2) + 1 > x S^2
    return Enclosure(Fraction(a, scale), Fraction(a + 1, scale))


class Regime(Enum):
    POSITIVE_DISC = "positive"
    ZERO_DISC = "zero"
    NEGATIVE_DISC = "negative"


@dataclass(frozen=True)
class STParams:
    """Parameter pair (s, t) with cached discriminant s^2 + 4t."""

    s: Fraction
    t: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "s", as_rational(self.s))
        object.__setattr__(self, "t", as_rational(self.t))
        if self.s == 0:
            raise ValueError("parameter s must be nonzero")
        if self.t == 0:
            raise ValueError("parameter t must be nonzero")

    @cached_property
    def delta(self) -> Fraction:
        return self.s * self.s + 4 * self.t

    @property
    def regime(self) -> Regime:
        if self.delta > 0:
            return Regime.POSITIVE_DISC
        if self.delta == 0:
            return Regime.ZERO_DISC
        return Regime.NEGATIVE_DISC

    def with_abs_s(self) -> "STParams":
        return self if self.s > 0 else STParams(-self.s, self.t)

    def __str__(self) -> str:
        return f"(s={self.s}, t={self.t})"


def _sgn(x: Fraction) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


@dataclass(frozen=True, eq=False)
class QuadElem:
    """Element a + b*sqrt(delta) of the quadratic extension, delta >= 0.

    When delta is a perfect rational square the radical part is folded
    into the rational part, so Binet evaluation works uniformly even for
    square discriminants. Elements interoperate only with equal delta.
    """

    a: Fraction
    b: Fraction
    delta: Fraction

    def __post_init__(self) -> None:
        a = as_rational(self.a)
        b = as_rational(self.b)
        delta = as_rational(self.delta)
        if delta < 0:
            raise NegativeRadicand(f"radicand {delta} is negative")
        if b != 0:
            root = exact_sqrt(delta)
            if root is not None:
                a, b = a + b * root, Fraction(0)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "delta", delta)

    @classmethod
    def rational(cls, x: RationalLike, delta: RationalLike) -> "QuadElem":
        return cls(as_rational(x), Fraction(0), as_rational(delta))

    @classmethod
    def root(cls, delta: RationalLike) -> "QuadElem":
        return cls(Fraction(0), Fraction(1), as_rational(delta))

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    @property
    def rational_value(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self!r} has a nonzero radical part")
        return self.a

    def _lift(self, other: Union["QuadElem", RationalLike]) -> "QuadElem":
        if isinstance(other, QuadElem):
            if other.delta == self.delta:
                return other
            if other.b == 0:
                # purely rational; re-house it over our radicand
                return QuadElem.rational(other.a, self.delta)
            raise MismatchedRadicand(
                f"radicands {self.delta} and {other.delta} do not match"
            )
        return QuadElem.rational(as_rational(other), self.delta)

    def __add__(self, other: Union["QuadElem", RationalLike]) -> "QuadElem":
        o = self._lift(other)
        return QuadElem(self.a + o.a, self.b + o.b, self.delta)

    __radd__ = __add__

    def __neg__(self) -> "QuadElem":
        return QuadElem(-self.a, -self.b, self.delta)

    def __sub__(self, other: Union["QuadElem", RationalLike]) -> "QuadElem":
        return self + (-self._lift(other))

    def __rsub__(self, other: RationalLike) -> "QuadElem":
        return (-self) + other

    def __mul__(self, other: Union["QuadElem", RationalLike]) -> "QuadElem":
        o = self._lift(other)
        return QuadElem(
            self.a * o.a + self.b * o.b * self.delta,
            self.a * o.b + self.b * o.a,
            self.delta,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadElem":
        if self.b == 0:
            if self.a == 0:
                raise ZeroDivisionError("division by zero quadratic element")
            return QuadElem.rational(1 / self.a, self.delta)
        # norm is nonzero: delta is not a perfect square here
        norm = self.a * self.a - self.b * self.b * self.delta
        return QuadElem(self.a / norm, -self.b / norm, self.delta)

    def __truediv__(self, other: Union["QuadElem", RationalLike]) -> "QuadElem":
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other: RationalLike) -> "QuadElem":
        return self.inverse() * other

    def __pow__(self, n: int) -> "QuadElem":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadElem.rational(1, self.delta)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "QuadElem":
        return QuadElem(self.a, -self.b, self.delta)

    def sign(self) -> int:
        if self.b == 0:
            return _sgn(self.a)
        if self.a == 0:
            return _sgn(self.b)
        sa, sb = _sgn(self.a), _sgn(self.b)
        if sa == sb:
            return sa
        norm = self.a * self.a - self.b * self.b * self.delta
        if norm == 0:  # impossible after normalization
            return 0
        return sa if norm > 0 else sb

    def __abs__(self) -> "QuadElem":
        return -self if self.sign() < 0 else self

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (Fraction, int)):
            return self.b == 0 and self.a == other
        if not isinstance(other, QuadElem):
            return NotImplemented
        if self.b == 0 and other.b == 0:
            return self.a == other.a
        return self.delta == other.delta and self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.delta))

    def _cmp(self, other: Union["QuadElem", RationalLike]) -> int:
        return (self - self._lift(other)).sign()

    def __lt__(self, other: Union["QuadElem", RationalLike]) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: Union["QuadElem", RationalLike]) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: Union["QuadElem", RationalLike]) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: Union["QuadElem", RationalLike]) -> bool:
        return self._cmp(other) >= 0

    def enclose(self, root_interval: Enclosure) -> Enclosure:
        """Rational enclosure of a + b*sqrt(delta) given one of sqrt(delta)."""
        if self.b == 0:
            return Enclosure(self.a, self.a)
        return root_interval.scale(self.b) + self.a

    def __repr__(self) -> str:
        if self.b == 0:
            return f"QuadElem({self.a})"
        return f"QuadElem({self.a} + {self.b}*sqrt({self.delta}))"


def quad_arith(x: QuadElem, y: QuadElem, op: str) -> QuadElem:
    """Field arithmetic dispatch: op in {add, sub, mul, div}."""
    table = {
        "add": operator.add,
        "sub": operator.sub,
        "mul": operator.mul,
        "div": operator.truediv,
    }
    if op not in table:
        raise ValueError(f"unknown operation {op!r}")
    return table[op](x, y)


def quad_pow(x: QuadElem, n: int) -> QuadElem:
    """n-th power by binary exponentiation, n >= 0."""
    if n < 0:
        raise ValueError("exponent must be nonnegative")
    return x**n


def phi(params: STParams) -> QuadElem:
    """Larger root (s + sqrt(delta))/2 of x^2 - s x - t, for delta >= 0."""
    if params.delta < 0:
        raise NegativeDiscriminant(f"discriminant {params.delta} is negative")
    return QuadElem(params.s / 2, Fraction(1, 2), params.delta)


def phi_prime(params: STParams) -> QuadElem:
    """Conjugate root (s - sqrt(delta))/2."""
    if params.delta < 0:
        raise NegativeDiscriminant(f"discriminant {params.delta} is negative")
    return QuadElem(params.s / 2, Fraction(-1, 2), params.delta)
