"""Truncated formal power series, the two-root derivative operator, the
deformed exponential, and exact convergence classification.

All coefficients are exact rationals. Comparisons of the deformation base
u against the irrational thresholds |phi|, |phi'| are decided exactly by
sign analysis in the quadratic extension; no floats enter classification.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

from .errors import EmptySeries, NonNegativeT, UnitModulusQ, WrongRegime
from .exact import (
    Enclosure,
    QuadElem,
    RationalLike,
    STParams,
    as_rational,
    phi,
    phi_prime,
    sqrt_enclosure,
)
from .sequences import fib, fibotorial

_RADIUS_WIDTH = Fraction(1, 10**12)  # width of the reported disk-radius enclosure


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients c_0..c_N of a formal power series, truncated at order N."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) == 0:
            raise EmptySeries("a truncated series needs at least c_0")
        object.__setattr__(self, "coeffs", tuple(as_rational(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, n: int) -> Fraction:
        return self.coeffs[n]

    def truncate(self, order: int) -> "TruncatedSeries":
        if order < 0:
            raise ValueError("order must be nonnegative")
        return TruncatedSeries(self.coeffs[: order + 1])

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(
            tuple(self.coeffs[i] + other.coeffs[i] for i in range(n + 1))
        )

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(
            tuple(self.coeffs[i] - other.coeffs[i] for i in range(n + 1))
        )

    def __mul__(self, other: Union["TruncatedSeries", RationalLike]) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            n = min(self.order, other.order)
            out = [Fraction(0)] * (n + 1)
            for i in range(n + 1):
                for j in range(n + 1 - i):
                    out[i + j] += self.coeffs[i] * other.coeffs[j]
            return TruncatedSeries(tuple(out))
        c = as_rational(other)
        return TruncatedSeries(tuple(c * x for x in self.coeffs))

    __rmul__ = __mul__

    def scale_argument(self, u: RationalLike) -> "TruncatedSeries":
        """f(x) -> f(u x): c_n -> u^n c_n."""
        u = as_rational(u)
        power = Fraction(1)
        out = []
        for c in self.coeffs:
            out.append(c * power)
            power *= u
        return TruncatedSeries(tuple(out))


def st_derivative(f: TruncatedSeries, params: STParams) -> TruncatedSeries:
    """Monomial rule x^n -> {n} x^(n-1); exact on truncated series."""
    if params.delta == 0:
        raise WrongRegime(
            "the zero-discriminant derivative is a separate operator; "
            "this one needs two distinct roots"
        )
    if f.order == 0:
        return TruncatedSeries((Fraction(0),))
    return TruncatedSeries(
        tuple(fib(params, n) * f.coeffs[n] for n in range(1, f.order + 1))
    )


def exp_series(params: STParams, u: RationalLike, order: int) -> TruncatedSeries:
    """Coefficients u^C(n,2)/{n}! of the deformed exponential; 1 + z when u = 0."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    u = as_rational(u)
    if u == 0:
        coeffs = [Fraction(0)] * (order + 1)
        coeffs[0] = Fraction(1)
        if order >= 1:
            coeffs[1] = Fraction(1)
        return TruncatedSeries(tuple(coeffs))
    out = []
    power = Fraction(1)  # u^C(n,2), advanced by u^(n-1) each step
    for n in range(order + 1):
        if n >= 2:
            power *= u ** (n - 1)
        out.append(power / fibotorial(params, n))
    return TruncatedSeries(tuple(out))


def verify_functional_eq(params: STParams, u: RationalLike, order: int) -> bool:
    """Exact check that differentiating the exponential rescales its argument by u."""
    if order < 2:
        raise ValueError("order must be >= 2 for a meaningful check")
    u = as_rational(u)
    f = exp_series(params, u, order)
    lhs = st_derivative(f, params)
    rhs = f.scale_argument(u).truncate(order - 1)
    return lhs == rhs


class ConvergenceTag(Enum):
    ENTIRE = "entire"
    DISK = "disk"
    ONLY_AT_ZERO = "only-at-zero"


@dataclass(frozen=True)
class ConvergenceClass:
    tag: ConvergenceTag
    radius: Optional[Enclosure] = None
    witness_set: Optional[str] = None

    def __post_init__(self) -> None:
        if (self.radius is not None) != (self.tag is ConvergenceTag.DISK):
            raise ValueError("radius is present exactly for the disk case")


def _dominant_modulus(params: STParams) -> tuple[QuadElem, bool]:
    """(max(|phi|, |phi'|) as the relevant threshold, |q| < 1?).

    |phi| = |phi'| would mean |q| = 1; impossible for s != 0 with positive
    discriminant, but rejected defensively.
    """
    abs_ph = abs(phi(params))
    abs_pp = abs(phi_prime(params))
    if abs_ph == abs_pp:
        raise UnitModulusQ("the root ratio has modulus one")
    q_below_one = abs_pp < abs_ph
    return (abs_ph if q_below_one else abs_pp), q_below_one


def classify_convergence(params: STParams, u: RationalLike) -> ConvergenceClass:
    """Entire / disk / only-at-zero for base u > 0, decided exactly.

    Entire when u is strictly below the threshold modulus (|phi| for
    |q| < 1, |phi'| for |q| > 1); a disk of radius threshold/sqrt(delta)
    exactly at the threshold; divergent beyond it.
    """
    u = as_rational(u)
    if u <= 0:
        raise ValueError("the deformation base u must be positive here")
    if params.delta <= 0:
        raise WrongRegime(
            f"classification needs a positive discriminant, got {params.delta}"
        )
    threshold, q_below_one = _dominant_modulus(params)
    rel = (threshold - u).sign()
    if rel > 0:
        return ConvergenceClass(
            ConvergenceTag.ENTIRE, witness_set="E1" if q_below_one else "E2"
        )
    if rel == 0:
        radius_elem = threshold / QuadElem.root(params.delta)
        radius = radius_elem.enclose(sqrt_enclosure(params.delta, _RADIUS_WIDTH))
        return ConvergenceClass(
            ConvergenceTag.DISK,
            radius=radius,
            witness_set="D1" if q_below_one else "D2",
        )
    return ConvergenceClass(ConvergenceTag.ONLY_AT_ZERO)


def classify_zero_disc(t: RationalLike, u: RationalLike) -> ConvergenceClass:
    """Double-root regime: entire iff u^2 <= -t, otherwise only at zero."""
    t = as_rational(t)
    u = as_rational(u)
    if t >= 0:
        raise NonNegativeT(f"the double-root regime requires t < 0, got t = {t}")
    if u * u <= -t:
        return ConvergenceClass(ConvergenceTag.ENTIRE)
    return ConvergenceClass(ConvergenceTag.ONLY_AT_ZERO)


def admits_unit_argument(params: STParams, u: RationalLike) -> bool:
    """Exact check that the deformed exponential converges at argument 1.

    True when the series is entire, or on the boundary disk with radius
    strictly greater than 1. The oscillatory regime is never admitted.
    """
    u = as_rational(u)
    if params.delta > 0:
        threshold, _ = _dominant_modulus(params)
        rel = (threshold - u).sign()
        if rel > 0:
            return True
        if rel == 0:
            # radius threshold/sqrt(delta) > 1 iff threshold > sqrt(delta)
            return (threshold - QuadElem.root(params.delta)).sign() > 0
        return False
    if params.delta == 0:
        return classify_zero_disc(params.t, u).tag is ConvergenceTag.ENTIRE
    return False


class StarSet(Enum):
    E11 = "E*11"
    E12 = "E*12"
    E21 = "E*21"
    E22 = "E*22"
    D11 = "D*11"
    D12 = "D*12"
    D21 = "D*21"
    D22 = "D*22"


def _in_e1(params: STParams, u: Fraction) -> bool:
    threshold, q_below_one = _dominant_modulus(params)
    return q_below_one and 0 < u and (threshold - u).sign() > 0


def _in_e2(params: STParams, u: Fraction) -> bool:
    threshold, q_below_one = _dominant_modulus(params)
    return (not q_below_one) and 0 < u and (threshold - u).sign() > 0


def star_membership(params: STParams, u: RationalLike) -> Optional[StarSet]:
    """First matching E*-rectangle for a rational base u, or None.

    The (t, s) rectangles are evaluated literally, unsimplified. With a
    positive discriminant and t < -1, the comparisons of s against
    +-2*sqrt(-t) reduce to the sign of s, since |s| > 2*sqrt(-t) exactly
    when delta > 0.
    """
    u = as_rational(u)
    if params.delta <= 0:
        raise WrongRegime(
            f"membership needs a positive discriminant, got {params.delta}"
        )
    s, t = params.s, params.t
    e1 = _in_e1(params, u)
    e2 = _in_e2(params, u)
    r11 = (t >= -1 and s > 1 - t) or (t < -1 and s > 0)
    r12 = t < -1 and t - 1 < s < 0
    r21 = t < -1 and 0 < s < 1 - t
    r22 = (t >= -1 and s < t - 1) or (t < -1 and s < 0)
    if e1 and r11:
        return StarSet.E11
    if e1 and r12:
        return StarSet.E12
    if e2 and r21:
        return StarSet.E21
    if e2 and r22:
        return StarSet.E22
    return None


class PhiKind(Enum):
    PHI = "phi"
    PHI_PRIME = "phi-prime"


def phi_star_membership(params: STParams, which: PhiKind) -> Optional[StarSet]:
    """First matching D*-rectangle for the phi- or phi'-deformation, or None.

    D*11/D*12 admit the phi-deformation, D*21/D*22 the phi'-deformation.
    All four require t < 0; with delta > 0 the sqrt comparisons again
    reduce to the sign of s, and the 3*sqrt(-2t)/2 cap on |s| becomes
    2 s^2 < -9 t exactly.
    """
    s, t = params.s, params.t
    if t >= 0 or params.delta <= 0:
        return None
    inside_cap = 2 * s * s < -9 * t
    if which is PhiKind.PHI:
        if s > 0:
            return StarSet.D11
        if inside_cap:
            return StarSet.D12
        return None
    if s > 0 and inside_cap:
        return StarSet.D21
    if s < 0:
        return StarSet.D22
    return None
