"""Deformed Euler numbers: exact partial sums, certified tails, enclosures.

The series is sum_k (+-1)^k u^C(k,2) / {k}! with a positive rational base
u; writing u = 1/U recovers the U-reciprocal deformation studied for
irrationality, so the remainder bound below is stated in terms of U >= 1.

Every bound returned here is backed by exact rational inequalities that
are verified before the value is produced; nothing is assumed from the
growth lemmas without being re-checked on the concrete parameters.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb
from typing import Optional

from .errors import (
    HypothesisViolated,
    NonConvergentTail,
    NotConvergentAtOne,
    NotInStarSet,
    WidthUnreachable,
    ZeroScale,
)
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
from .sequences import deform_params, fib, fibotorial, lemma_n_le_fib_start
from .series import PhiKind, admits_unit_argument, phi_star_membership


class Sign(Enum):
    PLUS = "plus"
    ALTERNATING = "alternating"


@dataclass(frozen=True)
class EulerSpec:
    """A summable deformed Euler number: parameters, base u > 0, term signs."""

    params: STParams
    u: Fraction
    sign: Sign = Sign.PLUS

    def __post_init__(self) -> None:
        object.__setattr__(self, "u", as_rational(self.u))
        if self.u <= 0:
            raise ValueError("the series base u must be positive")


@dataclass(frozen=True)
class PhiEulerSpec:
    """Deformation by phi or phi' itself; the base lives in Q(sqrt(delta))."""

    params: STParams
    which: PhiKind
    sign: Sign = Sign.PLUS


def partial_sum(spec: EulerSpec, n: int) -> Fraction:
    """s_n = sum_{k<=n} (+-1)^k u^C(k,2) / {k}!, exactly."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    u = spec.u
    total = Fraction(0)
    power = Fraction(1)  # u^C(k,2)
    for k in range(n + 1):
        if k >= 2:
            power *= u ** (k - 1)
        term = power / fibotorial(spec.params, k)
        if spec.sign is Sign.ALTERNATING and k % 2 == 1:
            term = -term
        total += term
    return total


def _check(condition: bool, message: str) -> None:
    if not condition:
        raise HypothesisViolated(message)


def _certify_nondecreasing(params: STParams, start: int) -> None:
    """Exact certificate that {k} is nondecreasing for every k >= start.

    Assumes integer s >= 1 (checked by callers). For t > 0 the recurrence
    preserves growth outright; for the double root it needs s >= 2; for
    t < 0 the step {k+2} = s {k+1} + t {k} >= (s+t) {k+1} keeps growth
    whenever s + t >= 1, given one verified base step.
    """
    s, t = params.s, params.t
    if t > 0:
        return
    if params.delta == 0:
        _check(s >= 2, f"s = {s} < 2: the double root is below 1, terms shrink")
        return
    _check(s + t >= 1, f"s + t = {s + t} < 1: no monotone growth certificate")
    _check(
        fib(params, start + 1) >= fib(params, start),
        f"{{{start + 1}}} < {{{start}}}: growth fails at the base index",
    )


def _check_integer_positive(params: STParams) -> None:
    _check(
        params.s.denominator == 1 and params.t.denominator == 1,
        "s and t must be integers for this bound",
    )
    _check(params.s >= 1, f"s = {params.s} must be a positive integer here")


def tail_bound_plus(spec: EulerSpec, n: int) -> Fraction:
    """Certified remainder bound U^(-C(n+1,2)) / ({n}! {n}) after s_n.

    Valid for the plus-signed series with integer s >= 1, positive
    discriminant, and base u = 1/U, U >= 1. The derivation needs, and
    this function exactly verifies: {k} nondecreasing from n+1, the gap
    {n+1} > {n} + 1, and {n+1} >= 2 for the geometric majorant.
    """
    params = spec.params
    _check(spec.sign is Sign.PLUS, "the bound covers the plus-signed series")
    _check_integer_positive(params)
    _check(params.delta > 0, f"discriminant {params.delta} must be positive")
    _check(spec.u <= 1, f"base u = {spec.u} must be 1/U with U >= 1")
    _check(n >= 1, "the truncation index must be at least 1")
    start = lemma_n_le_fib_start(params, max(8, n + 2))
    _check(
        start is not None and n >= start,
        f"n = {n} is below the verified n <= {{n}} start index",
    )
    _certify_nondecreasing(params, n + 1)
    fib_n = fib(params, n)
    fib_n1 = fib(params, n + 1)
    _check(fib_n1 >= 2, f"{{{n + 1}}} = {fib_n1} < 2: geometric sum diverges")
    _check(fib_n1 > fib_n + 1, f"gap {{{n + 1}}} > {{{n}}} + 1 fails at n = {n}")
    return spec.u ** comb(n + 1, 2) / (fibotorial(params, n) * fib_n)


def tail_bound_alternating(spec: EulerSpec, m: int) -> Fraction:
    """|remainder after s_(2m-1)| <= U^(-C(2m,2)) / {2m}! for alternating signs.

    The alternating estimate needs the term magnitudes to decrease from
    index 2m on. That is certified exactly: with {k} nondecreasing from 2m
    and {2m+1} >= 2, each ratio u^k / {k+1} is at most 1/2. A short window
    of explicit term comparisons is checked as well rather than assumed.
    """
    params = spec.params
    _check(spec.sign is Sign.ALTERNATING, "the bound covers the alternating series")
    _check_integer_positive(params)
    _check(params.delta >= 0, f"discriminant {params.delta} must be nonnegative")
    _check(spec.u <= 1, f"base u = {spec.u} must be 1/U with U >= 1")
    _check(m >= 1, "m must be at least 1")
    idx = 2 * m
    _certify_nondecreasing(params, idx)
    _check(fib(params, idx + 1) >= 2, f"{{{idx + 1}}} < 2: terms need not shrink")
    previous = _abs_term(params, spec.u, idx)
    for k in range(idx + 1, idx + 9):
        current = _abs_term(params, spec.u, k)
        _check(current <= previous, f"term magnitudes grow at k = {k}")
        previous = current
    return spec.u ** comb(idx, 2) / fibotorial(params, idx)


def _abs_term(params: STParams, u: Fraction, k: int) -> Fraction:
    return u ** comb(k, 2) / abs(fibotorial(params, k))


def _certified_abs_tail(params: STParams, u: Fraction, n: int) -> Fraction:
    """Exact upper bound on sum_{k>n} u^C(k,2) / |{k}!|.

    Absolute values reduce to the reflected parameters (|s|, t), and the
    base is absorbed exactly into the parameters: with (s', t') =
    (|s|/u, t/u^2) one has {k}'! = u^(-C(k,2)) {k}!, so the tail is the
    plain sum of 1/{k}'!. Growth of {k}' beyond the truncation point is
    certified by a two-sided ratio bracket lambda <= {k+1}'/{k}' <= mu:
    the recurrence preserves the bracket whenever

        s' + min(t'/lambda, t'/mu) >= lambda   and
        s' + max(t'/lambda, t'/mu) <= mu,

    and the bracket holds at the base step. With lambda >= 1 the values
    are then nondecreasing, so {k}' >= g = {n+2}' for k >= n+2 and the
    tail is at most (1/{n+1}'!) * g/(g-1).
    """
    p = params.with_abs_s()
    p1 = STParams(p.s / u, p.t / (u * u))
    a1 = fib(p1, n + 1)
    a2 = fib(p1, n + 2)
    if a1 <= 0 or a2 <= 0:
        raise NonConvergentTail("positivity fails just beyond the truncation point")
    ratio = a2 / a1
    if ratio < 1:
        raise NonConvergentTail(
            f"{{{n + 2}}}' < {{{n + 1}}}' for the deformed comparison sequence"
        )
    if a2 <= 1:
        raise NonConvergentTail("the comparison value {n+2}' must exceed 1")
    lam_mu = _find_ratio_bracket(p1, ratio)
    if lam_mu is None:
        raise NonConvergentTail("no ratio bracket certificate at this depth")
    first = u ** comb(n + 1, 2) / fibotorial(p, n + 1)
    return first * a2 / (a2 - 1)


def _bracket_holds(s1: Fraction, t1: Fraction, lam: Fraction, mu: Fraction, ratio: Fraction) -> bool:
    if lam < 1 or mu < lam:
        return False
    if not lam <= ratio <= mu:
        return False
    low = s1 + min(t1 / lam, t1 / mu)
    high = s1 + max(t1 / lam, t1 / mu)
    return low >= lam and high <= mu


def _find_ratio_bracket(p1: STParams, ratio: Fraction) -> Optional[tuple[Fraction, Fraction]]:
    s1, t1 = p1.s, p1.t
    one = Fraction(1)
    mu_seed = max(ratio, s1 + abs(t1), one)
    candidates = [(one, mu_seed), (one, mu_seed + 1), (one, 2 * mu_seed + 1)]
    if t1 > 0 and s1 < 1:
        # at lambda = 1 the lower condition caps mu at t1/(1 - s1)
        cap = t1 / (1 - s1)
        candidates.append((one, cap))
        candidates.append((one, (max(ratio, s1 + t1) + cap) / 2))
    if p1.delta > 0:
        root_lo = sqrt_enclosure(p1.delta, Fraction(1, 1 << 30)).lo
        lam = (s1 + root_lo) / 2  # rational point just below the dominant root
        if lam > 1:
            for candidate in ((lam, mu_seed), ((1 + lam) / 2, mu_seed + 1)):
                candidates.append(candidate)
    elif p1.delta == 0 and s1 >= 2:
        candidates.append((s1 / 2, max(ratio, s1)))
    for lam, mu in candidates:
        if _bracket_holds(s1, t1, lam, mu, ratio):
            return lam, mu
    return None


_ENCLOSURE_CAP = 64


def enclosure(spec: EulerSpec, target_width: RationalLike) -> Enclosure:
    """Certified enclosure of the series value with width <= target_width.

    The truncation depth adapts upward until a certified tail bound fits
    the width budget. The closed remainder bound is preferred when its
    hypotheses hold; otherwise the runtime geometric certificate is used.
    For purely positive terms the enclosure is one-sided above s_n.
    """
    width = as_rational(target_width)
    if width <= 0:
        raise ValueError("target width must be positive")
    params = spec.params
    if params.delta < 0:
        raise NotConvergentAtOne(
            "the oscillatory regime has no convergent factorial series at z = 1"
        )
    if not admits_unit_argument(params, spec.u):
        raise NotConvergentAtOne(
            f"base u = {spec.u} does not converge at z = 1 for {params}"
        )
    one_sided = spec.sign is Sign.PLUS and params.s > 0
    n = 8
    for _ in range(_ENCLOSURE_CAP):
        tail: Optional[Fraction] = None
        if spec.sign is Sign.PLUS:
            try:
                tail = tail_bound_plus(spec, n)
            except HypothesisViolated:
                tail = None
        if tail is None:
            try:
                tail = _certified_abs_tail(params, spec.u, n)
            except NonConvergentTail:
                n += max(4, n // 2)
                continue
        if (tail if one_sided else 2 * tail) <= width:
            s_n = partial_sum(spec, n)
            if one_sided:
                return Enclosure(s_n, s_n + tail)
            return Enclosure(s_n - tail, s_n + tail)
        n += max(4, n // 2)
    raise WidthUnreachable(f"no certified enclosure of width {width} within the cap")


def estimate_bounds(params: STParams) -> tuple[Fraction, Fraction]:
    """Closed-form bracket 2 + 1/s + h < e_(s,t) < ... + 1/({7}! ({8}-1)).

    h(s, t) = 1/{3}! + 1/{4}! + 1/{5}! + 1/{6}!. Both endpoints are exact
    rationals; the lower endpoint equals the partial sum s_6 identically.
    The upper endpoint is this literal geometric-tail formula even though
    it can undercut the true tail; see estimate_comparison.
    """
    _check(params.delta > 0, f"discriminant {params.delta} must be positive")
    _check((phi(params) - 1).sign() > 0, "the dominant root must exceed 1")
    h = sum(1 / fibotorial(params, k) for k in range(3, 7))
    lower = 2 + 1 / params.s + h
    gap = fib(params, 8) - 1
    _check(gap != 0, "{8} = 1 leaves the upper-bound term undefined")
    upper = lower + 1 / (fibotorial(params, 7) * gap)
    return lower, upper


def estimate_comparison(
    params: STParams,
    reported: tuple[str, str],
    enclosure_width: RationalLike = Fraction(1, 10**30),
) -> dict:
    """Cross-check the closed-form bracket against a rigorous enclosure.

    `reported` holds decimal endpoint strings of a previously published
    bracket, read exactly; containment flags use the strict inequalities
    such a bracket claims. The returned flags expose, in particular,
    whether the rigorous value actually lies inside the closed-form and
    reported brackets, and where the plain partial sums s_6, s_7 fall.
    """
    lower, upper = estimate_bounds(params)
    spec = EulerSpec(params, Fraction(1), Sign.PLUS)
    rigorous = enclosure(spec, enclosure_width)
    rep_lo = as_rational(reported[0])
    rep_hi = as_rational(reported[1])
    s6 = partial_sum(spec, 6)
    s7 = partial_sum(spec, 7)
    return {
        "formula_lower": lower,
        "formula_upper": upper,
        "rigorous": rigorous,
        "reported_lo": rep_lo,
        "reported_hi": rep_hi,
        "rigorous_inside_reported": rep_lo < rigorous.lo and rigorous.hi < rep_hi,
        "rigorous_inside_formula": lower < rigorous.lo and rigorous.hi < upper,
        "s6_inside_reported": rep_lo < s6 < rep_hi,
        "s7_inside_reported": rep_lo < s7 < rep_hi,
        "formula_lower_is_s6": lower == s6,
    }


def phi_euler_enclosure(
    spec: PhiEulerSpec, n: int, sqrt_width: RationalLike
) -> Enclosure:
    """Certified enclosure of the phi- or phi'-deformed series at z = 1.

    The partial sum accumulates exactly in Q(sqrt(delta)); only the final
    projection to a rational interval uses a sqrt(delta) enclosure of the
    requested width. The tail is certified geometrically: for s > 0,
    t < 0, delta > 0 (which every admitted membership rectangle implies
    after the exact s < 0 reflection), the quantity {k+1}/base^k grows
    with k, so all term ratios beyond the cutoff are at most
    base^(n+1)/{n+2} < 1.
    """
    if n < 0:
        raise ValueError("index must be nonnegative")
    sqrt_width = as_rational(sqrt_width)
    star = phi_star_membership(spec.params, spec.which)
    if star is None:
        raise NotInStarSet(
            f"{spec.params} lies in no membership rectangle for {spec.which.value}"
        )
    params, which = spec.params, spec.which
    if params.s < 0:
        # termwise identity: the (s, t) series with base phi equals the
        # (|s|, t) series with base phi', and conversely
        params = params.with_abs_s()
        which = PhiKind.PHI_PRIME if which is PhiKind.PHI else PhiKind.PHI
    base = phi(params) if which is PhiKind.PHI else phi_prime(params)
    delta = params.delta
    total = QuadElem.rational(0, delta)
    power = QuadElem.rational(1, delta)
    for k in range(n + 1):
        if k >= 2:
            power = power * base ** (k - 1)
        term = power / fibotorial(params, k)
        if spec.sign is Sign.ALTERNATING and k % 2 == 1:
            term = -term
        total = total + term
    cutoff = n + 1
    rho = base**cutoff / fib(params, cutoff + 1)
    if (1 - rho).sign() <= 0:
        raise NonConvergentTail(
            f"term ratio bound base^{cutoff}/{{{cutoff + 1}}} is not below 1"
        )
    first = base ** comb(cutoff, 2) / fibotorial(params, cutoff)
    tail = first / (1 - rho)
    root = sqrt_enclosure(delta, sqrt_width)
    sum_enc = total.enclose(root)
    tail_hi = tail.enclose(root).hi
    if spec.sign is Sign.PLUS:
        return Enclosure(sum_enc.lo, sum_enc.hi + tail_hi)
    return Enclosure(sum_enc.lo - tail_hi, sum_enc.hi + tail_hi)


def scaling_identity_check(
    params: STParams, a: RationalLike, u: RationalLike, n: int
) -> bool:
    """Termwise identity: deformed parameters with base 1/u match the
    original parameters with base 1/(a u), at every order up to n.

    Checked on raw term accumulations so that negative a (whose combined
    base is negative) is covered; no convergence is needed.
    """
    a = as_rational(a)
    u = as_rational(u)
    if a == 0:
        raise ZeroScale("deformation scale must be nonzero")
    if u == 0:
        raise ValueError("u must be nonzero")
    deformed = deform_params(params, a)
    left_base = 1 / u
    right_base = 1 / (a * u)
    left = right = Fraction(0)
    left_power = right_power = Fraction(1)
    for k in range(n + 1):
        if k >= 2:
            left_power *= left_base ** (k - 1)
            right_power *= right_base ** (k - 1)
        left += left_power / fibotorial(deformed, k)
        right += right_power / fibotorial(params, k)
        if left != right:
            return False
    return True
