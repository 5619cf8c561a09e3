"""Computational certificates for the irrationality-proof inequalities.

For a candidate denominator q the scaled remainder

    N_q = U^C(q+1,2) * {q}! * q * (e - s_q)

is enclosed in an exact rational interval. A report is Certified when
0 < N_q and N_q < q/{q} <= 1 hold by exact comparison: an integer
strictly inside (0, 1) is impossible, which is the proofs' contradiction
at this concrete q. A certificate is a statement about the inequalities
at one q, never an irrationality claim by itself; hypothesis_notes record
anything that weakens the link to the irrationality argument (U = 1, a threshold that
is exactly 1, or growth hypotheses replaced by direct verification).
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb
from typing import Optional

from .errors import DepthTooSmall, HypothesisViolated, IntegerU
from .exact import Enclosure, RationalLike, STParams, as_rational
from .euler import (
    EulerSpec,
    Sign,
    partial_sum,
    tail_bound_alternating,
    tail_bound_plus,
)
from .sequences import fib, fibotorial


class Verdict(Enum):
    CERTIFIED = "Certified"
    THRESHOLD_NOT_BELOW_ONE = "ThresholdNotBelowOne"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class WitnessReport:
    q: int
    quantity: Enclosure
    threshold: Fraction
    verdict: Verdict
    hypothesis_notes: tuple[str, ...] = ()


def _decide(quantity: Enclosure, threshold: Fraction) -> Verdict:
    if quantity.lo > 0 and quantity.hi < threshold and threshold <= 1:
        return Verdict.CERTIFIED
    if threshold >= 1:
        return Verdict.THRESHOLD_NOT_BELOW_ONE
    return Verdict.INCONCLUSIVE


def _base_checks(params: STParams, big_u: Fraction, min_delta_sign: int) -> list[str]:
    if params.s.denominator != 1 or params.t.denominator != 1:
        raise HypothesisViolated("s and t must be integers for the witness")
    if params.s < 1:
        raise HypothesisViolated(
            f"s = {params.s} must be a positive integer; negative s reduces to "
            "(|s|, t) by the alternating-sign identity"
        )
    if min_delta_sign > 0 and params.delta <= 0:
        raise HypothesisViolated(f"discriminant {params.delta} must be positive")
    if min_delta_sign == 0 and params.delta < 0:
        raise HypothesisViolated(f"discriminant {params.delta} must be nonnegative")
    if big_u < 1:
        raise HypothesisViolated(f"U = {big_u} must be at least 1")
    notes = []
    if big_u == 1:
        notes.append(
            "U = 1 sits outside the irrationality argument, which needs U > 1; "
            "the inequalities are checked exactly all the same"
        )
    if abs(params.s) + params.t <= 1:
        notes.append(
            f"|s| + t = {abs(params.s) + params.t} <= 1: outside the usual "
            "growth hypothesis; growth was verified directly instead"
        )
    return notes


def witness_direct(
    params: STParams, big_u: RationalLike, q: int, depth: Optional[int] = None
) -> WitnessReport:
    """Certificate for the plus-signed series against denominator q.

    e is enclosed by [s_depth, s_depth + tail], so e - s_q lies in an
    exact rational interval; scaling by U^C(q+1,2) {q}! q and comparing
    with q/{q} settles the verdict.
    """
    big_u = as_rational(big_u)
    if q < 1:
        raise ValueError("q must be at least 1")
    if depth is None:
        depth = q + 30
    if depth <= q:
        raise DepthTooSmall(f"depth {depth} must exceed q = {q}")
    notes = _base_checks(params, big_u, min_delta_sign=1)
    spec = EulerSpec(params, 1 / big_u, Sign.PLUS)
    s_q = partial_sum(spec, q)
    s_deep = partial_sum(spec, depth)
    tail = tail_bound_plus(spec, depth)
    scale = big_u ** comb(q + 1, 2) * fibotorial(params, q) * q
    quantity = Enclosure(s_deep - s_q, s_deep - s_q + tail).scale(scale)
    threshold = Fraction(q) / fib(params, q)
    if threshold == 1:
        notes.append(
            "threshold q/{q} equals 1 exactly; certification relies on the "
            "quantity being strictly below 1"
        )
    return WitnessReport(q, quantity, threshold, _decide(quantity, threshold), tuple(notes))


def witness_inverse(
    params: STParams,
    big_u: RationalLike,
    m: int,
    depth: Optional[int] = None,
    q: Optional[int] = None,
) -> WitnessReport:
    """Certificate for the alternating series at odd truncation index 2m-1.

    The alternating partial sums bracket the limit once the term
    magnitudes decrease, which tail_bound_alternating certifies; the
    remainder interval is intersected with the first-omitted-term bound.
    The underlying argument couples q and m through m >= (q+1)/2; both stay exposed
    here, with q defaulting to 2m-1.
    """
    big_u = as_rational(big_u)
    if m < 1:
        raise ValueError("m must be at least 1")
    index = 2 * m - 1
    if q is None:
        q = index
    if q < 1:
        raise ValueError("q must be at least 1")
    if depth is None:
        depth = index + 30
    if depth <= index + 1:
        raise DepthTooSmall(f"depth {depth} must exceed the index {index} + 1")
    notes = _base_checks(params, big_u, min_delta_sign=0)
    if m < (q + 1) / 2:
        notes.append(
            f"m = {m} < (q+1)/2 with q = {q}: outside the coupling the proof uses"
        )
    spec = EulerSpec(params, 1 / big_u, Sign.ALTERNATING)
    deep = depth // 2
    first_omitted = tail_bound_alternating(spec, m)
    # the same certificate at the deep end justifies the bracketing pair
    tail_bound_alternating(spec, deep)
    s_index = partial_sum(spec, index)
    s_below = partial_sum(spec, 2 * deep - 1)
    s_above = partial_sum(spec, 2 * deep)
    lo = max(Fraction(0), s_below - s_index)
    hi = min(first_omitted, s_above - s_index)
    scale = big_u ** comb(index, 2) * fibotorial(params, index) * q
    quantity = Enclosure(lo, hi).scale(scale)
    threshold = Fraction(q) / fib(params, 2 * m)
    if threshold == 1:
        notes.append(
            "threshold q/{2m} equals 1 exactly; certification relies on the "
            "quantity being strictly below 1"
        )
    return WitnessReport(q, quantity, threshold, _decide(quantity, threshold), tuple(notes))


def witness_scan(
    params: STParams, big_u: RationalLike, q_max: int, depth: Optional[int] = None
) -> list[WitnessReport]:
    """Direct-witness reports for q = 1..q_max in ascending order."""
    if q_max < 1:
        raise ValueError("q_max must be at least 1")
    return [witness_direct(params, big_u, q, depth) for q in range(1, q_max + 1)]


@dataclass(frozen=True)
class FractionalUReport:
    """Exact divisibility data for a non-integer base U = a/b > 1.

    modulus_power is b^C(q+1,2), the denominator power the proof's case
    split divides by; product is U^C(q+1,2) {q}! q s_q computed exactly,
    with its reduced denominator alongside. No verdict is drawn from
    these facts; they mirror the case analysis without asserting its
    conclusion.
    """

    q: int
    base: Fraction
    modulus_power: int
    product: Fraction
    denominator: int
    is_integer: bool


def fractional_u_divisibility(
    params: STParams, big_u: RationalLike, q: int
) -> FractionalUReport:
    big_u = as_rational(big_u)
    if big_u.denominator == 1:
        raise IntegerU(f"U = {big_u} is an integer; use the direct witness")
    if q < 1:
        raise ValueError("q must be at least 1")
    _base_checks(params, big_u, min_delta_sign=1)
    if big_u <= 1:
        raise HypothesisViolated(f"U = {big_u} must exceed 1")
    spec = EulerSpec(params, 1 / big_u, Sign.PLUS)
    s_q = partial_sum(spec, q)
    product = big_u ** comb(q + 1, 2) * fibotorial(params, q) * q * s_q
    power = big_u.denominator ** comb(q + 1, 2)
    return FractionalUReport(
        q=q,
        base=big_u,
        modulus_power=power,
        product=product,
        denominator=product.denominator,
        is_integer=product.denominator == 1,
    )
