"""Generalized Fibonacci numbers {n}_{s,t} and their derived products.

{0} = 0, {1} = 1, {n+2} = s*{n+1} + t*{n}. Parameters are arbitrary
nonzero rationals here; operations that need integrality or a sign
condition check it themselves. Three evaluation kernels are provided:
the memoized recurrence (the oracle), O(log n) fast doubling, and the
closed Binet form over the quadratic extension.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .errors import (
    IndexOutOfRange,
    NegativeDiscriminant,
    WrongRegime,
    ZeroFactorInFactorial,
    ZeroScale,
)
from .exact import RationalLike, STParams, as_rational, phi, phi_prime


class SeqCache:
    """Monotonically grown table of {n} and {n}! for one parameter pair.

    Growth happens under an internal lock; returned values are immutable,
    so concurrent readers of distinct caches are unrestricted.
    """

    __slots__ = ("params", "_lock", "_values", "_fibotorials", "_first_zero")

    def __init__(self, params: STParams) -> None:
        self.params = params
        self._lock = threading.Lock()
        self._values = [Fraction(0), Fraction(1)]
        self._fibotorials = [Fraction(1), Fraction(1)]
        self._first_zero: Optional[int] = None

    def _ensure(self, n: int) -> None:
        if n < len(self._values):
            return
        s, t = self.params.s, self.params.t
        with self._lock:
            values = self._values
            facts = self._fibotorials
            while len(values) <= n:
                nxt = s * values[-1] + t * values[-2]
                values.append(nxt)
                facts.append(facts[-1] * nxt)
                if nxt == 0 and self._first_zero is None:
                    self._first_zero = len(values) - 1

    def value(self, n: int) -> Fraction:
        self._ensure(n)
        return self._values[n]

    def fibotorial(self, n: int) -> Fraction:
        self._ensure(n)
        if self._first_zero is not None and n >= self._first_zero:
            raise ZeroFactorInFactorial(
                f"{{{self._first_zero}}}_{self.params} = 0 makes the factorial degenerate"
            )
        return self._fibotorials[n]

    def known(self) -> int:
        """Largest index currently stored."""
        return len(self._values) - 1

    def adopt_fibotorials(self, facts: list[Fraction]) -> int:
        """Install externally supplied fibotorials after exact re-verification.

        Entries must form the contiguous prefix {0}!, {1}!, ... Each is
        checked against the recurrence before use; on any mismatch nothing
        is adopted and 0 is returned.
        """
        if not facts or facts[0] != 1:
            return 0
        self._ensure(len(facts) - 1)
        for n in range(1, len(facts)):
            if facts[n] != facts[n - 1] * self._values[n]:
                return 0
        # verified identical to what the recurrence yields; nothing to replace
        return len(facts)


_caches: dict[STParams, SeqCache] = {}
_caches_lock = threading.Lock()


def get_cache(params: STParams) -> SeqCache:
    cache = _caches.get(params)
    if cache is None:
        with _caches_lock:
            cache = _caches.setdefault(params, SeqCache(params))
    return cache


def fib(params: STParams, n: int) -> Fraction:
    """{n}_{s,t} by the memoized linear recurrence; exact for every regime."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    return get_cache(params).value(n)


def fib_pair_fast(params: STParams, n: int) -> tuple[Fraction, Fraction]:
    """({n}, {n+1}) by fast doubling, bypassing the cache.

    Doubling identities: {2k} = {k}*(2*{k+1} - s*{k}) and
    {2k+1} = {k+1}^2 + t*{k}^2.
    """
    if n < 0:
        raise ValueError("index must be nonnegative")
    s, t = params.s, params.t
    if s.denominator == 1 and t.denominator == 1:
        a, b = _int_pair(n, s.numerator, t.numerator)
        return Fraction(a), Fraction(b)
    a, b = Fraction(0), Fraction(1)
    for bit in _bits(n):
        c = a * (2 * b - s * a)
        d = b * b + t * a * a
        if bit:
            a, b = d, s * d + t * c
        else:
            a, b = c, d
    return a, b


def _bits(n: int):
    for shift in range(n.bit_length() - 1, -1, -1):
        yield (n >> shift) & 1


def _int_pair(n: int, s: int, t: int) -> tuple[int, int]:
    a, b = 0, 1
    for bit in _bits(n):
        c = a * (2 * b - s * a)
        d = b * b + t * a * a
        if bit:
            a, b = d, s * d + t * c
        else:
            a, b = c, d
    return a, b


def fib_fast(params: STParams, n: int) -> Fraction:
    """{n}_{s,t} in O(log n) big-number operations; equals fib exactly."""
    return fib_pair_fast(params, n)[0]


def fib_binet(params: STParams, n: int) -> Fraction:
    """(phi^n - phi'^n)/(phi - phi') evaluated exactly in Q(sqrt(delta))."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    if params.delta <= 0:
        raise NegativeDiscriminant(
            f"discriminant {params.delta} has no two distinct real roots; "
            "use the degenerate closed forms"
        )
    ph = phi(params)
    pp = phi_prime(params)
    quotient = (ph**n - pp**n) / (ph - pp)
    return quotient.rational_value


def fibotorial(params: STParams, n: int) -> Fraction:
    """{n}! = {1}{2}...{n}; the empty product for n = 0."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    return get_cache(params).fibotorial(n)


def fibonomial(params: STParams, n: int, k: int) -> Fraction:
    """{n}! / ({k}! {n-k}!) exactly."""
    if k < 0 or k > n:
        raise IndexOutOfRange(f"k={k} outside [0, {n}]")
    return fibotorial(params, n) / (fibotorial(params, k) * fibotorial(params, n - k))


def deform_params(params: STParams, a: RationalLike) -> STParams:
    """Scale map (s, t) -> (a s, a^2 t); {n} then scales by a^(n-1)."""
    a = as_rational(a)
    if a == 0:
        raise ZeroScale("deformation scale must be nonzero")
    return STParams(a * params.s, a * a * params.t)


def lemma_gap_start(params: STParams, horizon: int) -> Optional[int]:
    """Smallest N in [2, horizon] with {n+1} > {n} + 1 for all n in [N, horizon].

    Evaluated over (|s|, t). Returns None when the inequality fails even
    at n = horizon. The scan starts at 2 because the gap claim concerns
    n >= 2; for |s| = 1 it genuinely fails at small n.
    """
    _require_positive_disc(params)
    if horizon < 8:
        raise ValueError("horizon must be >= 8")
    p = params.with_abs_s()
    cache = get_cache(p)
    cache.value(horizon + 1)
    start = None
    for n in range(horizon, 1, -1):
        if cache.value(n + 1) > cache.value(n) + 1:
            start = n
        else:
            break
    return start


def lemma_n_le_fib_start(params: STParams, horizon: int) -> Optional[int]:
    """Smallest N in [0, horizon] with n <= {n} for all n in [N, horizon]."""
    _require_positive_disc(params)
    if horizon < 8:
        raise ValueError("horizon must be >= 8")
    p = params.with_abs_s()
    cache = get_cache(p)
    cache.value(horizon)
    start = None
    for n in range(horizon, -1, -1):
        if cache.value(n) >= n:
            start = n
        else:
            break
    return start


def abs_identity_check(params: STParams, n_max: int) -> bool:
    """Check |{n}_{s,t}| = {n}_{|s|,t} exactly for all n <= n_max."""
    _require_positive_disc(params)
    p = params.with_abs_s()
    return all(abs(fib(params, n)) == fib(p, n) for n in range(n_max + 1))


def _require_positive_disc(params: STParams) -> None:
    if params.delta <= 0:
        raise WrongRegime(
            f"discriminant {params.delta} is not positive; this predicate "
            "is only meaningful for the increasing regime"
        )


def cache_filename(params: STParams) -> str:
    s, t = params.s, params.t
    return (
        f"fibotorial-{s.numerator}_{s.denominator}-{t.numerator}_{t.denominator}.txt"
    )


def save_cache_file(params: STParams, directory: Path) -> Path:
    """Persist the computed fibotorials as newline-delimited "n value" text."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    cache = get_cache(params)
    path = directory / cache_filename(params)
    top = cache.known()
    lines = []
    for n in range(top + 1):
        try:
            value = cache.fibotorial(n)
        except ZeroFactorInFactorial:
            break
        lines.append(f"{n} {value}")
    path.write_text("\n".join(lines) + "\n")
    return path


def load_cache_file(params: STParams, directory: Path) -> int:
    """Load persisted fibotorials, re-verifying each against the recurrence.

    Returns the number of verified entries; 0 when the file is missing or
    fails verification (stale or corrupted caches are silently ignored).
    """
    path = Path(directory) / cache_filename(params)
    if not path.is_file():
        return 0
    facts: list[Fraction] = []
    try:
        for line in path.read_text().splitlines():
            line = line.strip()
            if not line:
                continue
            index_text, value_text = line.split()
            if int(index_text) != len(facts):
                return 0
            facts.append(Fraction(value_text))
    except (ValueError, ZeroDivisionError):
        return 0
    if not facts:
        return 0
    return get_cache(params).adopt_fibotorials(facts)
