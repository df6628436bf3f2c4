"""Certified rational enclosures for the census growth constant.

The scaled census coefficients q^n b_n increase to the limit

    l(q) = prod_{k>=1} (1 - q^-k)^(-(k(k+1)/2 + 1)),

and every numeric claim made about l(q) is verified here with exact rational
interval arithmetic: the lower endpoint is a finite partial product, the
upper endpoint multiplies in a closed-form bound on the discarded tail.  No
floating point takes part in any verdict; decimals appear only in display
strings.

Tail bound: each neglected factor satisfies
    -log(1 - x^k) <= x^k / (1 - x^(K+1))        (k > K, x = 1/q),
so log(tail) <= S_K / (1 - x^(K+1)) with
    S_K = sum_{k>K} (k(k+1)/2 + 1) x^k,
which has a closed form via sum_k C(k+1,2) x^k = x/(1-x)^3.  Finally
exp(y) <= 1/(1-y) for 0 <= y < 1 keeps everything rational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from glcensus.census import b_coefficient

DEFAULT_TERMS = 30

HOLDS = "holds"
FAILS = "fails"
INCONCLUSIVE = "inconclusive"


class DivergenceError(ValueError):
    """The defining product diverges (q <= 1) or the tail bound is unusable."""


@dataclass(frozen=True)
class RatInterval:
    """Exact rational interval [lo, hi] certified to contain a quantity."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError("empty interval")

    def contains(self, x: Fraction) -> bool:
        return self.lo <= x <= self.hi

    def __contains__(self, other: RatInterval) -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def shift(self, x: Fraction) -> RatInterval:
        return RatInterval(self.lo - x, self.hi - x)


def _exponent(k: int) -> int:
    return k * (k + 1) // 2 + 1


def l_of_q(q: Fraction | int, terms: int = DEFAULT_TERMS) -> RatInterval:
    """Certified interval for the limit of q^n b_n, from a K-term product.

    lo is the exact partial product over k <= terms; hi multiplies in the
    rational tail bound described in the module docstring.  Widths shrink
    monotonically as terms grows.
    """
    q = Fraction(q)
    if q <= 1:
        raise DivergenceError("the product diverges for q <= 1")
    if terms < 1:
        raise ValueError("need at least one product term")
    x = 1 / q
    partial = Fraction(1)
    partial_quadratic = Fraction(0)  # sum_{k<=K} C(k+1,2) x^k
    xk = Fraction(1)
    for k in range(1, terms + 1):
        xk *= x
        partial /= (1 - xk) ** _exponent(k)
        partial_quadratic += math.comb(k + 1, 2) * xk
    # S_K = sum_{k>K} (C(k+1,2) + 1) x^k, in closed form
    tail_sum = (x / (1 - x) ** 3 - partial_quadratic) + xk * x / (1 - x)
    log_bound = tail_sum / (1 - xk * x)
    if log_bound >= 1:
        raise DivergenceError("tail bound too large; increase the number of terms")
    return RatInterval(partial, partial / (1 - log_bound))


def exp_interval(x: Fraction, terms: int = 30) -> RatInterval:
    """Certified enclosure of exp(x) for x >= 0 by Taylor partial sums."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("only nonnegative arguments are needed or supported")
    lo = Fraction(0)
    term = Fraction(1)
    for k in range(terms + 1):
        lo += term
        term = term * x / (k + 1)
    # remaining terms are term * (1 + x/(terms+2) + ...) <= geometric
    ratio = x / (terms + 2)
    if ratio >= 1:
        raise ValueError("increase terms: tail ratio not below 1")
    return RatInterval(lo, lo + term / (1 - ratio))


@dataclass(frozen=True)
class EstimateReport:
    """Verdicts for the four published estimates on l(q).

    Keys: 'a' (cubic lower bound), 'b' (closed exponential upper bound),
    'c' (cubic upper bound, q > 2 only), 'd' (the numeric bracket for q = 2).
    Each verdict is 'holds', 'fails' or 'inconclusive'.
    """

    q: Fraction
    terms: int
    interval: RatInterval
    verdicts: dict[str, str]

    @property
    def all_hold(self) -> bool:
        return all(v == HOLDS for v in self.verdicts.values())


def _compare_lower_claim(interval: RatInterval, bound: Fraction) -> str:
    # claim: quantity > bound
    if interval.lo > bound:
        return HOLDS
    if interval.hi <= bound:
        return FAILS
    return INCONCLUSIVE


def _compare_upper_claim(interval: RatInterval, bound: RatInterval) -> str:
    # claim: quantity < bound
    if interval.hi < bound.lo:
        return HOLDS
    if interval.lo >= bound.hi:
        return FAILS
    return INCONCLUSIVE


def check_estimates(q: Fraction | int, terms: int = DEFAULT_TERMS) -> EstimateReport:
    """Decide the published estimates on l(q) by exact interval comparison."""
    q = Fraction(q)
    if q < 2:
        raise ValueError("estimates are stated for q >= 2")
    x = 1 / q
    enclosure = l_of_q(q, terms)
    verdicts: dict[str, str] = {}

    lower_cubic = 1 + 2 * x + 7 * x**2 + 19 * x**3
    verdicts["a"] = _compare_lower_claim(enclosure, lower_cubic)

    prefactor = 1 / (1 - x - x**2)
    e1 = exp_interval(x / (1 - x) ** 3)
    e2 = exp_interval(x**2 * (1 + x) / (2 * (1 - x**2) ** 4))
    rhs = RatInterval(prefactor * e1.lo * e2.lo, prefactor * e1.hi * e2.hi)
    verdicts["b"] = _compare_upper_claim(enclosure, rhs)

    if q > 2:
        upper_cubic = 1 + 2 * x + 7 * x**2 + 114 * x**3
        verdicts["c"] = _compare_upper_claim(enclosure, RatInterval(upper_cubic, upper_cubic))
    if q == 2:
        low, high = Fraction("278.98"), Fraction("395.0005")
        lower_ok = _compare_lower_claim(enclosure, low)
        upper_ok = _compare_upper_claim(enclosure, RatInterval(high, high))
        if lower_ok == upper_ok == HOLDS:
            verdicts["d"] = HOLDS
        elif FAILS in (lower_ok, upper_ok):
            verdicts["d"] = FAILS
        else:
            verdicts["d"] = INCONCLUSIVE

    return EstimateReport(q=q, terms=terms, interval=enclosure, verdicts=verdicts)


def convergence_report(q: int, upto: int, terms: int = DEFAULT_TERMS) -> list[tuple[int, RatInterval]]:
    """Certified gaps l(q) - q^n b_n for n = 1..upto.

    Since q^n b_n increases strictly to l(q), each gap interval is positive
    on the lower side once the enclosure is tight enough, and the sequence
    of gap upper bounds is strictly decreasing.
    """
    if upto < 1:
        raise ValueError("need at least one coefficient")
    enclosure = l_of_q(q, terms)
    out = []
    for n in range(1, upto + 1):
        value = b_coefficient(n).eval(q) * Fraction(q) ** n
        out.append((n, enclosure.shift(value)))
    return out


def fraction_to_decimal(x: Fraction, digits: int = 12, round_up: bool = False) -> str:
    """Decimal display string; exact verdicts never depend on this."""
    scale = 10**digits
    scaled = x * scale
    num = scaled.numerator
    den = scaled.denominator
    q, r = divmod(num, den)
    if round_up and r:
        q += 1
    sign = "-" if q < 0 else ""
    q = abs(q)
    whole, frac = divmod(q, scale)
    return f"{sign}{whole}.{str(frac).zfill(digits)}"
