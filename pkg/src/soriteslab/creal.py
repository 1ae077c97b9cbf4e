"""Reals coded as rational sequences with an exponential modulus.

A ``CompReal`` is a total rule k -> q_k of rationals promising
|q_k - q_{k+1}| <= 2**-k for every k, hence |q_k - lim| <= 2**(1-k)
by telescoping.  Approximants are computed on demand, memoized, and safe
to query concurrently.

Arithmetic re-establishes the modulus by index shifting: addition reads
its arguments at k+2, scalar multiplication shifts by the bit length of
the scalar's ceiling.  Comparison is the part that cannot be total:
``creal_cmp_gap`` certifies Less/Greater only when the approximants
separate by more than the combined approximation error, and otherwise
reports IndistinguishableAt(kmax).  There is deliberately no exact
equality test and no full multiplication; nothing here needs them.
"""

from __future__ import annotations

import enum
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .numerics import Rational

__all__ = [
    "CompReal",
    "GapVerdict",
    "GapComparison",
    "creal_from_rational",
    "creal_from_rule",
    "creal_approx",
    "creal_add",
    "scalar_mul",
    "creal_cmp_gap",
    "modulus_violations",
]


class CompReal:
    """Lazily evaluated rational Cauchy sequence with modulus 2**-k."""

    __slots__ = ("_rule", "_memo", "_lock")

    def __init__(self, rule: Callable[[int], Rational]) -> None:
        self._rule = rule
        self._memo: dict[int, Rational] = {}
        self._lock = threading.Lock()

    def approx(self, k: int) -> Rational:
        if k < 0:
            raise ValueError("precision index must be a natural number")
        memo = self._memo
        q = memo.get(k)
        if q is None:
            with self._lock:
                q = memo.get(k)
                if q is None:
                    q = self._rule(k)
                    memo[k] = q
        return q


class GapVerdict(enum.Enum):
    LESS = "Less"
    GREATER = "Greater"
    INDISTINGUISHABLE = "IndistinguishableAt"


@dataclass(frozen=True)
class GapComparison:
    verdict: GapVerdict
    # the k certifying Less/Greater, or the kmax at which comparison gave up
    precision: int


def creal_from_rational(q: Rational) -> CompReal:
    """The constant sequence; the modulus holds trivially."""
    q = Fraction(q)
    return CompReal(lambda _k: q)


def creal_from_rule(rule: Callable[[int], Rational]) -> CompReal:
    """Wrap an arbitrary rule.  The caller owns the modulus promise."""
    return CompReal(rule)


def creal_approx(x: CompReal, k: int) -> Rational:
    """q_k, with |q_k - lim x| <= 2**(1-k) by the modulus contract."""
    return x.approx(k)


def creal_add(x: CompReal, y: CompReal) -> CompReal:
    # reading both arguments at k+2 gives 2**-(k+1) + 2**-(k+1) = 2**-k
    return CompReal(lambda k: x.approx(k + 2) + y.approx(k + 2))


def scalar_mul(q: Rational, x: CompReal) -> CompReal:
    """q * x for rational q, shifting indices by the size of |q|."""
    q = Fraction(q)
    if q == 0:
        return creal_from_rational(Fraction(0))
    mag = abs(q)
    # least j with |q| <= 2**j, so |q| * 2**-(k+j) <= 2**-k
    ceil_mag = -(-mag.numerator // mag.denominator)
    j = (ceil_mag - 1).bit_length()
    return CompReal(lambda k: q * x.approx(k + j))


def creal_cmp_gap(x: CompReal, y: CompReal, kmax: int) -> GapComparison:
    """Three-valued comparison, certified where the gap is visible.

    A verdict of Less/Greater holds for the limits: approximants within
    2**(1-k) of their limits that separate by strictly more than
    2**(2-k) = 2 * 2**(1-k) leave the limits a positive gap of the same
    sign.  Equal reals are never separated and come back
    IndistinguishableAt(kmax).
    """
    if kmax < 0:
        raise ValueError("kmax must be a natural number")
    for k in range(kmax + 1):
        gap = x.approx(k) - y.approx(k)
        threshold = Fraction(4, 2**k)  # 2**(-k+2)
        if gap > threshold:
            return GapComparison(GapVerdict.GREATER, k)
        if gap < -threshold:
            return GapComparison(GapVerdict.LESS, k)
    return GapComparison(GapVerdict.INDISTINGUISHABLE, kmax)


def modulus_violations(x: CompReal, kmax: int) -> list[int]:
    """Indices k <= kmax violating |q_k - q_{k+1}| <= 2**-k.  Empty is good."""
    bad = []
    for k in range(kmax + 1):
        if abs(x.approx(k) - x.approx(k + 1)) > Fraction(1, 2**k):
            bad.append(k)
    return bad
