"""Exact rational arithmetic and the enumeration of rationals in [0, 1].

Every number in this package is a ``fractions.Fraction``: always reduced,
always with a positive denominator, unbounded in magnitude.  Floating point
is banned throughout; all emitted values serialize as the string "p/q".

The enumeration ``eta`` lists every reduced fraction p/q with 0 <= p <= q
exactly once, ordered by denominator and then by numerator:

    0/1, 1/1, 1/2, 1/3, 2/3, 1/4, 3/4, 1/5, 2/5, 3/5, 4/5, 1/6, 5/6, ...

``eta_inverse`` is its exact inverse on [0, 1].
"""

from __future__ import annotations

import enum
from fractions import Fraction
from math import gcd

Rational = Fraction

# A RationalIndex is a plain natural number: the position of a reduced
# fraction in the eta enumeration.
RationalIndex = int

__all__ = [
    "Rational",
    "RationalIndex",
    "Ordering",
    "rat_add",
    "rat_cmp",
    "eta",
    "eta_inverse",
    "parse_rational",
    "format_rational",
]


class Ordering(enum.Enum):
    LESS = "Less"
    EQUAL = "Equal"
    GREATER = "Greater"


def rat_add(a: Rational, b: Rational) -> Rational:
    """Exact reduced sum."""
    return a + b


def rat_cmp(a: Rational, b: Rational) -> Ordering:
    """Exact trichotomous comparison (cross-multiplication under the hood)."""
    if a < b:
        return Ordering.LESS
    if a > b:
        return Ordering.GREATER
    return Ordering.EQUAL


# Materialized prefix of the enumeration, extended on demand.  eta(i) is
# O(1) amortized; nothing here is ever recomputed.
_eta_prefix: list[Fraction] = [Fraction(0), Fraction(1)]
_eta_next_den = 2


def _extend_eta_prefix(upto: int) -> None:
    global _eta_next_den
    while len(_eta_prefix) <= upto:
        q = _eta_next_den
        for p in range(1, q):
            if gcd(p, q) == 1:
                _eta_prefix.append(Fraction(p, q))
        _eta_next_den += 1


def eta(i: RationalIndex) -> Rational:
    """The i-th reduced fraction in [0, 1], denominator-major order."""
    if i < 0:
        raise ValueError(f"index must be a natural number, got {i}")
    _extend_eta_prefix(i)
    return _eta_prefix[i]


# _phi_cumulative[d] = number of enumeration entries with denominator < d
# (so _phi_cumulative[2] = 2, counting 0/1 and 1/1).  Backed by a totient
# sieve, regrown geometrically when larger denominators appear.
_phi_cumulative: list[int] = [0, 0, 2]


def _extend_phi_cumulative(den: int) -> None:
    while len(_phi_cumulative) <= den:
        limit = max(2 * len(_phi_cumulative), den + 1)
        phi = list(range(limit))
        for d in range(2, limit):
            if phi[d] == d:  # d is prime
                for multiple in range(d, limit, d):
                    phi[multiple] -= phi[multiple] // d
        cumulative = [0, 0, 2]
        for d in range(2, limit - 1):
            cumulative.append(cumulative[-1] + phi[d])
        _phi_cumulative[:] = cumulative


def eta_inverse(q: Rational) -> RationalIndex:
    """Position of a reduced fraction in [0, 1] within the enumeration.

    Raises ValueError for rationals outside [0, 1].
    """
    if q < 0 or q > 1:
        raise ValueError(f"{format_rational(q)} is outside [0, 1]")
    den = q.denominator
    if den == 1:
        return q.numerator  # 0/1 -> 0, 1/1 -> 1
    _extend_phi_cumulative(den)
    offset = sum(1 for p in range(1, q.numerator) if gcd(p, den) == 1)
    return _phi_cumulative[den] + offset


def parse_rational(text: str) -> Rational:
    """Parse "p/q", an integer literal, or an exact terminating decimal."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def format_rational(q: Rational) -> str:
    """Serialize as "p/q", reduced, denominator always explicit and positive."""
    return f"{q.numerator}/{q.denominator}"
