"""Monotone bounded rational sequences whose limits resist approximation.

Given a 1-1 listing f of natural numbers, the partial sums

    s_n = sum(1/2**(f(m)+1) for m in 0..n)

are strictly increasing and stay below 1, because each term is a distinct
dyadic.  With a tame stub such as the identity the limit is plainly
computable; with f drawn from the budgeted halting enumeration the
horizon sum can jump by 1/2**(e+1) whenever a slow program with index e
finally halts, and no budget known in advance bounds where the next jump
hides.  ``specker_jump_witness`` exhibits one such jump concretely.

There is deliberately no conversion from ``SpeckerSequence`` to
``CompReal``: attaching a modulus of convergence is exactly what cannot
be done uniformly, and the absence of the operation is the point.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from .machine import Dovetailer, GodelIndex, halting_enum
from .numerics import Rational

__all__ = [
    "EnumerationExhausted",
    "MembershipInconsistency",
    "SpeckerSequence",
    "In",
    "NotInUpTo",
    "MembershipVerdict",
    "Jump",
    "NoJump",
    "specker_identity",
    "specker_stub",
    "specker_halting",
    "specker_term",
    "specker_membership",
    "specker_jump_witness",
]


class EnumerationExhausted(RuntimeError):
    """The finite listing behind this sequence has no value at that index."""

    def __init__(self, available: int) -> None:
        super().__init__(f"enumeration provides only {available} value(s)")
        self.available = available


class MembershipInconsistency(RuntimeError):
    """A membership verdict contradicted the partial sums it was read from.

    Unreachable for any honest listing: if k first appears at position m,
    every horizon difference over a prefix missing m already contains the
    term 1/2**(k+1).  Firing therefore indicts the enumerator, not the
    caller.
    """


class SpeckerSequence:
    """Partial sums of 1/2**(f(m)+1) for an injected or enumerated f."""

    __slots__ = (
        "_f",
        "_available",
        "_values",
        "_sums",
        "_lock",
        "label",
        "kind",
        "budget",
        "stub_values",
    )

    def __init__(
        self,
        f: Callable[[int], int],
        available: Optional[int],
        label: str,
        kind: str = "stub",
        budget: Optional[int] = None,
        stub_values: Optional[tuple[int, ...]] = None,
    ) -> None:
        self._f = f
        self._available = available  # None: defined on all of N
        self._values: list[int] = []
        self._sums: list[Fraction] = []
        self._lock = threading.Lock()
        self.label = label
        # provenance, enough to rebuild an equal sequence elsewhere
        self.kind = kind
        self.budget = budget
        self.stub_values = stub_values

    def available(self) -> Optional[int]:
        """How many values f provides, or None when it is total."""
        return self._available

    def value(self, m: int) -> int:
        """f(m); raises EnumerationExhausted past a finite listing."""
        if m < 0:
            raise ValueError("index must be a natural number")
        if self._available is not None and m >= self._available:
            raise EnumerationExhausted(self._available)
        with self._lock:
            self._fill(m)
            return self._values[m]

    def term(self, n: int) -> Rational:
        """s_n, the exact partial sum through position n."""
        if n < 0:
            raise ValueError("index must be a natural number")
        if self._available is not None and n >= self._available:
            raise EnumerationExhausted(self._available)
        with self._lock:
            self._fill(n)
            return self._sums[n]

    def _fill(self, n: int) -> None:
        # lock held; extends both memo columns through index n
        values = self._values
        sums = self._sums
        while len(values) <= n:
            m = len(values)
            v = self._f(m)
            if v < 0:
                raise ValueError(f"listing produced a negative value at {m}")
            values.append(v)
            prev = sums[-1] if sums else Fraction(0)
            sums.append(prev + Fraction(1, 2 ** (v + 1)))


def specker_identity() -> SpeckerSequence:
    """f(m) = m; the partial sums are exactly 1 - 1/2**(n+1)."""
    return SpeckerSequence(lambda m: m, None, "identity", kind="identity")


def specker_stub(values: Sequence[int]) -> SpeckerSequence:
    """A finite hand-chosen listing; indices past the end are errors."""
    vals = tuple(int(v) for v in values)
    return SpeckerSequence(
        lambda m: vals[m],
        len(vals),
        "stub:" + ",".join(str(v) for v in vals),
        kind="stub",
        stub_values=vals,
    )


def specker_halting(
    budget: int, dovetailer: Optional[Dovetailer] = None
) -> SpeckerSequence:
    """f(m) = index of the m-th program observed to halt within budget.

    Each index is emitted at most once, so the listing is 1-1.  The
    listing is finite by construction; its length is budget-sensitive,
    which is the whole phenomenon this module packages.
    """
    if dovetailer is None:
        enum = halting_enum(budget)
    else:
        enum = dovetailer.halting(budget)
    emitted = enum.emitted
    return SpeckerSequence(
        lambda m: emitted[m],
        len(emitted),
        f"halting@{budget}",
        kind="halting",
        budget=budget,
    )


def specker_term(seq: SpeckerSequence, n: int) -> Rational:
    return seq.term(n)


# -- membership -------------------------------------------------------------

@dataclass(frozen=True)
class In:
    witness: int  # the position m with f(m) = k


@dataclass(frozen=True)
class NotInUpTo:
    scanned: int  # number of listing values examined


@dataclass(frozen=True)
class MembershipVerdict:
    k: int
    verdict: Union[In, NotInUpTo]


def specker_membership(
    seq: SpeckerSequence, k: int, n_budget: int
) -> MembershipVerdict:
    """Scan f(0..n_budget) for k; cross-check a hit against the sums.

    The cross-check: with horizon sum s_N as the best available lower
    estimate of the limit, any n with s_N - s_n < 1/2**(k+1) must already
    have k among f(0..n).  The halved threshold absorbs the slack between
    the horizon sum and the true limit; for a 1-1 listing the check then
    provably never fires, so a MembershipInconsistency means the listing
    itself is dishonest.
    """
    if k < 0 or n_budget < 0:
        raise ValueError("k and n_budget must be natural numbers")
    avail = seq.available()
    last = n_budget if avail is None else min(n_budget, avail - 1)
    if last < 0:
        return MembershipVerdict(k, NotInUpTo(0))
    hit: Optional[int] = None
    for m in range(last + 1):
        if seq.value(m) == k:
            hit = m
            break
    if hit is None:
        return MembershipVerdict(k, NotInUpTo(last + 1))
    horizon = seq.term(last)
    bound = Fraction(1, 2 ** (k + 1))
    for n in range(hit):
        # prefixes below the witness must still sit a full term away
        if horizon - seq.term(n) < bound:
            raise MembershipInconsistency(
                f"k={k} found at {hit} but horizon gap at {n} is below "
                f"{bound}"
            )
    return MembershipVerdict(k, In(hit))


# -- budget-straddling jumps ------------------------------------------------

@dataclass(frozen=True)
class Jump:
    jump: Rational  # horizon sum increase from B1 to B2
    at_index: GodelIndex  # program whose halt event the budgets straddle


@dataclass(frozen=True)
class NoJump:
    reason: str


def _horizon_sum(emitted: Sequence[GodelIndex]) -> Fraction:
    total = Fraction(0)
    for e in emitted:
        total += Fraction(1, 2 ** (e + 1))
    return total


def specker_jump_witness(
    e_adversary: GodelIndex,
    b1: int,
    b2: int,
    dovetailer: Optional[Dovetailer] = None,
) -> Union[Jump, NoJump]:
    """Horizon increase between two budgets straddling one halt event.

    When the halt of e_adversary is observed after b1 but within b2, the
    b2 horizon contains the fresh term 1/2**(e+1), so the returned jump
    is at least that much.  Otherwise NoJump says which side failed.
    """
    if b1 < 0 or b2 < 0:
        raise ValueError("budgets must be natural numbers")
    if b2 < b1:
        raise ValueError("b2 must be at least b1")
    if dovetailer is None:
        enum1 = halting_enum(b1)
        enum2 = halting_enum(b2)
    else:
        enum1 = dovetailer.halting(b1)
        enum2 = dovetailer.halting(b2)
    step = None
    for ev in enum2.trace.events:
        if ev.index == e_adversary:
            step = ev.global_step
            break
    if step is None:
        return NoJump(f"halt of {e_adversary} not witnessed within {b2}")
    if step <= b1:
        return NoJump(f"halt of {e_adversary} already witnessed by {b1}")
    jump = _horizon_sum(enum2.emitted) - _horizon_sum(enum1.emitted)
    floor = Fraction(1, 2 ** (e_adversary + 1))
    # the straddled event alone contributes this much, and nothing shrinks
    assert jump >= floor
    return Jump(jump, e_adversary)
