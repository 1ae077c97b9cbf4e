"""Open rational intervals, budgeted covers, and the creeping chain walk.

Two kinds of cover live here.  Explicit covers are finite hand-given
lists of open intervals.  The singular cover is generated: for each
program index p certified total within a step budget, run it on input
2**(p+4), read the output through the rational enumeration, and take the
ball of radius 1/2**(p+3) around that value.  Distinct indices give the
ball lengths a geometric bound, so every finite prefix has total length
at most 1/2 even though every constant program's value sits inside its
own ball.

``creep`` walks a cover from 0 rightward: repeatedly pick, among the
qualifying intervals (straddling the current frontier), the one with the
greatest right endpoint, smallest index on ties.  On a well-overlapped
cover the walk hops past 1 and the chain is a finite subcover
certificate.  On the singular cover the frontier can never pass the
total length, so the walk stalls at or below 1/2 and the stall point is
an exact rational witness of the gap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .machine import (
    Dovetailer,
    GodelIndex,
    Halted,
    decode,
    run,
    totality_enum,
)
from .numerics import Rational, eta, format_rational, parse_rational

__all__ = [
    "OpenInterval",
    "Explicit",
    "Singular",
    "Cover",
    "ReachedOne",
    "Stalled",
    "ChainWalk",
    "CoveredBy",
    "NotFoundUpTo",
    "Subcover",
    "Gap",
    "InsufficientBudget",
    "ConventionViolation",
    "explicit_cover",
    "benign_cover",
    "singular_cover",
    "total_length",
    "covers_point",
    "creep",
    "finite_subcover",
    "chain_violations",
    "cover_to_jsonable",
    "cover_from_jsonable",
    "chain_walk_to_jsonable",
]


class InsufficientBudget(RuntimeError):
    """The budget certified fewer indices than the request needs."""

    def __init__(self, found: int, wanted: int) -> None:
        super().__init__(
            f"budget certified only {found} total program(s), wanted {wanted}"
        )
        self.found = found
        self.wanted = wanted


class ConventionViolation(RuntimeError):
    """A point program failed the definedness convention within its cap."""

    def __init__(self, index: GodelIndex, input: int, step_cap: int) -> None:
        super().__init__(
            f"program {index} did not halt on input {input} "
            f"within {step_cap} steps"
        )
        self.index = index
        self.input = input
        self.step_cap = step_cap


@dataclass(frozen=True)
class OpenInterval:
    lo: Rational
    hi: Rational

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            raise ValueError(f"degenerate interval ({self.lo}, {self.hi})")

    @property
    def length(self) -> Rational:
        return self.hi - self.lo

    def contains(self, x: Rational) -> bool:
        return self.lo < x < self.hi


@dataclass(frozen=True)
class Explicit:
    pass


@dataclass(frozen=True)
class Singular:
    budget: int


@dataclass(frozen=True)
class Cover:
    intervals: tuple[OpenInterval, ...]
    kind: Union[Explicit, Singular]
    # for generated covers, sources[m] is the program index behind interval m
    sources: Optional[tuple[GodelIndex, ...]] = None

    def __len__(self) -> int:
        return len(self.intervals)

    def interval(self, m: int) -> OpenInterval:
        return self.intervals[m]


def explicit_cover(intervals: Sequence[OpenInterval]) -> Cover:
    return Cover(tuple(intervals), Explicit())


def benign_cover() -> Cover:
    """Five overlapping intervals walking [0,1] end to end."""
    raw = [
        ("-1/10", "3/20"),
        ("1/10", "7/20"),
        ("3/10", "11/20"),
        ("1/2", "3/4"),
        ("7/10", "21/20"),
    ]
    return explicit_cover(
        [OpenInterval(Fraction(lo), Fraction(hi)) for lo, hi in raw]
    )


def _certified_value(p: GodelIndex, input: int, step_cap: int) -> int:
    result = run(decode(p), input, step_cap)
    if not isinstance(result, Halted):
        raise ConventionViolation(p, input, step_cap)
    return result.output


def singular_cover(
    budget: int, M: int, dovetailer: Optional[Dovetailer] = None
) -> Cover:
    """Balls around the budget-certified total programs' sampled values.

    Interval m is centered at eta(value of program p_m on input
    2**(p_m+4)) with radius 1/2**(p_m+3), where p_m is the m-th index
    certified total within the budget.  The certification ran every
    sampled input to completion, so the re-run here is bounded by the
    same budget.
    """
    if M < 0:
        raise ValueError("M must be a natural number")
    if dovetailer is None:
        enum = totality_enum(budget)
    else:
        enum = dovetailer.totality(budget)
    if len(enum) < M:
        raise InsufficientBudget(len(enum), M)
    intervals = []
    sources = []
    for m in range(M):
        p = enum[m]
        value = _certified_value(p, 2 ** (p + 4), max(budget, 1))
        center = eta(value)
        radius = Fraction(1, 2 ** (p + 3))
        intervals.append(OpenInterval(center - radius, center + radius))
        sources.append(p)
    return Cover(tuple(intervals), Singular(budget), tuple(sources))


def total_length(c: Cover, M: Optional[int] = None) -> Rational:
    """Exact sum of the first M interval lengths (all, when M omitted)."""
    if M is None:
        M = len(c.intervals)
    if M < 0 or M > len(c.intervals):
        raise ValueError(f"cover has {len(c.intervals)} interval(s)")
    return sum((iv.length for iv in c.intervals[:M]), Fraction(0))


# -- point membership -------------------------------------------------------

@dataclass(frozen=True)
class CoveredBy:
    m: int  # cover slot whose interval certifiably contains the point


@dataclass(frozen=True)
class NotFoundUpTo:
    M: int


_POINT_STEP_CAP = 100_000


def covers_point(
    c: Cover,
    z_program: GodelIndex,
    M: Optional[int] = None,
    step_cap: int = _POINT_STEP_CAP,
) -> Union[CoveredBy, NotFoundUpTo]:
    """Locate the real computed by z_program inside the first M intervals.

    The program is sampled once at input 2**(e+4) for e = z_program; by
    the coding convention the real lies within 1/2**(e+4) of the sampled
    value, so containment of that whole ball inside an interval certifies
    membership of the real.  Containment is endpoint arithmetic: the open
    ball B(x, r) sits inside (lo, hi) whenever lo <= x - r and
    x + r <= hi.
    """
    if M is None:
        M = len(c.intervals)
    if M < 0 or M > len(c.intervals):
        raise ValueError(f"cover has {len(c.intervals)} interval(s)")
    e = z_program
    value = _certified_value(e, 2 ** (e + 4), step_cap)
    x = eta(value)
    r = Fraction(1, 2 ** (e + 4))
    for m in range(M):
        iv = c.intervals[m]
        if iv.lo <= x - r and x + r <= iv.hi:
            return CoveredBy(m)
    return NotFoundUpTo(M)


# -- the chain walk ---------------------------------------------------------

@dataclass(frozen=True)
class ReachedOne:
    pass


@dataclass(frozen=True)
class Stalled:
    examined: int  # interval horizon the walk was allowed to draw from


@dataclass(frozen=True)
class ChainWalk:
    chain: tuple[int, ...]
    frontier: Rational  # sup of certified-reached points, capped at 1
    status: Union[ReachedOne, Stalled]


def creep(
    c: Cover, M: Optional[int] = None, max_steps: Optional[int] = None
) -> ChainWalk:
    """Greedy frontier extension from 0 through the first M intervals.

    Every pick strictly raises the frontier, so at most M picks happen;
    max_steps only matters when set below that.  The qualifying test
    lo < frontier < hi doubles as the bootstrap (an interval qualifies
    first exactly when it contains 0) and as the consecutive-overlap
    guarantee for the chain certificate.
    """
    if M is None:
        M = len(c.intervals)
    if M < 0 or M > len(c.intervals):
        raise ValueError(f"cover has {len(c.intervals)} interval(s)")
    if max_steps is None:
        max_steps = M
    intervals = c.intervals[:M]
    frontier = Fraction(0)
    chain: list[int] = []
    for _ in range(max_steps):
        best = -1
        best_hi = frontier
        for m, iv in enumerate(intervals):
            if iv.lo < frontier < iv.hi and iv.hi > best_hi:
                best = m
                best_hi = iv.hi
        if best < 0:
            return ChainWalk(tuple(chain), frontier, Stalled(M))
        chain.append(best)
        frontier = best_hi
        if frontier > 1:
            return ChainWalk(tuple(chain), Fraction(1), ReachedOne())
    return ChainWalk(tuple(chain), frontier, Stalled(M))


@dataclass(frozen=True)
class Subcover:
    indices: tuple[int, ...]


@dataclass(frozen=True)
class Gap:
    frontier: Rational


def finite_subcover(c: Cover, M: Optional[int] = None) -> Union[Subcover, Gap]:
    walk = creep(c, M)
    if isinstance(walk.status, ReachedOne):
        return Subcover(walk.chain)
    return Gap(walk.frontier)


def chain_violations(c: Cover, walk: ChainWalk) -> list[str]:
    """Certificate audit; an empty list means the walk is internally valid."""
    bad: list[str] = []
    chain = walk.chain
    if not chain:
        if walk.frontier != 0:
            bad.append("empty chain must leave the frontier at 0")
        return bad
    first = c.intervals[chain[0]]
    if not first.lo < 0 < first.hi:
        bad.append(f"first interval {chain[0]} does not contain 0")
    for a, b in zip(chain, chain[1:]):
        if not c.intervals[b].lo < c.intervals[a].hi:
            bad.append(f"links {a} -> {b} do not overlap")
    last_hi = c.intervals[chain[-1]].hi
    if walk.frontier != min(last_hi, Fraction(1)):
        bad.append("frontier is not the capped right endpoint of the chain")
    return bad


# -- serialization ----------------------------------------------------------

def cover_to_jsonable(c: Cover) -> list[dict]:
    return [
        {
            "lo": format_rational(iv.lo),
            "hi": format_rational(iv.hi),
            "index": m,
        }
        for m, iv in enumerate(c.intervals)
    ]


def cover_from_jsonable(data: Sequence[dict]) -> Cover:
    """Rebuild a cover snapshot; generated origins degrade to Explicit."""
    rows = sorted(data, key=lambda row: row["index"])
    for m, row in enumerate(rows):
        if row["index"] != m:
            raise ValueError("cover indices must be 0..n-1 without holes")
    return explicit_cover(
        [
            OpenInterval(parse_rational(row["lo"]), parse_rational(row["hi"]))
            for row in rows
        ]
    )


def chain_walk_to_jsonable(walk: ChainWalk) -> dict:
    status = (
        "ReachedOne" if isinstance(walk.status, ReachedOne) else "Stalled"
    )
    return {
        "chain": list(walk.chain),
        "frontier": format_rational(walk.frontier),
        "status": status,
    }
