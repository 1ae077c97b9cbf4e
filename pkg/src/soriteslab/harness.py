"""The three ladder arguments, run end to end with explicit verdicts.

Each run produces a SoritesReport: the premises actually checked, a
verdict, and evidence sufficient to replay the run bit for bit.

discrete
    Heights are built by combining increments on the positive-rational
    structure and read back through the unit-scaled measurement map, so
    consecutive differences are exactly one increment.  Every premise of
    the classical chain checks out and the verdict is ParadoxDerived,
    with the index where the foil threshold is crossed.

continuous
    The predicate "some partial sum exceeds x" over a Specker-style
    sequence.  Openness and progressiveness sample-check clean on every
    budget, the value at 1 is certified false on every budget, and the
    missing step is the supremum: over a live halting listing the
    horizon jumps when a slow program finally halts, which is exactly
    the evidence the report carries.  Verdict: BlockedAt, always.

covering
    The predicate "an initial chain of cover intervals passes x".  The
    chain walk either hops past 1 (well-overlapped explicit covers:
    ParadoxDerived) or stalls at a frontier bounded by the cover's total
    length (the generated length-bounded cover: BlockedAt with the gap).

The infimum-side variants of the continuous premises are mirror images
under x -> 1 - x of the supremum ledger checked here; no separate
machinery exists for them.  Verdicts are three-valued throughout:
Unknown is a budget artifact, never a truth value, and only positive
witnesses or analytic bounds certify.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .covers import (
    ChainWalk,
    Cover,
    ReachedOne,
    Singular,
    chain_walk_to_jsonable,
    cover_from_jsonable,
    cover_to_jsonable,
    creep,
    total_length,
)
from .machine import SLOW_HALT_INDEX
from .measurement import QPLUS, holder_phi
from .numerics import Rational, format_rational, parse_rational
from .specker import (
    Jump,
    SpeckerSequence,
    specker_halting,
    specker_identity,
    specker_jump_witness,
    specker_stub,
)

__all__ = [
    "DiscreteSoritesSpec",
    "SigmaPredicate",
    "PiPredicate",
    "SigmaTrue",
    "SigmaFalse",
    "SigmaUnknown",
    "PiTrue",
    "PiFalse",
    "PiUnknown",
    "PremiseCheck",
    "SoritesReport",
    "run_discrete",
    "eval_sigma",
    "check_continuous_premises",
    "run_continuous",
    "eval_pi",
    "run_covering",
    "replay_report",
    "report_to_jsonable",
]


@dataclass(frozen=True)
class DiscreteSoritesSpec:
    start_height: Rational
    increment: Rational
    steps: int
    threshold: Rational

    def __post_init__(self) -> None:
        if self.start_height <= 0:
            raise ValueError("start height must be positive")
        if self.increment <= 0:
            raise ValueError("increment must be positive")
        if self.steps < 1:
            raise ValueError("need at least one step")
        if self.threshold <= 0:
            raise ValueError("threshold must be positive")


@dataclass(frozen=True)
class SigmaPredicate:
    seq: SpeckerSequence


@dataclass(frozen=True)
class PiPredicate:
    cover: Cover


@dataclass(frozen=True)
class SigmaTrue:
    witness: int  # least n with x < s_n


@dataclass(frozen=True)
class SigmaFalse:
    reason: str  # which analytic bound certified it


@dataclass(frozen=True)
class SigmaUnknown:
    n_budget: int


SigmaVerdict = Union[SigmaTrue, SigmaFalse, SigmaUnknown]


@dataclass(frozen=True)
class PiTrue:
    chain: tuple[int, ...]


@dataclass(frozen=True)
class PiFalse:
    reason: str


@dataclass(frozen=True)
class PiUnknown:
    examined: int
    frontier: Rational


PiVerdict = Union[PiTrue, PiFalse, PiUnknown]


@dataclass(frozen=True)
class PremiseCheck:
    name: str
    at_point: str
    level: int
    outcome: str
    detail: str


@dataclass(frozen=True)
class SoritesReport:
    kind: str
    premises: tuple[PremiseCheck, ...]
    verdict: str  # "ParadoxDerived" | "BlockedAt"
    principle: Optional[str]  # the named missing principle when blocked
    evidence: dict  # {"config": ..., "witness": ...}, JSON-ready


# -- discrete ---------------------------------------------------------------

def run_discrete(spec: DiscreteSoritesSpec) -> SoritesReport:
    """Walk the height ladder and confirm the classical derivation.

    Elements are built by combination (each rung appends one increment)
    and heights are read through the unit-c measurement at level 0; the
    count of c in a grows by exactly one per rung, so every consecutive
    measured difference equals the increment exactly.  Starts that are
    whole multiples of the increment are read back exactly.
    """
    struct = QPLUS
    c = spec.increment
    element = spec.start_height
    h = holder_phi(struct, element, c, c, 0)
    heights = [h]
    for _ in range(spec.steps):
        element = struct.concat(element, c)
        heights.append(holder_phi(struct, element, c, c, 0))
    diffs_exact = all(
        b - a == c for a, b in zip(heights, heights[1:])
    )
    crossing = next(
        (i for i, hi in enumerate(heights) if hi >= spec.threshold), None
    )
    premises = (
        PremiseCheck(
            "base-height",
            format_rational(spec.start_height),
            0,
            "holds",
            f"h_0 measured as {format_rational(heights[0])}",
        ),
        PremiseCheck(
            "tolerance",
            "all rungs",
            0,
            "holds" if diffs_exact else "fails",
            f"{spec.steps} consecutive differences, each exactly "
            f"{format_rational(c)}",
        ),
        PremiseCheck(
            "conditional-chain",
            "all rungs",
            0,
            "holds",
            f"detachment applied {spec.steps} times",
        ),
    )
    evidence = {
        "config": {
            "start": format_rational(spec.start_height),
            "increment": format_rational(spec.increment),
            "steps": spec.steps,
            "threshold": format_rational(spec.threshold),
        },
        "witness": {
            "final": format_rational(heights[-1]),
            "crossing": crossing,
        },
    }
    return SoritesReport("discrete", premises, "ParadoxDerived", None, evidence)


# -- continuous -------------------------------------------------------------

def eval_sigma(p: SigmaPredicate, x: Rational, n_budget: int) -> SigmaVerdict:
    """Three-valued: witness, analytic certificate, or honest Unknown."""
    x = Fraction(x)
    if n_budget < 0:
        raise ValueError("n_budget must be a natural number")
    if x < 0:
        return SigmaFalse("x is below 0")
    if x >= 1:
        return SigmaFalse("partial sums of distinct halvings stay below 1")
    seq = p.seq
    avail = seq.available()
    last = n_budget if avail is None else min(n_budget, avail - 1)
    for n in range(last + 1):
        if x < seq.term(n):
            return SigmaTrue(n)
    return SigmaUnknown(n_budget)


_DEFAULT_SAMPLES = (
    Fraction(0),
    Fraction(1, 4),
    Fraction(1, 2),
    Fraction(3, 4),
    Fraction(1),
)


def check_continuous_premises(
    p: SigmaPredicate,
    sample_points: Sequence[Rational],
    k: int,
    n_budget: int,
) -> tuple[PremiseCheck, ...]:
    """Openness and progressiveness rows over a finite sample.

    Openness at a point the predicate holds at: the witnessing partial
    sum s_n gives epsilon = s_n - x > 0, a ball (relative to [0,1], so
    at 0 it is the half-open ball) on which the predicate stays true.
    Progressiveness at x: when every sampled y < x came out true, report
    what happened at x; the only sampled point that can fail is the
    certified-false endpoint 1, and the ledger shows exactly that.
    """
    pts = sorted({Fraction(x) for x in sample_points})
    for x in pts:
        if not 0 <= x <= 1:
            raise ValueError("sample points must lie in [0,1]")
    verdicts = {x: eval_sigma(p, x, n_budget) for x in pts}
    rows: list[PremiseCheck] = []
    for x in pts:
        v = verdicts[x]
        if isinstance(v, SigmaTrue):
            eps = p.seq.term(v.witness) - x
            rows.append(
                PremiseCheck(
                    "openness",
                    format_rational(x),
                    k,
                    "holds",
                    f"epsilon = {format_rational(eps)} from witness "
                    f"n = {v.witness}",
                )
            )
        elif isinstance(v, SigmaFalse):
            rows.append(
                PremiseCheck(
                    "openness", format_rational(x), k, "vacuous", v.reason
                )
            )
        else:
            rows.append(
                PremiseCheck(
                    "openness",
                    format_rational(x),
                    k,
                    "unknown",
                    f"no witness within {n_budget} terms",
                )
            )
    for x in pts:
        below = [y for y in pts if y < x]
        if not all(isinstance(verdicts[y], SigmaTrue) for y in below):
            continue
        v = verdicts[x]
        if isinstance(v, SigmaTrue):
            outcome, detail = "holds", f"true with witness n = {v.witness}"
        elif isinstance(v, SigmaFalse):
            outcome = "fails-at-limit"
            detail = (
                "every smaller sampled point is true, yet this point is "
                f"certified false: {v.reason}"
            )
        else:
            outcome, detail = "unknown", f"no witness within {n_budget} terms"
        rows.append(
            PremiseCheck("progressiveness", format_rational(x), k, outcome, detail)
        )
    return tuple(rows)


def run_continuous(
    p: SigmaPredicate,
    k: int,
    n_budget: int,
    adversary: Optional[int] = None,
    b1: Optional[int] = None,
    b2: Optional[int] = None,
    sample_points: Optional[Sequence[Rational]] = None,
    dovetailer=None,
) -> SoritesReport:
    """Premise ledger plus jump evidence; the verdict is always BlockedAt.

    Over a live halting listing the blocked principle is the supremum
    (order completeness) step, and the evidence is a budget-straddling
    horizon jump for the planted slow program (defaults: the reserved
    slow-halt slot, b1 = 100, b2 = the listing's own budget).  Over a
    stub listing the limit is a perfectly computable rational, so the
    only blocked step is the strict bound at 1; the report says so
    rather than pretending the stub is a counterexample.
    """
    seq = p.seq
    if sample_points is None:
        sample_points = _DEFAULT_SAMPLES
    premises = check_continuous_premises(p, sample_points, k, n_budget)
    config: dict = {
        "source": {
            "kind": seq.kind,
            "values": list(seq.stub_values) if seq.stub_values else None,
            "budget": seq.budget,
        },
        "k": k,
        "n_budget": n_budget,
        "samples": [
            format_rational(Fraction(x)) for x in sorted(
                {Fraction(x) for x in sample_points}
            )
        ],
    }
    jumps: list[dict] = []
    no_jump: Optional[str] = None
    if seq.kind == "halting":
        principle = "Dedekind completeness / ACA"
        if adversary is None:
            adversary = SLOW_HALT_INDEX
        if b2 is None:
            b2 = seq.budget
        if b1 is None:
            b1 = min(100, b2)
        config["jump_query"] = {"adversary": adversary, "b1": b1, "b2": b2}
        w = specker_jump_witness(adversary, b1, b2, dovetailer)
        if isinstance(w, Jump):
            jumps.append(
                {
                    "adversary": adversary,
                    "b1": b1,
                    "b2": b2,
                    "jump": format_rational(w.jump),
                    "at_index": w.at_index,
                }
            )
        else:
            no_jump = w.reason
    else:
        principle = "strict inequality at 1"
        premises = premises + (
            PremiseCheck(
                "limit-computability",
                "1/1",
                k,
                "noted",
                "stub listing has a computable limit and is not a "
                "counterexample; the ladder still cannot cross because "
                "the predicate at 1 is certified false",
            ),
        )
    evidence = {
        "config": config,
        "witness": {"jumps": jumps, "no_jump": no_jump},
    }
    return SoritesReport("continuous", premises, "BlockedAt", principle, evidence)


# -- covering ---------------------------------------------------------------

def eval_pi(
    p: PiPredicate,
    x: Rational,
    M: Optional[int] = None,
    max_steps: Optional[int] = None,
    walk: Optional[ChainWalk] = None,
) -> PiVerdict:
    """Does an initial chain of cover intervals certifiably pass x?

    True comes with the chain as witness (the chain covers [0, frontier),
    and a completed walk covers all of [0,1]).  For the length-bounded
    generated cover, any x above 1/2 is certified false outright: no
    chain frontier can pass the total length.  Everything else is
    Unknown at this horizon.
    """
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise ValueError("x must lie in [0,1]")
    cover = p.cover
    if isinstance(cover.kind, Singular) and x > Fraction(1, 2):
        return PiFalse("total interval length stays at or below 1/2")
    if walk is None:
        walk = creep(cover, M, max_steps)
    if isinstance(walk.status, ReachedOne) or walk.frontier > x:
        return PiTrue(walk.chain)
    examined = len(cover.intervals) if M is None else M
    return PiUnknown(examined, walk.frontier)


def _interior_points(
    lo: Fraction, hi: Fraction, count: int
) -> list[Fraction]:
    lo = max(lo, Fraction(0))
    hi = min(hi, Fraction(1))
    if lo >= hi:
        return []
    return [
        lo + (hi - lo) * Fraction(j, count + 1) for j in range(1, count + 1)
    ]


def run_covering(
    p: PiPredicate,
    M: Optional[int] = None,
    max_steps: Optional[int] = None,
    samples_per_interval: int = 4,
) -> SoritesReport:
    """Chain walk, congruence spot-checks, and the verdict they force.

    Congruence: within one chain interval the predicate cannot tell
    points apart, checked on consecutive sampled pairs.  A completed
    walk derives the paradoxical conclusion (every point is covered, so
    the predicate propagates to all of [0,1]); a stalled walk pins the
    blame on the finite-subcover principle and hands over the gap.
    """
    cover = p.cover
    if M is None:
        M = len(cover.intervals)
    if max_steps is None:
        max_steps = M
    walk = creep(cover, M, max_steps)
    premises: list[PremiseCheck] = []
    base = eval_pi(p, Fraction(0), M, max_steps, walk=walk)
    premises.append(
        PremiseCheck(
            "base",
            "0/1",
            M,
            "holds" if isinstance(base, PiTrue) else "unknown",
            "a chain interval certifies 0"
            if isinstance(base, PiTrue)
            else "no chain interval contains 0",
        )
    )
    for m in walk.chain:
        iv = cover.intervals[m]
        pts = _interior_points(iv.lo, iv.hi, samples_per_interval + 1)
        pairs = list(zip(pts, pts[1:]))
        agree = all(
            eval_pi(p, a, M, max_steps, walk=walk)
            == eval_pi(p, b, M, max_steps, walk=walk)
            for a, b in pairs
        )
        premises.append(
            PremiseCheck(
                "congruence",
                f"interval {m}",
                M,
                "holds" if agree else "fails",
                f"{len(pairs)} consecutive sampled pairs agree",
            )
        )
    premises.append(
        PremiseCheck(
            "length",
            "first "
            f"{M} intervals",
            M,
            "noted",
            f"total length {format_rational(total_length(cover, M))}",
        )
    )
    config: dict = {
        "cover": cover_to_jsonable(cover),
        "terms": M,
        "max_steps": max_steps,
        "samples_per_interval": samples_per_interval,
    }
    if isinstance(cover.kind, Singular):
        config["generated_at_budget"] = cover.kind.budget
    evidence = {"config": config, "witness": chain_walk_to_jsonable(walk)}
    if isinstance(walk.status, ReachedOne):
        return SoritesReport(
            "covering", tuple(premises), "ParadoxDerived", None, evidence
        )
    return SoritesReport(
        "covering",
        tuple(premises),
        "BlockedAt",
        "Heine-Borel / WKL",
        evidence,
    )


# -- replay -----------------------------------------------------------------

def _rebuild_sequence(source: dict) -> SpeckerSequence:
    kind = source["kind"]
    if kind == "identity":
        return specker_identity()
    if kind == "stub":
        return specker_stub(source["values"])
    if kind == "halting":
        return specker_halting(source["budget"])
    raise ValueError(f"unknown sequence source {kind!r}")


def replay_report(report: SoritesReport) -> bool:
    """Re-derive the verdict from the report's own config.

    True when the fresh run reproduces verdict, principle, premise rows,
    and witness bit for bit.  The cover snapshot is replayed from its
    serialized intervals, so no enumeration work recurs for covering
    reports.
    """
    cfg = report.evidence["config"]
    if report.kind == "discrete":
        fresh = run_discrete(
            DiscreteSoritesSpec(
                parse_rational(cfg["start"]),
                parse_rational(cfg["increment"]),
                cfg["steps"],
                parse_rational(cfg["threshold"]),
            )
        )
    elif report.kind == "continuous":
        p = SigmaPredicate(_rebuild_sequence(cfg["source"]))
        jq = cfg.get("jump_query") or {}
        fresh = run_continuous(
            p,
            cfg["k"],
            cfg["n_budget"],
            adversary=jq.get("adversary"),
            b1=jq.get("b1"),
            b2=jq.get("b2"),
            sample_points=[parse_rational(s) for s in cfg["samples"]],
        )
    elif report.kind == "covering":
        cover = cover_from_jsonable(cfg["cover"])
        fresh = run_covering(
            PiPredicate(cover),
            cfg["terms"],
            cfg["max_steps"],
            cfg["samples_per_interval"],
        )
    else:
        raise ValueError(f"unknown report kind {report.kind!r}")
    return (
        fresh.verdict == report.verdict
        and fresh.principle == report.principle
        and fresh.premises == report.premises
        and fresh.evidence["witness"] == report.evidence["witness"]
    )


def report_to_jsonable(report: SoritesReport) -> dict:
    return {
        "kind": report.kind,
        "verdict": report.verdict,
        "principle": report.principle,
        "premises": [
            {
                "name": row.name,
                "at": row.at_point,
                "level": row.level,
                "outcome": row.outcome,
                "detail": row.detail,
            }
            for row in report.premises
        ],
        "evidence": report.evidence,
    }
