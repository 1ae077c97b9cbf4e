"""Ordered-semigroup measurement and the bisection-ratio homomorphism.

A structure supplies two operations, combination and strict comparison,
and the rest is derived.  The measuring move is counting: N(b, a) is the
least n such that n+1 chained copies of b strictly exceed a, found by
doubling then bisection, so only O(log N) combinations happen.  Chaining
halved subunits u_0 = c, u_1, u_2, ... turns counting into measurement:

    q_k = r * N(u_k, a) / N(u_k, c)

approximates the size of a in units of c (scaled so c measures r), and
with exact halving the error at level k is below r * 2**-k.  A fixed
index shift then packages the q_k stream as a CompReal; everything is
exact rational arithmetic end to end.

Structures are descriptors, not enforced algebras: the axioms a carrier
must satisfy for these numbers to mean anything are sample-checked over
finite batches by ``check_axioms``, never proven.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterator, Optional, Sequence

from .creal import CompReal, creal_from_rule
from .numerics import Rational

__all__ = [
    "ArchimedeanBudgetExceeded",
    "NoSubunitFound",
    "MeasurementStructure",
    "SubunitChain",
    "QPLUS",
    "DYADIC",
    "STRUCTURES",
    "AxiomReport",
    "HomomorphismRow",
    "HomomorphismReport",
    "ScalarRow",
    "ScalarReport",
    "n_count",
    "subunits",
    "holder_phi",
    "holder_phi_real",
    "check_axioms",
    "check_homomorphism",
    "check_scalar_uniqueness",
    "concat_powers",
]

Element = Any


class ArchimedeanBudgetExceeded(RuntimeError):
    """No copy count within budget made the rod exceed the target."""

    def __init__(self, max_copies: int) -> None:
        super().__init__(f"no witness within {max_copies} copies")
        self.max_copies = max_copies


class NoSubunitFound(RuntimeError):
    """Neither a halving oracle nor the search batch yields the next level."""

    def __init__(self, level: int) -> None:
        super().__init__(f"no subunit available at level {level}")
        self.level = level


@dataclass(frozen=True)
class MeasurementStructure:
    """Carrier described by its operations; elements are caller-owned.

    ``halve`` is an exact-halving oracle (u and halve(u) combine back to
    something not above u); structures without one may instead carry a
    finite search ``batch`` from which subunits are drawn.
    """

    name: str
    concat: Callable[[Element, Element], Element]
    less: Callable[[Element, Element], bool]
    halve: Optional[Callable[[Element], Element]] = None
    batch: Optional[tuple[Element, ...]] = None

    def leq(self, a: Element, b: Element) -> bool:
        return not self.less(b, a)

    def same_magnitude(self, a: Element, b: Element) -> bool:
        return not self.less(a, b) and not self.less(b, a)


QPLUS = MeasurementStructure(
    name="qplus",
    concat=lambda a, b: a + b,
    less=lambda a, b: a < b,
    halve=lambda a: a / 2,
)

# same operations; the carrier discipline (denominators are powers of
# two, preserved by + and /2) is the caller's to respect
DYADIC = MeasurementStructure(
    name="dyadic",
    concat=lambda a, b: a + b,
    less=lambda a, b: a < b,
    halve=lambda a: a / 2,
)

STRUCTURES: dict[str, MeasurementStructure] = {
    "qplus": QPLUS,
    "dyadic": DYADIC,
}


def _concat_copies(struct: MeasurementStructure, b: Element, m: int) -> Element:
    """m chained copies of b, m >= 1, via binary decomposition."""
    if m < 1:
        raise ValueError("need at least one copy")
    result: Optional[Element] = None
    power = b
    while m:
        if m & 1:
            result = power if result is None else struct.concat(result, power)
        m >>= 1
        if m:
            power = struct.concat(power, power)
    return result


def n_count(
    struct: MeasurementStructure,
    b: Element,
    a: Element,
    max_copies: int = 1 << 62,
) -> int:
    """Least n such that n+1 chained copies of b strictly exceed a."""
    less = struct.less
    if less(a, b):
        return 0
    copies = 1
    power = b
    while not less(a, power):
        copies *= 2
        if copies > max_copies:
            raise ArchimedeanBudgetExceeded(max_copies)
        power = struct.concat(power, power)
    # copies//2 copies do not exceed a; copies do — bisect the least that do
    lo, hi = copies // 2, copies
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if less(a, _concat_copies(struct, b, mid)):
            hi = mid
        else:
            lo = mid
    return hi - 1


@dataclass(frozen=True)
class SubunitChain:
    units: tuple[Element, ...]  # units[j] is u_j; halving verified at build

    def __len__(self) -> int:
        return len(self.units)


def subunits(
    struct: MeasurementStructure, u: Element, k: int
) -> SubunitChain:
    """Chain u_0 = u, ..., u_k with u_{j+1} combined with itself <= u_j."""
    if k < 0:
        raise ValueError("k must be a natural number")
    units = [u]
    for level in range(1, k + 1):
        cur = units[-1]
        nxt: Optional[Element] = None
        if struct.halve is not None:
            cand = struct.halve(cur)
            if struct.leq(struct.concat(cand, cand), cur):
                nxt = cand
        elif struct.batch:
            for cand in struct.batch:
                if struct.leq(struct.concat(cand, cand), cur):
                    nxt = cand
                    break
        if nxt is None:
            raise NoSubunitFound(level)
        units.append(nxt)
    return SubunitChain(tuple(units))


def holder_phi(
    struct: MeasurementStructure,
    a: Element,
    c: Element,
    r: Rational,
    k: int,
) -> Rational:
    """Level-k measurement of a in units of c, scaled so c measures r."""
    r = Fraction(r)
    if r <= 0:
        raise ValueError("the unit's measure r must be positive")
    chain = subunits(struct, c, k)
    u_k = chain.units[-1]
    return r * Fraction(n_count(struct, u_k, a), n_count(struct, u_k, c))


def _package_shift(
    struct: MeasurementStructure, a: Element, c: Element, r: Fraction
) -> int:
    # with an exact halving oracle, |q_k - q_{k+1}| <= r * 2**-k; shifting
    # by the least s >= 1 with r <= 2**s restores the 2**-m modulus
    if struct.halve is not None:
        bound = r
    else:
        # batch subunits only promise u_k <= c * 2**-k, so the count of
        # u_k in c undershoots and the ratio error picks up a factor of
        # the size of a in units of c; bound that size by counting c in a
        ratio_cap = n_count(struct, c, a) + 1
        bound = 2 * r * (ratio_cap + 1)
    s = 1
    while 2**s < bound:
        s += 1
    return s


def holder_phi_real(
    struct: MeasurementStructure,
    a: Element,
    c: Element,
    r: Rational,
) -> CompReal:
    """The measurement of a as a CompReal, calibrated index shift included."""
    r = Fraction(r)
    shift = _package_shift(struct, a, c, r)
    return creal_from_rule(
        lambda m: holder_phi(struct, a, c, r, m + shift)
    )


# -- sample checks ----------------------------------------------------------

@dataclass(frozen=True)
class AxiomReport:
    checks: int
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def _strided(seq: Sequence[Element], limit: int) -> list:
    if len(seq) <= limit:
        return list(seq)
    stride = -(-len(seq) // limit)
    return list(seq[::stride])


def check_axioms(
    struct: MeasurementStructure,
    elements: Sequence[Element],
    triple_limit: int = 20,
) -> AxiomReport:
    """Sample-check the ordered-semigroup axioms over a finite batch.

    Pairwise laws run over all pairs; three-element laws run over a
    deterministic stride of at most triple_limit choices per slot.
    """
    less = struct.less
    concat = struct.concat
    checks = 0
    bad: list[str] = []
    note = bad.append
    for i, x in enumerate(elements):
        for j, y in enumerate(elements):
            checks += 1
            if less(x, y) and less(y, x):
                note(f"comparison is not antisymmetric at ({i},{j})")
            # positivity: anything grows when something is appended
            if not less(x, concat(x, y)):
                note(f"positivity fails at ({i},{j})")
    for i, x in enumerate(elements):
        for j, y in enumerate(elements):
            if less(x, y):
                checks += 1
                # regularity: some sampled padding keeps x at or below y
                if not any(
                    struct.leq(concat(x, z), y) for z in elements
                ):
                    note(f"regularity finds no padding for ({i},{j})")
                break  # one regularity probe per left element
    small = _strided(elements, triple_limit)
    for x, y, z in itertools.product(small, repeat=3):
        checks += 1
        if not struct.same_magnitude(
            concat(concat(x, y), z), concat(x, concat(y, z))
        ):
            note("associativity fails on a sampled triple")
        if struct.leq(x, y):
            if not struct.leq(concat(z, x), concat(z, y)):
                note("left monotonicity fails on a sampled triple")
            if not struct.leq(concat(x, z), concat(y, z)):
                note("right monotonicity fails on a sampled triple")
    for x, y in zip(small, reversed(small)):
        checks += 1
        try:
            n_count(struct, x, y)
        except ArchimedeanBudgetExceeded:
            note("no Archimedean witness within budget for a sampled pair")
    return AxiomReport(checks, tuple(bad))


@dataclass(frozen=True)
class HomomorphismRow:
    additivity_residual: Rational
    additivity_ok: bool
    order_applicable: bool  # the pair was strictly ordered
    order_ok: bool


@dataclass(frozen=True)
class HomomorphismReport:
    k: int
    additivity_tolerance: Rational
    order_tolerance: Rational
    rows: tuple[HomomorphismRow, ...]
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_homomorphism(
    struct: MeasurementStructure,
    phi: Callable[[Element], CompReal],
    pairs: Sequence[tuple[Element, Element]],
    k: int,
) -> HomomorphismReport:
    """Additivity and order preservation of phi at precision level k.

    Each of the three approximants in the additivity residual sits within
    2**(1-k) of its limit, so honest measurements stay within 3 * 2**(1-k);
    an ordered pair's approximants may cross by at most twice the
    per-value slack, hence the 2**(2-k) order tolerance.
    """
    add_tol = Fraction(3, 2 ** (k - 1)) if k >= 1 else Fraction(6)
    ord_tol = Fraction(4, 2**k)
    rows: list[HomomorphismRow] = []
    bad: list[str] = []
    for i, (a, b) in enumerate(pairs):
        pa = phi(a).approx(k)
        pb = phi(b).approx(k)
        pab = phi(struct.concat(a, b)).approx(k)
        residual = abs(pab - (pa + pb))
        add_ok = residual <= add_tol
        if not add_ok:
            bad.append(f"additivity residual {residual} at pair {i}")
        applicable = struct.less(a, b)
        order_ok = True
        if applicable and not pa < pb + ord_tol:
            order_ok = False
            bad.append(f"order not preserved at pair {i}")
        rows.append(HomomorphismRow(residual, add_ok, applicable, order_ok))
    return HomomorphismReport(k, add_tol, ord_tol, tuple(rows), tuple(bad))


@dataclass(frozen=True)
class ScalarRow:
    residual: Rational
    tolerance: Rational
    ok: bool


@dataclass(frozen=True)
class ScalarReport:
    v: Rational
    anchor: int  # sample position the scalar was estimated from
    rows: tuple[ScalarRow, ...]
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_scalar_uniqueness(
    struct: MeasurementStructure,
    c1: Element,
    r1: Rational,
    c2: Element,
    r2: Rational,
    samples: Sequence[Element],
    k: int,
) -> ScalarReport:
    """Two measurements of the same carrier differ by one scalar.

    v is estimated from the first sample that measures nonzero at level
    k; the rest must satisfy |psi_k(a) - v * phi_k(a)| within a
    first-order propagated tolerance (each approximant is within
    2**(1-k) of its limit, the estimate inherits both slacks scaled by
    the anchor's size, and a factor of two guards the estimate standing
    in for the true scalar).
    """
    if not samples:
        raise ValueError("need at least one sample")
    phi_k = [holder_phi(struct, a, c1, r1, k) for a in samples]
    psi_k = [holder_phi(struct, a, c2, r2, k) for a in samples]
    anchor = next((i for i, q in enumerate(phi_k) if q != 0), None)
    if anchor is None:
        raise ValueError("every sample measured zero; cannot estimate v")
    v = psi_k[anchor] / phi_k[anchor]
    slack = Fraction(2, 2**k)  # 2**(1-k)
    rows: list[ScalarRow] = []
    bad: list[str] = []
    for i, a in enumerate(samples):
        residual = abs(psi_k[i] - v * phi_k[i])
        tol = 2 * slack * (1 + v) * (1 + phi_k[i] / phi_k[anchor])
        ok = residual <= tol
        if not ok:
            bad.append(f"scalar residual {residual} at sample {i}")
        rows.append(ScalarRow(residual, tol, ok))
    return ScalarReport(v, anchor, tuple(rows), tuple(bad))


def concat_powers(
    struct: MeasurementStructure, c: Element
) -> Iterator[Element]:
    """c, c∘c, c∘(c∘c), ...: the discrete ladder over any structure."""
    cur = c
    while True:
        yield cur
        cur = struct.concat(c, cur)
