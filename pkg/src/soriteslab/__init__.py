"""Exact-rational laboratory for coded reals and budgeted enumerations.

The pieces, bottom up: exact rationals and their enumeration over [0,1]
(numerics); a counter machine with a total program numbering and two
budgeted dovetailed enumerations (machine); rational Cauchy sequences
with an exponential modulus (creal); monotone bounded sequences whose
limits have no computable modulus (specker); interval covers with a
length-bounded generated family and the creeping chain walk (covers);
ordered-semigroup measurement and the bisection-ratio homomorphism
(measurement); the three sorites arguments executed end to end with
replayable verdicts (harness); and a deterministic CLI (cli).
"""

from .creal import (
    CompReal,
    GapComparison,
    GapVerdict,
    creal_add,
    creal_approx,
    creal_cmp_gap,
    creal_from_rational,
    creal_from_rule,
    modulus_violations,
    scalar_mul,
)
from .covers import (
    ChainWalk,
    ConventionViolation,
    Cover,
    CoveredBy,
    Gap,
    InsufficientBudget,
    NotFoundUpTo,
    OpenInterval,
    ReachedOne,
    Stalled,
    Subcover,
    benign_cover,
    chain_violations,
    covers_point,
    creep,
    explicit_cover,
    finite_subcover,
    singular_cover,
    total_length,
)
from .harness import (
    DiscreteSoritesSpec,
    PiPredicate,
    PremiseCheck,
    SigmaPredicate,
    SoritesReport,
    check_continuous_premises,
    eval_pi,
    eval_sigma,
    replay_report,
    run_continuous,
    run_covering,
    run_discrete,
)
from .machine import (
    Dovetailer,
    Halted,
    Instruction,
    MachineProgram,
    OutOfBudget,
    ProgramValidationError,
    constant_program,
    decode,
    encode,
    format_program,
    halting_enum,
    parse_program,
    run,
    slow_halt_program,
    totality_enum,
    totality_input_bound,
)
from .measurement import (
    ArchimedeanBudgetExceeded,
    MeasurementStructure,
    NoSubunitFound,
    QPLUS,
    DYADIC,
    STRUCTURES,
    check_axioms,
    check_homomorphism,
    check_scalar_uniqueness,
    concat_powers,
    holder_phi,
    holder_phi_real,
    n_count,
    subunits,
)
from .numerics import (
    Ordering,
    Rational,
    eta,
    eta_inverse,
    format_rational,
    parse_rational,
    rat_add,
    rat_cmp,
)
from .specker import (
    EnumerationExhausted,
    MembershipInconsistency,
    SpeckerSequence,
    specker_halting,
    specker_identity,
    specker_jump_witness,
    specker_membership,
    specker_stub,
    specker_term,
)

__version__ = "0.1.0"
