"""Register machine, program numbering, and dovetailed enumerations.

The machine model is deliberately tiny: instructions INC r / DEC r /
JZ r L / JMP L / HALT, registers holding unbounded naturals, input in
register 1, output read from register 0.  DEC on a zero register is a
no-op, JZ jumps when its register is zero, labels are absolute
instruction indices, and running past the end of the program halts.

Every natural number decodes to a program (a total surjection), and every
program has exactly one canonical code.  A small reserved table pins a
handful of reference programs at the lowest indices: five constants whose
outputs are the enumeration codes of 0, 1, 1/2, 1/3 and 7/8, plus one
program that halts only after ten thousand steps on any input.  Reserving
low indices is what makes these programs reachable by the budgeted
enumerations below; all other programs keep a unique code, shifted up by
the table size.

Two enumerations are derived by dovetailing:

* ``halting_enum`` runs every program on input 0 under the triangular
  schedule (phase t gives one step to each of the first t programs that
  are still running) and emits an index the first time it halts.
* ``totality_enum`` certifies indices e whose program halts on every
  input up to 2**(e+5).  Each index runs its inputs sequentially, one
  machine step per phase, and is admitted at phase 2**e.

Both are deterministic functions of the step budget, monotone in it, and
emit without repetition.  Budgets count scheduled machine steps; halted
programs are skipped, and a program that is born halted (the empty
program) is charged a single observation step.  Programs caught repeating
an exact machine state are provably non-halting; the schedulers stop
stepping them but keep charging their slots, so budget accounting is
exactly that of the plain schedule.
"""

from __future__ import annotations

import threading
from bisect import bisect_left, insort
from dataclasses import dataclass, field
from math import isqrt

__all__ = [
    "Instruction",
    "MachineProgram",
    "GodelIndex",
    "Halted",
    "OutOfBudget",
    "HaltEvent",
    "TotalityEvent",
    "DovetailTrace",
    "HaltingEnumeration",
    "TotalityEnumeration",
    "ProgramValidationError",
    "run",
    "encode",
    "decode",
    "parse_program",
    "format_program",
    "constant_program",
    "slow_halt_program",
    "totality_input_bound",
    "halting_enum",
    "totality_enum",
    "Dovetailer",
    "RESERVED_PROGRAMS",
    "RESERVED_CONSTANT_OUTPUTS",
    "SLOW_HALT_INDEX",
    "SLOW_HALT_STEPS",
]

GodelIndex = int

_OPS = ("INC", "DEC", "JZ", "JMP", "HALT")
_OP_INC, _OP_DEC, _OP_JZ, _OP_JMP, _OP_HALT = range(5)


class ProgramValidationError(ValueError):
    """Malformed program text or out-of-range label/register."""


@dataclass(frozen=True)
class Instruction:
    op: str
    reg: int = 0
    target: int = 0


@dataclass(frozen=True)
class MachineProgram:
    instructions: tuple[Instruction, ...]
    register_count: int = field(init=False)

    def __post_init__(self) -> None:
        n = len(self.instructions)
        regs = 1  # register 1 always exists (input convention)
        for i, ins in enumerate(self.instructions):
            if ins.op not in _OPS:
                raise ProgramValidationError(f"unknown op {ins.op!r} at {i}")
            if ins.op in ("INC", "DEC", "JZ"):
                if ins.reg < 0:
                    raise ProgramValidationError(f"negative register at {i}")
                regs = max(regs, ins.reg)
            elif ins.reg != 0:
                raise ProgramValidationError(f"{ins.op} takes no register (at {i})")
            if ins.op in ("JZ", "JMP"):
                if not 0 <= ins.target < n:
                    raise ProgramValidationError(
                        f"label {ins.target} out of range [0, {n}) at {i}"
                    )
            elif ins.target != 0:
                raise ProgramValidationError(f"{ins.op} takes no label (at {i})")
        object.__setattr__(self, "register_count", regs + 1)

    def __len__(self) -> int:
        return len(self.instructions)


@dataclass(frozen=True)
class Halted:
    output: int
    steps: int


@dataclass(frozen=True)
class OutOfBudget:
    budget: int


# ---------------------------------------------------------------------------
# Text format: one instruction per line, case-insensitive, '#' comments.

def parse_program(text: str) -> MachineProgram:
    instructions: list[Instruction] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.upper().split()
        op, args = parts[0], parts[1:]
        try:
            if op == "HALT":
                if args:
                    raise ValueError("HALT takes no arguments")
                instructions.append(Instruction("HALT"))
            elif op in ("INC", "DEC"):
                (r,) = args
                instructions.append(Instruction(op, reg=int(r)))
            elif op == "JZ":
                r, label = args
                instructions.append(Instruction("JZ", reg=int(r), target=int(label)))
            elif op == "JMP":
                (label,) = args
                instructions.append(Instruction("JMP", target=int(label)))
            else:
                raise ValueError(f"unknown instruction {op!r}")
        except ValueError as exc:
            raise ProgramValidationError(f"line {lineno}: {exc}") from exc
    return MachineProgram(tuple(instructions))


def format_program(p: MachineProgram) -> str:
    lines = []
    for ins in p.instructions:
        if ins.op in ("INC", "DEC"):
            lines.append(f"{ins.op} {ins.reg}")
        elif ins.op == "JZ":
            lines.append(f"JZ {ins.reg} {ins.target}")
        elif ins.op == "JMP":
            lines.append(f"JMP {ins.target}")
        else:
            lines.append("HALT")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Reference programs.

def constant_program(value: int) -> MachineProgram:
    """Outputs `value` on every input: that many INC 0, then fall off."""
    if value < 0:
        raise ValueError("constant must be a natural number")
    return MachineProgram(tuple(Instruction("INC", reg=0) for _ in range(value)))


def slow_halt_program(total_steps: int) -> MachineProgram:
    """Halts after exactly `total_steps` steps on every input."""
    if total_steps < 1:
        raise ValueError("need at least one step")
    body = tuple(Instruction("INC", reg=1) for _ in range(total_steps - 1))
    return MachineProgram(body + (Instruction("HALT"),))


# Outputs of the reserved constants: enumeration codes of 0, 1, 1/2, 1/3, 7/8.
RESERVED_CONSTANT_OUTPUTS = (0, 1, 2, 3, 22)
SLOW_HALT_STEPS = 10_000
SLOW_HALT_INDEX = len(RESERVED_CONSTANT_OUTPUTS)

RESERVED_PROGRAMS: tuple[MachineProgram, ...] = tuple(
    constant_program(v) for v in RESERVED_CONSTANT_OUTPUTS
) + (slow_halt_program(SLOW_HALT_STEPS),)

_RESERVED_SHIFT = len(RESERVED_PROGRAMS)


# ---------------------------------------------------------------------------
# Numbering.  Base coding: n maps to the binary digits of n+1 with the
# leading 1 dropped; runs of 1s, each closed by a 0, are instruction codes
# (a dangling run is closed virtually, so decoding is total).  Code c
# selects the op by c mod 5 and carries the register/label in c div 5,
# with JZ unpacking (reg, label) via the Cantor pairing.  Labels are
# normalized modulo the program length.  The canonical code uses properly
# closed runs; reserved programs sit at indices 0..5 and shift everything
# else up by 6.

def _cantor_pair(x: int, y: int) -> int:
    s = x + y
    return s * (s + 1) // 2 + y

def _cantor_unpair(z: int) -> tuple[int, int]:
    w = (isqrt(8 * z + 1) - 1) // 2
    y = z - w * (w + 1) // 2
    return w - y, y


def _base_decode(n: int) -> MachineProgram:
    bits = bin(n + 1)[3:]  # digits of n+1 after the leading 1
    codes: list[int] = []
    run = 0
    for b in bits:
        if b == "1":
            run += 1
        else:
            codes.append(run)
            run = 0
    if bits and bits[-1] == "1":
        codes.append(run)  # virtual closing 0
    raw: list[tuple[int, int, int]] = []
    for c in codes:
        op, payload = c % 5, c // 5
        if op == _OP_JZ:
            r, label = _cantor_unpair(payload)
            raw.append((op, r, label))
        elif op == _OP_JMP:
            raw.append((op, 0, payload))
        elif op == _OP_HALT:
            raw.append((op, 0, 0))
        else:
            raw.append((op, payload, 0))
    size = len(raw)
    out: list[Instruction] = []
    for op, r, label in raw:
        if op in (_OP_JZ, _OP_JMP):
            label %= size  # size >= 1 whenever a jump exists
        if op == _OP_JZ:
            out.append(Instruction("JZ", reg=r, target=label))
        elif op == _OP_JMP:
            out.append(Instruction("JMP", target=label))
        elif op == _OP_HALT:
            out.append(Instruction("HALT"))
        else:
            out.append(Instruction(_OPS[op], reg=r))
    return MachineProgram(tuple(out))


def _base_encode(p: MachineProgram) -> int:
    bits = []
    for ins in p.instructions:
        if ins.op == "INC":
            c = 5 * ins.reg
        elif ins.op == "DEC":
            c = 5 * ins.reg + 1
        elif ins.op == "JZ":
            c = 5 * _cantor_pair(ins.reg, ins.target) + 2
        elif ins.op == "JMP":
            c = 5 * ins.target + 3
        else:
            c = 4
        bits.append("1" * c + "0")
    return int("1" + "".join(bits), 2) - 1


def decode(g: GodelIndex) -> MachineProgram:
    """Total: every natural number is the code of some program."""
    if g < 0:
        raise ValueError("codes are natural numbers")
    if g < _RESERVED_SHIFT:
        return RESERVED_PROGRAMS[g]
    return _base_decode(g - _RESERVED_SHIFT)


def encode(p: MachineProgram) -> GodelIndex:
    """The canonical code: reserved slot if pinned, else shifted base code."""
    for i, reserved in enumerate(RESERVED_PROGRAMS):
        if p.instructions == reserved.instructions:
            return i
    return _RESERVED_SHIFT + _base_encode(p)


def totality_input_bound(e: GodelIndex) -> int:
    """Largest input on which index e must halt to be certified total."""
    return 2 ** (e + 5)


# ---------------------------------------------------------------------------
# Interpreter.

def _compile(p: MachineProgram) -> list[tuple[int, int, int]]:
    code = []
    for ins in p.instructions:
        op = _OPS.index(ins.op)
        if op in (_OP_INC, _OP_DEC):
            code.append((op, ins.reg, 0))
        elif op == _OP_JZ:
            code.append((op, ins.reg, ins.target))
        elif op == _OP_JMP:
            code.append((op, ins.target, 0))
        else:
            code.append((op, 0, 0))
    return code


def run(p: MachineProgram, input: int, step_budget: int) -> Halted | OutOfBudget:
    """Deterministic small-step execution with an explicit step budget."""
    if input < 0 or step_budget < 0:
        raise ValueError("input and budget must be natural numbers")
    code = _compile(p)
    n = len(code)
    regs = [0] * p.register_count
    if p.register_count > 1:
        regs[1] = input
    pc = 0
    steps = 0
    while True:
        if pc >= n:
            return Halted(regs[0], steps)
        if steps >= step_budget:
            return OutOfBudget(step_budget)
        op, a, b = code[pc]
        steps += 1
        if op == _OP_INC:
            regs[a] += 1
            pc += 1
        elif op == _OP_DEC:
            v = regs[a]
            if v:
                regs[a] = v - 1
            pc += 1
        elif op == _OP_JZ:
            pc = b if regs[a] == 0 else pc + 1
        elif op == _OP_JMP:
            pc = a
        else:
            return Halted(regs[0], steps)


# ---------------------------------------------------------------------------
# Dovetailing.

@dataclass(frozen=True)
class HaltEvent:
    global_step: int
    index: GodelIndex
    input: int
    output: int
    local_steps: int


@dataclass(frozen=True)
class TotalityEvent:
    global_step: int
    index: GodelIndex


@dataclass(frozen=True)
class DovetailTrace:
    events: tuple[HaltEvent, ...]
    steps_used: int


@dataclass(frozen=True)
class HaltingEnumeration:
    emitted: tuple[GodelIndex, ...]
    budget: int
    trace: DovetailTrace

    def __len__(self) -> int:
        return len(self.emitted)

    def __iter__(self):
        return iter(self.emitted)

    def __getitem__(self, m: int) -> GodelIndex:
        return self.emitted[m]


@dataclass(frozen=True)
class TotalityEnumeration:
    emitted: tuple[GodelIndex, ...]
    budget: int
    events: tuple[TotalityEvent, ...]

    def __len__(self) -> int:
        return len(self.emitted)

    def __iter__(self):
        return iter(self.emitted)

    def __getitem__(self, m: int) -> GodelIndex:
        return self.emitted[m]


# Exact machine states seen per job, used to prove non-halting by state
# repetition.  Bounded so that register-growing divergers cannot eat memory.
_CYCLE_CAP = 64


class _Job:
    __slots__ = ("code", "n", "regs", "pc", "local", "seen")

    def __init__(self, e: GodelIndex, input: int) -> None:
        p = decode(e)
        self.code = _compile(p)
        self.n = len(self.code)
        self.regs = [0] * p.register_count
        if p.register_count > 1:
            self.regs[1] = input
        self.pc = 0
        self.local = 0
        # Straight-line programs (no jump to their own index or earlier)
        # halt within n steps; cycle tracking would be pure overhead.
        backjump = any(
            op in (_OP_JZ, _OP_JMP) and (b if op == _OP_JZ else a) <= i
            for i, (op, a, b) in enumerate(self.code)
        )
        self.seen: set | None = set() if backjump else None

    def reset(self, input: int) -> None:
        for i in range(len(self.regs)):
            self.regs[i] = 0
        if len(self.regs) > 1:
            self.regs[1] = input
        self.pc = 0
        self.local = 0
        if self.seen is not None:
            self.seen = set()


class Dovetailer:
    """Deterministic budgeted scheduler for both enumerations.

    A single instance memoizes its whole event history, so asking for a
    smaller budget after a larger one is a log lookup.  Instances are
    independent; each serializes its own advancement with a lock.
    """

    def __init__(self) -> None:
        self._lock = threading.RLock()
        # halting engine state
        self._h_consumed = 0
        self._h_phase = 1
        self._h_slot = 0
        self._h_admitted = 0
        self._h_jobs: dict[int, _Job] = {}
        self._h_order: list[int] = []
        self._h_finished: set[int] = set()
        self._h_proven: set[int] = set()
        self._h_dead = 0  # tombstones in _h_order
        self._h_events: list[HaltEvent] = []
        # totality engine state
        self._t_consumed = 0
        self._t_phase = 1
        self._t_slot = 0
        self._t_admitted = 0
        self._t_jobs: dict[int, _Job] = {}
        self._t_order: list[int] = []
        self._t_input: dict[int, int] = {}
        self._t_bound: dict[int, int] = {}
        self._t_finished: set[int] = set()
        self._t_proven: set[int] = set()
        self._t_events: list[TotalityEvent] = []

    # -- halting ----------------------------------------------------------

    def halting(self, budget: int) -> HaltingEnumeration:
        if budget < 0:
            raise ValueError("budget must be a natural number")
        with self._lock:
            self._advance_halting(budget)
            events = tuple(ev for ev in self._h_events if ev.global_step <= budget)
        emitted = tuple(ev.index for ev in events)
        return HaltingEnumeration(emitted, budget, DovetailTrace(events, budget))

    def _advance_halting(self, budget: int) -> None:
        consumed = self._h_consumed
        if consumed >= budget:
            return
        jobs = self._h_jobs
        order = self._h_order
        finished = self._h_finished
        proven = self._h_proven
        events = self._h_events
        phase = self._h_phase
        slot = self._h_slot
        while consumed < budget:
            # admit program phase-1 on first entry into this phase
            if self._h_admitted == phase - 1:
                jobs[phase - 1] = _Job(phase - 1, 0)
                insort(order, phase - 1)
                self._h_admitted = phase
            i = bisect_left(order, slot)
            n_order = len(order)
            while i < n_order:
                e = order[i]
                if e >= phase:
                    break
                i += 1
                if e in finished:
                    continue
                if consumed >= budget:
                    self._h_slot = e
                    self._h_phase = phase
                    self._h_consumed = consumed
                    self._maybe_compact_halting()
                    return
                consumed += 1
                if e in proven:
                    continue
                job = jobs[e]
                n = job.n
                if n == 0:
                    finished.add(e)
                    self._h_dead += 1
                    events.append(HaltEvent(consumed, e, 0, 0, 0))
                    del jobs[e]
                    continue
                regs = job.regs
                pc = job.pc
                op, a, b = job.code[pc]
                if op == 0:
                    regs[a] += 1
                    pc += 1
                elif op == 1:
                    v = regs[a]
                    if v:
                        regs[a] = v - 1
                    pc += 1
                elif op == 2:
                    pc = b if regs[a] == 0 else pc + 1
                elif op == 3:
                    pc = a
                else:
                    pc = n
                job.local += 1
                if pc >= n:
                    finished.add(e)
                    self._h_dead += 1
                    events.append(HaltEvent(consumed, e, 0, regs[0], job.local))
                    del jobs[e]
                    continue
                job.pc = pc
                seen = job.seen
                if seen is not None:
                    state = (pc, tuple(regs))
                    if state in seen:
                        proven.add(e)
                        del jobs[e]  # provably never halts; slot still charged
                    elif len(seen) < _CYCLE_CAP:
                        seen.add(state)
            phase += 1
            slot = 0
        self._h_phase = phase
        self._h_slot = slot
        self._h_consumed = consumed
        self._maybe_compact_halting()

    def _maybe_compact_halting(self) -> None:
        if self._h_dead * 2 > len(self._h_order):
            finished = self._h_finished
            self._h_order = [e for e in self._h_order if e not in finished]
            self._h_dead = 0

    # -- totality ---------------------------------------------------------

    def totality(self, budget: int) -> TotalityEnumeration:
        if budget < 0:
            raise ValueError("budget must be a natural number")
        with self._lock:
            self._advance_totality(budget)
            events = tuple(ev for ev in self._t_events if ev.global_step <= budget)
        return TotalityEnumeration(tuple(ev.index for ev in events), budget, events)

    def _advance_totality(self, budget: int) -> None:
        consumed = self._t_consumed
        if consumed >= budget:
            return
        jobs = self._t_jobs
        order = self._t_order
        inputs = self._t_input
        finished = self._t_finished
        proven = self._t_proven
        events = self._t_events
        phase = self._t_phase
        slot = self._t_slot
        while consumed < budget:
            # job e joins at phase 2**e; phases advance one at a time, so
            # checking the next power of two at entry admits each job once
            if phase == 1 << self._t_admitted:
                e_new = self._t_admitted
                jobs[e_new] = _Job(e_new, 0)
                inputs[e_new] = 0
                self._t_bound[e_new] = totality_input_bound(e_new)
                order.append(e_new)  # admissions arrive in ascending order
                self._t_admitted = e_new + 1
            for e in order:
                if e < slot or e in finished:
                    continue
                if consumed >= budget:
                    self._t_slot = e
                    self._t_phase = phase
                    self._t_consumed = consumed
                    return
                consumed += 1
                if e in proven:
                    continue
                job = jobs[e]
                n = job.n
                halted_run = False
                if n == 0:
                    halted_run = True  # one observation step per input
                else:
                    regs = job.regs
                    pc = job.pc
                    op, a, b = job.code[pc]
                    if op == 0:
                        regs[a] += 1
                        pc += 1
                    elif op == 1:
                        v = regs[a]
                        if v:
                            regs[a] = v - 1
                        pc += 1
                    elif op == 2:
                        pc = b if regs[a] == 0 else pc + 1
                    elif op == 3:
                        pc = a
                    else:
                        pc = n
                    job.local += 1
                    if pc >= n:
                        halted_run = True
                    else:
                        job.pc = pc
                        seen = job.seen
                        if seen is not None:
                            state = (pc, tuple(regs))
                            if state in seen:
                                # current input provably diverges, so the
                                # index can never be certified; the slot
                                # keeps charging per the schedule
                                proven.add(e)
                                del jobs[e]
                            elif len(seen) < _CYCLE_CAP:
                                seen.add(state)
                if halted_run:
                    i = inputs[e]
                    if i >= self._t_bound[e]:
                        finished.add(e)
                        events.append(TotalityEvent(consumed, e))
                        del jobs[e]
                        del inputs[e]
                    else:
                        inputs[e] = i + 1
                        job.reset(i + 1)
            phase += 1
            slot = 0
        self._t_phase = phase
        self._t_slot = slot
        self._t_consumed = consumed


_default_dovetailer = Dovetailer()


def halting_enum(budget: int) -> HaltingEnumeration:
    """Indices whose programs halt on input 0, in schedule order."""
    return _default_dovetailer.halting(budget)


def totality_enum(budget: int) -> TotalityEnumeration:
    """Indices certified to halt on every input up to their bound."""
    return _default_dovetailer.totality(budget)
