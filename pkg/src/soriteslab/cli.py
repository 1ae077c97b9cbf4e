"""Command-line entry point: subcommands, exact output, stable bytes.

Everything printed is derived from exact rationals and deterministic
enumerations, so identical invocations produce byte-identical stdout.
Exit codes: 0 for any computed verdict (including blocked or stalled
ones), 1 for runtime failures such as exhausted budgets, 2 for bad
flags or configuration.

The environment variable SORITES_LAB_BUDGET_CAP (default 10**8) bounds
every step budget a subcommand may request, as a guard against runaway
enumeration.  The global --deterministic flag is accepted and currently
reserved: all code paths are already deterministic, and the flag exists
so future randomized features default to reproducibility.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .covers import (
    ConventionViolation,
    InsufficientBudget,
    chain_walk_to_jsonable,
    cover_from_jsonable,
    cover_to_jsonable,
    creep,
    singular_cover,
)
from .harness import (
    DiscreteSoritesSpec,
    PiPredicate,
    SigmaPredicate,
    report_to_jsonable,
    run_continuous,
    run_covering,
    run_discrete,
)
from .machine import (
    Halted,
    OutOfBudget,
    ProgramValidationError,
    decode,
    encode,
    format_program,
    parse_program,
    run,
)
from .measurement import (
    ArchimedeanBudgetExceeded,
    NoSubunitFound,
    STRUCTURES,
    check_homomorphism,
    holder_phi,
    holder_phi_real,
)
from .numerics import format_rational, parse_rational
from .specker import (
    EnumerationExhausted,
    SpeckerSequence,
    specker_halting,
    specker_identity,
    specker_stub,
)

__all__ = ["RunConfig", "build_config", "dispatch", "main"]

DEFAULT_BUDGET_CAP = 100_000_000

# out-of-the-box dovetail budgets, sized so the stock demonstrations
# (planted slow halt, first handful of certified-total programs) finish
_DEFAULT_CONTINUOUS_BUDGET = 20_000_000
_DEFAULT_COVERING_BUDGET = 2_000_000

# budget and enumeration failures exit 1; malformed values (including
# ProgramValidationError, a ValueError) are usage problems and exit 2
_RUNTIME_ERRORS = (
    InsufficientBudget,
    ConventionViolation,
    EnumerationExhausted,
    ArchimedeanBudgetExceeded,
    NoSubunitFound,
    OSError,
)


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    options: dict
    fmt: str
    deterministic: bool
    budget_cap: int


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2)


def _csv_text(rows: Sequence[Sequence[str]]) -> str:
    # manual join: no carriage returns, no quoting surprises
    return "\n".join(",".join(str(cell) for cell in row) for row in rows)


def _positive_rational(text: str) -> Fraction:
    q = parse_rational(text)
    if q <= 0:
        raise ValueError(f"expected a positive rational, got {text!r}")
    return q


def _build_sequence(
    f_label: str, budget: Optional[int]
) -> SpeckerSequence:
    if f_label == "identity":
        return specker_identity()
    if f_label == "halting":
        if budget is None:
            raise ValueError("--f halting requires --budget")
        return specker_halting(budget)
    if f_label.startswith("stub:"):
        body = f_label[len("stub:"):]
        try:
            values = [int(v) for v in body.split(",") if v != ""]
        except ValueError:
            raise ValueError(f"bad stub listing {f_label!r}")
        if not values or any(v < 0 for v in values):
            raise ValueError(f"bad stub listing {f_label!r}")
        return specker_stub(values)
    raise ValueError(f"unknown listing {f_label!r}")


def _load_program(spec: str):
    """File path, bare numeric code, or inline text ('; ' as line breaks)."""
    if os.path.exists(spec):
        with open(spec, "r", encoding="utf-8") as fh:
            return parse_program(fh.read())
    if spec.isdigit():
        return decode(int(spec))
    return parse_program(spec.replace(";", "\n"))


def build_config(argv: Sequence[str]) -> RunConfig:
    parser = argparse.ArgumentParser(
        prog="soriteslab",
        description="exact-rational laboratory for coded reals, budgeted "
        "enumerations, and the three sorites arguments",
    )
    parser.add_argument(
        "--deterministic",
        action="store_true",
        default=True,
        help="reserved; all current code paths are deterministic",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_format(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--format",
            choices=("csv", "json", "text"),
            default="text",
            dest="fmt",
        )

    p = sub.add_parser("specker", help="partial sums of a Specker listing")
    p.add_argument("--f", default="identity", dest="f_label",
                   help="identity | stub:3,0,5 | halting")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--budget", type=int, default=None)
    add_format(p)

    p = sub.add_parser("cover", help="emit a cover as interval rows")
    p.add_argument("mode", choices=("singular",))
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--terms", type=int, required=True)
    add_format(p)

    p = sub.add_parser("creep", help="chain-walk a cover file from 0")
    p.add_argument("--cover", required=True, dest="cover_file")
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("--terms", type=int, default=None)
    add_format(p)

    p = sub.add_parser("holder", help="measure an element against a unit")
    p.add_argument("--structure", choices=sorted(STRUCTURES), default="qplus")
    p.add_argument("--a", required=True)
    p.add_argument("--unit", default="1")
    p.add_argument("--r", default="1")
    p.add_argument("--k", type=int, default=8)
    add_format(p)

    p = sub.add_parser("sorites", help="run one of the three arguments")
    p.add_argument("mode", choices=("discrete", "continuous", "covering"))
    p.add_argument("--steps", type=int, default=1000)
    p.add_argument("--start", default="6/5")
    p.add_argument("--delta", default="1/1000")
    p.add_argument("--threshold", default="9/5")
    p.add_argument("--f", default="halting", dest="f_label")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--terms", type=int, default=None)
    p.add_argument("--k", type=int, default=8)
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("--samples", type=int, default=4)
    add_format(p)

    p = sub.add_parser("machine", help="run, encode, or decode programs")
    p.add_argument("mode", choices=("run", "encode", "decode"))
    p.add_argument("--program", default=None)
    p.add_argument("--code", type=int, default=None)
    p.add_argument("--input", type=int, default=0)
    p.add_argument("--steps", type=int, default=1_000_000)
    add_format(p)

    ns = parser.parse_args(list(argv))
    cap_text = os.environ.get("SORITES_LAB_BUDGET_CAP")
    if cap_text is None:
        cap = DEFAULT_BUDGET_CAP
    else:
        try:
            cap = int(cap_text)
        except ValueError:
            parser.error(
                f"SORITES_LAB_BUDGET_CAP must be an integer, got {cap_text!r}"
            )
        if cap < 0:
            parser.error("SORITES_LAB_BUDGET_CAP must be non-negative")
    options = vars(ns)
    subcommand = options.pop("subcommand")
    fmt = options.pop("fmt", "text")
    deterministic = options.pop("deterministic", True)
    return RunConfig(subcommand, options, fmt, deterministic, cap)


def _check_cap(cfg: RunConfig, *budgets: Optional[int]) -> Optional[str]:
    for b in budgets:
        if b is not None and b > cfg.budget_cap:
            return (
                f"requested budget {b} exceeds SORITES_LAB_BUDGET_CAP "
                f"({cfg.budget_cap})"
            )
    return None


def _require_within_cap(cfg: RunConfig, budget: Optional[int]) -> None:
    problem = _check_cap(cfg, budget)
    if problem:
        raise ValueError(problem)


def _run_specker(cfg: RunConfig) -> str:
    opt = cfg.options
    seq = _build_sequence(opt["f_label"], opt["budget"])
    n = opt["n"]
    if n < 0:
        raise ValueError("--n must be a natural number")
    terms = [(i, seq.term(i)) for i in range(n + 1)]
    if cfg.fmt == "csv":
        rows = [("n", "s_n")] + [
            (str(i), format_rational(s)) for i, s in terms
        ]
        return _csv_text(rows)
    if cfg.fmt == "json":
        return _json_text(
            {
                "f": seq.label,
                "rows": [
                    {"n": i, "s_n": format_rational(s)} for i, s in terms
                ],
            }
        )
    return "\n".join(
        f"s_{i} = {format_rational(s)}" for i, s in terms
    )


def _run_cover(cfg: RunConfig) -> str:
    opt = cfg.options
    cover = singular_cover(opt["budget"], opt["terms"])
    rows = cover_to_jsonable(cover)
    if cfg.fmt == "csv":
        table = [("index", "lo", "hi")] + [
            (str(r["index"]), r["lo"], r["hi"]) for r in rows
        ]
        return _csv_text(table)
    if cfg.fmt == "json":
        return _json_text(rows)
    return "\n".join(
        f"{r['index']}: ({r['lo']}, {r['hi']})" for r in rows
    )


def _run_creep(cfg: RunConfig) -> str:
    opt = cfg.options
    with open(opt["cover_file"], "r", encoding="utf-8") as fh:
        cover = cover_from_jsonable(json.load(fh))
    walk = creep(cover, opt["terms"], opt["max_steps"])
    payload = chain_walk_to_jsonable(walk)
    if cfg.fmt == "csv":
        table = [("position", "interval")] + [
            (str(pos), str(m)) for pos, m in enumerate(walk.chain)
        ]
        return _csv_text(table)
    if cfg.fmt == "json":
        return _json_text(payload)
    chain = " ".join(str(m) for m in walk.chain) or "(empty)"
    return (
        f"chain: {chain}\n"
        f"frontier: {payload['frontier']}\n"
        f"status: {payload['status']}"
    )


def _run_holder(cfg: RunConfig) -> str:
    opt = cfg.options
    struct = STRUCTURES[opt["structure"]]
    a = _positive_rational(opt["a"])
    unit = _positive_rational(opt["unit"])
    r = _positive_rational(opt["r"])
    k = opt["k"]
    if k < 0:
        raise ValueError("--k must be a natural number")
    stream = [(j, holder_phi(struct, a, unit, r, j)) for j in range(k + 1)]
    if cfg.fmt == "csv":
        rows = [("k", "q_k")] + [
            (str(j), format_rational(q)) for j, q in stream
        ]
        return _csv_text(rows)
    phi = lambda e: holder_phi_real(struct, e, unit, r)  # noqa: E731
    pairs = [(a, unit), (a, a), (unit, unit)]
    report = check_homomorphism(struct, phi, pairs, k)
    if cfg.fmt == "json":
        return _json_text(
            {
                "structure": struct.name,
                "a": format_rational(a),
                "unit": format_rational(unit),
                "r": format_rational(r),
                "k": k,
                "phi": [
                    {"k": j, "q_k": format_rational(q)} for j, q in stream
                ],
                "value": format_rational(stream[-1][1]),
                "homomorphism": {
                    "additivity_tolerance": format_rational(
                        report.additivity_tolerance
                    ),
                    "order_tolerance": format_rational(
                        report.order_tolerance
                    ),
                    "rows": [
                        {
                            "residual": format_rational(
                                row.additivity_residual
                            ),
                            "additivity_ok": row.additivity_ok,
                            "order_ok": row.order_ok,
                        }
                        for row in report.rows
                    ],
                    "violations": list(report.violations),
                },
            }
        )
    lines = [f"q_{j} = {format_rational(q)}" for j, q in stream]
    lines.append(
        "homomorphism check: "
        + ("ok" if report.ok else f"violations: {'; '.join(report.violations)}")
    )
    return "\n".join(lines)


def _report_text(payload: dict) -> str:
    lines = [f"verdict: {payload['verdict']}"]
    if payload["principle"]:
        lines.append(f"blocked principle: {payload['principle']}")
    for row in payload["premises"]:
        lines.append(
            f"premise {row['name']} @ {row['at']}: {row['outcome']}"
            f" ({row['detail']})"
        )
    witness = payload["evidence"]["witness"]
    lines.append("witness: " + json.dumps(witness, sort_keys=True))
    return "\n".join(lines)


def _report_out(cfg: RunConfig, report) -> str:
    payload = report_to_jsonable(report)
    if cfg.fmt == "json":
        return _json_text(payload)
    if cfg.fmt == "csv":
        rows = [("name", "at", "level", "outcome", "detail")] + [
            (r["name"], r["at"], str(r["level"]), r["outcome"], r["detail"])
            for r in payload["premises"]
        ]
        return _csv_text(rows)
    return _report_text(payload)


def _run_sorites(cfg: RunConfig) -> str:
    opt = cfg.options
    mode = opt["mode"]
    if mode == "discrete":
        spec = DiscreteSoritesSpec(
            _positive_rational(opt["start"]),
            _positive_rational(opt["delta"]),
            opt["steps"],
            _positive_rational(opt["threshold"]),
        )
        return _report_out(cfg, run_discrete(spec))
    if mode == "continuous":
        budget = opt["budget"]
        if opt["f_label"] == "halting" and budget is None:
            budget = _DEFAULT_CONTINUOUS_BUDGET
        _require_within_cap(cfg, budget)
        seq = _build_sequence(opt["f_label"], budget)
        n_budget = opt["terms"] if opt["terms"] is not None else 64
        report = run_continuous(SigmaPredicate(seq), opt["k"], n_budget)
        return _report_out(cfg, report)
    budget = opt["budget"]
    if budget is None:
        budget = _DEFAULT_COVERING_BUDGET
    _require_within_cap(cfg, budget)
    terms = opt["terms"] if opt["terms"] is not None else 5
    cover = singular_cover(budget, terms)
    report = run_covering(
        PiPredicate(cover),
        terms,
        opt["max_steps"],
        opt["samples"],
    )
    return _report_out(cfg, report)


def _run_machine(cfg: RunConfig) -> str:
    opt = cfg.options
    mode = opt["mode"]
    if mode == "decode":
        if opt["code"] is None:
            raise ValueError("machine decode requires --code")
        program = decode(opt["code"])
        text = format_program(program)
        if cfg.fmt == "json":
            return _json_text({"code": opt["code"], "program": text})
        return text
    if opt["program"] is None:
        raise ValueError(f"machine {mode} requires --program")
    program = _load_program(opt["program"])
    if mode == "encode":
        code = encode(program)
        if cfg.fmt == "json":
            return _json_text({"code": code})
        return str(code)
    result = run(program, opt["input"], opt["steps"])
    if isinstance(result, Halted):
        payload = {
            "status": "Halted",
            "output": result.output,
            "steps": result.steps,
        }
    else:
        payload = {"status": "OutOfBudget", "budget": result.budget}
    if cfg.fmt == "json":
        return _json_text(payload)
    if cfg.fmt == "csv":
        keys = list(payload)
        return _csv_text([keys, [str(payload[k]) for k in keys]])
    if isinstance(result, Halted):
        return f"halted with output {result.output} after {result.steps} steps"
    return f"out of budget after {result.budget} steps"


def dispatch(cfg: RunConfig) -> tuple[int, str]:
    """Route a parsed config; returns (exit code, stdout text)."""
    opt = cfg.options
    cap_problem = _check_cap(
        cfg,
        opt.get("budget"),
        opt.get("steps") if cfg.subcommand == "machine" else None,
    )
    if cap_problem:
        print(cap_problem, file=sys.stderr)
        return 2, ""
    handlers = {
        "specker": _run_specker,
        "cover": _run_cover,
        "creep": _run_creep,
        "holder": _run_holder,
        "sorites": _run_sorites,
        "machine": _run_machine,
    }
    try:
        out = handlers[cfg.subcommand](cfg)
    except ValueError as exc:
        # bad flag values discovered past argparse
        print(f"error: {exc}", file=sys.stderr)
        return 2, ""
    except _RUNTIME_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1, ""
    return 0, out


def main(argv: Optional[Sequence[str]] = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    cfg = build_config(argv)
    code, out = dispatch(cfg)
    if out:
        print(out)
    return code
