"""Command-line front end.

Loads spec and scenario inputs (file paths, falling back to the
bundled example names), dispatches to the shared operation layer, and
renders the response either as stable line-oriented text or as a
single JSON object. Diagnostics always go to the error stream.

Exit codes: 0 entailed / solutions found, 1 not entailed / none,
2 usage, parse, or validation error, 3 inconsistent encoding,
4 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import IO, Optional

from . import __version__
from .bundle import bundled_domain, bundled_scenario
from .errors import CpsfError, ResourceBudgetExceededError
from .service import ops
from .service.schemas import (
    AllSatResponse,
    CheckResponse,
    CompleteResponse,
    DumpResponse,
    MitigateResponse,
    ValidateResponse,
    WhatIfResponse,
)

EXIT_OK = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_INCONSISTENT = 3
EXIT_BUDGET = 4

BUDGET_ENV = "CPSF_BUDGET"


def _read_domain(path: str) -> str:
    if os.path.exists(path):
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    try:
        return bundled_domain(path)
    except KeyError:
        raise FileNotFoundError(f"spec not found: {path}")


def _read_scenario(path: Optional[str]) -> Optional[str]:
    if path is None:
        return None
    if os.path.exists(path):
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    try:
        return bundled_scenario(path)
    except KeyError:
        raise FileNotFoundError(f"scenario not found: {path}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cpsfr",
        description="Reason about a CPS design against its concern forest.",
    )
    parser.add_argument("--version", action="version", version=f"cpsfr {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, scenario=True, solving=True):
        p.add_argument("spec", help="spec file path or bundled name (lkas, lkas_patch)")
        if scenario:
            p.add_argument(
                "--scenario",
                help="scenario file path or bundled name (design1, partial1, attacked)",
            )
        p.add_argument(
            "--format", choices=("text", "json"), default="text", help="output format"
        )
        if solving:
            p.add_argument("--horizon", type=int, help="final step (capped, not extended)")
            p.add_argument(
                "--budget",
                type=int,
                help=f"search node budget (also via ${BUDGET_ENV})",
            )
            p.add_argument(
                "--dump-program",
                action="store_true",
                help="write the ground program to stderr before solving",
            )

    p = sub.add_parser("check", help="cautious entailment of a query literal")
    common(p)
    p.add_argument("--query", required=True, help='query literal, e.g. "sat(all)@0"')
    p.add_argument("--max-witnesses", type=int, default=5)

    p = sub.add_parser("allsat", help="are all aspects satisfied at a step")
    common(p)
    p.add_argument("--step", type=int, default=0)
    p.add_argument("--max-witnesses", type=int, default=5)

    p = sub.add_parser("complete", help="complete a partial design toward a goal")
    common(p)
    p.add_argument("--goal", required=True, help='goal concern, e.g. "Trustworthiness"')
    p.add_argument("--max-solutions", type=int)

    p = sub.add_parser("whatif", help="query after the scenario's recorded actions")
    common(p)
    p.add_argument("--query", required=True)
    p.add_argument("--max-witnesses", type=int, default=5)
    p.add_argument(
        "--show-triggered",
        action="store_true",
        help="also report entailed action occurrences",
    )

    p = sub.add_parser("mitigate", help="find action sets restoring a goal")
    common(p)
    p.add_argument("--restore", required=True, help='goal: "all" or a concern path')
    p.add_argument(
        "--minimal",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="only minimum-cardinality plans",
    )
    p.add_argument("--candidates", help="comma-separated action names")
    p.add_argument("--max-solutions", type=int)

    p = sub.add_parser("validate", help="parse and validate a spec file")
    common(p, scenario=False, solving=False)

    p = sub.add_parser("dump", help="print the ground program")
    common(p, solving=False)
    p.add_argument("--horizon", type=int)

    return parser


def _resolve_budget(args, err: IO[str]) -> Optional[int]:
    budget = getattr(args, "budget", None)
    if budget is not None:
        return budget
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise CpsfError(
            f"${BUDGET_ENV} must be an integer, got {raw!r}", code="Usage"
        )


def _verdict_lines(v, out: list[str]) -> None:
    out.append(f"verdict: {v.status}")
    out.append(f"mode: {v.mode}")
    out.append(f"negation-entailed: {'yes' if v.negation_entailed else 'no'}")
    if v.explanation:
        out.append("explanation:")
        for concern, cause in v.explanation:
            out.append(f"  {concern} <- {cause}")


def _witness_lines(witnesses, out: list[str]) -> None:
    if witnesses:
        out.append("witness:")
        for lit in witnesses[0]:
            out.append(f"  {lit}")


def _render_text(resp) -> str:
    out: list[str] = [f"task: {resp.task}"]
    if isinstance(resp, CheckResponse):
        out.append(f"query: {resp.query}")
        out.append(f"horizon: {resp.horizon}")
        _verdict_lines(resp.verdict, out)
        _witness_lines(resp.witnesses, out)
    elif isinstance(resp, AllSatResponse):
        out.append(f"step: {resp.step}")
        out.append(f"horizon: {resp.horizon}")
        _verdict_lines(resp.verdict, out)
        out.append(
            "unsatisfied: "
            + (", ".join(resp.unsatisfied) if resp.unsatisfied else "none")
        )
        _witness_lines(resp.witnesses, out)
    elif isinstance(resp, WhatIfResponse):
        out.append(f"query: {resp.query}")
        out.append(f"horizon: {resp.horizon}")
        _verdict_lines(resp.verdict, out)
        if resp.triggered is not None:
            if resp.triggered:
                out.append("triggered:")
                for item in resp.triggered:
                    out.append(f"  {item.action} @ {item.step}")
            else:
                out.append("triggered: none")
        _witness_lines(resp.witnesses, out)
    elif isinstance(resp, CompleteResponse):
        out.append(f"goal: {resp.goal}")
        out.append(f"status: {resp.status}")
        out.append(f"completions: {len(resp.completions)}")
        for i, assignment in enumerate(resp.completions, start=1):
            if assignment:
                rendered = ", ".join(
                    f"{prop}={'true' if value else 'false'}"
                    for prop, value in assignment.items()
                )
            else:
                rendered = "(no open atoms)"
            out.append(f"completion {i}: {rendered}")
    elif isinstance(resp, MitigateResponse):
        out.append(f"goal: {resp.goal}")
        out.append(f"step: {resp.step}")
        out.append(f"goal-step: {resp.goal_step}")
        out.append(f"minimize: {'yes' if resp.minimize else 'no'}")
        out.append(f"status: {resp.status}")
        out.append(f"plans: {len(resp.plans)}")
        for i, plan in enumerate(resp.plans, start=1):
            out.append(f"plan {i} (cost {plan.cost}): " + ", ".join(plan.actions))
    elif isinstance(resp, ValidateResponse):
        out.append(f"ok: {'yes' if resp.ok else 'no'}")
        if resp.ok:
            out.append(f"aspects: {resp.aspects}")
            out.append(f"concerns: {resp.concerns}")
            out.append(f"properties: {resp.properties}")
            out.append(f"actions: {resp.actions}")
            out.append(f"statements: {resp.statements}")
    elif isinstance(resp, DumpResponse):
        out.append(f"horizon: {resp.horizon}")
        out.extend(resp.rules)
        out.extend(resp.weak)
    return "\n".join(out) + "\n"


def _exit_code(resp) -> int:
    if isinstance(resp, (CheckResponse, AllSatResponse, WhatIfResponse)):
        return {
            "Entailed": EXIT_OK,
            "NotEntailed": EXIT_NO,
            "Inconsistent": EXIT_INCONSISTENT,
        }[resp.verdict.status]
    if isinstance(resp, (CompleteResponse, MitigateResponse)):
        return {
            "ok": EXIT_OK,
            "NoSolution": EXIT_NO,
            "Inconsistent": EXIT_INCONSISTENT,
        }[resp.status]
    if isinstance(resp, ValidateResponse):
        return EXIT_OK if resp.ok else EXIT_USAGE
    return EXIT_OK


def _dump_to_stderr(args, domain_text, scenario_text, err: IO[str]) -> None:
    horizon = getattr(args, "horizon", None)
    resp = ops.op_dump(
        domain_text,
        scenario_text,
        horizon=horizon,
        domain_filename=args.spec,
        scenario_filename=getattr(args, "scenario", None) or "<scenario>",
    )
    for line in resp.rules:
        print(line, file=err)
    for line in resp.weak:
        print(line, file=err)


def _dispatch(args, out: IO[str], err: IO[str]) -> int:
    if args.command == "validate":
        resp = ops.op_validate(_read_domain(args.spec), args.spec)
        if not resp.ok:
            for item in resp.errors:
                print(
                    f"{item.file}:{item.line}:{item.col}: {item.code}: {item.message}",
                    file=err,
                )
    elif args.command == "dump":
        resp = ops.op_dump(
            _read_domain(args.spec),
            _read_scenario(args.scenario),
            horizon=args.horizon,
            domain_filename=args.spec,
            scenario_filename=args.scenario or "<scenario>",
        )
    else:
        domain_text = _read_domain(args.spec)
        scenario_text = _read_scenario(args.scenario)
        budget = _resolve_budget(args, err)
        if getattr(args, "dump_program", False):
            _dump_to_stderr(args, domain_text, scenario_text, err)
        names = dict(
            domain_filename=args.spec,
            scenario_filename=args.scenario or "<scenario>",
        )
        if args.command == "check":
            resp = ops.op_check(
                domain_text,
                scenario_text,
                args.query,
                horizon=args.horizon,
                budget=budget,
                max_witnesses=args.max_witnesses,
                **names,
            )
        elif args.command == "allsat":
            resp = ops.op_allsat(
                domain_text,
                scenario_text,
                step=args.step,
                horizon=args.horizon,
                budget=budget,
                max_witnesses=args.max_witnesses,
                **names,
            )
        elif args.command == "complete":
            resp = ops.op_complete(
                domain_text,
                scenario_text,
                args.goal,
                max_solutions=args.max_solutions,
                budget=budget,
                **names,
            )
        elif args.command == "whatif":
            resp = ops.op_whatif(
                domain_text,
                scenario_text,
                args.query,
                show_triggered=args.show_triggered,
                horizon=args.horizon,
                budget=budget,
                max_witnesses=args.max_witnesses,
                **names,
            )
        elif args.command == "mitigate":
            candidates = None
            if args.candidates:
                candidates = [n.strip() for n in args.candidates.split(",") if n.strip()]
            resp = ops.op_mitigate(
                domain_text,
                scenario_text,
                args.restore,
                minimal=args.minimal,
                candidates=candidates,
                max_solutions=args.max_solutions,
                budget=budget,
                **names,
            )
        else:
            raise CpsfError(f"unknown command {args.command}", code="Usage")
    for note in resp.diagnostics:
        print(f"note: {note}", file=err)
    if args.format == "json":
        print(resp.model_dump_json(indent=2), file=out)
    else:
        out.write(_render_text(resp))
    return _exit_code(resp)


def run(
    argv: Optional[list[str]] = None,
    stdout: Optional[IO[str]] = None,
    stderr: Optional[IO[str]] = None,
) -> int:
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return _dispatch(args, out, err)
    except ops.ParseFailure as exc:
        for e in exc.errors:
            print(str(e), file=err)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except ResourceBudgetExceededError as exc:
        print(f"error: {exc.code}: {exc.message}", file=err)
        return EXIT_BUDGET
    except CpsfError as exc:
        print(f"error: {exc.code}: {exc.message}", file=err)
        return EXIT_INCONSISTENT if exc.code == "Inconsistent" else EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
