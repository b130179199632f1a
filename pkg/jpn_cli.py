#!/usr/bin/env python3
"""
JP_n Verification CLI
Command-line front end producing reproducible, machine-readable verification reports
"""

import argparse
import asyncio
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd
from dotenv import load_dotenv

from superjordan import SuperJordanError, InvalidParameter
from verification_system import CHECKS, RunReport, VerificationSystem

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

logger = logging.getLogger("jpn_cli")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="json", help="report format")
    common.add_argument("--output", metavar="PATH", help="write the report to PATH instead of stdout")
    common.add_argument("--timing", action="store_true", help="include wall time in the report")

    parser = argparse.ArgumentParser(
        prog="jpn",
        description="Exact verification of JP_n, its bimodules and Wedderburn complements",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build", parents=[common], help="emit structure constants as JSON")
    build.add_argument("--n", type=int, required=True)
    build.add_argument("--target", choices=["jpn", "pn", "mnn", "extension"], default="jpn")
    build.add_argument("--case", help="radical case for --target extension (reg, regop, pn, pnop)")

    check = sub.add_parser("check", parents=[common], help="run identity and Peirce checks")
    check.add_argument("target", nargs="?", choices=["jpn", "mnn", "extension"], default="jpn")
    check.add_argument("case", nargs="?", help="radical case for the extension target")
    check.add_argument("--n", type=int)
    check.add_argument("--input", metavar="PATH", help="structure-constant JSON file to check")
    check.add_argument("--all", action="store_true", help="run every check")
    for name in CHECKS:
        check.add_argument(f"--{name}", action="store_true", help=f"run the {name} check")

    tables = sub.add_parser("tables", parents=[common], help="named multiplication table")
    tables.add_argument("--n", type=int, required=True)
    tables.add_argument("--module", choices=["jpn", "pn"], default="jpn")

    peirce = sub.add_parser("peirce", parents=[common], help="Peirce components and relations")
    peirce.add_argument("target", nargs="?", choices=["jpn", "extension"], default="jpn")
    peirce.add_argument("case", nargs="?")
    peirce.add_argument("--n", type=int, required=True)

    wpt = sub.add_parser("wpt-solve", parents=[common], help="construct a Wedderburn complement")
    wpt.add_argument("--case", required=True)
    wpt.add_argument("--n", type=int, required=True)
    wpt.add_argument("--seed", type=int, default=0)
    wpt.add_argument("--closed-form", action="store_true", help="use the theta recurrence (regular case)")
    wpt.add_argument("--mode", choices=["linear", "closed-form", "symbolic"])
    wpt.add_argument("--theta1", default="0", help="gauge choice for the closed form")

    lemma = sub.add_parser("lemma-derive", parents=[common], help="reduced lemma constraint system")
    lemma.add_argument("--case", required=True)
    lemma.add_argument("--n", type=int, required=True)
    lemma.add_argument("--curated", action="store_true", help="use the curated instances only")

    return parser


def _frame(rows: Sequence[Dict[str, Any]]) -> str:
    if not rows:
        return "(none)"
    return pd.DataFrame(list(rows)).to_string(index=False)


def render_text(report: RunReport) -> str:
    """Aligned text rendering of a report."""
    params = " ".join(f"{k}={v}" for k, v in sorted(report.parameters.items()))
    lines = [f"{report.command} {params}", f"verdict: {'PASS' if report.passed else 'FAIL'}", ""]
    verdicts = [
        {"check": name, "passed": ok, "counterexamples": len(report.counterexamples.get(name, []))}
        for name, ok in report.verdicts.items()
    ]
    lines.append(_frame(verdicts))

    result = report.result
    if "basis" in result:
        lines += ["", f"basis (dim {result['dim']}):", _frame(result["basis"])]
    if "rows" in result:
        lines += ["", _frame(result["rows"])]
    for key in ("peirce", "components"):
        if key in result:
            rows = [{k: v for k, v in row.items() if k != "basis"} for row in result[key]]
            lines += ["", "Peirce components:", _frame(rows)]
    if "system" in result:
        system = result["system"]
        lines += ["", f"free unknowns ({system['free_count']}): {', '.join(system['free'])}", ""]
        lines.append(_frame([{"unknown": s["unknown"], "value": s["value"]} for s in system["solved"]]))
    if "corrections" in result:
        rows = [{"label": k, "correction": v} for k, v in sorted(result["corrections"].items())]
        lines += ["", "corrections:", _frame(rows)]
    for name, examples in sorted(report.counterexamples.items()):
        lines += ["", f"counterexamples for {name}:"]
        lines += [f"  {example}" for example in examples]
    if report.wall_time is not None:
        lines += ["", f"wall time: {report.wall_time:.3f}s"]
    return "\n".join(lines) + "\n"


def write_report(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _selected_checks(args: argparse.Namespace) -> List[str]:
    if args.all:
        return list(CHECKS)
    chosen = [name for name in CHECKS if getattr(args, name)]
    return chosen or list(CHECKS)


async def dispatch(system: VerificationSystem, args: argparse.Namespace) -> RunReport:
    if args.command == "check":
        if args.case and args.target != "extension":
            raise InvalidParameter(f"A case is only meaningful for the extension target, got {args.case!r}")
        coro = system.check(_selected_checks(args), target=args.target, n=args.n, case=args.case,
                            path=args.input)
    elif args.command == "build":
        coro = asyncio.to_thread(system.build, args.target, args.n, args.case)
    elif args.command == "tables":
        coro = asyncio.to_thread(system.tables, args.n, args.module)
    elif args.command == "peirce":
        coro = asyncio.to_thread(system.peirce, args.target, args.n, args.case)
    elif args.command == "wpt-solve":
        mode = args.mode or ("closed-form" if args.closed_form else "linear")
        coro = asyncio.to_thread(system.wpt_solve, args.case, args.n, args.seed, mode, args.theta1)
    else:
        coro = asyncio.to_thread(system.lemma_derive, args.case, args.n, args.curated)
    return await system.run_timed(args.command, coro, args.timing)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments, run one command and write its report.

    Returns:
        0 when every verdict passes, 1 on a failed verdict, 2 on usage or parse errors
    """
    load_dotenv()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_PASS

    system = VerificationSystem()
    try:
        report = asyncio.run(dispatch(system, args))
    except InvalidParameter as e:
        logger.error(f"Invalid parameters: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SuperJordanError as e:
        logger.error(f"{args.command} failed: {e}")
        report = RunReport(command=args.command, parameters={k: v for k, v in sorted(vars(args).items())
                                                             if k not in ("format", "output", "timing")})
        report.verdicts[args.command] = False
        report.counterexamples[args.command] = [{"error": str(e), "kind": type(e).__name__}]

    text = report.to_json() + "\n" if args.format == "json" else render_text(report)
    try:
        write_report(text, args.output)
    except OSError as e:
        print(f"error: cannot write report: {e}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_PASS if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
