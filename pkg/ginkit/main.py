from __future__ import annotations

import argparse
import logging
import sys
import time
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ginkit import config
from ginkit.algorithms import trace_invariants
from ginkit.betti import betti_In, betti_J, betti_table
from ginkit.core import CIParams, StableIdeal, format_generator, minimal_generators
from ginkit.errors import GinkitError, ParameterError, PreconditionError
from ginkit.groebner_oracle import OracleConfig, oracle_gin
from ginkit.hilbert import hilbert_table, sweep_bound
from ginkit.output import build_record, render_chart, render_m2, render_text, to_json
from ginkit.sweep import parse_vars_list, run_sweep
from ginkit.verifier import FAIL, InvariantVerifier, parse_checks

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

LOG_FORMAT = "%(asctime)s %(name)s %(levelname)s %(message)s"


def configure_logging(verbosity: int) -> None:
    """WARNING by default, INFO with -v, DEBUG with -vv. Always to stderr."""
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


def emit(text: str, output: Optional[str]) -> None:
    """Write rendered output to a file, or to stdout."""
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def parse_perturb(text: str) -> Tuple[int, int]:
    """'INDEX' or 'INDEX:DELTA' (default delta -1)."""
    index, _, delta = text.partition(":")
    try:
        return int(index), int(delta) if delta else -1
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected INDEX[:DELTA], got {text!r}")


def params_from_args(args: argparse.Namespace) -> CIParams:
    return CIParams(args.alpha, args.beta, args.power, args.vars)


def summarize_issues(issues: List[Dict[str, Any]]) -> Tuple[int, int, int]:
    """Return (fail_count, warning_count, info_count)."""
    fail = warning = info = 0
    for issue in issues:
        sev = issue.get("severity", "FAIL")
        if sev == "FAIL":
            fail += 1
        elif sev == "WARNING":
            warning += 1
        else:
            info += 1
    return fail, warning, info


def format_report(result: Dict[str, Any], t_max: Optional[int]) -> str:
    """
    Human-readable verification report.
    Issues are grouped by the check that raised them.
    """
    params: CIParams = result["params"]
    issues = result["issues"]
    lines = [
        "==============================",
        "GIN VERIFICATION REPORT",
        "==============================",
        f"Parameters: alpha={params.alpha}, beta={params.beta}, n={params.n}, m={params.m}",
        f"Case: {result['case'].value}",
        f"k = {result['seq'].k}",
    ]
    if t_max is not None:
        lines.append(f"Hilbert sweep to t = {sweep_bound(params, t_max)}")
    lines.append("")

    for name, status in result["checks"].items():
        mark = {"PASS": "✅", "FAIL": "❌"}.get(status, "–")
        lines.append(f"  {name:<15} {status} {mark}")
    lines.append("")

    fail_count, warning_count, info_count = summarize_issues(issues)
    if fail_count:
        status = "FAIL ❌"
    elif warning_count:
        status = "PASS (Warnings) ⚠️"
    else:
        status = "PASS ✅"
    lines.append(f"Status: {status}")
    lines.append(f"Issues found: {len(issues)}")

    if issues:
        parts = []
        if fail_count:
            parts.append(f"FAIL={fail_count}")
        if warning_count:
            parts.append(f"WARNING={warning_count}")
        if info_count:
            parts.append(f"INFO={info_count}")
        lines.append(f"Breakdown: {', '.join(parts)}")
        lines.append("")

        grouped: Dict[str, List[Dict[str, Any]]] = {}
        for issue in issues:
            grouped.setdefault(issue["check"], []).append(issue)
        for check, group in grouped.items():
            lines.append(f"{check}:")
            for issue in group:
                lines.append(f"  {issue['severity']}: {issue['message']}")

    return "\n".join(lines)


# --- subcommands ---

def cmd_compute(args: argparse.Namespace) -> int:
    params = params_from_args(args)
    started = time.perf_counter()
    trace = trace_invariants(params)
    record = build_record(trace.seq, trace.case, timing=time.perf_counter() - started)

    if args.format == "json":
        emit(to_json(record), args.output)
    elif args.format == "m2":
        emit(render_m2(record), args.output)
    else:
        emit(render_text(record, trace.seq), args.output)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    params = params_from_args(args)
    checks = parse_checks(args.checks.split(",")) if args.checks else None
    verifier = InvariantVerifier(
        params, checks=checks, t_max=args.t_max, seed=args.seed, perturbation=args.perturb
    )
    result = verifier.verify()
    failed = any(status == FAIL for status in result["checks"].values())

    if args.format == "json":
        record = build_record(result["seq"], result["case"], checks=result["checks"], timing=result["elapsed"])
        emit(to_json(record), args.output)
    else:
        emit(format_report(result, args.t_max), args.output)
    return EXIT_FAILED if failed else EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    checks = parse_checks(args.checks.split(",")) if args.checks else None
    vars_list = parse_vars_list(args.vars_list)
    if not vars_list or min(vars_list) < 2:
        raise ParameterError(f"--vars-list needs integers >= 2 (got {args.vars_list!r})")

    result = run_sweep(
        args.alpha_max, args.beta_max, args.n_max, vars_list,
        checks=checks or config.SWEEP_CHECKS,
        t_max=args.t_max,
        parallel=args.parallel,
        workers=args.workers,
    )

    if args.format == "json":
        emit("\n".join(result.records), args.output)
    else:
        lines = [
            f"Tuples checked: {len(result.frame)}",
            "",
            "Case histogram:",
            result.histogram().to_string(),
            "",
        ]
        if result.ok:
            lines.append("Failures: 0 ✅")
        else:
            lines.append(f"Failures: {len(result.failures)} ❌")
            lines += [f"  {failure}" for failure in result.failures]
        emit("\n".join(lines), args.output)

    return EXIT_OK if result.ok else EXIT_FAILED


def cmd_chart(args: argparse.Namespace) -> int:
    params = params_from_args(args)
    trace = trace_invariants(params)
    emit(render_chart(trace.seq, trace.case), args.output)
    return EXIT_OK


def _generators_text(ideal: StableIdeal) -> str:
    return ", ".join(format_generator(x, y) for x, y in minimal_generators(ideal))


def cmd_oracle(args: argparse.Namespace) -> int:
    params = params_from_args(args)
    seq = trace_invariants(params).seq
    computed = StableIdeal(k=seq.k, lambdas=tuple(seq.lambdas))
    cfg = OracleConfig.from_env(args.seed)
    found = oracle_gin(params, cfg)

    agree = found == computed
    lines = [
        f"oracle (seed {cfg.seed}): {_generators_text(found)}",
        f"computed: {_generators_text(computed)}",
        f"agree: {'yes ✅' if agree else 'no ❌'}",
    ]
    emit("\n".join(lines), args.output)
    return EXIT_OK if agree else EXIT_FAILED


def cmd_hilbert(args: argparse.Namespace) -> int:
    params = params_from_args(args)
    seq = trace_invariants(params).seq
    ideal = StableIdeal(k=seq.k, lambdas=tuple(seq.lambdas))
    table = hilbert_table(params, ideal, args.t_max)

    lines = [table.to_string(index=False)]
    if args.betti:
        lines += ["", "Betti shifts of gin(I^n):", betti_table(betti_J(ideal)).to_string(),
                  "", "Betti shifts of I^n:", betti_table(betti_In(params)).to_string()]
    emit("\n".join(lines), args.output)
    return EXIT_OK if bool(table["equal"].all()) else EXIT_FAILED


# --- parser ---

def _add_param_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=int, required=True, help="degree of the first form")
    p.add_argument("--beta", type=int, required=True, help="degree of the second form (>= alpha)")
    p.add_argument("--power", type=int, required=True, help="power n of the ideal")
    p.add_argument("--vars", type=int, default=config.DEFAULT_VARS, help="number of variables m (>= 2)")


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO logs, -vv for DEBUG")
    p.add_argument("--output", help="write output to FILE instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ginkit",
        description="Invariants of reverse-lex generic initial ideals of powers of complete intersections.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="compute the invariants and generators of gin(I^n)")
    _add_param_flags(p)
    _add_common_flags(p)
    p.add_argument("--format", choices=["text", "json", "m2"], default="text")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", help="compute, then run verification checks")
    _add_param_flags(p)
    _add_common_flags(p)
    p.add_argument("--t-max", type=int, help="extend the Hilbert sweep up to this degree")
    p.add_argument("--checks", help=f"comma-separated subset of: {', '.join(config.ALL_CHECKS)}")
    p.add_argument("--seed", type=int, help="seed for the oracle check")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--perturb", type=parse_perturb, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="verify every tuple of a parameter grid")
    p.add_argument("--alpha-max", type=int, required=True)
    p.add_argument("--beta-max", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--vars-list", default=str(config.DEFAULT_VARS), help="comma-separated m values, e.g. 2,3")
    p.add_argument("--checks", help=f"comma-separated subset of: {', '.join(config.ALL_CHECKS)}")
    p.add_argument("--t-max", type=int)
    p.add_argument("--parallel", action="store_true", help="fan tuples out to a process pool")
    p.add_argument("--workers", type=int)
    p.add_argument("--format", choices=["text", "json"], default="text")
    _add_common_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("chart", help="ASCII chart of the gap sequence by phase")
    _add_param_flags(p)
    _add_common_flags(p)
    p.set_defaults(func=cmd_chart)

    p = sub.add_parser("oracle", help="compare with a direct Groebner computation (desk scale)")
    _add_param_flags(p)
    _add_common_flags(p)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("hilbert", help="table of H_In(t) and H_J(t)")
    _add_param_flags(p)
    _add_common_flags(p)
    p.add_argument("--t-max", type=int)
    p.add_argument("--betti", action="store_true", help="also print both Betti tables")
    p.set_defaults(func=cmd_hilbert)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK

    configure_logging(args.verbose)

    try:
        return args.func(args)
    except (ParameterError, PreconditionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except GinkitError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
