"""
Command-line entry point.

    python -m alp_feasibility check system.lsys [--oracle] [--emit-alps DIR] [--jobs N]
    python -m alp_feasibility reduce system.lsys OUT_DIR
    python -m alp_feasibility oracle system.lsys [--max-cases CAP]
    python -m alp_feasibility nontrivial system.lsys --vars x1,x2
    python -m alp_feasibility bench [--seed S] [--count N] [--max-vars N] [--max-ne R]
    python -m alp_feasibility selftest

Exit codes: 0 feasible, 1 infeasible, 2 usage/parse error, 3 internal limit.
JSON goes to stdout, logs to stderr.
"""
import argparse
import sys
import time
from pathlib import Path
from typing import List, Optional, Sequence

from pydantic import BaseModel

from .config import (
    BENCH_COEFF_BOUND,
    BENCH_COUNT,
    BENCH_MAX_LE,
    BENCH_MAX_LT,
    BENCH_MAX_NE,
    BENCH_MAX_VARS,
    BENCH_OUT_DIR,
    BENCH_SEED,
    DEFAULT_JOBS,
    ORACLE_MAX_NE,
)
from .constants import (
    EXIT_FEASIBLE,
    EXIT_INFEASIBLE,
    EXIT_LIMIT,
    EXIT_USAGE,
    MANIFEST_NAME,
    case_file_name,
)
from .errors import (
    GadgetError,
    NumericDomainError,
    OracleCapError,
    ParseError,
    SolverLimitError,
    ValidationError,
    WitnessError,
)
from .logger import logger
from .model import LinearSystem, Verdict
from .parser import parse_system, render_alp, render_manifest, render_system
from .reduce import ReductionBundle, augment_nontrivial, decide_feasibility, reduce
from .report import CheckReport, NontrivialReport, OracleReport


def _emit(report: BaseModel, compact: bool):
    if compact:
        print(report.model_dump_json())
    else:
        print(report.model_dump_json(indent=2))


def _exit_for(verdict: Verdict) -> int:
    return EXIT_FEASIBLE if verdict.feasible else EXIT_INFEASIBLE


def _load(path: str) -> LinearSystem:
    text = Path(path).read_text(encoding="utf-8")
    system = parse_system(text)
    n = system.counts
    logger.log_info(f"{path}: N={n['N']} P={n['P']} Q={n['Q']} E={n['E']} R={n['R']}")
    return system


def write_bundle(bundle: ReductionBundle, out_dir: str) -> List[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    names = [case_file_name(alp.index) for alp in bundle.alps]
    paths = []
    for alp, name in zip(bundle.alps, names):
        path = out / name
        path.write_text(render_alp(alp), encoding="utf-8")
        paths.append(path)
    (out / MANIFEST_NAME).write_text(render_manifest(bundle, names), encoding="utf-8")
    return paths


def _case_table(bundle: ReductionBundle, verdict: Optional[Verdict] = None):
    rows = []
    for alp in bundle.alps:
        status = ""
        if verdict is not None and verdict.case_index == alp.index:
            status = "[green]first feasible[/]"
        rows.append((str(alp.index), str(alp.case), str(len(alp.rows)), status))
    logger.display_cases(rows)


# ==========================================
# SUBCOMMANDS
# ==========================================

def cmd_check(args) -> int:
    from .oracle import oracle_feasible

    start = time.perf_counter()
    system = _load(args.path)
    logger.log_phase("REDUCE", "building the case family")
    bundle = reduce(system)
    if args.emit_alps:
        paths = write_bundle(bundle, args.emit_alps)
        logger.log_success(f"{len(paths)} ALP files written to {args.emit_alps}")
    logger.log_phase("SOLVE", f"{len(bundle.alps)} ALPs, jobs={args.jobs}")
    verdict = decide_feasibility(system, jobs=args.jobs, bundle=bundle)
    oracle_verdict = None
    if args.oracle:
        logger.log_phase("ORACLE", f"{2 ** system.counts['R']} sign assignments")
        oracle_verdict = oracle_feasible(system, max_ne=args.max_cases, jobs=args.jobs)
        if oracle_verdict.status is not verdict.status:
            logger.log_error(f"oracle disagrees: {oracle_verdict.status.value} vs {verdict.status.value}")
    if logger.verbose:
        _case_table(bundle, verdict)
    report = CheckReport.from_verdict(system, verdict, time.perf_counter() - start, oracle_verdict)
    logger.log_success(f"verdict: {verdict.status.value}")
    _emit(report, args.json)
    return _exit_for(verdict)


def cmd_reduce(args) -> int:
    system = _load(args.path)
    bundle = reduce(system)
    paths = write_bundle(bundle, args.out_dir)
    _case_table(bundle)
    logger.log_success(f"{len(paths)} ALP files and {MANIFEST_NAME} written to {args.out_dir}")
    return EXIT_FEASIBLE


def cmd_oracle(args) -> int:
    from .oracle import oracle_feasible

    start = time.perf_counter()
    system = _load(args.path)
    verdict = oracle_feasible(system, max_ne=args.max_cases, jobs=args.jobs)
    report = OracleReport.from_verdict(system, verdict, time.perf_counter() - start)
    logger.log_success(f"oracle verdict: {verdict.status.value}")
    _emit(report, args.json)
    return _exit_for(verdict)


def _split_vars(values: Sequence[str]) -> List[str]:
    names = []
    for value in values:
        names.extend(n.strip() for n in value.split(",") if n.strip())
    return names


def cmd_nontrivial(args) -> int:
    start = time.perf_counter()
    system = _load(args.path)
    subset = _split_vars(args.vars)
    augmented = augment_nontrivial(system, subset)
    added = len(augmented.constraints) - len(system.constraints)
    logger.log_phase("AUGMENT", f"{added} constraints added for {', '.join(subset)}")
    logger.log_debug(render_system(augmented))
    verdict = decide_feasibility(augmented, jobs=args.jobs)
    base = CheckReport.from_verdict(augmented, verdict, time.perf_counter() - start)
    report = NontrivialReport(
        **base.model_dump(),
        subset=subset,
        added_constraints=added,
        augmented_constraints=len(augmented.constraints),
    )
    logger.log_success(f"non-trivial solution: {'yes' if verdict.feasible else 'no'}")
    _emit(report, args.json)
    return _exit_for(verdict)


def cmd_bench(args) -> int:
    from .bench import run_bench, write_bench

    r_values = [int(r) for r in _split_vars(args.r_values)] if args.r_values else None
    logger.log_section("Bench", f"seed={args.seed} count={args.count}")
    frame, summary = run_bench(
        seed=args.seed,
        count=args.count,
        max_vars=args.max_vars,
        max_le=args.max_le,
        max_lt=args.max_lt,
        max_ne=args.max_ne,
        coeff_bound=args.coeff_bound,
        r_values=r_values,
        jobs=args.jobs,
    )
    csv_path, summary_path = write_bench(frame, summary, Path(args.out))
    logger.display_bench_summary(summary.model_dump())
    logger.log_success(f"{csv_path} and {summary_path} written")
    _emit(summary, args.json)
    return EXIT_FEASIBLE if summary.disagree == 0 else EXIT_INFEASIBLE


def cmd_selftest(args) -> int:
    from .selftest import run_selftest

    report = run_selftest(seed=args.seed)
    logger.display_selftest([(c.name, "pass" if c.passed else "fail", c.detail) for c in report.checks])
    _emit(report, args.json)
    return EXIT_FEASIBLE if report.passed else EXIT_INFEASIBLE


# ==========================================
# ARGUMENTS
# ==========================================

def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="compact JSON, no logs")
    common.add_argument("--verbose", action="store_true", help="debug logs and case tables")
    common.add_argument("--jobs", type=_positive_int, default=DEFAULT_JOBS, help="ALPs evaluated in parallel")

    parser = argparse.ArgumentParser(
        prog="alp_feasibility",
        description="Feasibility of linear systems with <=, <, = and != via asymptotic LPs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", parents=[common], help="decide a .lsys file")
    check.add_argument("path")
    check.add_argument("--oracle", action="store_true", help="cross-check with sign enumeration")
    check.add_argument("--emit-alps", metavar="DIR", help="also write the ALP bundle")
    check.add_argument("--max-cases", type=_positive_int, default=ORACLE_MAX_NE, help="oracle cap on != rows")
    check.set_defaults(handler=cmd_check)

    red = sub.add_parser("reduce", parents=[common], help="write one .alp per case plus a manifest")
    red.add_argument("path")
    red.add_argument("out_dir")
    red.set_defaults(handler=cmd_reduce)

    orc = sub.add_parser("oracle", parents=[common], help="decide by sign enumeration only")
    orc.add_argument("path")
    orc.add_argument("--max-cases", type=_positive_int, default=ORACLE_MAX_NE, help="cap on != rows")
    orc.set_defaults(handler=cmd_oracle)

    nt = sub.add_parser("nontrivial", parents=[common], help="solution with some listed variable nonzero?")
    nt.add_argument("path")
    nt.add_argument("--vars", nargs="+", required=True, help="variables, comma or space separated")
    nt.set_defaults(handler=cmd_nontrivial)

    bench = sub.add_parser("bench", parents=[common], help="random corpus, reduction vs oracle")
    bench.add_argument("--seed", type=int, default=BENCH_SEED)
    bench.add_argument("--count", type=_positive_int, default=BENCH_COUNT)
    bench.add_argument("--max-vars", type=_positive_int, default=BENCH_MAX_VARS)
    bench.add_argument("--max-le", type=int, default=BENCH_MAX_LE)
    bench.add_argument("--max-lt", type=int, default=BENCH_MAX_LT)
    bench.add_argument("--max-ne", type=int, default=BENCH_MAX_NE)
    bench.add_argument("--coeff-bound", type=_positive_int, default=BENCH_COEFF_BOUND)
    bench.add_argument("--r-values", nargs="+", help="force R per instance, cycled (e.g. 5,8)")
    bench.add_argument("--out", default=BENCH_OUT_DIR, help="directory for the CSV and summary")
    bench.set_defaults(handler=cmd_bench)

    st = sub.add_parser("selftest", parents=[common], help="run the embedded invariant suite")
    st.add_argument("--seed", type=int, default=BENCH_SEED)
    st.set_defaults(handler=cmd_selftest)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logger.set_quiet(args.json)
    logger.set_verbose(args.verbose)
    try:
        return args.handler(args)
    except (ParseError, ValidationError, OracleCapError) as e:
        logger.log_error(str(e))
        return EXIT_USAGE
    except OSError as e:
        logger.log_error(f"I/O error: {e}")
        return EXIT_USAGE
    except (SolverLimitError, WitnessError, GadgetError, NumericDomainError) as e:
        logger.log_error(f"internal limit: {e}")
        return EXIT_LIMIT


if __name__ == "__main__":
    sys.exit(main())
