"""
Seeded random corpus and the reduction-vs-oracle harness.
"""
import json
import time
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from .config import (
    BENCH_COEFF_BOUND,
    BENCH_COUNT,
    BENCH_MAX_LE,
    BENCH_MAX_LT,
    BENCH_MAX_NE,
    BENCH_MAX_VARS,
    BENCH_SEED,
)
from .constants import BENCH_CSV_NAME, BENCH_SUMMARY_NAME
from .errors import AlpFeasibilityError
from .logger import logger
from .model import Constraint, LinearSystem, Relop, validate
from .oracle import oracle_feasible
from .reduce import decide_feasibility, reduce
from .report import BenchSummary

BENCH_COLUMNS = [
    "index", "n_vars", "P", "Q", "R", "E",
    "alp_count", "oracle_cases", "verdict", "oracle_verdict", "agree", "error",
]


def _random_row(rng: np.random.Generator, variables: Sequence[str], relop: Relop, bound: int) -> Constraint:
    coeffs = rng.integers(-bound, bound + 1, size=len(variables))
    rhs = int(rng.integers(-bound, bound + 1))
    return Constraint({v: Fraction(int(c)) for v, c in zip(variables, coeffs)}, relop, Fraction(rhs))


def random_system(
    rng: np.random.Generator,
    max_vars: int = BENCH_MAX_VARS,
    max_le: int = BENCH_MAX_LE,
    max_lt: int = BENCH_MAX_LT,
    max_ne: int = BENCH_MAX_NE,
    coeff_bound: int = BENCH_COEFF_BOUND,
    max_eq: int = 0,
    ne_count: Optional[int] = None,
) -> LinearSystem:
    """Integer coefficients in [-coeff_bound, coeff_bound]; ``ne_count`` forces R."""
    n = int(rng.integers(1, max_vars + 1))
    variables = [f"x{i}" for i in range(1, n + 1)]
    p = int(rng.integers(0, max_le + 1))
    q = int(rng.integers(0, max_lt + 1))
    e = int(rng.integers(0, max_eq + 1))
    r = ne_count if ne_count is not None else int(rng.integers(0, max_ne + 1))
    rows = []
    for relop, count in ((Relop.LE, p), (Relop.LT, q), (Relop.EQ, e), (Relop.NE, r)):
        rows.extend(_random_row(rng, variables, relop, coeff_bound) for _ in range(count))
    return validate(rows, variables)


def _bench_instance(index: int, system: LinearSystem, jobs: int) -> Tuple[Dict, float, float]:
    counts = system.counts
    row = {
        "index": index,
        "n_vars": counts["N"],
        "P": counts["P"],
        "Q": counts["Q"],
        "R": counts["R"],
        "E": counts["E"],
        "alp_count": 0,
        "oracle_cases": 2 ** counts["R"],
        "verdict": "",
        "oracle_verdict": "",
        "agree": False,
        "error": "",
    }
    decide_s = oracle_s = 0.0
    try:
        start = time.perf_counter()
        bundle = reduce(system)
        row["alp_count"] = len(bundle.alps)
        verdict = decide_feasibility(system, jobs=jobs, bundle=bundle)
        decide_s = time.perf_counter() - start
        row["verdict"] = verdict.status.value

        start = time.perf_counter()
        oracle = oracle_feasible(system)
        oracle_s = time.perf_counter() - start
        row["oracle_verdict"] = oracle.status.value
        row["agree"] = oracle.status is verdict.status
    except AlpFeasibilityError as e:
        row["error"] = f"{type(e).__name__}: {e}"
        logger.log_warning(f"instance {index}: {row['error']}")
    return row, decide_s, oracle_s


def run_bench(
    seed: int = BENCH_SEED,
    count: int = BENCH_COUNT,
    max_vars: int = BENCH_MAX_VARS,
    max_le: int = BENCH_MAX_LE,
    max_lt: int = BENCH_MAX_LT,
    max_ne: int = BENCH_MAX_NE,
    coeff_bound: int = BENCH_COEFF_BOUND,
    r_values: Optional[Sequence[int]] = None,
    jobs: int = 1,
) -> Tuple[pd.DataFrame, BenchSummary]:
    """One row per instance. With ``r_values`` instance i gets R = r_values[i % len]."""
    rng = np.random.default_rng(seed)
    records: List[Dict] = []
    decide_total = oracle_total = 0.0
    started = time.perf_counter()
    for index in range(1, count + 1):
        forced = r_values[(index - 1) % len(r_values)] if r_values else None
        system = random_system(rng, max_vars, max_le, max_lt, max_ne, coeff_bound, ne_count=forced)
        row, decide_s, oracle_s = _bench_instance(index, system, jobs)
        records.append(row)
        decide_total += decide_s
        oracle_total += oracle_s
        logger.log_debug(f"instance {index}: R={row['R']} {row['verdict']} / {row['oracle_verdict']}")

    frame = pd.DataFrame.from_records(records, columns=BENCH_COLUMNS)
    agree = int(frame["agree"].sum())
    errors = int((frame["error"] != "").sum())
    summary = BenchSummary(
        seed=seed,
        count=count,
        agree=agree,
        disagree=count - agree - errors,
        errors=errors,
        agreement=f"{agree}/{count}",
        decide_s=round(decide_total, 6),
        oracle_s=round(oracle_total, 6),
        total_s=round(time.perf_counter() - started, 6),
    )
    return frame, summary


def write_bench(frame: pd.DataFrame, summary: BenchSummary, out_dir: Path) -> Tuple[Path, Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / BENCH_CSV_NAME
    summary_path = out_dir / BENCH_SUMMARY_NAME
    frame.to_csv(csv_path, index=False)
    summary_path.write_text(json.dumps(summary.model_dump(), indent=2) + "\n", encoding="utf-8")
    return csv_path, summary_path
