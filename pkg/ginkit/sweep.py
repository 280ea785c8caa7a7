"""
Grid harness: verify every valid (alpha, beta, n, m) up to the given bounds,
serially or on a process pool, and summarise with pandas.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import pandas as pd

from ginkit import config
from ginkit.algorithms import run_equal, run_far
from ginkit.core import CIParams
from ginkit.output import build_record, to_json
from ginkit.verifier import FAIL, InvariantVerifier

LOGGER = logging.getLogger(__name__)

COLUMNS = ["alpha", "beta", "n", "m", "case", "k", "status", "failed"]


@dataclass
class SweepResult:
    frame: pd.DataFrame
    records: List[str] = field(default_factory=list)  # one JSON line per tuple
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def histogram(self) -> pd.Series:
        """Tuples per case tag, most common first."""
        if self.frame.empty:
            return pd.Series(dtype="int64", name="count")
        return self.frame["case"].value_counts()


def grid(alpha_max: int, beta_max: int, n_max: int, vars_list: Sequence[int]) -> List[Tuple[int, int, int, int]]:
    return [
        (alpha, beta, n, m)
        for alpha in range(1, alpha_max + 1)
        for beta in range(alpha, beta_max + 1)
        for n in range(1, n_max + 1)
        for m in vars_list
    ]


def parse_vars_list(text: str) -> List[int]:
    """'2,3' -> [2, 3]"""
    return [int(part) for part in text.split(",") if part.strip()]


def _verify_one(task: Tuple[Tuple[int, int, int, int], Tuple[str, ...], Optional[int]]) -> Tuple[Dict[str, Any], str]:
    (alpha, beta, n, m), checks, t_max = task
    params = CIParams(alpha, beta, n, m)
    result = InvariantVerifier(params, checks=checks, t_max=t_max).verify()

    failed = [name for name, status in result["checks"].items() if status == FAIL]
    row = {
        "alpha": alpha, "beta": beta, "n": n, "m": m,
        "case": result["case"].value,
        "k": result["seq"].k,
        "status": FAIL if failed else "PASS",
        "failed": ",".join(failed),
    }
    record = build_record(result["seq"], result["case"], checks=result["checks"])
    return row, to_json(record)


def overlap_failures(tuples: Iterable[Tuple[int, int, int, int]]) -> List[str]:
    """At alpha = beta = 1 the Far and Equal runners must agree."""
    failures = []
    for alpha, beta, n, m in tuples:
        if alpha == beta == 1:
            params = CIParams(alpha, beta, n, m)
            far, equal = run_far(params).seq.lambdas, run_equal(params).seq.lambdas
            if far != equal:
                failures.append(f"{params.as_dict()}: Far gives {list(far)}, Equal gives {list(equal)}")
    return failures


def run_sweep(
    alpha_max: int,
    beta_max: int,
    n_max: int,
    vars_list: Sequence[int],
    checks: Optional[Sequence[str]] = None,
    t_max: Optional[int] = None,
    parallel: bool = False,
    workers: Optional[int] = None,
) -> SweepResult:
    checks = tuple(checks or config.setting("SWEEP_CHECKS", ()))
    tuples = grid(alpha_max, beta_max, n_max, vars_list)
    tasks = [(t, checks, t_max) for t in tuples]
    LOGGER.info("sweeping %d tuples (checks: %s, parallel=%s)", len(tasks), ", ".join(checks), parallel)

    if parallel and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_verify_one, tasks, chunksize=16))
    else:
        outcomes = [_verify_one(task) for task in tasks]

    # order-independent: sort before reporting
    outcomes.sort(key=lambda o: (o[0]["alpha"], o[0]["beta"], o[0]["n"], o[0]["m"]))
    frame = pd.DataFrame([row for row, _ in outcomes], columns=COLUMNS)

    failures = [
        f"(alpha={r.alpha}, beta={r.beta}, n={r.n}, m={r.m}) {r.case}: {r.failed}"
        for r in frame.itertuples()
        if r.status == FAIL
    ]
    failures += overlap_failures(tuples)

    LOGGER.info("sweep done: %d tuples, %d failures", len(frame), len(failures))
    return SweepResult(frame=frame, records=[rec for _, rec in outcomes], failures=failures)
