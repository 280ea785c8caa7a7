from __future__ import annotations

import logging
import time
from dataclasses import replace
from typing import Any, Dict, Iterable, List, Optional, Tuple

from ginkit import config
from ginkit.algorithms import AlgorithmTrace, trace_invariants
from ginkit.checks import CHECKS, CheckContext, has_failures
from ginkit.checks.common import INFO
from ginkit.core import CIParams, InvariantSequence
from ginkit.errors import ParameterError

LOGGER = logging.getLogger(__name__)

PASS = "PASS"
FAIL = "FAIL"
SKIPPED = "SKIPPED"


def parse_checks(names: Optional[Iterable[str]]) -> Tuple[str, ...]:
    """Validate a requested check subset, keeping the canonical run order."""
    if names is None:
        return tuple(config.setting("DEFAULT_CHECKS", ()))
    requested = {n.strip() for n in names if n.strip()}
    unknown = sorted(requested - set(CHECKS))
    if unknown:
        raise ParameterError(f"unknown checks: {', '.join(unknown)} (choose from {', '.join(CHECKS)})")
    return tuple(name for name in CHECKS if name in requested)


def perturb(seq: InvariantSequence, index: int, delta: int) -> InvariantSequence:
    """Shift lambda_index by delta without re-validating; used for fault injection."""
    if not 0 <= index < seq.k:
        raise ParameterError(f"perturb index {index} outside [0, {seq.k - 1}]")
    lambdas = list(seq.lambdas)
    lambdas[index] += delta
    return replace(seq, lambdas=tuple(lambdas))


class InvariantVerifier:
    """
    Computes the invariants of gin(I^n) for one tuple and runs the enabled checks.
    NOTE: No printing here. Output is handled by main.py only.
    """

    def __init__(
        self,
        params: CIParams,
        checks: Optional[Iterable[str]] = None,
        t_max: Optional[int] = None,
        seed: Optional[int] = None,
        perturbation: Optional[Tuple[int, int]] = None,
    ):
        self.params = params
        self.checks = parse_checks(checks)
        self.t_max = t_max
        self.seed = seed
        self.perturbation = perturbation
        self.trace: Optional[AlgorithmTrace] = None

    def compute(self) -> AlgorithmTrace:
        self.trace = trace_invariants(self.params)
        return self.trace

    def verify(self) -> Dict[str, Any]:
        """
        Run the checks and return structured results:
        case, sequence, issues, per-check status and elapsed seconds.
        """
        started = time.perf_counter()
        trace = self.trace or self.compute()
        seq = trace.seq
        if self.perturbation is not None:
            seq = perturb(seq, *self.perturbation)
            LOGGER.info("perturbed lambda_%d by %+d", *self.perturbation)

        ctx = CheckContext(params=self.params, seq=seq, t_max=self.t_max, seed=self.seed)

        issues: List[Dict[str, Any]] = []
        status: Dict[str, str] = {}
        for name in self.checks:
            found = CHECKS[name](ctx)
            issues.extend(found)
            if has_failures(found):
                status[name] = FAIL
            elif found and all(i["severity"] == INFO and i.get("data", {}).get("skipped") for i in found):
                status[name] = SKIPPED
            else:
                status[name] = PASS
            LOGGER.debug("check %s on %s: %s", name, self.params.as_dict(), status[name])

        return {
            "params": self.params,
            "case": trace.case,
            "seq": seq,
            "issues": issues,
            "checks": status,
            "elapsed": time.perf_counter() - started,
        }
