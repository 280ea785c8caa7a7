"""
Invariant-producing algorithms for gin(I^n), one runner per case.

Every runner starts from lambda_0 = n*beta + alpha - 1 and appends gaps
g_i = lambda_(i-1) - lambda_i produced by small subroutines. Subroutines are
pure gap emitters: they return the list of gaps they would subtract, and the
trace builder turns gaps into invariants and phase tags.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from ginkit import hilbert
from ginkit.core import (
    CaseTag,
    CIParams,
    InvariantSequence,
    PhaseKind,
    PhaseTag,
    check_sequence,
    derive,
    to_generators,
)
from ginkit.errors import PreconditionError, StructuralViolation

LOGGER = logging.getLogger(__name__)


# --- subroutines (gap emitters) ---

def onestwo(x: int) -> List[int]:
    """x gaps of 1, then one gap of 2."""
    return [1] * x + [2]


def revonestwo(x: int) -> List[int]:
    """One gap of 2, then x gaps of 1."""
    return [2] + [1] * x


def build(limq: int, l: int) -> List[int]:
    """For q = 0..limq: l copies of onestwo(q)."""
    out: List[int] = []
    for q in range(limq + 1):
        for _ in range(l):
            out.extend(onestwo(q))
    return out


def reverse_build(limq: int, l: int) -> List[int]:
    """For q = limq..0: l copies of revonestwo(q)."""
    out: List[int] = []
    for q in range(limq, -1, -1):
        for _ in range(l):
            out.extend(revonestwo(q))
    return out


def reverse_build_partial(limq: int, l: int) -> List[int]:
    """limq gaps of 1, then l-1 copies of revonestwo(limq)."""
    out = [1] * limq
    for _ in range(l - 1):
        out.extend(revonestwo(limq))
    return out


def block_far(alpha: int, beta: int) -> List[int]:
    return [2] * (alpha - 1) + [beta - 2 * alpha + 2]


def partial_block_far(alpha: int) -> List[int]:
    return [2] * (alpha - 1)


def partial_block_mid(r: int) -> List[int]:
    """Alternating 1, 2, 1, ... for 2r - 1 steps."""
    return [1 if t % 2 == 1 else 2 for t in range(1, 2 * r)]


def block_mid(r: int, alpha: int) -> List[int]:
    # second loop runs alpha - (2r - 1) = 2*beta - 3*alpha + 1 times
    return partial_block_mid(r) + [2] * (alpha - (2 * r - 1))


def block_close(c: int, d: int, l: int, alpha: int) -> List[int]:
    if alpha % l == 0:
        return onestwo(c - 1)

    out: List[int] = []
    for _ in range(d):
        out.extend(onestwo(c - 1))
    for _ in range(l - d):
        out.extend(onestwo(c - 2))
    return out


def partial_block_close(c: int, d: int) -> List[int]:
    out: List[int] = []
    for _ in range(d):
        out.extend(onestwo(c - 1))
    return out


def partial_block_equal(n: int) -> List[int]:
    return [1] * (n - 1)


# --- traces ---

@dataclass(frozen=True)
class SubroutineCall:
    name: str
    args: Dict[str, int]
    emitted: int


@dataclass(frozen=True)
class AlgorithmTrace:
    seq: InvariantSequence
    case: CaseTag
    subroutine_log: Tuple[SubroutineCall, ...] = field(default=())

    def calls(self, name: str) -> List[SubroutineCall]:
        return [c for c in self.subroutine_log if c.name == name]


class _TraceBuilder:
    """Accumulates gaps and phases; lambda_0 takes the phase of the first call."""

    def __init__(self, params: CIParams, case: CaseTag):
        self.params = params
        self.case = case
        self.gaps: List[int] = []
        self.phases: List[PhaseTag] = []
        self.log: List[SubroutineCall] = []
        self.first_phase: Optional[PhaseTag] = None

    def emit(self, name: str, phase: PhaseTag, gaps: List[int], **args: int) -> None:
        if self.first_phase is None:
            self.first_phase = phase
        self.gaps.extend(gaps)
        self.phases.extend([phase] * len(gaps))
        self.log.append(SubroutineCall(name=name, args=dict(args), emitted=len(gaps)))

    def finish(self) -> AlgorithmTrace:
        lam = [derive(self.params).lambda0]
        for g in self.gaps:
            lam.append(lam[-1] - g)

        first = self.first_phase if self.first_phase is not None else PhaseTag.block(0)
        seq = InvariantSequence(
            params=self.params,
            lambdas=tuple(lam),
            phases=tuple([first] + self.phases),
        )
        LOGGER.debug(
            "%s %s: %d subroutine calls, %d invariants",
            self.case.value, self.params.as_dict(), len(self.log), len(lam),
        )
        return AlgorithmTrace(seq=seq, case=self.case, subroutine_log=tuple(self.log))


# --- dispatch ---

def dispatch_case(params: CIParams) -> CaseTag:
    """
    Precedence:
      alpha = beta -> Equal (wins the alpha = beta = 1 overlap with Far)
      beta >= 2*alpha - 1 -> Far
      n = 1 -> SinglePowerGeneric
      2*beta >= 3*alpha -> Mid
      l | alpha and n >= alpha/l + 1 -> CloseDivides
      l does not divide alpha and n >= ceil(alpha/l) + 1 -> CloseNotDivides
      otherwise -> CloseSmallN
    """
    alpha, beta, n = params.alpha, params.beta, params.n
    der = derive(params)

    if alpha == beta:
        return CaseTag.EQUAL
    if beta >= 2 * alpha - 1:
        return CaseTag.FAR
    if n == 1:
        return CaseTag.SINGLE_POWER_GENERIC
    if 2 * beta >= 3 * alpha:
        return CaseTag.MID
    if der.d == 0 and n >= der.c + 1:
        return CaseTag.CLOSE_DIVIDES
    if der.d != 0 and n >= der.c + 1:
        return CaseTag.CLOSE_NOT_DIVIDES
    return CaseTag.CLOSE_SMALL_N


def _require(condition: bool, runner: str, params: CIParams, needs: str) -> None:
    if not condition:
        raise PreconditionError(f"{runner} needs {needs}; got {params.as_dict()}")


def _is_close(params: CIParams) -> bool:
    return params.alpha < params.beta and 2 * params.beta < 3 * params.alpha


def run_far(params: CIParams) -> AlgorithmTrace:
    alpha, beta, n = params.alpha, params.beta, params.n
    _require(beta >= 2 * alpha - 1, "run_far", params, "beta >= 2*alpha - 1")

    tb = _TraceBuilder(params, CaseTag.FAR)
    for h in range(n - 1):
        tb.emit("BlockFar", PhaseTag.block(h), block_far(alpha, beta), alpha=alpha, beta=beta)
    tb.emit("PartialBlockFar", PhaseTag.partial_block(), partial_block_far(alpha), alpha=alpha)
    return tb.finish()


def run_mid(params: CIParams) -> AlgorithmTrace:
    alpha, beta, n = params.alpha, params.beta, params.n
    _require(
        2 * alpha - 1 > beta and 2 * beta >= 3 * alpha and n >= 2,
        "run_mid", params, "2*alpha - 1 > beta >= 3*alpha/2 and n >= 2",
    )
    der = derive(params)
    l, r = der.l, der.r

    tb = _TraceBuilder(params, CaseTag.MID)
    tb.emit("Build", PhaseTag.build(), build(0, l), limq=0, l=l)
    for h in range(n - 2):
        tb.emit("BlockMid", PhaseTag.block(h), block_mid(r, alpha), r=r, alpha=alpha)
    tb.emit("PartialBlockMid", PhaseTag.partial_block(), partial_block_mid(r), r=r)
    tb.emit("ReverseBuild", PhaseTag.reverse_build(), reverse_build(0, l), limq=0, l=l)
    return tb.finish()


def _close_tail(tb: _TraceBuilder, limq: int, l: int) -> None:
    tb.emit(
        "ReverseBuildPartial", PhaseTag.reverse_build_partial(),
        reverse_build_partial(limq, l), limq=limq, l=l,
    )
    if limq >= 1:
        tb.emit(
            "ReverseBuild", PhaseTag.reverse_build(),
            reverse_build(limq - 1, l), limq=limq - 1, l=l,
        )


def run_close_divides(params: CIParams) -> AlgorithmTrace:
    alpha, n = params.alpha, params.n
    der = derive(params)
    _require(
        _is_close(params) and der.d == 0 and n >= der.c + 1,
        "run_close_divides", params,
        "3*alpha/2 > beta > alpha, (beta - alpha) | alpha and n >= alpha/(beta - alpha) + 1",
    )
    l, c, d = der.l, der.c, der.d

    tb = _TraceBuilder(params, CaseTag.CLOSE_DIVIDES)
    tb.emit("Build", PhaseTag.build(), build(c - 2, l), limq=c - 2, l=l)
    for h in range(n * l - alpha + l):
        tb.emit("BlockClose", PhaseTag.block(h), block_close(c, d, l, alpha), c=c, d=d, l=l, alpha=alpha)
    _close_tail(tb, c - 2, l)
    return tb.finish()


def run_close_not_divides(params: CIParams) -> AlgorithmTrace:
    alpha, n = params.alpha, params.n
    der = derive(params)
    _require(
        _is_close(params) and der.d != 0 and n >= der.c + 1,
        "run_close_not_divides", params,
        "3*alpha/2 > beta > alpha, (beta - alpha) does not divide alpha and n >= ceil(alpha/l) + 1",
    )
    l, c, d = der.l, der.c, der.d

    tb = _TraceBuilder(params, CaseTag.CLOSE_NOT_DIVIDES)
    tb.emit("Build", PhaseTag.build(), build(c - 2, l), limq=c - 2, l=l)
    for h in range(n - c):
        tb.emit("BlockClose", PhaseTag.block(h), block_close(c, d, l, alpha), c=c, d=d, l=l, alpha=alpha)
    tb.emit("PartialBlockClose", PhaseTag.partial_block(), partial_block_close(c, d), c=c, d=d)
    _close_tail(tb, c - 2, l)
    return tb.finish()


def run_close_small_n(params: CIParams) -> AlgorithmTrace:
    beta, n = params.beta, params.n
    der = derive(params)
    _require(
        _is_close(params) and 2 <= n < der.c + 1,
        "run_close_small_n", params, "3*alpha/2 > beta > alpha and 2 <= n < ceil(alpha/l) + 1",
    )
    l = der.l

    tb = _TraceBuilder(params, CaseTag.CLOSE_SMALL_N)
    tb.emit("Build", PhaseTag.build(), build(n - 2, l), limq=n - 2, l=l)
    for h in range(beta - n * l):
        tb.emit("onestwo", PhaseTag.block(h), onestwo(n - 1), x=n - 1)
    _close_tail(tb, n - 2, l)
    return tb.finish()


def run_equal(params: CIParams) -> AlgorithmTrace:
    alpha, n = params.alpha, params.n
    _require(alpha == params.beta, "run_equal", params, "alpha = beta")

    tb = _TraceBuilder(params, CaseTag.EQUAL)
    for h in range(alpha - 1):
        tb.emit("onestwo", PhaseTag.block(h), onestwo(n - 1), x=n - 1)
    tb.emit("PartialBlockEqual", PhaseTag.partial_block(), partial_block_equal(n), n=n)
    return tb.finish()


def run_single_power_generic(params: CIParams) -> AlgorithmTrace:
    """gin(I) for n = 1: lambda_i = lambda_0 - 2i, i = 0..alpha-1."""
    alpha, beta = params.alpha, params.beta
    _require(
        params.n == 1 and 2 * alpha - 1 > beta > alpha,
        "run_single_power_generic", params, "n = 1 and 2*alpha - 1 > beta > alpha",
    )

    tb = _TraceBuilder(params, CaseTag.SINGLE_POWER_GENERIC)
    tb.emit("SinglePower", PhaseTag.partial_block(), [2] * (alpha - 1), alpha=alpha)
    return tb.finish()


RUNNERS: Dict[CaseTag, Callable[[CIParams], AlgorithmTrace]] = {
    CaseTag.FAR: run_far,
    CaseTag.MID: run_mid,
    CaseTag.CLOSE_DIVIDES: run_close_divides,
    CaseTag.CLOSE_NOT_DIVIDES: run_close_not_divides,
    CaseTag.CLOSE_SMALL_N: run_close_small_n,
    CaseTag.EQUAL: run_equal,
    CaseTag.SINGLE_POWER_GENERIC: run_single_power_generic,
}


def run_case(case: CaseTag, params: CIParams) -> AlgorithmTrace:
    return RUNNERS[case](params)


def trace_invariants(params: CIParams) -> AlgorithmTrace:
    """Dispatch, run, and validate the produced sequence."""
    case = dispatch_case(params)
    LOGGER.debug("dispatch %s -> %s", params.as_dict(), case.value)
    trace = run_case(case, params)
    check_sequence(trace.seq)
    if case is CaseTag.SINGLE_POWER_GENERIC:
        # the n = 1 output is only a candidate until the Hilbert functions agree
        result = hilbert.verify_hilbert_equality(params, to_generators(trace.seq))
        if not result:
            raise StructuralViolation(
                f"SinglePowerGeneric candidate for {params.as_dict()} fails Hilbert equality at t={result.first_failure}"
            )
    return trace


def compute_invariants(params: CIParams) -> InvariantSequence:
    return trace_invariants(params).seq


def phase_segments(seq: InvariantSequence) -> List[Tuple[PhaseTag, List[int]]]:
    """Maximal runs of consecutive gaps sharing a phase tag."""
    segments: List[Tuple[PhaseTag, List[int]]] = []
    lam = seq.lambdas
    for i in range(1, len(lam)):
        phase = seq.phases[i]
        gap = lam[i - 1] - lam[i]
        if segments and segments[-1][0] == phase:
            segments[-1][1].append(gap)
        else:
            segments.append((phase, [gap]))
    return segments


def reverse_phase_gaps(seq: InvariantSequence) -> List[int]:
    """Gaps emitted by ReverseBuildPartial and ReverseBuild, in order."""
    kinds = (PhaseKind.REVERSE_BUILD_PARTIAL, PhaseKind.REVERSE_BUILD)
    lam = seq.lambdas
    return [lam[i - 1] - lam[i] for i in range(1, len(lam)) if seq.phases[i].kind in kinds]


def build_phase_gaps(seq: InvariantSequence) -> List[int]:
    lam = seq.lambdas
    return [lam[i - 1] - lam[i] for i in range(1, len(lam)) if seq.phases[i].kind is PhaseKind.BUILD]
