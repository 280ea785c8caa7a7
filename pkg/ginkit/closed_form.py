"""
Closed-form evaluation of lambda_v, one index at a time.

Each case splits the index range into families (Build, Pattern, ReverseBuild
for the Mid/Close cases, a single family otherwise). Every family that
contains v is evaluated; overlapping families must agree.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from ginkit.algorithms import dispatch_case
from ginkit.core import CaseTag, CIParams, InvariantSequence, PhaseTag, derive, triangular
from ginkit.errors import CoverageError, IndexOutOfRange

LOGGER = logging.getLogger(__name__)

BUILD = "Build"
PATTERN = "Pattern"
REVERSE_BUILD = "ReverseBuild"


@dataclass(frozen=True)
class ClosedFormIndex:
    """Where v falls, and the value its family assigns."""

    v: int
    family: str
    value: int
    phase: PhaseTag
    decomposition: Dict[str, int] = field(default_factory=dict)


# A family evaluator returns None when v lies outside it.
Family = Callable[[int], Optional[ClosedFormIndex]]


def build_offset(v: int, l: int) -> int:
    """
    Total drop after the first v gaps of an unbounded Build with multiplicity l.
    Segment q holds l copies of onestwo(q) and covers l*T(q) < v <= l*T(q+1).
    """
    if v <= 0:
        return 0

    # smallest s with T(s) >= ceil(v / l); then q = s - 1
    u = -(-v // l)
    s = (math.isqrt(8 * u + 1) - 1) // 2
    if triangular(s) < u:
        s += 1
    q = s - 1

    w = v - l * triangular(q)
    j = -(-w // (q + 1))
    x = j * (q + 1) - w
    drop = l * (triangular(q + 1) - 1) + (q + 2) * j
    if x > 0:
        drop -= x + 1
    return drop


def _far_families(params: CIParams) -> List[Tuple[str, Family]]:
    alpha, beta, n = params.alpha, params.beta, params.n

    def far(v: int) -> ClosedFormIndex:
        j, s = divmod(v, alpha)
        phase = PhaseTag.block(j) if j < n - 1 else PhaseTag.partial_block()
        return ClosedFormIndex(
            v=v, family="Far", value=(n - j) * beta + alpha - 1 - 2 * s,
            phase=phase, decomposition={"j": j, "s": s},
        )

    return [("Far", far)]


def _equal_families(params: CIParams) -> List[Tuple[str, Family]]:
    alpha, n = params.alpha, params.n

    def equal(v: int) -> ClosedFormIndex:
        q, j = divmod(v, n)
        phase = PhaseTag.block(q) if q < alpha - 1 else PhaseTag.partial_block()
        return ClosedFormIndex(
            v=v, family="Equal", value=(n + 1) * alpha - 1 - q * (n + 1) - j,
            phase=phase, decomposition={"q": q, "j": j},
        )

    return [("Equal", equal)]


def _single_power_families(params: CIParams) -> List[Tuple[str, Family]]:
    lambda0 = derive(params).lambda0

    def single(v: int) -> ClosedFormIndex:
        return ClosedFormIndex(
            v=v, family="SinglePower", value=lambda0 - 2 * v,
            phase=PhaseTag.partial_block(), decomposition={"i": v},
        )

    return [("SinglePower", single)]


def _mid_families(params: CIParams) -> List[Tuple[str, Family]]:
    alpha, beta, n = params.alpha, params.beta, params.n
    der = derive(params)
    k, l, r, lambda0 = der.k, der.l, der.r, der.lambda0
    alternating = 2 * r - 1

    def step_drop(y: int) -> int:
        # drop after y steps into a Mid block
        if y <= alternating:
            p, odd = divmod(y, 2)
            return 3 * p + (1 if odd else 0)
        return 2 * y - r

    def build(v: int) -> Optional[ClosedFormIndex]:
        if not 0 <= v <= l:
            return None
        return ClosedFormIndex(
            v=v, family=BUILD, value=lambda0 - 2 * v,
            phase=PhaseTag.build(), decomposition={"i": v},
        )

    def pattern(v: int) -> Optional[ClosedFormIndex]:
        if not l <= v <= k - l - 1:
            return None
        j, y = divmod(v - l, alpha)
        phase = PhaseTag.block(j) if j < n - 2 else PhaseTag.partial_block()
        return ClosedFormIndex(
            v=v, family=PATTERN, value=lambda0 - (2 * l + j * beta + step_drop(y)),
            phase=phase, decomposition={"j": j, "y": y},
        )

    def reverse(v: int) -> Optional[ClosedFormIndex]:
        i = k - v
        if not 1 <= i <= l + 1:
            return None
        return ClosedFormIndex(
            v=v, family=REVERSE_BUILD, value=l + 2 * i - 1,
            phase=PhaseTag.reverse_build(), decomposition={"i": i},
        )

    return [(BUILD, build), (PATTERN, pattern), (REVERSE_BUILD, reverse)]


def _close_families(params: CIParams, case: CaseTag) -> List[Tuple[str, Family]]:
    alpha, beta, n = params.alpha, params.beta, params.n
    der = derive(params)
    k, l, lambda0, lambda_last = der.k, der.l, der.lambda0, der.lambda_last
    c, d = der.c, der.d

    # Build depth: c - 2 normally, n - 2 for small n
    depth = n - 2 if case is CaseTag.CLOSE_SMALL_N else c - 2
    E = l * triangular(depth + 1)
    B = l * (triangular(depth + 2) - 1)

    def build(v: int) -> Optional[ClosedFormIndex]:
        if not 0 <= v <= E:
            return None
        return ClosedFormIndex(
            v=v, family=BUILD, value=lambda0 - build_offset(v, l),
            phase=PhaseTag.build(), decomposition={"u": v},
        )

    def reverse(v: int) -> Optional[ClosedFormIndex]:
        u = k - 1 - v
        if not 0 <= u <= E - 1:
            return None
        return ClosedFormIndex(
            v=v, family=REVERSE_BUILD, value=lambda_last + build_offset(u, l),
            phase=PhaseTag.reverse_build(), decomposition={"u": u},
        )

    if case is CaseTag.CLOSE_NOT_DIVIDES:
        full_blocks = n - c

        def pattern(v: int) -> Optional[ClosedFormIndex]:
            if not E <= v <= k - E:
                return None
            p, w = divmod(v - E, alpha)
            if w <= d * c:
                j, i = divmod(w, c)
                drop = p * beta + j * (c + 1) + i
            else:
                j, i = divmod(w - d * c, c - 1)
                drop = p * beta + d * (c + 1) + j * c + i
            phase = PhaseTag.block(p) if p < full_blocks else PhaseTag.partial_block()
            return ClosedFormIndex(
                v=v, family=PATTERN, value=lambda0 - B - drop,
                phase=phase, decomposition={"p": p, "w": w},
            )
    else:
        width = n if case is CaseTag.CLOSE_SMALL_N else c

        def pattern(v: int) -> Optional[ClosedFormIndex]:
            if not E <= v <= k - E:
                return None
            j, i = divmod(v - E, width)
            return ClosedFormIndex(
                v=v, family=PATTERN, value=lambda0 - B - (j * (width + 1) + i),
                phase=PhaseTag.block(j), decomposition={"j": j, "i": i},
            )

    return [(BUILD, build), (PATTERN, pattern), (REVERSE_BUILD, reverse)]


def families(params: CIParams) -> List[Tuple[str, Family]]:
    """Ordered (name, evaluator) pairs for the case of `params`."""
    case = dispatch_case(params)
    if case is CaseTag.FAR:
        return _far_families(params)
    if case is CaseTag.EQUAL:
        return _equal_families(params)
    if case is CaseTag.SINGLE_POWER_GENERIC:
        return _single_power_families(params)
    if case is CaseTag.MID:
        return _mid_families(params)
    return _close_families(params, case)


def _check_index(params: CIParams, v: int) -> None:
    k = derive(params).k
    if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < k:
        raise IndexOutOfRange(f"index v={v!r} outside [0, {k - 1}] for {params.as_dict()}")


def locate_all(params: CIParams, v: int) -> List[ClosedFormIndex]:
    """Every family containing v, in resolution order."""
    _check_index(params, v)
    hits = []
    for _, evaluate in families(params):
        hit = evaluate(v)
        if hit is not None:
            hits.append(hit)
    return hits


def locate(params: CIParams, v: int) -> ClosedFormIndex:
    """
    The family that owns v (Build before Pattern before ReverseBuild).
    Raises CoverageError if no family contains v or overlapping families disagree.
    """
    hits = locate_all(params, v)
    if not hits:
        raise CoverageError(f"no closed-form family covers v={v} for {params.as_dict()}")

    values = {h.family: h.value for h in hits}
    if len(set(values.values())) > 1:
        raise CoverageError(f"closed-form families disagree at v={v} for {params.as_dict()}: {values}")
    return hits[0]


def lambda_closed(params: CIParams, v: int) -> int:
    return locate(params, v).value


def full_sequence_closed(params: CIParams) -> InvariantSequence:
    """Evaluate every index independently; phases come from the owning family."""
    k = derive(params).k
    hits = [locate(params, v) for v in range(k)]
    LOGGER.debug("closed form %s: %d indices", params.as_dict(), k)
    return InvariantSequence(
        params=params,
        lambdas=tuple(h.value for h in hits),
        phases=tuple(h.phase for h in hits),
    )
