from typing import Any, Dict, List

from ginkit.betti import betti_In, betti_J, check_cancellation
from .common import CheckContext, make_issue

CHECK_ID = "betti"


def check_betti_cancellation(ctx: CheckContext) -> List[Dict[str, Any]]:
    """
    FAIL check: the Betti table of I^n is reachable from the table of the
    computed gin by consecutive cancellations, and the extreme shifts agree.
    """
    params, seq = ctx.params, ctx.seq
    if len(seq.lambdas) == 0:
        return [make_issue(check=CHECK_ID, message="empty invariant sequence")]

    gin_betti = betti_J(ctx.ideal)
    in_betti = betti_In(params)
    issues: List[Dict[str, Any]] = []

    if not check_cancellation(gin_betti, in_betti):
        issues.append(
            make_issue(
                check=CHECK_ID,
                message="Betti shifts of I^n are not obtained by consecutive cancellations",
                data={"gin": gin_betti.as_dict(), "I^n": in_betti.as_dict()},
            )
        )

    top = params.alpha + params.n * params.beta
    if max(gin_betti.b1) != top or max(in_betti.b1) != top:
        issues.append(
            make_issue(
                check=CHECK_ID,
                message=f"largest degree-1 shift is {max(gin_betti.b1)} (gin) / {max(in_betti.b1)} (I^n), expected {top}",
            )
        )

    second = sorted(in_betti.b0.elements())[1]
    last = seq.lambdas[-1] + seq.k - 1
    if second != last:
        issues.append(
            make_issue(
                check=CHECK_ID,
                message=f"second-smallest generator degree of I^n is {second}, but lambda_(k-1) + k - 1 = {last}",
            )
        )

    return issues
