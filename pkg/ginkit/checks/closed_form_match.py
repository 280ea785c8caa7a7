from typing import Any, Dict, List

from ginkit.closed_form import full_sequence_closed
from ginkit.errors import CoverageError
from .common import CheckContext, make_issue

CHECK_ID = "closed-form"


def check_closed_form(ctx: CheckContext) -> List[Dict[str, Any]]:
    """FAIL check: every lambda_v evaluated independently agrees with the algorithm."""
    try:
        closed = full_sequence_closed(ctx.params)
    except CoverageError as e:
        return [make_issue(check=CHECK_ID, message=str(e))]

    computed = ctx.seq.lambdas
    if len(closed.lambdas) != len(computed):
        return [
            make_issue(
                check=CHECK_ID,
                message=f"closed form has {len(closed.lambdas)} values, algorithm has {len(computed)}",
            )
        ]

    issues: List[Dict[str, Any]] = []
    for v, (expected, found) in enumerate(zip(closed.lambdas, computed)):
        if expected != found:
            issues.append(
                make_issue(
                    check=CHECK_ID,
                    message=f"lambda_{v}: closed form {expected}, algorithm {found}",
                    data={"v": v, "closed": expected, "algorithm": found},
                )
            )
    return issues
