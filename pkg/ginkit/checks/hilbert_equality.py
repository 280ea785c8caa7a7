from typing import Any, Dict, List

from ginkit.errors import BoundExceeded
from ginkit.hilbert import invariants_from_hilbert, verify_hilbert_equality
from .common import CheckContext, make_issue

CHECK_ID = "hilbert"
RECONSTRUCTION_ID = "reconstruction"


def check_hilbert_equality(ctx: CheckContext) -> List[Dict[str, Any]]:
    """FAIL check: H_J(t) == H_{I^n}(t) on the whole sweep range."""
    if len(ctx.seq.lambdas) == 0:
        return [make_issue(check=CHECK_ID, message="empty invariant sequence")]

    result = verify_hilbert_equality(ctx.params, ctx.ideal, ctx.t_max)
    if result.ok:
        return []

    return [
        make_issue(
            check=CHECK_ID,
            message=(
                f"Hilbert functions differ first at t={result.first_failure}: "
                f"H_J={result.actual}, H_In={result.expected} (sweep to t={result.t_max})"
            ),
            data={"t": result.first_failure, "H_J": result.actual, "H_In": result.expected},
        )
    ]


def check_reconstruction(ctx: CheckContext) -> List[Dict[str, Any]]:
    """FAIL check: the invariants recovered from H_{I^n} alone match the computed ones."""
    try:
        recovered = invariants_from_hilbert(ctx.params, ctx.t_max)
    except BoundExceeded as e:
        return [make_issue(check=RECONSTRUCTION_ID, message=str(e))]

    computed = list(ctx.seq.lambdas)
    if recovered == computed:
        return []

    first = next(
        (i for i, (a, b) in enumerate(zip(recovered, computed)) if a != b),
        min(len(recovered), len(computed)),
    )
    return [
        make_issue(
            check=RECONSTRUCTION_ID,
            message=(
                f"invariants recovered from H_In differ at index {first} "
                f"(recovered k={len(recovered)}, computed k={len(computed)})"
            ),
            data={"index": first, "recovered": recovered, "computed": computed},
        )
    ]
