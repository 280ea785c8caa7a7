from typing import Any, Dict, List

from ginkit.errors import GinkitError, PreconditionError
from ginkit.groebner_oracle import OracleConfig, check_desk_scale, oracle_gin
from .common import INFO, CheckContext, make_issue

CHECK_ID = "oracle"


def check_oracle(ctx: CheckContext) -> List[Dict[str, Any]]:
    """
    FAIL check: a direct Groebner computation gives the same ideal.
    Tuples beyond desk scale are reported as INFO and skipped.
    """
    try:
        check_desk_scale(ctx.params)
    except PreconditionError as e:
        return [make_issue(check=CHECK_ID, message=f"skipped: {e}", severity=INFO, data={"skipped": True})]

    try:
        found = oracle_gin(ctx.params, OracleConfig.from_env(ctx.seed))
    except GinkitError as e:
        return [make_issue(check=CHECK_ID, message=f"{type(e).__name__}: {e}")]

    expected = ctx.ideal
    if found == expected:
        return []

    return [
        make_issue(
            check=CHECK_ID,
            message=f"oracle found k={found.k}, lambdas={list(found.lambdas)}; computed k={expected.k}, lambdas={list(expected.lambdas)}",
            data={"oracle": list(found.lambdas), "computed": list(expected.lambdas)},
        )
    ]
