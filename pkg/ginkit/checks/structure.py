from typing import Any, Dict, List

from ginkit.core import structural_violations
from .common import CheckContext, make_issue

CHECK_ID = "structure"


def check_structure(ctx: CheckContext) -> List[Dict[str, Any]]:
    """
    FAIL check: length, endpoints, strict decrease, gap alphabet, gap sum and
    PatternBlock numbering. One issue per violated rule.
    """
    return [
        make_issue(check=CHECK_ID, message=problem)
        for problem in structural_violations(ctx.seq)
    ]
