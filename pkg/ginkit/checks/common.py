from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, List, Optional

from ginkit.core import CIParams, InvariantSequence, StableIdeal

FAIL = "FAIL"
WARNING = "WARNING"
INFO = "INFO"


@dataclass(frozen=True)
class CheckContext:
    """Everything a check may look at for one parameter tuple."""

    params: CIParams
    seq: InvariantSequence
    t_max: Optional[int] = None
    seed: Optional[int] = None

    @property
    def ideal(self) -> StableIdeal:
        return StableIdeal(k=self.seq.k, lambdas=tuple(self.seq.lambdas))


def make_issue(
        *,
        check: str,
        message: str,
        severity: str = FAIL,
        data: Optional[Dict[str, Any]] = None,
) -> Dict[str, Any]:
    """
    Standard issue factory for all checks.
    """
    issue: Dict[str, Any] = {
        "check": check,
        "message": message,
        "severity": severity,
    }

    if data:
        issue["data"] = data

    return issue


def has_failures(issues: List[Dict[str, Any]]) -> bool:
    return any(issue.get("severity") == FAIL for issue in issues)
