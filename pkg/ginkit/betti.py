"""Graded Betti shifts of I^n and of stable ideals, and the cancellation check."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import List

import pandas as pd

from ginkit.core import CIParams, StableIdeal


@dataclass(frozen=True)
class GradedBetti:
    """Shifts (with multiplicity) in homological degrees 0 and 1."""

    b0: Counter
    b1: Counter

    def as_dict(self) -> dict:
        return {"b0": sorted(self.b0.elements()), "b1": sorted(self.b1.elements())}


def betti_In(params: CIParams) -> GradedBetti:
    alpha, beta, n = params.alpha, params.beta, params.n
    b0 = Counter(alpha * p + beta * (n - p) for p in range(n + 1))
    b1 = Counter(alpha * p + beta * (n + 1 - p) for p in range(1, n + 1))
    return GradedBetti(b0=b0, b1=b1)


def betti_J(ideal: StableIdeal) -> GradedBetti:
    shifts = [lam + i for i, lam in enumerate(ideal.lambdas)]
    b0 = Counter(shifts)
    b0[ideal.k] += 1
    b1 = Counter(s + 1 for s in shifts)
    return GradedBetti(b0=b0, b1=b1)


def _contains(big: Counter, small: Counter) -> bool:
    return all(big[s] >= mult for s, mult in small.items())


def check_cancellation(gin_betti: GradedBetti, in_betti: GradedBetti) -> bool:
    """
    True iff the I^n table is reachable from the gin table by consecutive
    cancellations. With only two homological degrees that means: both
    degrees contain the I^n shifts, and the leftovers match.
    """
    if not (_contains(gin_betti.b0, in_betti.b0) and _contains(gin_betti.b1, in_betti.b1)):
        return False
    return (gin_betti.b0 - in_betti.b0) == (gin_betti.b1 - in_betti.b1)


def cancellation_pairs(gin_betti: GradedBetti, in_betti: GradedBetti) -> List[int]:
    """
    Shifts j of the cancelled pairs beta_(0,j), beta_(1,j), one entry per
    pair. Empty when the tables do not cancel.
    """
    if not check_cancellation(gin_betti, in_betti):
        return []
    return sorted((gin_betti.b0 - in_betti.b0).elements())


def betti_table(betti: GradedBetti) -> pd.DataFrame:
    """Rows are homological degrees 0 and 1, columns the shifts j, entries beta_(i,j)."""
    shifts = sorted(set(betti.b0) | set(betti.b1))
    rows = [[betti.b0[j] for j in shifts], [betti.b1[j] for j in shifts]]
    return pd.DataFrame(rows, index=pd.Index([0, 1], name="degree"), columns=shifts)
