"""
Exact Hilbert functions of I^n and of stable ideals
J = (x^k, x^(k-1) y^lambda_(k-1), ..., y^lambda_0), plus the equality sweep
and an enumeration oracle that never touches a binomial.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import pandas as pd

from ginkit import config
from ginkit.core import CIParams, StableIdeal, derive, divides
from ginkit.errors import BoundExceeded

LOGGER = logging.getLogger(__name__)


def binom(s: int, t: int) -> int:
    """C(s, t), zero iff t < 0 or t > s. In particular C(0, 0) = 1."""
    if t < 0 or t > s:
        return 0
    return math.comb(s, t)


def _monomials(s: int, m: int) -> int:
    """Monomials of degree s in m variables."""
    return binom(s + m - 1, m - 1)


@dataclass(frozen=True)
class HilbertProfile:
    t_max: int
    values: Dict[int, int] = field(default_factory=dict)

    def __getitem__(self, t: int) -> int:
        return self.values[t]


def hilbert_In(params: CIParams, t: int) -> int:
    alpha, beta, n, m = params.alpha, params.beta, params.n, params.m
    total = _monomials(t - n * alpha, m)
    for j in range(1, n + 1):
        total += _monomials(t - alpha * (n - j) - beta * j, m)
        total -= _monomials(t - alpha * j - beta * (n + 1 - j), m)
    return total


def hilbert_In_rewritten(params: CIParams, t: int) -> int:
    """
    Same function written with the shifts
      X_j = t - n*alpha - j*l, Y_j = t - (n+1)*alpha - j*l, Z_j = Y_j + d.

    Close with l | alpha: X_(c+i) = Y_i, so only X_1..X_c and Y_(n-c+1)..Y_n survive.
    Close with l not dividing alpha: X_(c-1+i) = Z_i.
    Equal: every X_j and every Y_j coincide.
    """
    alpha, beta, n, m = params.alpha, params.beta, params.n, params.m
    der = derive(params)
    l = der.l
    head = _monomials(t - n * alpha, m)

    def X(j):
        return t - n * alpha - j * l

    def Y(j):
        return t - (n + 1) * alpha - j * l

    if l == 0:
        return n * (_monomials(X(1), m) - _monomials(Y(1), m)) + head

    close = 2 * beta < 3 * alpha
    if close and n >= der.c + 1:
        c, d = der.c, der.d
        if d == 0:
            plus = sum(_monomials(X(j), m) for j in range(1, c + 1))
            minus = sum(_monomials(Y(j), m) for j in range(n - c + 1, n + 1))
            return plus - minus + head

        plus = sum(_monomials(X(j), m) for j in range(1, c))
        plus += sum(_monomials(Y(i) + d, m) for i in range(1, n - c + 2))
        minus = sum(_monomials(Y(j), m) for j in range(1, n + 1))
        return plus - minus + head

    plus = sum(_monomials(X(j), m) for j in range(1, n + 1))
    minus = sum(_monomials(Y(j), m) for j in range(1, n + 1))
    return plus - minus + head


def _partial_hilbert(k: int, lambdas: Dict[int, int], m: int, t: int) -> int:
    """H of (x^k) + (x^i y^lambdas[i] : i in lambdas)."""
    total = _monomials(t - k, m)
    for i, lam in lambdas.items():
        total += binom(t - lam - i + m - 2, m - 2)
    return total


def hilbert_J(ideal: StableIdeal, m: int, t: int) -> int:
    return _partial_hilbert(ideal.k, dict(enumerate(ideal.lambdas)), m, t)


def hilbert_profile(fn: Callable[[int], int], t_max: int) -> HilbertProfile:
    return HilbertProfile(t_max=t_max, values={t: fn(t) for t in range(t_max + 1)})


def sweep_bound(params: CIParams, t_max: Optional[int] = None) -> int:
    """
    Default upper degree for the equality sweep: lambda_0 + m.

    Past lambda_0 every binomial argument in both formulas is nonnegative, so
    both sides are polynomials in t of degree <= m - 1; agreement on the m
    points lambda_0 + 1 .. lambda_0 + m then gives agreement for all t.
    """
    default = derive(params).lambda0 + params.m + int(config.setting("HILBERT_SWEEP_SLACK", 0))
    if t_max is None:
        return default
    # an explicit bound may only extend the sweep
    return max(int(t_max), default)


@dataclass(frozen=True)
class HilbertCheck:
    ok: bool
    t_max: int
    first_failure: Optional[int] = None
    expected: Optional[int] = None  # H_{I^n}(t)
    actual: Optional[int] = None  # H_J(t)

    def __bool__(self) -> bool:
        return self.ok


def verify_hilbert_equality(
    params: CIParams, ideal: StableIdeal, t_max: Optional[int] = None
) -> HilbertCheck:
    """Compare H_J and H_{I^n} on [0, t_max]; report the smallest failing degree."""
    bound = sweep_bound(params, t_max)
    for t in range(bound + 1):
        expected = hilbert_In(params, t)
        actual = hilbert_J(ideal, params.m, t)
        if expected != actual:
            LOGGER.debug("Hilbert mismatch for %s at t=%d: %d != %d", params.as_dict(), t, actual, expected)
            return HilbertCheck(ok=False, t_max=bound, first_failure=t, expected=expected, actual=actual)
    return HilbertCheck(ok=True, t_max=bound)


def hilbert_table(params: CIParams, ideal: StableIdeal, t_max: Optional[int] = None) -> pd.DataFrame:
    """One row per degree: t, H_In, H_J, equal."""
    bound = sweep_bound(params, t_max)
    h_in = hilbert_profile(lambda t: hilbert_In(params, t), bound)
    h_j = hilbert_profile(lambda t: hilbert_J(ideal, params.m, t), bound)
    rows = [
        {"t": t, "H_In": h_in[t], "H_J": h_j[t], "equal": h_in[t] == h_j[t]}
        for t in range(bound + 1)
    ]
    # object dtype keeps arbitrary-precision ints intact
    return pd.DataFrame(rows, columns=["t", "H_In", "H_J", "equal"]).astype({"H_In": object, "H_J": object})


def reconstruct_invariants(hilbert: Callable[[int], int], m: int, t_max: int) -> Tuple[int, List[int]]:
    """
    Recover (k, [lambda_0, ..., lambda_(k-1)]) of a stable ideal from its
    Hilbert function. k is the first nonzero degree; each later lambda comes
    from the first degree where H differs from the ideal built so far.
    """
    values = [hilbert(t) for t in range(t_max + 1)]

    k = next((t for t, h in enumerate(values) if h != 0), None)
    if k is None:
        raise BoundExceeded(f"Hilbert function vanishes on [0, {t_max}]")

    found: Dict[int, int] = {}
    start = k
    for T in range(k, 0, -1):
        S = next(
            (t for t in range(start, t_max + 1) if values[t] != _partial_hilbert(k, found, m, t)),
            None,
        )
        if S is None:
            raise BoundExceeded(f"no degree <= {t_max} determines lambda_{T - 1}")
        found[T - 1] = S - (T - 1)
        start = S

    return k, [found[i] for i in range(k)]


def invariants_from_hilbert(params: CIParams, t_max: Optional[int] = None) -> List[int]:
    """The invariants of gin(I^n), read off H_{I^n} alone."""
    bound = sweep_bound(params, t_max)
    _, lambdas = reconstruct_invariants(lambda t: hilbert_In(params, t), params.m, bound)
    return lambdas


# --- enumeration oracle ---

@lru_cache(maxsize=None)
def _count_free(variables: int, degree: int) -> int:
    """Monomials of the given degree in `variables` variables, by recursion."""
    if degree < 0:
        return 0
    if variables == 0:
        return 1 if degree == 0 else 0
    return sum(_count_free(variables - 1, degree - e) for e in range(degree + 1))


def count_ideal_monomials(generators: Sequence[Sequence[int]], m: int, t: int) -> int:
    """
    Degree-t monomials in m variables lying in the monomial ideal spanned by
    `generators`. Exponents are enumerated only in the variables the
    generators use; the free tail is counted recursively.
    """
    gens = [tuple(g) + (0,) * (m - len(g)) for g in generators]
    if t < 0 or not gens:
        return 0

    support = max((i + 1 for g in gens for i, e in enumerate(g) if e), default=0)
    if support == 0:
        return _count_free(m, t)  # the unit ideal
    gens = [g[:support] for g in gens]
    tail = m - support

    count = 0

    def walk(prefix: List[int], remaining: int) -> None:
        nonlocal count
        if len(prefix) == support:
            if any(divides(g, prefix) for g in gens):
                count += _count_free(tail, remaining)
            return
        for e in range(remaining + 1):
            prefix.append(e)
            walk(prefix, remaining - e)
            prefix.pop()

    walk([], t)
    return count


def hilbert_In_bruteforce(params: CIParams, t: int) -> int:
    """
    Count degree-t monomials divisible by some x1^(alpha*i) * x2^(beta*(n-i)).
    H_{I^n} depends only on (alpha, beta, n, m), so the monomial complete
    intersection (x1^alpha, x2^beta) stands in for I.
    """
    cap = int(config.setting("BRUTEFORCE_T_MAX", 60))
    max_vars = int(config.setting("BRUTEFORCE_MAX_VARS", 5))
    if t > cap:
        raise BoundExceeded(f"t={t} above the enumeration cap {cap}")
    if params.m > max_vars:
        raise BoundExceeded(f"m={params.m} above the enumeration cap {max_vars}")

    alpha, beta, n = params.alpha, params.beta, params.n
    gens = [(alpha * i, beta * (n - i)) for i in range(n + 1)]
    return count_ideal_monomials(gens, params.m, t)
