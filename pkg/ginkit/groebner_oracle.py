"""
Desk-scale oracle: gin(I^n) from scratch.

Build two random dense forms f, g of degrees alpha, beta, move them by a
random integer change of coordinates, run Buchberger in grevlex over QQ on
the n + 1 products f^i g^(n-i), and read the stable ideal off the leading
monomials. Two independent seeds must agree.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

import numpy as np
import sympy as sp
from sympy.polys.domains import QQ
from sympy.polys.orderings import grevlex
from sympy.polys.rings import PolyElement, PolyRing, ring

from ginkit import config
from ginkit.core import CIParams, StableIdeal, divides
from ginkit.errors import (
    CapExceeded,
    InstabilityError,
    PreconditionError,
    RegularityFailure,
    SingularMatrixError,
)
from ginkit.hilbert import count_ideal_monomials, hilbert_In, sweep_bound

LOGGER = logging.getLogger(__name__)

Monomial = Tuple[int, ...]


@dataclass(frozen=True)
class OracleConfig:
    seed: int = config.ORACLE_DEFAULT_SEED
    coeff_bound: int = config.ORACLE_COEFF_BOUND
    max_basis_size: int = config.ORACLE_MAX_BASIS
    retry_limit: int = config.ORACLE_RETRY_LIMIT

    @classmethod
    def from_env(cls, seed: Optional[int] = None) -> "OracleConfig":
        """Defaults, with the basis cap taken from the environment when set."""
        return cls(
            seed=config.ORACLE_DEFAULT_SEED if seed is None else seed,
            max_basis_size=config.max_basis_size(),
        )


def polynomial_ring(m: int) -> PolyRing:
    """QQ[x1, ..., xm] with grevlex, x1 > x2 > ... > xm."""
    R, *_ = ring(",".join(f"x{i}" for i in range(1, m + 1)), QQ, grevlex)
    return R


# --- monomial order ---

def revlex_greater(a: Sequence[int], b: Sequence[int]) -> bool:
    """
    x^a > x^b in degree reverse lexicographic order: higher degree wins; at
    equal degree the last differing exponent is smaller in the larger monomial.
    """
    if sum(a) != sum(b):
        return sum(a) > sum(b)
    for ea, eb in zip(reversed(a), reversed(b)):
        if ea != eb:
            return ea < eb
    return False


def monomials_of_degree(m: int, d: int) -> Iterator[Monomial]:
    if m == 1:
        yield (d,)
        return
    for e in range(d, -1, -1):
        for rest in monomials_of_degree(m - 1, d - e):
            yield (e,) + rest


# --- forms and coordinates ---

def _nonzero_coefficients(rng: np.random.Generator, size: int, bound: int) -> List[int]:
    magnitudes = rng.integers(1, bound + 1, size=size)
    signs = rng.choice([-1, 1], size=size)
    return [int(s) * int(v) for s, v in zip(signs, magnitudes)]


def random_form(R: PolyRing, degree: int, rng: np.random.Generator, bound: int) -> PolyElement:
    monos = list(monomials_of_degree(R.ngens, degree))
    coeffs = _nonzero_coefficients(rng, len(monos), bound)
    return R.from_dict({mono: QQ(c) for mono, c in zip(monos, coeffs)})


def _ideal_dimension(R: PolyRing, forms: Sequence[PolyElement], t: int) -> int:
    """dim_K of the degree-t piece of the ideal generated by homogeneous `forms`."""
    basis = {mono: col for col, mono in enumerate(monomials_of_degree(R.ngens, t))}
    rows = []
    for f in forms:
        d = form_degree(f)
        if d > t:
            continue
        for mono in monomials_of_degree(R.ngens, t - d):
            row = [0] * len(basis)
            for term, coeff in f.mul_monom(mono).terms():
                row[basis[term]] = sp.Rational(int(coeff.numerator), int(coeff.denominator))
            rows.append(row)
    if not rows:
        return 0
    return sp.Matrix(rows).rank()


def form_degree(f: PolyElement) -> int:
    return max(sum(mono) for mono in f.monoms())


def check_regular_sequence(f: PolyElement, g: PolyElement) -> bool:
    """
    Homogeneous f, g form a regular sequence iff dim (f, g)_t matches the
    complete intersection Hilbert function for every t <= deg f + deg g.
    """
    R = f.ring
    alpha, beta = sorted((form_degree(f), form_degree(g)))
    reference = CIParams(alpha, beta, 1, R.ngens)
    for t in range(alpha + beta + 1):
        if _ideal_dimension(R, [f, g], t) != hilbert_In(reference, t):
            LOGGER.debug("not a regular sequence: dimension mismatch in degree %d", t)
            return False
    return True


def random_ci(
    params: CIParams, cfg: OracleConfig, rng: Optional[np.random.Generator] = None
) -> Tuple[PolyElement, PolyElement]:
    """Two dense forms of degrees alpha, beta certified to be a regular sequence."""
    check_desk_scale(params)
    rng = np.random.default_rng(cfg.seed) if rng is None else rng
    R = polynomial_ring(params.m)

    for attempt in range(cfg.retry_limit):
        f = random_form(R, params.alpha, rng, cfg.coeff_bound)
        g = random_form(R, params.beta, rng, cfg.coeff_bound)
        if check_regular_sequence(f, g):
            return f, g
        LOGGER.warning("random forms for %s not regular (attempt %d), resampling", params.as_dict(), attempt + 1)

    raise RegularityFailure(
        f"no regular sequence after {cfg.retry_limit} samples for {params.as_dict()} (seed {cfg.seed})"
    )


def random_matrix(m: int, rng: np.random.Generator, bound: int) -> List[List[int]]:
    return [[int(v) for v in row] for row in rng.integers(-bound, bound + 1, size=(m, m))]


def apply_change_of_coords(f: PolyElement, g_matrix: Sequence[Sequence[int]]) -> PolyElement:
    """Substitute x_i -> sum_j g_ij x_j."""
    R = f.ring
    M = sp.Matrix(g_matrix)
    if M.shape != (R.ngens, R.ngens):
        raise SingularMatrixError(f"expected a {R.ngens}x{R.ngens} matrix, got {M.shape}")
    if M.det() == 0:
        raise SingularMatrixError(f"change of coordinates is singular: {g_matrix}")

    images = [
        sum((R.gens[j] * QQ(int(g_matrix[i][j])) for j in range(R.ngens)), R.zero)
        for i in range(R.ngens)
    ]

    result = R.zero
    for mono, coeff in f.terms():
        term = R.one * coeff
        for i, e in enumerate(mono):
            if e:
                term *= images[i] ** e
        result += term
    return result


# --- Buchberger ---

def spoly(f: PolyElement, g: PolyElement) -> PolyElement:
    """S-polynomial of monic f and g."""
    R = f.ring
    lcm = R.monomial_lcm(f.LM, g.LM)
    return f.mul_monom(R.monomial_div(lcm, f.LM)) - g.mul_monom(R.monomial_div(lcm, g.LM))


def _select(G: List[PolyElement], P: Set[Tuple[int, int]]) -> Tuple[int, int]:
    """Normal strategy: smallest degree of the lcm, then lowest indices."""
    R = G[0].ring

    def key(p):
        lcm = R.monomial_lcm(G[p[0]].LM, G[p[1]].LM)
        return sum(lcm), p[0], p[1]

    return min(P, key=key)


def _update(G: List[PolyElement], P: Set[Tuple[int, int]], f: PolyElement):
    """Add f to G and its pairs to P, with the Gebauer-Moeller criteria."""
    R = f.ring
    lcm, mul, div = R.monomial_lcm, R.monomial_mul, R.monomial_div
    lmf = f.LM
    lmG = [g.LM for g in G]

    P = {
        p for p in P
        if (not div(lcm(lmG[p[0]], lmG[p[1]]), lmf)
            or lcm(lmG[p[0]], lmG[p[1]]) == lcm(lmG[p[0]], lmf)
            or lcm(lmG[p[0]], lmG[p[1]]) == lcm(lmG[p[1]], lmf))
    }

    by_lcm: Dict[Monomial, List[int]] = {}
    for i in range(len(G)):
        by_lcm.setdefault(lcm(lmG[i], lmf), []).append(i)

    minimal: List[Monomial] = []
    for L in sorted(by_lcm, key=R.order):
        if all(not div(L, other) for other in minimal):
            minimal.append(L)

    new_pairs = set()
    for L in minimal:
        # coprime leading monomials: the pair reduces to zero
        if not any(lcm(lmG[i], lmf) == mul(lmG[i], lmf) for i in by_lcm[L]):
            new_pairs.add((min(by_lcm[L]), len(G)))

    return G + [f], P | new_pairs


def _minimalize(G: List[PolyElement]) -> List[PolyElement]:
    R = G[0].ring
    Gmin: List[PolyElement] = []
    for f in sorted(G, key=lambda h: R.order(h.LM)):
        if all(not R.monomial_div(f.LM, g.LM) for g in Gmin):
            Gmin.append(f)
    return Gmin


def _interreduce(G: List[PolyElement]) -> List[PolyElement]:
    return [G[i].rem(G[:i] + G[i + 1:]).monic() for i in range(len(G))]


def buchberger_revlex(generators: Sequence[PolyElement], max_basis_size: Optional[int] = None) -> List[PolyElement]:
    """Reduced grevlex Groebner basis of homogeneous `generators`."""
    cap = config.max_basis_size() if max_basis_size is None else max_basis_size
    gens = [f for f in generators if f != 0]
    if not gens:
        return []

    G: List[PolyElement] = []
    P: Set[Tuple[int, int]] = set()
    for f in gens:
        G, P = _update(G, P, f.monic())

    while P:
        i, j = _select(G, P)
        P.remove((i, j))
        r = spoly(G[i], G[j]).rem(G)
        if r != 0:
            G, P = _update(G, P, r.monic())
            if len(G) > cap:
                raise CapExceeded(f"Groebner basis grew past {cap} elements")

    basis = _interreduce(_minimalize(G))
    LOGGER.debug("Buchberger: %d generators -> reduced basis of %d", len(gens), len(basis))
    return sorted(basis, key=lambda h: h.ring.order(h.LM), reverse=True)


def leading_monomials(basis: Sequence[PolyElement]) -> List[Monomial]:
    return [tuple(f.LM) for f in basis]


def minimalize_monomials(monos: Sequence[Sequence[int]]) -> List[Monomial]:
    """Minimal generators of the monomial ideal spanned by `monos`."""
    unique = sorted({tuple(m) for m in monos}, key=lambda m: (sum(m), tuple(-e for e in m)))
    kept: List[Monomial] = []
    for mono in unique:
        if not any(divides(g, mono) for g in kept):
            kept.append(mono)
    return kept


def stable_ideal_from_monomials(monos: Sequence[Sequence[int]]) -> Optional[StableIdeal]:
    """
    Read (k, lambdas) off minimal generators x^k, x^i y^lambda_i (i < k).
    None when the generators do not have that shape.
    """
    gens = minimalize_monomials(monos)
    if any(any(e for e in g[2:]) for g in gens):
        return None

    by_x = {g[0]: g[1] for g in gens}
    pure_x = [x for x, y in by_x.items() if y == 0]
    if len(pure_x) != 1 or len(by_x) != len(gens):
        return None

    k = pure_x[0]
    if sorted(by_x) != list(range(k + 1)):
        return None
    lambdas = tuple(by_x[i] for i in range(k))
    if any(lambdas[i] <= lambdas[i + 1] for i in range(k - 1)):
        return None
    return StableIdeal(k=k, lambdas=lambdas)


# --- the oracle ---

def check_desk_scale(params: CIParams) -> None:
    limits = (
        ("alpha", params.alpha, config.ORACLE_MAX_ALPHA),
        ("beta", params.beta, config.ORACLE_MAX_BETA),
        ("m", params.m, config.ORACLE_MAX_VARS),
        ("n", params.n, config.ORACLE_MAX_POWER),
    )
    for name, value, limit in limits:
        if value > limit:
            raise PreconditionError(f"oracle runs at desk scale only: {name}={value} > {limit}")


def initial_ideal(params: CIParams, cfg: OracleConfig, seed: int) -> List[Monomial]:
    """Minimal generators of in_grevlex(g . I^n) for one random draw."""
    rng = np.random.default_rng(seed)
    f, g = random_ci(params, cfg, rng)

    matrix = random_matrix(params.m, rng, cfg.coeff_bound)
    while sp.Matrix(matrix).det() == 0:
        matrix = random_matrix(params.m, rng, cfg.coeff_bound)

    f = apply_change_of_coords(f, matrix)
    g = apply_change_of_coords(g, matrix)
    products = [f ** i * g ** (params.n - i) for i in range(params.n + 1)]

    basis = buchberger_revlex(products, cfg.max_basis_size)
    return minimalize_monomials(leading_monomials(basis))


def matches_hilbert(params: CIParams, monos: Sequence[Sequence[int]]) -> bool:
    """An initial ideal of g . I^n has the Hilbert function of I^n on [0, lambda_0 + m]."""
    return all(
        count_ideal_monomials(monos, params.m, t) == hilbert_In(params, t)
        for t in range(sweep_bound(params) + 1)
    )


def oracle_gin(params: CIParams, cfg: Optional[OracleConfig] = None) -> StableIdeal:
    """
    gin(I^n) by direct computation. Two independent seeds must agree and the
    agreed initial ideal must have the Hilbert function of I^n.
    """
    cfg = cfg or OracleConfig.from_env()
    check_desk_scale(params)

    for attempt in range(cfg.retry_limit):
        seeds = (cfg.seed + 2 * attempt, cfg.seed + 2 * attempt + 1)
        monos = [initial_ideal(params, cfg, s) for s in seeds]
        ideals = [stable_ideal_from_monomials(found) for found in monos]
        if ideals[0] is not None and ideals[0] == ideals[1]:
            if not matches_hilbert(params, monos[0]):
                LOGGER.warning("oracle %s: seed %d gave the wrong Hilbert function, retrying", params.as_dict(), seeds[0])
                continue
            LOGGER.info("oracle %s agreed on seeds %s: k=%d", params.as_dict(), seeds, ideals[0].k)
            return ideals[0]
        LOGGER.warning("oracle %s disagreed on seeds %s, retrying", params.as_dict(), seeds)

    raise InstabilityError(
        f"oracle for {params.as_dict()} did not stabilise after {cfg.retry_limit} attempts (seed {cfg.seed})"
    )

