import itertools
import logging

import numpy as np
import pytest
from sympy.polys.orderings import grevlex

from ginkit import config, groebner_oracle
from ginkit.algorithms import compute_invariants
from ginkit.core import CIParams, StableIdeal, is_strongly_stable
from ginkit.errors import CapExceeded, InstabilityError, PreconditionError, SingularMatrixError
from ginkit.groebner_oracle import (
    OracleConfig,
    apply_change_of_coords,
    buchberger_revlex,
    check_desk_scale,
    check_regular_sequence,
    form_degree,
    initial_ideal,
    leading_monomials,
    matches_hilbert,
    minimalize_monomials,
    monomials_of_degree,
    oracle_gin,
    polynomial_ring,
    random_ci,
    random_form,
    revlex_greater,
    stable_ideal_from_monomials,
)

DESK_SUITE = [
    (1, 1, 1, 2),
    (1, 1, 2, 2),
    (1, 2, 1, 2),
    (2, 2, 1, 2),
    (2, 3, 1, 2),
    (1, 2, 2, 2),
    (2, 2, 2, 2),
    (1, 1, 1, 3),
    (2, 3, 1, 3),
]


def expected_ideal(params):
    seq = compute_invariants(params)
    return StableIdeal(k=seq.k, lambdas=tuple(seq.lambdas))


# --- monomial order ---

def test_revlex_rule():
    assert revlex_greater((0, 2, 0), (1, 0, 1))
    assert revlex_greater((1, 1), (0, 2))
    assert revlex_greater((0, 0, 2), (1, 0, 0))
    assert not revlex_greater((1, 0), (1, 0))


@pytest.mark.parametrize("m, d", [(2, 3), (3, 2), (3, 3), (4, 2)])
def test_revlex_agrees_with_sympy_grevlex(m, d):
    monos = list(monomials_of_degree(m, d)) + list(monomials_of_degree(m, d - 1))
    for a, b in itertools.permutations(monos, 2):
        assert revlex_greater(a, b) == (grevlex(a) > grevlex(b)), (a, b)


def test_monomials_of_degree():
    assert list(monomials_of_degree(2, 2)) == [(2, 0), (1, 1), (0, 2)]
    assert len(list(monomials_of_degree(3, 4))) == 15


# --- forms and coordinates ---

def test_random_form_is_dense_and_homogeneous():
    R = polynomial_ring(3)
    f = random_form(R, 3, np.random.default_rng(1), 50)
    assert len(f.terms()) == 10
    assert form_degree(f) == 3
    assert all(sum(mono) == 3 for mono in f.monoms())


def test_regular_sequence_certificate():
    R = polynomial_ring(2)
    x1, x2 = R.gens
    assert check_regular_sequence(x1, x2)
    assert check_regular_sequence(x1 ** 2 + x2 ** 2, x1 * x2)
    assert not check_regular_sequence(x1, x1)
    assert not check_regular_sequence(x1 * x2, x1 ** 2)


def test_random_ci_is_regular():
    params = CIParams(2, 3, 1, 3)
    f, g = random_ci(params, OracleConfig(seed=7))
    assert (form_degree(f), form_degree(g)) == (2, 3)
    assert check_regular_sequence(f, g)


def test_change_of_coords():
    R = polynomial_ring(2)
    x1, x2 = R.gens
    assert apply_change_of_coords(x1 * x2, [[1, 0], [0, 1]]) == x1 * x2
    assert apply_change_of_coords(x1 ** 2, [[1, 1], [0, 1]]) == x1 ** 2 + 2 * x1 * x2 + x2 ** 2
    with pytest.raises(SingularMatrixError):
        apply_change_of_coords(x1, [[1, 1], [1, 1]])
    with pytest.raises(SingularMatrixError):
        apply_change_of_coords(x1, [[1]])


# --- Buchberger ---

def test_buchberger_linear_forms():
    R = polynomial_ring(2)
    x1, x2 = R.gens
    basis = buchberger_revlex([x1 + x2, x1 - x2])
    assert basis == [x1, x2]


def test_buchberger_adds_an_spolynomial():
    R = polynomial_ring(2)
    x1, x2 = R.gens
    basis = buchberger_revlex([x1 ** 2 - x2 ** 2, x1 * x2])
    # x2 * (x1^2 - x2^2) - x1 * (x1*x2) = -x2^3; sorted largest leading monomial first
    assert leading_monomials(basis) == [(0, 3), (2, 0), (1, 1)]
    assert x2 ** 3 in basis
    assert stable_ideal_from_monomials(leading_monomials(basis)) == StableIdeal(k=2, lambdas=(3, 1))


def test_buchberger_empty_and_zero():
    R = polynomial_ring(2)
    assert buchberger_revlex([]) == []
    assert buchberger_revlex([R.zero]) == []


def test_buchberger_cap():
    R = polynomial_ring(2)
    x1, x2 = R.gens
    with pytest.raises(CapExceeded):
        buchberger_revlex([x1 ** 2 - x2 ** 2, x1 * x2], max_basis_size=2)


# --- monomial helpers ---

def test_minimalize_monomials():
    assert minimalize_monomials([(2, 1), (2, 0), (1, 2), (0, 3), (1, 3)]) == [(2, 0), (1, 2), (0, 3)]


def test_stable_ideal_from_monomials():
    assert stable_ideal_from_monomials([(2, 0, 0), (1, 1, 0), (0, 3, 0)]) == StableIdeal(k=2, lambdas=(3, 1))
    assert stable_ideal_from_monomials([(1, 0, 0), (0, 0, 1)]) is None
    assert stable_ideal_from_monomials([(2, 0), (0, 2)]) is None


def test_desk_scale():
    check_desk_scale(CIParams(3, 4, 2, 3))
    with pytest.raises(PreconditionError, match="beta=5"):
        check_desk_scale(CIParams(3, 5, 1))
    with pytest.raises(PreconditionError, match="n=3"):
        oracle_gin(CIParams(1, 1, 3))


def test_max_basis_from_environment(monkeypatch):
    monkeypatch.setenv(config.MAX_BASIS_ENV, "17")
    assert OracleConfig.from_env().max_basis_size == 17
    monkeypatch.setenv(config.MAX_BASIS_ENV, "lots")
    assert OracleConfig.from_env(5).max_basis_size == config.ORACLE_MAX_BASIS
    monkeypatch.setenv(config.MAX_BASIS_ENV, "0")
    assert config.max_basis_size() == config.ORACLE_MAX_BASIS
    monkeypatch.delenv(config.MAX_BASIS_ENV)
    assert OracleConfig.from_env().seed == config.ORACLE_DEFAULT_SEED


# --- the oracle ---

def test_oracle_single_linear_pair():
    assert oracle_gin(CIParams(1, 1, 1, 2)) == StableIdeal(k=1, lambdas=(1,))


def test_matches_hilbert():
    params = CIParams(1, 1, 1, 3)
    assert matches_hilbert(params, [(1, 0, 0), (0, 1, 0)])
    assert not matches_hilbert(params, [(1, 0, 0), (0, 2, 0)])
    assert not matches_hilbert(params, [(1, 0, 0)])


def test_oracle_rejects_a_wrong_hilbert_function(monkeypatch, caplog):
    monkeypatch.setattr(groebner_oracle, "matches_hilbert", lambda params, monos: False)
    with caplog.at_level(logging.WARNING, logger="ginkit.groebner_oracle"):
        with pytest.raises(InstabilityError, match="did not stabilise"):
            oracle_gin(CIParams(1, 1, 1, 2), OracleConfig(retry_limit=2))
    assert "wrong Hilbert function" in caplog.text


@pytest.mark.slow
@pytest.mark.parametrize("params", DESK_SUITE)
@pytest.mark.parametrize("seed", [config.ORACLE_DEFAULT_SEED, 4242])
def test_oracle_matches_algorithms(params, seed):
    params = CIParams(*params)
    assert oracle_gin(params, OracleConfig(seed=seed)) == expected_ideal(params)


@pytest.mark.slow
@pytest.mark.parametrize("params", DESK_SUITE)
def test_initial_ideal_shape(params):
    params = CIParams(*params)
    monos = initial_ideal(params, OracleConfig(), seed=11)

    assert is_strongly_stable(monos)
    # only x1 and x2 appear in a minimal generator
    assert all(e == 0 for mono in monos for e in mono[2:])
    assert matches_hilbert(params, monos)
