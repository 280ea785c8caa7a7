from collections import Counter

import pytest

from ginkit.algorithms import compute_invariants
from ginkit.betti import (
    GradedBetti,
    betti_In,
    betti_J,
    betti_table,
    cancellation_pairs,
    check_cancellation,
)
from ginkit.core import CIParams, StableIdeal


def ideal_of(params):
    seq = compute_invariants(params)
    return StableIdeal(k=seq.k, lambdas=tuple(seq.lambdas))


@pytest.mark.parametrize(
    "params, b0, b1",
    [
        ((4, 12, 3), [12, 20, 28, 36], [24, 32, 40]),
        ((1, 1, 1), [1, 1], [2]),
        ((2, 3, 2), [4, 5, 6], [7, 8]),
    ],
)
def test_betti_In(params, b0, b1):
    betti = betti_In(CIParams(*params))
    assert betti.as_dict() == {"b0": b0, "b1": b1}


def test_betti_J_of_a_stable_ideal():
    betti = betti_J(StableIdeal(k=2, lambdas=(4, 2)))
    # generators x^2, x*y^2, y^4; one syzygy per generator involving y
    assert betti.as_dict() == {"b0": [2, 3, 4], "b1": [4, 5]}


def test_far_example_cancels():
    params = CIParams(4, 12, 3)
    gin_betti, in_betti = betti_J(ideal_of(params)), betti_In(params)
    assert check_cancellation(gin_betti, in_betti)
    assert cancellation_pairs(gin_betti, in_betti) == [21, 22, 23, 29, 30, 31, 37, 38, 39]


def test_cancellation_needs_containment():
    gin_betti = GradedBetti(b0=Counter({2: 1, 3: 1}), b1=Counter({4: 1}))
    in_betti = GradedBetti(b0=Counter({2: 1, 5: 1}), b1=Counter())
    assert not check_cancellation(gin_betti, in_betti)
    assert cancellation_pairs(gin_betti, in_betti) == []


def test_cancellation_needs_matching_leftovers():
    gin_betti = GradedBetti(b0=Counter({2: 1, 3: 1}), b1=Counter({5: 1}))
    in_betti = GradedBetti(b0=Counter({2: 1}), b1=Counter())
    assert not check_cancellation(gin_betti, in_betti)


def test_perturbed_ideal_does_not_cancel():
    params = CIParams(4, 12, 3)
    lambdas = list(compute_invariants(params).lambdas)
    lambdas[5] -= 1
    assert not check_cancellation(betti_J(StableIdeal(k=12, lambdas=tuple(lambdas))), betti_In(params))


def test_cancellation_on_grid():
    for alpha in range(1, 8):
        for beta in range(alpha, 2 * alpha + 5):
            for n in range(1, 6):
                params = CIParams(alpha, beta, n)
                gin_betti, in_betti = betti_J(ideal_of(params)), betti_In(params)
                assert check_cancellation(gin_betti, in_betti), params
                assert max(gin_betti.b1) == max(in_betti.b1) == alpha + n * beta


def test_second_generator_degree_matches_last_invariant():
    # x^(k-1) y^lambda_(k-1) sits in the second-lowest degree of I^n
    for alpha in range(1, 9):
        for beta in range(alpha, 2 * alpha + 7):
            for n in range(1, 7):
                params = CIParams(alpha, beta, n)
                seq = compute_invariants(params)
                second = betti_In(params).as_dict()["b0"][1]
                assert second == seq.lambdas[-1] + seq.k - 1 == alpha * (n - 1) + beta, params


def test_betti_table():
    table = betti_table(betti_In(CIParams(1, 1, 1)))
    assert list(table.index) == [0, 1]
    assert list(table.columns) == [1, 2]
    assert table.loc[0].tolist() == [2, 0]
    assert table.loc[1].tolist() == [0, 1]
