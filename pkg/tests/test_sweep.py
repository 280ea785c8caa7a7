import json

import pytest

from ginkit import config
from ginkit.sweep import COLUMNS, grid, overlap_failures, parse_vars_list, run_sweep


def test_grid_respects_alpha_le_beta():
    tuples = grid(2, 3, 2, [2, 3])
    assert (1, 1, 1, 2) in tuples
    assert all(alpha <= beta for alpha, beta, _, _ in tuples)
    # alpha=1: beta 1..3, alpha=2: beta 2..3; times 2 powers, 2 var counts
    assert len(tuples) == 5 * 2 * 2


def test_parse_vars_list():
    assert parse_vars_list("2,3, 5") == [2, 3, 5]
    assert parse_vars_list("") == []


def test_overlap_check_is_quiet():
    assert overlap_failures(grid(2, 2, 5, [2])) == []


def test_serial_sweep():
    result = run_sweep(3, 5, 3, [2, 3])
    assert result.ok
    assert list(result.frame.columns) == COLUMNS
    assert len(result.frame) == len(grid(3, 5, 3, [2, 3]))
    assert (result.frame["status"] == "PASS").all()
    assert len(result.records) == len(result.frame)
    first = json.loads(result.records[0])
    assert first["params"] == {"alpha": 1, "beta": 1, "n": 1, "m": 2}
    assert set(first["checks"]) == set(config.SWEEP_CHECKS)


def test_histogram_counts_cases():
    result = run_sweep(1, 1, 3, [2])
    assert result.histogram().to_dict() == {"Equal": 3}


def test_histogram_of_an_empty_sweep():
    result = run_sweep(0, 0, 0, [2])
    assert result.ok
    assert result.histogram().empty


def test_parallel_sweep_matches_serial():
    serial = run_sweep(3, 6, 3, [2], checks=["structure", "closed-form"])
    parallel = run_sweep(3, 6, 3, [2], checks=["structure", "closed-form"], parallel=True, workers=2)
    assert parallel.frame.equals(serial.frame)
    assert parallel.records == serial.records


@pytest.mark.slow
def test_acceptance_sweep():
    result = run_sweep(8, 22, 6, [2, 3, 4, 5], parallel=True)
    assert result.ok, result.failures
