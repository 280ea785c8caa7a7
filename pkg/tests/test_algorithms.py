import pytest

from ginkit import hilbert
from ginkit.algorithms import (
    RUNNERS,
    block_close,
    block_mid,
    build,
    build_phase_gaps,
    compute_invariants,
    dispatch_case,
    onestwo,
    partial_block_mid,
    phase_segments,
    reverse_build,
    reverse_build_partial,
    reverse_phase_gaps,
    revonestwo,
    run_equal,
    run_far,
    run_mid,
    run_single_power_generic,
    trace_invariants,
)
from ginkit.core import CaseTag, CIParams, PhaseKind, PhaseTag, derive, gaps, structural_violations
from ginkit.errors import PreconditionError, StructuralViolation
from tests.golden import GOLDEN

CLOSE_CASES = (CaseTag.CLOSE_DIVIDES, CaseTag.CLOSE_NOT_DIVIDES, CaseTag.CLOSE_SMALL_N)


def small_grid(alpha_max=6, n_max=5):
    for alpha in range(1, alpha_max + 1):
        for beta in range(alpha, 2 * alpha + 4):
            for n in range(1, n_max + 1):
                yield CIParams(alpha, beta, n)


# --- subroutines ---

def test_onestwo_and_revonestwo():
    assert onestwo(0) == [2]
    assert onestwo(3) == [1, 1, 1, 2]
    assert revonestwo(2) == [2, 1, 1]


def test_build_and_reverse_build():
    assert build(1, 2) == [2, 2, 1, 2, 1, 2]
    assert reverse_build(1, 2) == [2, 1, 2, 1, 2, 2]
    assert reverse_build_partial(1, 2) == [1, 2, 1]
    assert reverse_build_partial(0, 3) == [2, 2]


def test_mid_blocks():
    assert partial_block_mid(2) == [1, 2, 1]
    # 2r - 1 alternating steps, then alpha - (2r - 1) twos
    assert block_mid(2, 7) == [1, 2, 1, 2, 2, 2, 2]
    assert sum(block_mid(2, 7)) == 12


def test_close_block_sums_to_beta():
    # l | alpha: one onestwo(c - 1), c steps
    assert block_close(4, 0, 3, 12) == [1, 1, 1, 2]
    # otherwise alpha steps dropping beta
    block = block_close(3, 2, 4, 10)
    assert block == [1, 1, 2, 1, 1, 2, 1, 2, 1, 2]
    assert (len(block), sum(block)) == (10, 14)


# --- dispatch ---

@pytest.mark.parametrize(
    "params, case",
    [
        ((4, 12, 3), CaseTag.FAR),
        ((6, 10, 5), CaseTag.MID),
        ((6, 8, 3), CaseTag.CLOSE_SMALL_N),
        ((1, 1, 5), CaseTag.EQUAL),
        ((3, 4, 1), CaseTag.SINGLE_POWER_GENERIC),
        ((2, 3, 1), CaseTag.FAR),
        ((12, 15, 5), CaseTag.CLOSE_DIVIDES),
        ((10, 14, 4), CaseTag.CLOSE_NOT_DIVIDES),
    ],
)
def test_dispatch(params, case):
    assert dispatch_case(CIParams(*params)) is case


def test_every_case_has_a_runner():
    assert set(RUNNERS) == set(CaseTag)


# --- worked examples ---

@pytest.mark.parametrize("key", sorted(GOLDEN))
def test_golden_sequences(key):
    case, lambdas, expected_gaps = GOLDEN[key]
    params = CIParams(*key)
    trace = trace_invariants(params)

    assert trace.case is case
    assert list(trace.seq.lambdas) == lambdas
    assert gaps(trace.seq) == expected_gaps


@pytest.mark.parametrize(
    "runner, params, lambdas",
    [
        (run_far, (1, 2, 2), [4, 2]),
        (run_single_power_generic, (3, 4, 1), [6, 4, 2]),
        (run_far, (2, 3, 1), [4, 2]),
    ],
)
def test_small_runners(runner, params, lambdas):
    assert list(runner(CIParams(*params)).seq.lambdas) == lambdas


def test_far_and_equal_agree_at_alpha_beta_one():
    for n in range(1, 8):
        params = CIParams(1, 1, n)
        assert run_far(params).seq.lambdas == run_equal(params).seq.lambdas == tuple(range(n, 0, -1))
        assert dispatch_case(params) is CaseTag.EQUAL


@pytest.mark.parametrize(
    "runner, params",
    [
        (run_far, (4, 6, 2)),
        (run_mid, (4, 12, 3)),
        (run_mid, (6, 10, 1)),
        (RUNNERS[CaseTag.CLOSE_DIVIDES], (10, 14, 4)),
        (RUNNERS[CaseTag.CLOSE_NOT_DIVIDES], (12, 15, 5)),
        (RUNNERS[CaseTag.CLOSE_SMALL_N], (12, 15, 5)),
        (run_equal, (3, 4, 2)),
        (run_single_power_generic, (3, 4, 2)),
    ],
)
def test_runner_outside_its_region(runner, params):
    with pytest.raises(PreconditionError):
        runner(CIParams(*params))


# --- structure over a grid ---

def test_grid_sequences_are_valid():
    for params in small_grid():
        seq = compute_invariants(params)
        assert structural_violations(seq) == [], params
        assert len(seq.phases) == seq.k


def test_subroutine_log_accounts_for_every_gap():
    for params in small_grid():
        trace = trace_invariants(params)
        assert sum(call.emitted for call in trace.subroutine_log) == trace.seq.k - 1


def test_block_counts():
    for params in small_grid(alpha_max=8, n_max=6):
        trace = trace_invariants(params)
        der = derive(params)
        alpha, beta, n = params.alpha, params.beta, params.n

        if trace.case is CaseTag.FAR:
            assert len(trace.calls("BlockFar")) == n - 1
        elif trace.case is CaseTag.MID:
            assert len(trace.calls("BlockMid")) == n - 2
        elif trace.case is CaseTag.CLOSE_DIVIDES:
            assert len(trace.calls("BlockClose")) == n * der.l - alpha + der.l
        elif trace.case is CaseTag.CLOSE_NOT_DIVIDES:
            assert len(trace.calls("BlockClose")) == n - der.c
            assert len(trace.calls("PartialBlockClose")) == 1
        elif trace.case is CaseTag.CLOSE_SMALL_N:
            assert len(trace.calls("onestwo")) == beta - n * der.l
        elif trace.case is CaseTag.EQUAL:
            assert len(trace.calls("onestwo")) == alpha - 1


def test_close_tail_mirrors_build():
    # reversed Build, minus its leading 2
    seen = set()
    for params in small_grid(alpha_max=10, n_max=6):
        trace = trace_invariants(params)
        if trace.case not in CLOSE_CASES:
            continue
        seen.add(trace.case)
        built = build_phase_gaps(trace.seq)
        assert reverse_phase_gaps(trace.seq) == list(reversed(built))[1:], params
    assert seen == set(CLOSE_CASES)


def test_mid_tail_mirrors_build_exactly():
    seen = 0
    for params in small_grid(alpha_max=10, n_max=6):
        trace = trace_invariants(params)
        if trace.case is not CaseTag.MID:
            continue
        seen += 1
        built = build_phase_gaps(trace.seq)
        assert built == [2] * derive(params).l, params
        assert reverse_phase_gaps(trace.seq) == list(reversed(built)), params
    assert seen > 0


def test_far_and_equal_have_no_build_phases():
    excluded = {PhaseKind.BUILD, PhaseKind.REVERSE_BUILD, PhaseKind.REVERSE_BUILD_PARTIAL}
    seen = set()
    for params in small_grid(alpha_max=8, n_max=6):
        trace = trace_invariants(params)
        if trace.case not in (CaseTag.FAR, CaseTag.EQUAL):
            continue
        seen.add(trace.case)
        assert not {tag.kind for tag in trace.seq.phases} & excluded, params
    assert seen == {CaseTag.FAR, CaseTag.EQUAL}


def test_lambda0_takes_the_first_phase():
    mid = trace_invariants(CIParams(6, 10, 5)).seq
    assert mid.phases[0] == PhaseTag.build()
    far = trace_invariants(CIParams(4, 12, 3)).seq
    assert far.phases[0] == PhaseTag.block(0)
    # Equal with alpha = 1 emits no block; lambda_0 joins the partial block
    equal = trace_invariants(CIParams(1, 1, 3)).seq
    assert equal.phases[0] == PhaseTag.partial_block()


def test_phase_segments_far():
    seq = trace_invariants(CIParams(4, 12, 3)).seq
    segments = phase_segments(seq)
    assert [tag.label for tag, _ in segments] == ["PatternBlock[0]", "PatternBlock[1]", "PartialPatternBlock"]
    assert [run for _, run in segments] == [[2, 2, 2, 6], [2, 2, 2, 6], [2, 2, 2]]


def test_mid_phase_order():
    seq = trace_invariants(CIParams(6, 10, 5)).seq
    kinds = [tag.kind for tag, _ in phase_segments(seq)]
    assert kinds[0] is PhaseKind.BUILD
    assert kinds[-1] is PhaseKind.REVERSE_BUILD
    assert kinds[-2] is PhaseKind.PARTIAL_PATTERN_BLOCK
    assert kinds.count(PhaseKind.PATTERN_BLOCK) == 3


@pytest.mark.slow
def test_acceptance_grid_is_valid():
    for alpha in range(1, 9):
        for beta in range(alpha, 2 * alpha + 7):
            for n in range(1, 7):
                seq = compute_invariants(CIParams(alpha, beta, n))
                assert structural_violations(seq) == []


# --- Hilbert gate on the n = 1 case ---

def counting_gate(monkeypatch):
    calls = []
    original = hilbert.verify_hilbert_equality

    def wrapper(params, ideal, t_max=None):
        calls.append(params)
        return original(params, ideal, t_max)

    monkeypatch.setattr(hilbert, "verify_hilbert_equality", wrapper)
    return calls


def test_single_power_output_passes_the_hilbert_gate(monkeypatch):
    calls = counting_gate(monkeypatch)
    trace = trace_invariants(CIParams(3, 4, 1))
    assert trace.case is CaseTag.SINGLE_POWER_GENERIC
    assert list(trace.seq.lambdas) == [6, 4, 2]
    assert calls == [CIParams(3, 4, 1)]


@pytest.mark.parametrize("params", [(4, 12, 3), (6, 10, 5), (12, 15, 5), (3, 3, 2)])
def test_other_cases_skip_the_hilbert_gate(monkeypatch, params):
    calls = counting_gate(monkeypatch)
    trace_invariants(CIParams(*params))
    assert calls == []


def test_single_power_candidate_rejected_when_hilbert_disagrees(monkeypatch):
    def disagree(params, ideal, t_max=None):
        return hilbert.HilbertCheck(ok=False, t_max=9, first_failure=5)

    monkeypatch.setattr(hilbert, "verify_hilbert_equality", disagree)
    with pytest.raises(StructuralViolation, match="t=5"):
        trace_invariants(CIParams(3, 4, 1))
