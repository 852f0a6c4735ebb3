import random
import time
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from corpus.generators import (
    exhaustive_multisets,
    planted_distinct_kvisits,
    random_distinct_kvisits,
    random_kvisits,
)
from instances.models import KVisitsInstance
from instances.preprocess import discretize_values, within_density_threshold
from oracle.search import oracle_kvisits
from pm.solvers import PmSolver
from solver.models import Feasibility, InfeasibilityReason
from solver.two_visits import solve_two_visits
from utils.errors import InvalidRepetitionCount
from verify.checker import verify_kvisits


def check_against_oracle(instance: KVisitsInstance):
    result = solve_two_visits(instance)
    outcome = oracle_kvisits(instance)
    assert outcome.decided, instance
    assert result.feasible == outcome.feasible, instance
    if result.feasible:
        assert verify_kvisits(instance, result.schedule).ok
    if within_density_threshold(instance):
        assert result.feasible, f"density <= 5/6 but infeasible: {instance.deadlines}"
    return result


# --- worked examples ---------------------------------------------------------------------------

def test_twelve_node_instance_is_feasible(twelve_node_instance):
    result = solve_two_visits(twelve_node_instance)
    assert result.verdict is Feasibility.FEASIBLE
    assert verify_kvisits(twelve_node_instance, result.schedule).ok

    entries = result.schedule.entries
    positions = discretize_values(twelve_node_instance.deadlines)
    assert positions == [3, 4, 5, 6, 7, 8, 9, 10, 11, 15, 22, 23]
    # one primary visit per node on the discretized positions
    assert sorted(entries[p - 1] for p in positions) == list(range(1, 13))


def test_seven_node_instance_trace(seven_node_instance):
    result = solve_two_visits(seven_node_instance)
    assert result.feasible
    assert [t.solver for t in result.trace] == [PmSolver.TWO_VALUES, PmSolver.SINGLE_VALUE, PmSolver.SINGLE_VALUE]
    assert [(t.first, t.last) for t in result.trace] == [(0, 3), (4, 5), (6, 6)]
    assert all(t.feasible for t in result.trace)


def test_equal_deadlines_give_round_robin():
    result = solve_two_visits(KVisitsInstance((4, 4, 4, 4), 2))
    assert result.schedule.entries == (1, 2, 3, 4, 1, 2, 3, 4)


def test_single_node():
    assert solve_two_visits(KVisitsInstance((2,), 2)).schedule.entries == (1, 1)
    assert solve_two_visits(KVisitsInstance((1,), 2)).schedule.entries == (1, 1)


def test_infeasible_cluster_is_reported():
    result = solve_two_visits(KVisitsInstance((2, 2, 4, 4), 2))
    assert result.verdict is Feasibility.INFEASIBLE
    assert result.reason is InfeasibilityReason.CLUSTER_PM_INFEASIBLE
    assert result.failed_cluster == 0
    assert result.schedule is None


def test_non_positive_discretized_sequence_is_infeasible():
    result = solve_two_visits(KVisitsInstance((1, 1), 2))
    assert result.reason is InfeasibilityReason.NON_POSITIVE_DISCRETIZED


def test_trimmed_nodes_go_last():
    result = solve_two_visits(KVisitsInstance((3, 3, 99), 2))
    assert result.trimmed == (3,)
    assert result.schedule.entries == (1, 1, 2, 2, 3, 3)


def test_cascading_trim_appends_first_removed_last():
    result = solve_two_visits(KVisitsInstance((5, 20, 30), 2))
    assert result.trimmed == (3, 2)
    assert result.schedule.entries == (1, 1, 2, 2, 3, 3)


def test_rejects_other_repetition_counts():
    with pytest.raises(InvalidRepetitionCount):
        solve_two_visits(KVisitsInstance((3, 3), 3))


def test_jobs_do_not_change_the_result(seven_node_instance):
    assert solve_two_visits(seven_node_instance, jobs=4) == solve_two_visits(seven_node_instance, jobs=1)


# --- oracle agreement -------------------------------------------------------------------------------

def test_agrees_with_oracle_on_every_small_instance():
    for n in range(1, 6):
        for deadlines in exhaustive_multisets(n, 2 * n):
            check_against_oracle(KVisitsInstance(deadlines, 2))


def test_special_case_sweeps_agree_with_oracle():
    for n in range(1, 7):
        # distinct deadlines
        for deadlines in combinations(range(1, 2 * n + 1), n):
            check_against_oracle(KVisitsInstance(deadlines, 2))
        for x in range(1, 2 * n + 1):
            # single value
            check_against_oracle(KVisitsInstance((x,) * n, 2))
            # two values, every split
            for y in range(x + 1, 2 * n + 1):
                for m in range(1, n):
                    check_against_oracle(KVisitsInstance((x,) * m + (y,) * (n - m), 2))


@given(seed=st.integers(min_value=0, max_value=10 ** 6), n=st.integers(min_value=2, max_value=8))
@settings(max_examples=200, deadline=None)
def test_oversize_instances_agree_with_oracle(seed, n):
    check_against_oracle(random_kvisits(random.Random(seed), n, allow_oversize=True))


@pytest.mark.slow
def test_agrees_with_oracle_on_random_corpus():
    rng = random.Random(2024)
    for _ in range(10_000):
        check_against_oracle(random_kvisits(rng, rng.randint(1, 8)))


# --- distinct-deadline fast path --------------------------------------------------------------------------

@given(seed=st.integers(min_value=0, max_value=10 ** 6), n=st.integers(min_value=1, max_value=7))
@settings(max_examples=100, deadline=None)
def test_distinct_fast_path_agrees_with_oracle(seed, n):
    result = check_against_oracle(random_distinct_kvisits(random.Random(seed), n))
    assert all(t.solver is PmSolver.DISTINCT for t in result.trace)


def _timed(instance: KVisitsInstance) -> float:
    started = time.perf_counter()
    result = solve_two_visits(instance)
    elapsed = time.perf_counter() - started
    assert result.feasible
    return elapsed


def test_planted_distinct_secondaries_follow_node_order():
    n = 2_000
    instance = planted_distinct_kvisits(random.Random(5), n)
    result = solve_two_visits(instance)
    assert result.feasible
    gaps = sorted(set(range(1, 2 * n + 1)) - set(instance.deadlines))
    entries = result.schedule.entries
    assert [entries[p - 1] for p in instance.deadlines] == list(range(1, n + 1))
    assert [entries[g - 1] for g in gaps] == list(range(1, n + 1))


@pytest.mark.slow
def test_distinct_deadlines_scale_linearly():
    rng = random.Random(0)
    half = _timed(planted_distinct_kvisits(rng, 500_000))
    full = _timed(planted_distinct_kvisits(rng, 1_000_000))
    # doubling n should roughly double the time; quadratic growth would be ~4x
    assert full / half < 2.6
    assert full <= 3.0
