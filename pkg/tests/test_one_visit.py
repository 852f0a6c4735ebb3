from itertools import permutations

import pytest

from corpus.generators import exhaustive_multisets
from instances.models import KVisitsInstance
from oracle.search import oracle_enumerate_kvisits
from solver.models import InfeasibilityReason
from solver.one_visit import solve_one_visit
from utils.errors import InvalidRepetitionCount
from verify.checker import verify_kvisits


def brute_force_feasible(deadlines) -> bool:
    return any(all(p <= deadlines[node] for p, node in enumerate(order, start=1))
               for order in permutations(range(len(deadlines))))


def test_increasing_deadlines():
    result = solve_one_visit(KVisitsInstance((1, 2, 3), 1))
    assert result.feasible
    assert result.schedule.entries == (1, 2, 3)


@pytest.mark.parametrize("deadlines", [(1, 1), (2, 2, 2)])
def test_crowded_deadlines_are_infeasible(deadlines):
    result = solve_one_visit(KVisitsInstance(deadlines, 1))
    assert not result.feasible
    assert result.reason is InfeasibilityReason.NON_POSITIVE_DISCRETIZED


def test_rejects_two_visits():
    with pytest.raises(InvalidRepetitionCount):
        solve_one_visit(KVisitsInstance((1, 2), 2))


def test_agrees_with_permutation_enumeration():
    for n in range(1, 7):
        for deadlines in exhaustive_multisets(n, n):
            instance = KVisitsInstance(deadlines, 1)
            result = solve_one_visit(instance)
            assert result.feasible == brute_force_feasible(deadlines), deadlines
            if result.feasible:
                assert verify_kvisits(instance, result.schedule).ok


def test_agrees_with_schedule_enumeration():
    for n in range(1, 5):
        for deadlines in exhaustive_multisets(n, n):
            count = oracle_enumerate_kvisits(KVisitsInstance(deadlines, 1), lambda _: None)
            assert (count > 0) == solve_one_visit(KVisitsInstance(deadlines, 1)).feasible
