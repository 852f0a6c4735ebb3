import pytest

from corpus.generators import exhaustive_multisets
from instances.models import KVisitsInstance, VarKVisitsInstance
from oracle.matching import oracle_in3dm, oracle_pm, oracle_rn3dm
from oracle.search import (
    OracleStatus,
    SearchBudget,
    oracle_enumerate_kvisits,
    oracle_kvisits,
    oracle_var_kvisits,
)
from pm.models import PositionMatchingInstance, verify_matching
from reductions.models import In3dmInstance, Rn3dmInstance, verify_in3dm, verify_rn3dm
from utils.errors import BudgetExhausted
from verify.checker import verify_kvisits, verify_var_kvisits


def enumerate_all(instance):
    found = []
    count = oracle_enumerate_kvisits(instance, lambda s: found.append(list(s.entries)))
    assert count == len(found)
    return found


@pytest.mark.parametrize("deadlines, k, status", [
    ((4, 4, 4, 4), 2, OracleStatus.FEASIBLE),
    ((2, 2, 4, 4), 2, OracleStatus.INFEASIBLE),
    ((1, 2, 3), 1, OracleStatus.FEASIBLE),
])
def test_kvisits_decisions(deadlines, k, status):
    instance = KVisitsInstance(deadlines, k)
    outcome = oracle_kvisits(instance)
    assert outcome.status is status
    if outcome.feasible:
        assert verify_kvisits(instance, outcome.witness).ok


def test_one_visit_witness_is_deadline_order():
    assert oracle_kvisits(KVisitsInstance((1, 2, 3), 1)).witness.entries == (1, 2, 3)


def test_enumeration_examples():
    assert enumerate_all(KVisitsInstance((2, 2), 2)) == [[1, 2, 1, 2], [2, 1, 2, 1]]
    assert enumerate_all(KVisitsInstance((1,), 1)) == [[1]]
    assert enumerate_all(KVisitsInstance((1, 1), 1)) == []


def test_enumeration_is_lexicographic_and_verified():
    instance = KVisitsInstance((2, 3, 4), 2)
    schedules = enumerate_all(instance)
    assert schedules == sorted(schedules)
    assert len({tuple(s) for s in schedules}) == len(schedules)


def test_enumeration_count_matches_decision():
    for n in range(1, 4):
        for deadlines in exhaustive_multisets(n, 2 * n):
            instance = KVisitsInstance(deadlines, 2)
            assert (len(enumerate_all(instance)) > 0) == oracle_kvisits(instance).feasible


def test_budget_exhaustion_is_a_value(twelve_node_instance):
    outcome = oracle_kvisits(twelve_node_instance, budget=1)
    assert outcome.status is OracleStatus.BUDGET_EXHAUSTED
    assert not outcome.decided
    assert outcome.witness is None


def test_enumeration_raises_on_budget(twelve_node_instance):
    with pytest.raises(BudgetExhausted):
        oracle_enumerate_kvisits(twelve_node_instance, lambda _: None, budget=5)


def test_budget_reads_environment(monkeypatch):
    monkeypatch.setenv("KVISITS_BUDGET", "5")
    assert SearchBudget.of(None).max_nodes_expanded == 5
    budget = SearchBudget(10)
    assert SearchBudget.of(budget) is budget
    assert budget.outcome == "Decided"


def test_outcomes_are_deterministic(seven_node_instance):
    assert oracle_kvisits(seven_node_instance) == oracle_kvisits(seven_node_instance)


def test_var_k_oracle():
    feasible = VarKVisitsInstance(((4, 4, 12),) * 4)
    outcome = oracle_var_kvisits(feasible)
    assert outcome.feasible
    assert verify_var_kvisits(feasible, outcome.witness).ok
    assert not oracle_var_kvisits(VarKVisitsInstance(((2, 2, 12), (2, 2, 12), (4, 4, 12), (4, 4, 12)))).feasible


def test_pm_oracle(worked_pm_instance):
    outcome = oracle_pm(worked_pm_instance)
    assert outcome.feasible
    assert verify_matching(worked_pm_instance, outcome.witness).ok
    assert not oracle_pm(PositionMatchingInstance((2, 2), (1, 2), (5, 6))).feasible


def test_rn3dm_oracle():
    outcome = oracle_rn3dm(Rn3dmInstance((2, 2), 5))
    assert outcome.feasible
    assert verify_rn3dm(Rn3dmInstance((2, 2), 5), outcome.witness)
    assert sorted((b, c) for _, b, c in outcome.witness.triples) == [(1, 2), (2, 1)]

    mixed = Rn3dmInstance((1, 3), 5)
    assert oracle_rn3dm(mixed).witness.triples == ((0, 2, 2), (1, 1, 1))

    assert not oracle_rn3dm(Rn3dmInstance((1, 5), 6)).feasible


def test_in3dm_oracle():
    assert oracle_in3dm(In3dmInstance((5,), (7,))).status is OracleStatus.INFEASIBLE
    instance = In3dmInstance((2, 2), (3, 4))
    outcome = oracle_in3dm(instance)
    assert outcome.feasible
    assert verify_in3dm(instance, outcome.witness)


def test_matching_oracles_respect_budget():
    assert oracle_rn3dm(Rn3dmInstance((2, 2, 2), 6), budget=0).status is OracleStatus.BUDGET_EXHAUSTED
