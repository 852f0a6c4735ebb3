"""Exhaustive reference solvers for Position Matching, RN3DM and IN3DM."""

from itertools import permutations

from oracle.search import OracleOutcome, OracleStatus, SearchBudget
from pm.models import PositionMatchingInstance, assign_targets, matching_from_pairs
from reductions.models import In3dmInstance, In3dmMatching, Rn3dmInstance, Rn3dmMatching
from utils.errors import BudgetExhausted


def _exhausted(budget: SearchBudget) -> OracleOutcome:
    return OracleOutcome(OracleStatus.BUDGET_EXHAUSTED, None, budget.expanded)


def oracle_pm(instance: PositionMatchingInstance, budget: "int | SearchBudget | None" = None) -> OracleOutcome:
    """Every assignment of deadline values to positions (equal values not repeated), targets by sorted domination."""
    budget = SearchBudget.of(budget)
    D, A, T = instance.D, instance.A, instance.T
    n = len(D)
    remaining: dict[int, list[int]] = {}
    for i, d in enumerate(D):
        remaining.setdefault(d, []).append(i)
    pairs: list[tuple[int, int]] = []

    def assign(j: int):
        budget.charge()
        if j == n:
            sums = [D[d] + A[a] for d, a in pairs]
            return matching_from_pairs(pairs, sums, T)
        for value, free in remaining.items():
            if not free or value < A[j]:
                continue
            pairs.append((free.pop(), j))
            found = assign(j + 1)
            free.append(pairs.pop()[0])
            if found is not None:
                return found
        return None

    try:
        matching = assign(0)
    except BudgetExhausted:
        return _exhausted(budget)
    if matching is None:
        return OracleOutcome(OracleStatus.INFEASIBLE, None, budget.expanded)
    return OracleOutcome(OracleStatus.FEASIBLE, matching, budget.expanded)


def oracle_rn3dm(instance: Rn3dmInstance, budget: "int | SearchBudget | None" = None) -> OracleOutcome:
    """Tries every B permutation; C is then forced to sigma - a - b and must itself be a permutation."""
    budget = SearchBudget.of(budget)
    n, sigma = instance.n, instance.sigma
    expected = list(range(1, n + 1))
    try:
        for b in permutations(expected):
            budget.charge()
            c = [sigma - a - bi for a, bi in zip(instance.A, b)]
            if sorted(c) == expected:
                triples = tuple((i, b[i], c[i]) for i in range(n))
                return OracleOutcome(OracleStatus.FEASIBLE, Rn3dmMatching(triples), budget.expanded)
    except BudgetExhausted:
        return _exhausted(budget)
    return OracleOutcome(OracleStatus.INFEASIBLE, None, budget.expanded)


def oracle_in3dm(instance: In3dmInstance, budget: "int | SearchBudget | None" = None) -> OracleOutcome:
    """Tries every B permutation; targets are then decided by sorted domination."""
    budget = SearchBudget.of(budget)
    n = instance.n
    try:
        for b in permutations(range(1, n + 1)):
            budget.charge()
            sums = [a + bi for a, bi in zip(instance.A, b)]
            assignment = assign_targets(sums, instance.T)
            if assignment is not None:
                triples = tuple((i, b[i], assignment[i]) for i in range(n))
                return OracleOutcome(OracleStatus.FEASIBLE, In3dmMatching(triples), budget.expanded)
    except BudgetExhausted:
        return _exhausted(budget)
    return OracleOutcome(OracleStatus.INFEASIBLE, None, budget.expanded)
