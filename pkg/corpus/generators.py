"""
Seeded instance generators. Every generator takes a random.Random so that a
--seed on the command line reproduces a corpus bit for bit.
"""

import random
from itertools import combinations_with_replacement
from typing import Iterator

from instances.models import KVisitsInstance
from instances.preprocess import discretize_values
from oracle.matching import oracle_rn3dm
from oracle.search import SearchBudget
from pm.models import PositionMatchingInstance
from reductions.models import Rn3dmInstance
from utils.errors import BudgetExhausted


def random_kvisits(rng: random.Random, n: int, max_deadline: int | None = None, k: int = 2,
                   allow_oversize: bool = False) -> KVisitsInstance:
    """Deadlines uniform in [1, 2n] (or [1, max_deadline]); oversize doubles the cap to exercise trimming."""
    cap = max_deadline if max_deadline is not None else 2 * n
    if allow_oversize:
        cap *= 2
    return KVisitsInstance(tuple(sorted(rng.randint(1, cap) for _ in range(n))), k)


def random_distinct_kvisits(rng: random.Random, n: int) -> KVisitsInstance:
    return KVisitsInstance(tuple(sorted(rng.sample(range(1, 2 * n + 1), n))), 2)


def planted_distinct_kvisits(rng: random.Random, n: int) -> KVisitsInstance:
    """Distinct deadlines from [n, 2n]: every gap is at most 2n <= 2 * d_i, so the instance is feasible."""
    return KVisitsInstance(tuple(sorted(rng.sample(range(n, 2 * n + 1), n))), 2)


def random_pm(rng: random.Random, n: int, max_value: int) -> PositionMatchingInstance:
    """A random valid Position Matching instance: positive discretized sequence, distinct targets."""
    if max_value < n:
        raise ValueError(f"max_value {max_value} leaves no positive discretized sequence for n={n}")
    while True:
        D = sorted(rng.randint(1, max_value) for _ in range(n))
        A = discretize_values(D)
        if A[0] >= 1:
            break
    T = rng.sample(range(1, 2 * max_value + 1), n)
    return PositionMatchingInstance(tuple(D), tuple(A), tuple(T))


def random_consecutive_pm(rng: random.Random, n: int, max_value: int) -> PositionMatchingInstance:
    """
    A single-cluster instance: the i-th deadline (1-based) is drawn from
    [top - n + i, top], which keeps the discretized sequence at top-n+1..top.
    """
    top = rng.randint(n, max_value)
    D = sorted([rng.randint(top - n + i, top) for i in range(1, n)] + [top])
    T = rng.sample(range(1, 2 * top + 1), n)
    return PositionMatchingInstance(tuple(D), tuple(discretize_values(D)), tuple(T))


def rn3dm_sigma_range(n: int, max_value: int) -> tuple[int, int]:
    """a = sigma - b - c stays in [1, max_value] for all b, c in [1, n]."""
    return max(n + 3, 2 * n + 1), max_value + 2


def random_rn3dm(rng: random.Random, n: int, max_value: int, yes: bool = True,
                 budget: "int | SearchBudget | None" = None,
                 label: bool = True) -> tuple[Rn3dmInstance, bool | None]:
    """
    Yes-instances are planted: a_i = sigma - b_i - c_i for random permutations
    b, c. No-candidates move one unit between two elements of a planted
    instance (which keeps the sum invariant) and are labelled by the oracle.
    Returns the instance and its label; with label=False a perturbed
    candidate comes back with None so the caller can run the oracle itself.
    """
    low, high = rn3dm_sigma_range(n, max_value)
    if low > high:
        raise ValueError(f"no sigma keeps values in [1, {max_value}] for n={n}")
    sigma = rng.randint(low, high)
    b = rng.sample(range(1, n + 1), n)
    c = rng.sample(range(1, n + 1), n)
    A = [sigma - bi - ci for bi, ci in zip(b, c)]
    if yes or n == 1:
        return Rn3dmInstance(tuple(A), sigma), True

    donors = [i for i in range(n) if A[i] > 1]
    if not donors:
        return Rn3dmInstance(tuple(A), sigma), True
    i = rng.choice(donors)
    takers = [x for x in range(n) if x != i and A[x] < max_value]
    if not takers:
        return Rn3dmInstance(tuple(A), sigma), True
    j = rng.choice(takers)
    A[i] -= 1
    A[j] += 1
    instance = Rn3dmInstance(tuple(A), sigma)
    if not label:
        return instance, None
    outcome = oracle_rn3dm(instance, budget)
    if not outcome.decided:
        raise BudgetExhausted(outcome.expanded)
    return instance, outcome.feasible


def exhaustive_multisets(n: int, max_value: int, min_value: int = 1) -> Iterator[tuple[int, ...]]:
    """Every non-decreasing n-tuple over [min_value, max_value]."""
    return combinations_with_replacement(range(min_value, max_value + 1), n)
