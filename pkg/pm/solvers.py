"""
Position Matching solvers.

The module works on two levels:
- sequence level (`match_cluster` and the `_*_pairs` helpers): plain D/A/T
  sequences, no validation, used by the 2-Visits pipeline once per cluster.
- instance level (`solve_distinct`, `solve_single_value`, `solve_two_values`,
  `solve_exact`, `dispatch`): validated PositionMatchingInstance in,
  PmMatching (or None when infeasible) out.

Pairs are (d_index, a_index) with pairs[j][1] == j. Targets are attached at
the end by sorted domination, so every solver returns the same kind of
witness.
"""

from bisect import bisect_left, bisect_right, insort
from enum import Enum
from typing import Sequence

from pm.models import PmMatching, PositionMatchingInstance, dominates, matching_from_pairs, validate
from utils.errors import PreconditionNotDistinct, PreconditionNotSingleValue, PreconditionNotTwoValues
from utils.logger import logger

Pairs = list[tuple[int, int]]


class PmSolver(str, Enum):
    SINGLE_VALUE = "single_value"
    TWO_VALUES = "two_values"
    DISTINCT = "distinct"
    EXACT = "exact"


def _sums_dominate(D: Sequence[int], A: Sequence[int], targets: Sequence[int], pairs: Pairs) -> bool:
    return dominates(sorted(D[d] + A[a] for d, a in pairs), targets)


def is_strictly_increasing(values: Sequence[int]) -> bool:
    return all(values[i] < values[i + 1] for i in range(len(values) - 1))


def _distinct_pairs(D, A, targets) -> Pairs | None:
    # D strictly increasing means A == D, and the only d >= a_n is d_n: the identity is forced.
    n = len(D)
    for j in range(n):
        if D[j] + A[j] < targets[j]:
            return None
    return [(j, j) for j in range(n)]


def _single_value_pairs(D, A, targets) -> Pairs | None:
    x = D[0]
    n = len(D)
    for j in range(n):
        if x + A[j] < targets[j]:
            return None
    return [(j, j) for j in range(n)]


def _two_values_pairs(D, A, targets) -> Pairs | None:
    n = len(D)
    x, y = D[0], D[-1]
    m = bisect_right(D, x)

    if A[m] > A[m - 1] + 1:
        # Two clusters split at the x/y boundary: no copy of x reaches the second
        # run, so x takes the first run and y the second.
        pairs = [(j, j) for j in range(n)]
        return pairs if _sums_dominate(D, A, targets, pairs) else None

    # Single run. Scan positions upwards; a copy of x goes wherever it already
    # covers the smallest open target, otherwise the position needs a y, which
    # is spent on the largest open target it still covers.
    removed = bytearray(n)
    # parent over slots 1..n (slot s is target s-1); slot 0 is a sentinel.
    parent = list(range(n + 1))

    def largest_open(slot: int) -> int:
        while parent[slot] != slot:
            parent[slot] = parent[parent[slot]]
            slot = parent[slot]
        return slot

    pairs: Pairs = []
    next_x, next_y = 0, m
    lo, hi = 0, -1
    j = 0
    while j < n and next_x < m and next_y < n:
        a = A[j]
        if x < a:
            return None
        while removed[lo]:
            lo += 1
        if x + a >= targets[lo]:
            removed[lo] = 1
            parent[lo + 1] = lo
            pairs.append((next_x, j))
            next_x += 1
        elif y + a < targets[lo]:
            return None
        else:
            limit = y + a
            while hi + 1 < n and targets[hi + 1] <= limit:
                hi += 1
            k = largest_open(hi + 1) - 1
            removed[k] = 1
            parent[k + 1] = k
            pairs.append((next_y, j))
            next_y += 1
        j += 1

    # One value class is used up; the rest is a single-value instance.
    while j < n:
        if next_x < m:
            if x < A[j]:
                return None
            pairs.append((next_x, j))
            next_x += 1
        else:
            pairs.append((next_y, j))
            next_y += 1
        j += 1
    return pairs if _sums_dominate(D, A, targets, pairs) else None


def _exact_pairs(D, A, targets) -> Pairs | None:
    """
    Depth-first assignment of deadline values to positions a_1..a_n in order.
    Only one copy of each distinct value is tried per position. A branch is cut
    when the unused values can no longer cover the remaining positions, or when
    the sums fixed so far cannot dominate the same number of smallest targets.
    """
    n = len(D)
    values: list[int] = []
    counts: list[int] = []
    first_index: list[int] = []
    for i, d in enumerate(D):
        if values and values[-1] == d:
            counts[-1] += 1
        else:
            values.append(d)
            counts.append(1)
            first_index.append(i)

    used = [0] * len(values)
    chosen = [0] * n
    partial: list[int] = []

    def unused_cover(i: int) -> bool:
        p = i
        for v_idx, v in enumerate(values):
            for _ in range(counts[v_idx] - used[v_idx]):
                if v < A[p]:
                    return False
                p += 1
        return True

    def partial_dominates(start: int) -> bool:
        for q in range(start, len(partial)):
            if partial[q] < targets[q]:
                return False
        return True

    def dfs(i: int) -> bool:
        if i == n:
            return True
        a = A[i]
        for v_idx in range(bisect_left(values, a), len(values)):
            if used[v_idx] == counts[v_idx]:
                continue
            s = values[v_idx] + a
            pos = bisect_right(partial, s)
            partial.insert(pos, s)
            used[v_idx] += 1
            if partial_dominates(pos) and unused_cover(i + 1):
                chosen[i] = v_idx
                if dfs(i + 1):
                    return True
            used[v_idx] -= 1
            del partial[pos]
        return False

    if not dfs(0):
        return None

    next_copy = list(first_index)
    pairs: Pairs = []
    for j in range(n):
        v_idx = chosen[j]
        pairs.append((next_copy[v_idx], j))
        next_copy[v_idx] += 1
    return pairs


def match_cluster(D: Sequence[int], A: Sequence[int], T: Sequence[int]) -> tuple[PmSolver, Pairs | None]:
    """Runs the cheapest applicable solver: single value, two values, distinct, exact."""
    targets = sorted(T)
    x, y = D[0], D[-1]
    if x == y:
        return PmSolver.SINGLE_VALUE, _single_value_pairs(D, A, targets)
    if D[bisect_right(D, x)] == y:
        return PmSolver.TWO_VALUES, _two_values_pairs(D, A, targets)
    if is_strictly_increasing(D):
        return PmSolver.DISTINCT, _distinct_pairs(D, A, targets)
    return PmSolver.EXACT, _exact_pairs(D, A, targets)


def _complete(instance: PositionMatchingInstance, pairs: Pairs | None) -> PmMatching | None:
    if pairs is None:
        return None
    sums = [instance.D[d] + instance.A[a] for d, a in pairs]
    return matching_from_pairs(pairs, sums, instance.T)


def solve_distinct(instance: PositionMatchingInstance) -> PmMatching | None:
    validate(instance)
    if not is_strictly_increasing(instance.D):
        raise PreconditionNotDistinct("solve_distinct needs strictly increasing deadlines")
    return _complete(instance, _distinct_pairs(instance.D, instance.A, sorted(instance.T)))


def solve_single_value(instance: PositionMatchingInstance) -> PmMatching | None:
    validate(instance)
    if instance.D[0] != instance.D[-1]:
        raise PreconditionNotSingleValue("solve_single_value needs all deadlines equal")
    return _complete(instance, _single_value_pairs(instance.D, instance.A, sorted(instance.T)))


def solve_two_values(instance: PositionMatchingInstance) -> PmMatching | None:
    validate(instance)
    D = instance.D
    if D[0] == D[-1] or D[bisect_right(D, D[0])] != D[-1]:
        raise PreconditionNotTwoValues(f"solve_two_values needs exactly two distinct deadlines, got {len(set(D))}")
    return _complete(instance, _two_values_pairs(D, instance.A, sorted(instance.T)))


def solve_exact(instance: PositionMatchingInstance) -> PmMatching | None:
    validate(instance)
    return _complete(instance, _exact_pairs(instance.D, instance.A, sorted(instance.T)))


def dispatch(instance: PositionMatchingInstance) -> tuple[PmSolver, PmMatching | None]:
    validate(instance)
    solver, pairs = match_cluster(instance.D, instance.A, instance.T)
    matching = _complete(instance, pairs)
    logger.debug(f"PM n={instance.n}: {solver.value} -> {'feasible' if matching else 'infeasible'}")
    return solver, matching
