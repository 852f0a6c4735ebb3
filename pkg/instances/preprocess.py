"""
Preprocessing pipeline for k-Visits instances: sorting, trimming of
never-expiring nodes, discretization, cluster/gap extraction and density.
"""

from fractions import Fraction
from typing import Iterable

from instances.models import (
    Cluster,
    ClusterDecomposition,
    DiscretizedSequence,
    KVisitsInstance,
)
from utils.errors import (
    EmptyInput,
    InvalidRepetitionCount,
    NonPositiveDeadline,
    NonPositiveDiscretizedValue,
    ValueExceedsHorizon,
)

DENSITY_THRESHOLD = Fraction(5, 6)


def normalize(raw: Iterable[int], k: int) -> KVisitsInstance:
    """Sorts a multiset of deadlines into a k-Visits instance."""
    values = list(raw)
    if not values:
        raise EmptyInput("no deadlines given")
    for d in values:
        if d < 1:
            raise NonPositiveDeadline(f"deadline {d} is not positive")
    values.sort()
    return KVisitsInstance(tuple(values), k)


def discretize_values(deadlines: tuple[int, ...] | list[int]) -> list[int]:
    """
    Backward recurrence a_n = d_n, a_i = min(a_{i+1} - 1, d_i).
    Values may come out non-positive; callers decide what that means.
    """
    n = len(deadlines)
    values = [0] * n
    if n == 0:
        return values
    current = deadlines[-1]
    values[-1] = current
    for i in range(n - 2, -1, -1):
        current -= 1
        d = deadlines[i]
        if d < current:
            current = d
        values[i] = current
    return values


def discretize(instance: KVisitsInstance) -> DiscretizedSequence:
    return DiscretizedSequence(tuple(discretize_values(instance.deadlines)), instance.deadlines)


def trim_large_deadlines(instance: KVisitsInstance) -> tuple[KVisitsInstance, list[int]]:
    """
    Repeatedly drops the largest deadline while it exceeds 2 * (current n).
    Such a node never expires inside the horizon, so its two visits can go at
    the very end. The last remaining node is never dropped.

    Returns the core instance and the removed node indices (1-based) in
    removal order.
    """
    if instance.k != 2:
        raise InvalidRepetitionCount(f"trimming is defined for 2-Visits, got k={instance.k}")
    deadlines = instance.deadlines
    n = len(deadlines)
    trimmed = []
    while n > 1 and deadlines[n - 1] > 2 * n:
        trimmed.append(n)
        n -= 1
    if not trimmed:
        return instance, trimmed
    return KVisitsInstance(deadlines[:n], 2), trimmed


def decompose(disc: DiscretizedSequence) -> ClusterDecomposition:
    """Splits a positive, trimmed discretized sequence into clusters and gaps over [1, 2n]."""
    values = disc.values
    n = len(values)
    horizon = 2 * n
    if n == 0:
        return ClusterDecomposition((), (), 0)
    if values[0] < 1:
        raise NonPositiveDiscretizedValue(f"discretized value {values[0]} is not positive")
    if values[-1] > horizon:
        raise ValueExceedsHorizon(f"discretized value {values[-1]} exceeds the horizon {horizon}")

    clusters = []
    first = 0
    for i in range(1, n):
        if values[i] != values[i - 1] + 1:
            clusters.append(Cluster(first, i - 1))
            first = i
    clusters.append(Cluster(first, n - 1))

    occupied = bytearray(horizon + 1)
    for a in values:
        occupied[a] = 1
    gaps = tuple(p for p in range(1, horizon + 1) if not occupied[p])
    return ClusterDecomposition(tuple(clusters), gaps, horizon)


def density(instance: KVisitsInstance) -> Fraction:
    """Exact sum of 1/d_i."""
    total = Fraction(0)
    # Group equal deadlines: one Fraction per distinct value keeps this fast on multisets.
    deadlines = instance.deadlines
    i = 0
    n = len(deadlines)
    while i < n:
        j = i
        while j < n and deadlines[j] == deadlines[i]:
            j += 1
        total += Fraction(j - i, deadlines[i])
        i = j
    return total


def within_density_threshold(instance: KVisitsInstance) -> bool:
    """True when the density does not exceed 5/6, which guarantees feasibility."""
    return density(instance) <= DENSITY_THRESHOLD
