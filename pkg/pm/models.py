"""
Position Matching: deadlines D, their discretized sequence A and distinct
targets T. A solution is a perfect triple matching with d >= a and
d + a >= t for every triple.

Matchings are index triples (d_index, a_index, t_index), all 0-based, with
t_index pointing into T exactly as given (T is a set; its stored order is
whatever the caller supplied).
"""

from dataclasses import dataclass
from typing import Sequence

from instances.preprocess import discretize_values
from utils.errors import (
    DuplicateTargets,
    NotDiscretizedSequence,
    PositionMatchingError,
    SizeMismatch,
)
from verify.checker import Verdict, ViolationReason


@dataclass(frozen=True, slots=True)
class PositionMatchingInstance:
    D: tuple[int, ...]
    A: tuple[int, ...]
    T: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "D", tuple(self.D))
        object.__setattr__(self, "A", tuple(self.A))
        object.__setattr__(self, "T", tuple(self.T))

    @property
    def n(self) -> int:
        return len(self.D)

    @classmethod
    def from_deadlines(cls, D: Sequence[int], T: Sequence[int]) -> "PositionMatchingInstance":
        return cls(tuple(D), tuple(discretize_values(list(D))), tuple(T))


@dataclass(frozen=True, slots=True)
class PmMatching:
    triples: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "triples", tuple(tuple(t) for t in self.triples))

    def sums(self, instance: PositionMatchingInstance) -> list[int]:
        return [instance.D[d] + instance.A[a] for d, a, _ in self.triples]


def validate(instance: PositionMatchingInstance) -> None:
    """Raises when the instance is not a well-formed Position Matching instance."""
    D, A, T = instance.D, instance.A, instance.T
    if not (len(D) == len(A) == len(T)):
        raise SizeMismatch(f"|D|={len(D)}, |A|={len(A)}, |T|={len(T)} must agree")
    if not D:
        raise SizeMismatch("an instance needs at least one element")
    if any(d < 1 for d in D) or any(D[i] > D[i + 1] for i in range(len(D) - 1)):
        raise PositionMatchingError("D must be a non-decreasing sequence of positive integers")
    if any(t < 1 for t in T):
        raise PositionMatchingError("targets must be positive integers")
    expected = discretize_values(D)
    if list(A) != expected or expected[0] < 1:
        raise NotDiscretizedSequence(f"A={list(A)} is not the (positive) discretized sequence {expected} of D")
    if len(set(T)) != len(T):
        raise DuplicateTargets("targets must be distinct")


def assign_targets(sums: Sequence[int], targets: Sequence[int]) -> list[int] | None:
    """
    Sorted domination: pair the j-th smallest sum with the j-th smallest target.
    A >=-matching of sums to targets exists iff every such pair satisfies
    sum >= target. Returns, per sum index, the assigned target index, or None.
    Ties between equal sums are broken by sum index.
    """
    if len(sums) != len(targets):
        return None
    sum_order = sorted(range(len(sums)), key=lambda i: (sums[i], i))
    target_order = sorted(range(len(targets)), key=lambda j: (targets[j], j))
    assignment = [0] * len(sums)
    for i, j in zip(sum_order, target_order):
        if sums[i] < targets[j]:
            return None
        assignment[i] = j
    return assignment


def dominates(sorted_sums: Sequence[int], sorted_targets: Sequence[int]) -> bool:
    return all(s >= t for s, t in zip(sorted_sums, sorted_targets))


def matching_from_pairs(pairs: Sequence[tuple[int, int]], sums: Sequence[int],
                        targets: Sequence[int]) -> PmMatching | None:
    """Completes (d_index, a_index) pairs with a target assignment, if one exists."""
    assignment = assign_targets(sums, targets)
    if assignment is None:
        return None
    return PmMatching(tuple((d, a, assignment[i]) for i, (d, a) in enumerate(pairs)))


def verify_matching(instance: PositionMatchingInstance, matching: PmMatching) -> Verdict:
    D, A, T = instance.D, instance.A, instance.T
    n = len(D)
    triples = matching.triples
    if len(triples) != n:
        return Verdict.reject(ViolationReason.BAD_LENGTH, position=len(triples), allowed_by=n)

    used = (set(), set(), set())
    for idx, (d, a, t) in enumerate(triples):
        for value, size in ((d, n), (a, n), (t, n)):
            if value < 0 or value >= size:
                return Verdict.reject(ViolationReason.INDEX_OUT_OF_RANGE, node=value,
                                      occurrence_index=idx, allowed_by=size - 1)
        for seen, value in zip(used, (d, a, t)):
            if value in seen:
                return Verdict.reject(ViolationReason.WRONG_VISIT_COUNT, node=d,
                                      occurrence_index=idx, position=value, allowed_by=1)
            seen.add(value)
        if D[d] < A[a]:
            return Verdict.reject(ViolationReason.DEADLINE_EXCEEDED, node=d,
                                  occurrence_index=idx, position=A[a], allowed_by=D[d])
        if D[d] + A[a] < T[t]:
            return Verdict.reject(ViolationReason.DEADLINE_EXCEEDED, node=d,
                                  occurrence_index=idx, position=T[t], allowed_by=D[d] + A[a])
    # n distinct in-range indices per coordinate: every element is used exactly once.
    return Verdict.accept()
