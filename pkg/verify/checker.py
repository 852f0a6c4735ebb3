"""
Ground-truth schedule checkers. Every schedule a solver emits goes through
one of these before it leaves the solver, so they are kept deliberately
direct: one pass over the positions, first violation wins.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Mapping

from instances.models import KVisitsInstance, Schedule, VarKVisitsInstance
from utils.errors import DuplicatePosition, InvalidRepetitionCount, ValueExceedsHorizon


class ViolationReason(str, Enum):
    DEADLINE_EXCEEDED = "DeadlineExceeded"
    WRONG_VISIT_COUNT = "WrongVisitCount"
    BAD_LENGTH = "BadLength"
    INDEX_OUT_OF_RANGE = "IndexOutOfRange"


@dataclass(frozen=True)
class Violation:
    """
    node: offending node (1-based for schedules, 0-based D index for matchings)
    occurrence_index: which visit (1-based) or which triple (0-based)
    position: where the violation shows up
    allowed_by: the bound that was broken
    """
    node: int | None
    occurrence_index: int | None
    position: int | None
    allowed_by: int | None
    reason: ViolationReason

    def describe(self) -> str:
        if self.reason is ViolationReason.DEADLINE_EXCEEDED:
            return (f"node {self.node} visit {self.occurrence_index} at position {self.position} "
                    f"> allowed {self.allowed_by}")
        if self.reason is ViolationReason.BAD_LENGTH:
            return f"length {self.position} != expected {self.allowed_by}"
        if self.reason is ViolationReason.INDEX_OUT_OF_RANGE:
            return f"index {self.node} at position {self.position} outside [1, {self.allowed_by}]"
        return f"node {self.node} visited {self.occurrence_index} times, allowed {self.allowed_by}"


@dataclass(frozen=True)
class Verdict:
    ok: bool
    violation: Violation | None = None

    def __post_init__(self):
        if self.ok != (self.violation is None):
            raise ValueError("a verdict is ok exactly when it carries no violation")

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def accept(cls) -> "Verdict":
        return cls(True, None)

    @classmethod
    def reject(cls, reason: ViolationReason, node=None, occurrence_index=None,
               position=None, allowed_by=None) -> "Verdict":
        return cls(False, Violation(node, occurrence_index, position, allowed_by, reason))


@dataclass(frozen=True)
class InducedDeadline:
    node: int
    primary_position: int
    value: int


def _verify_rows(deadline_of, n: int, k: int, entries: tuple[int, ...]) -> Verdict:
    expected = n * k
    if len(entries) != expected:
        return Verdict.reject(ViolationReason.BAD_LENGTH, position=len(entries), allowed_by=expected)

    last = [0] * (n + 1)
    count = [0] * (n + 1)
    for p, node in enumerate(entries, start=1):
        if node < 1 or node > n:
            return Verdict.reject(ViolationReason.INDEX_OUT_OF_RANGE, node=node, position=p, allowed_by=n)
        c = count[node]
        if c == k:
            return Verdict.reject(ViolationReason.WRONG_VISIT_COUNT, node=node,
                                  occurrence_index=c + 1, position=p, allowed_by=k)
        allowed = last[node] + deadline_of(node, c)
        if p > allowed:
            return Verdict.reject(ViolationReason.DEADLINE_EXCEEDED, node=node,
                                  occurrence_index=c + 1, position=p, allowed_by=allowed)
        last[node] = p
        count[node] = c + 1
    # Length n*k with no node above k forces every count to be exactly k.
    return Verdict.accept()


def verify_kvisits(instance: KVisitsInstance, schedule: Schedule) -> Verdict:
    # Same checks as _verify_rows, unrolled for constant deadlines (hot path of every solve).
    n, k = instance.n, instance.k
    entries = schedule.entries
    if len(entries) != n * k:
        return _verify_rows(None, n, k, entries)
    deadlines = (0,) + instance.deadlines
    last = [0] * (n + 1)
    count = [0] * (n + 1)
    for p, node in enumerate(entries, start=1):
        if node < 1 or node > n or count[node] == k or p - last[node] > deadlines[node]:
            return _verify_rows(lambda v, _: deadlines[v], n, k, entries)
        last[node] = p
        count[node] += 1
    return Verdict.accept()


def verify_var_kvisits(instance: VarKVisitsInstance, schedule: Schedule) -> Verdict:
    rows = instance.rows
    return _verify_rows(lambda node, c: rows[node - 1][c], instance.n, instance.k, schedule.entries)


def induced_deadlines(instance: KVisitsInstance, primary_positions: Mapping[int, int]) -> list[InducedDeadline]:
    """d_i + t_i for every node i with primary visit at t_i (nodes are 1-based)."""
    if instance.k != 2:
        raise InvalidRepetitionCount(f"induced deadlines are defined for 2-Visits, got k={instance.k}")
    horizon = 2 * instance.n
    seen = set()
    result = []
    for node in sorted(primary_positions):
        t = primary_positions[node]
        if t in seen:
            raise DuplicatePosition(f"position {t} assigned to more than one primary visit")
        if t < 1 or t > horizon:
            raise ValueExceedsHorizon(f"primary position {t} of node {node} outside [1, {horizon}]")
        seen.add(t)
        result.append(InducedDeadline(node, t, instance.deadlines[node - 1] + t))
    return result
