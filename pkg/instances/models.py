"""
Core data model for k-Visits instances and schedules.

Conventions used throughout the project:
- Schedule positions run from 1 to n*k; position 0 is "the beginning of the
  schedule", so a first visit at position p is p slots after the start.
- Node indices in schedules are 1-based and refer to the sorted deadline order.
- Cluster index ranges are 0-based and inclusive on both ends.
"""

from dataclasses import dataclass, field
from typing import NamedTuple

from utils.errors import (
    EmptyInput,
    InvalidRepetitionCount,
    NonPositiveDeadline,
    UnsortedDeadlines,
)


@dataclass(frozen=True, slots=True)
class KVisitsInstance:
    """A non-decreasing deadline sequence d_1..d_n and a repetition count k."""
    deadlines: tuple[int, ...]
    k: int = 2

    def __post_init__(self):
        deadlines = tuple(self.deadlines)
        object.__setattr__(self, "deadlines", deadlines)
        if not deadlines:
            raise EmptyInput("an instance needs at least one deadline")
        if self.k < 1:
            raise InvalidRepetitionCount(f"k must be positive, got {self.k}")
        previous = 1
        for i, d in enumerate(deadlines):
            if d < 1:
                raise NonPositiveDeadline(f"deadline {d} of node {i + 1} is not positive")
            if d < previous:
                raise UnsortedDeadlines(f"deadline of node {i + 1} ({d}) is smaller than its predecessor ({previous})")
            previous = d

    @property
    def n(self) -> int:
        return len(self.deadlines)

    @property
    def length(self) -> int:
        return self.n * self.k


@dataclass(frozen=True, slots=True)
class VarKVisitsInstance:
    """Per-occurrence deadlines: rows[i][j] bounds the (j+1)-th visit of node i+1."""
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows or not rows[0]:
            raise EmptyInput("a Var-k instance needs at least one node and one visit")
        k = len(rows[0])
        for i, row in enumerate(rows):
            if len(row) != k:
                raise InvalidRepetitionCount(f"row {i + 1} has {len(row)} deadlines, expected {k}")
            for d in row:
                if d < 1:
                    raise NonPositiveDeadline(f"deadline {d} of node {i + 1} is not positive")

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def k(self) -> int:
        return len(self.rows[0])

    @property
    def length(self) -> int:
        return self.n * self.k

    @classmethod
    def from_kvisits(cls, instance: KVisitsInstance) -> "VarKVisitsInstance":
        return cls(tuple((d,) * instance.k for d in instance.deadlines))


@dataclass(frozen=True, slots=True)
class DiscretizedSequence:
    """Latest feasible first-visit positions a_1..a_n for the deadlines d_1..d_n."""
    values: tuple[int, ...]
    deadlines: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.values)

    def is_positive(self) -> bool:
        return not self.values or self.values[0] >= 1


class Cluster(NamedTuple):
    """A maximal run of consecutive discretized values, as 0-based inclusive indices."""
    first: int
    last: int

    @property
    def size(self) -> int:
        return self.last - self.first + 1


@dataclass(frozen=True, slots=True)
class ClusterDecomposition:
    clusters: tuple[Cluster, ...]
    gaps: tuple[int, ...]
    horizon: int

    def gaps_by_cluster(self) -> list[tuple[int, ...]]:
        """The j-th cluster receives the next |C_j| gaps in ascending order."""
        result = []
        offset = 0
        for cluster in self.clusters:
            result.append(self.gaps[offset:offset + cluster.size])
            offset += cluster.size
        return result


@dataclass(frozen=True, slots=True)
class Schedule:
    """A sequence of 1-based node indices; entries[p - 1] is visited at position p."""
    entries: tuple[int, ...]
    _visits: dict | None = field(default=None, init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))

    def __len__(self) -> int:
        return len(self.entries)

    def visits(self) -> dict[int, list[int]]:
        """Per-node list of visit positions (1-based), in schedule order."""
        if self._visits is None:
            positions: dict[int, list[int]] = {}
            for p, node in enumerate(self.entries, start=1):
                positions.setdefault(node, []).append(p)
            object.__setattr__(self, "_visits", positions)
        return self._visits
