from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from instances.models import Schedule
from pm.solvers import PmSolver


class Feasibility(str, Enum):
    FEASIBLE = "Feasible"
    INFEASIBLE = "Infeasible"


class InfeasibilityReason(str, Enum):
    NON_POSITIVE_DISCRETIZED = "NonPositiveDiscretized"
    CLUSTER_PM_INFEASIBLE = "ClusterPmInfeasible"


class ClusterTrace(NamedTuple):
    """One Position Matching subproblem: 0-based inclusive node range of the core instance."""
    index: int
    first: int
    last: int
    solver: PmSolver
    feasible: bool


@dataclass(frozen=True)
class SolveResult:
    verdict: Feasibility
    schedule: Schedule | None = None
    trace: tuple[ClusterTrace, ...] = ()
    reason: InfeasibilityReason | None = None
    failed_cluster: int | None = None
    trimmed: tuple[int, ...] = ()

    @property
    def feasible(self) -> bool:
        return self.verdict is Feasibility.FEASIBLE

    @classmethod
    def infeasible(cls, reason: InfeasibilityReason, trace=(), failed_cluster=None, trimmed=()) -> "SolveResult":
        return cls(Feasibility.INFEASIBLE, None, tuple(trace), reason, failed_cluster, tuple(trimmed))
