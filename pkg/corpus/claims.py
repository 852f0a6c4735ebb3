"""
Checks the first-visit order claim on the twelve-node worked instance
<4,5,6,7,8,8,10,10,11,15,22,23>: every feasible schedule is said to visit the
nodes with deadlines 6, 7, 8, 8 (nodes 3..6) first in deadline order 8, 6, 7, 8.

The search looks for a feasible schedule whose watched first-visit order is
anything else; branches that already reproduce the claimed order are cut.
"""

import os
from dataclasses import dataclass
from datetime import datetime
from enum import Enum
from typing import Sequence

from instances.models import KVisitsInstance, Schedule
from oracle.search import OracleStatus, SearchBudget, oracle_kvisits
from utils.config import get_output_dir
from utils.logger import logger

CLAIM_DEADLINES = (4, 5, 6, 7, 8, 8, 10, 10, 11, 15, 22, 23)
WATCHED_NODES = (3, 4, 5, 6)
CLAIMED_ORDER = (8, 6, 7, 8)


class ClaimOutcome(str, Enum):
    CONFIRMED = "Confirmed"
    REFUTED = "Refuted"
    BUDGET_EXHAUSTED = "BudgetExhausted"


@dataclass(frozen=True)
class ClaimReport:
    outcome: ClaimOutcome
    counterexample: Schedule | None
    observed_order: tuple[int, ...] | None
    expanded: int
    budget: int


def first_visit_order(entries: Sequence[int], deadlines: Sequence[int], watched: Sequence[int]) -> tuple[int, ...]:
    """Deadlines of the watched nodes in the order of their first visits."""
    watched_set = set(watched)
    seen = set()
    order = []
    for node in entries:
        if node in watched_set and node not in seen:
            seen.add(node)
            order.append(deadlines[node - 1])
    return tuple(order)


class FirstVisitOrderConstraint:
    """Rejects prefixes whose complete watched first-visit order equals the claimed one."""

    def __init__(self, deadlines: Sequence[int], watched: Sequence[int], claimed: Sequence[int]):
        self.deadlines = tuple(deadlines)
        self.watched = tuple(watched)
        self.claimed = tuple(claimed)

    def allows(self, prefix: Sequence[int]) -> bool:
        return first_visit_order(prefix, self.deadlines, self.watched) != self.claimed

    def signature(self, prefix: Sequence[int]):
        order = first_visit_order(prefix, self.deadlines, self.watched)
        # once the order has left the claimed prefix every completion is admissible
        return order if self.claimed[:len(order)] == order else "deviated"


def check_first_visit_order_claim(budget: "int | SearchBudget | None" = None) -> ClaimReport:
    instance = KVisitsInstance(CLAIM_DEADLINES, 2)
    search_budget = SearchBudget.of(budget)
    constraint = FirstVisitOrderConstraint(CLAIM_DEADLINES, WATCHED_NODES, CLAIMED_ORDER)
    outcome = oracle_kvisits(instance, search_budget, constraint)

    if outcome.status is OracleStatus.FEASIBLE:
        schedule = outcome.witness
        observed = first_visit_order(schedule.entries, CLAIM_DEADLINES, WATCHED_NODES)
        report = ClaimReport(ClaimOutcome.REFUTED, schedule, observed, outcome.expanded,
                             search_budget.max_nodes_expanded)
    elif outcome.status is OracleStatus.INFEASIBLE:
        report = ClaimReport(ClaimOutcome.CONFIRMED, None, None, outcome.expanded, search_budget.max_nodes_expanded)
    else:
        report = ClaimReport(ClaimOutcome.BUDGET_EXHAUSTED, None, None, outcome.expanded,
                             search_budget.max_nodes_expanded)
    logger.info(f"Claim check: {report.outcome.value} after {report.expanded} expansions")
    return report


def render_markdown(report: ClaimReport) -> str:
    lines = [
        "# First-visit order claim",
        "",
        f"- Instance: `{' '.join(map(str, CLAIM_DEADLINES))}` (k = 2)",
        f"- Watched nodes: {', '.join(map(str, WATCHED_NODES))} "
        f"(deadlines {', '.join(str(CLAIM_DEADLINES[v - 1]) for v in WATCHED_NODES)})",
        f"- Claimed first-visit deadline order: {', '.join(map(str, CLAIMED_ORDER))}",
        f"- Outcome: **{report.outcome.value}**",
        f"- Node expansions: {report.expanded} (budget {report.budget})",
    ]
    if report.counterexample is not None:
        lines += [
            f"- Observed order: {', '.join(map(str, report.observed_order))}",
            f"- Counterexample schedule: `{' '.join(map(str, report.counterexample.entries))}`",
        ]
    return "\n".join(lines) + "\n"


def save_report(report: ClaimReport, output_dir: str | None = None) -> str:
    output_dir = output_dir or get_output_dir()
    os.makedirs(output_dir, exist_ok=True)
    timestamp = datetime.now().strftime("%Y-%m-%d_%H-%M-%S")
    filename = os.path.join(output_dir, f"claim_first_visit_order_{timestamp}.md")
    with open(filename, "w", encoding="utf-8") as f:
        f.write(render_markdown(report))
    logger.info(f"Claim check: report saved to {filename}")
    return filename
