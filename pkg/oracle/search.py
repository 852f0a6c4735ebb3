"""
Brute-force schedule search used as ground truth for the fast solvers.

The search fills positions 1..nk left to right. A state is the multiset of
(row, visits done, absolute due position) over unfinished nodes; the current
position follows from the visits done. States proven dead are memoised.

Pruning is limited to certified impossibilities:
- an unfinished node whose next visit is already overdue;
- a Hall-type window violation: sorting the unfinished nodes by due
  position, the j-th (0-based) must be due no earlier than p + j.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Hashable, Iterator, Protocol, Sequence

from instances.models import KVisitsInstance, Schedule, VarKVisitsInstance
from utils.config import get_oracle_budget
from utils.errors import BudgetExhausted
from utils.logger import logger


class OracleStatus(str, Enum):
    FEASIBLE = "Feasible"
    INFEASIBLE = "Infeasible"
    BUDGET_EXHAUSTED = "BudgetExhausted"


@dataclass
class SearchBudget:
    max_nodes_expanded: int
    expanded: int = 0
    exhausted: bool = False

    @classmethod
    def of(cls, budget: "int | SearchBudget | None") -> "SearchBudget":
        if isinstance(budget, SearchBudget):
            return budget
        return cls(budget if budget is not None else get_oracle_budget())

    @property
    def outcome(self) -> str:
        return "BudgetExhausted" if self.exhausted else "Decided"

    def charge(self) -> None:
        self.expanded += 1
        if self.expanded > self.max_nodes_expanded:
            self.exhausted = True
            raise BudgetExhausted(self.expanded)


@dataclass(frozen=True)
class OracleOutcome:
    status: OracleStatus
    witness: object | None = None
    expanded: int = 0

    @property
    def feasible(self) -> bool:
        return self.status is OracleStatus.FEASIBLE

    @property
    def decided(self) -> bool:
        return self.status is not OracleStatus.BUDGET_EXHAUSTED


class PrefixConstraint(Protocol):
    """Extra restriction on schedule prefixes (entries are 1-based nodes)."""

    def allows(self, prefix: Sequence[int]) -> bool: ...

    def signature(self, prefix: Sequence[int]) -> Hashable: ...


_FINISHED = -1


@dataclass
class _Search:
    rows: tuple[tuple[int, ...], ...]
    budget: SearchBudget
    symmetry: bool
    constraint: PrefixConstraint | None = None
    entries: list[int] = field(default_factory=list)
    dead: set = field(default_factory=set)

    def __post_init__(self):
        self.n = len(self.rows)
        self.k = len(self.rows[0])
        self.length = self.n * self.k
        row_ids: dict[tuple[int, ...], int] = {}
        self.row_id = [row_ids.setdefault(row, len(row_ids)) for row in self.rows]
        self.count = [0] * self.n
        self.due = [row[0] for row in self.rows]

    def _viable(self, p: int) -> bool:
        dues = sorted(d for d in self.due if d != _FINISHED)
        for j, d in enumerate(dues):
            if d < p + j:
                return False
        return True

    def _state_key(self):
        key = tuple(sorted((self.row_id[i], self.count[i], self.due[i])
                           for i in range(self.n) if self.due[i] != _FINISHED))
        if self.constraint is not None:
            return key, self.constraint.signature(self.entries)
        return key

    def _candidates(self) -> list[int]:
        open_nodes = [i for i in range(self.n) if self.due[i] != _FINISHED]
        if self.symmetry:
            # earliest due first finds witnesses quickly; enumeration keeps index order
            open_nodes.sort(key=lambda i: (self.due[i], i))
        return open_nodes

    def walk(self, p: int) -> Iterator[tuple[int, ...]]:
        if p > self.length:
            yield tuple(self.entries)
            return
        self.budget.charge()
        if not self._viable(p):
            return
        key = self._state_key()
        if key in self.dead:
            return

        found = False
        tried = set()
        for i in self._candidates():
            if self.symmetry:
                signature = (self.row_id[i], self.count[i], self.due[i])
                if signature in tried:
                    continue
                tried.add(signature)

            previous_due = self.due[i]
            self.count[i] += 1
            c = self.count[i]
            self.due[i] = p + self.rows[i][c] if c < self.k else _FINISHED
            self.entries.append(i + 1)
            if self.constraint is None or self.constraint.allows(self.entries):
                for schedule in self.walk(p + 1):
                    found = True
                    yield schedule
            self.entries.pop()
            self.due[i] = previous_due
            self.count[i] -= 1

        if not found:
            self.dead.add(key)


def _decide(rows, budget, constraint=None, label="k-Visits") -> OracleOutcome:
    budget = SearchBudget.of(budget)
    search = _Search(rows, budget, symmetry=True, constraint=constraint)
    try:
        entries = next(search.walk(1), None)
    except BudgetExhausted:
        logger.warning(f"Oracle {label} n={len(rows)}: budget of {budget.max_nodes_expanded} exhausted")
        return OracleOutcome(OracleStatus.BUDGET_EXHAUSTED, None, budget.expanded)
    if entries is None:
        return OracleOutcome(OracleStatus.INFEASIBLE, None, budget.expanded)
    return OracleOutcome(OracleStatus.FEASIBLE, Schedule(entries), budget.expanded)


def oracle_var_kvisits(instance: VarKVisitsInstance, budget: "int | SearchBudget | None" = None,
                       constraint: PrefixConstraint | None = None) -> OracleOutcome:
    return _decide(instance.rows, budget, constraint, label="Var-k-Visits")


def oracle_kvisits(instance: KVisitsInstance, budget: "int | SearchBudget | None" = None,
                   constraint: PrefixConstraint | None = None) -> OracleOutcome:
    return _decide(VarKVisitsInstance.from_kvisits(instance).rows, budget, constraint)


def oracle_enumerate_kvisits(instance: KVisitsInstance, visitor: Callable[[Schedule], None],
                             budget: "int | SearchBudget | None" = None) -> int:
    """
    Calls visitor on every feasible schedule, in lexicographic order, and
    returns how many there were. Raises BudgetExhausted.
    """
    search = _Search(VarKVisitsInstance.from_kvisits(instance).rows, SearchBudget.of(budget), symmetry=False)
    total = 0
    for entries in search.walk(1):
        visitor(Schedule(entries))
        total += 1
    return total
