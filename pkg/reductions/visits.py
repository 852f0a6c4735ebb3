"""
Visit-schedule end of the reduction chain: Position Matching -> 2-Visits,
and 2-Visits -> Var-k-Visits / Threshold Pinwheel gadgets.
"""

from instances.models import KVisitsInstance, Schedule, VarKVisitsInstance
from pm.models import PositionMatchingInstance, validate
from reductions.models import ThresholdPinwheelInstance, TrivialNo
from utils.errors import (
    InvalidRepetitionCount,
    PreconditionNotConsecutive,
    PreconditionTargetsNotAboveA,
)


def pm_shift(src: PositionMatchingInstance, c: int) -> PositionMatchingInstance:
    """Adds c to every deadline and position and 2c to every target; the verdict is unchanged."""
    shifted = PositionMatchingInstance(
        tuple(d + c for d in src.D),
        tuple(a + c for a in src.A),
        tuple(t + 2 * c for t in src.T),
    )
    validate(shifted)
    return shifted


def targets_above_positions(src: PositionMatchingInstance) -> bool:
    return min(src.T) > src.A[-1]


def pm_to_two_visits(src: PositionMatchingInstance) -> KVisitsInstance | TrivialNo:
    """
    D' = S || D || L where S are the odd numbers below a_1 (one-node clusters
    whose secondary takes the next even gap) and L = [a_n + 1, 2a_n] minus T
    (nodes whose primaries fill every position there that is not a target).
    """
    validate(src)
    A = src.A
    if any(A[i + 1] != A[i] + 1 for i in range(len(A) - 1)):
        raise PreconditionNotConsecutive("pm_to_two_visits needs consecutive positions")
    if not targets_above_positions(src):
        raise PreconditionTargetsNotAboveA(f"min(T) = {min(src.T)} is not above a_n = {A[-1]}")

    if A[0] % 2 == 0:
        src = pm_shift(src, 1)
        A = src.A
    a_first, a_last = A[0], A[-1]
    if max(src.T) > 2 * a_last:
        return TrivialNo(f"max(T) = {max(src.T)} > 2 a_n = {2 * a_last}")

    small = tuple(range(1, a_first, 2))
    targets = set(src.T)
    large = tuple(v for v in range(a_last + 1, 2 * a_last + 1) if v not in targets)
    return KVisitsInstance(small + src.D + large, 2)


def two_visits_to_var_k(src: KVisitsInstance, k_target: int) -> VarKVisitsInstance:
    """First two visits keep d_i; every later visit gets the slack deadline 3n."""
    if src.k != 2:
        raise InvalidRepetitionCount(f"two_visits_to_var_k needs a 2-Visits source, got k={src.k}")
    if k_target < 2:
        raise InvalidRepetitionCount(f"k_target must be at least 2, got {k_target}")
    slack = 3 * src.n
    return VarKVisitsInstance(tuple((d, d) + (slack,) * (k_target - 2) for d in src.deadlines))


def extend_schedule_to_var_k(schedule: Schedule, n: int, k_target: int) -> Schedule:
    """Appends k_target - 2 passes over 1..n."""
    return Schedule(schedule.entries + tuple(range(1, n + 1)) * (k_target - 2))


def compact_var_k_schedule(schedule: Schedule, n: int) -> Schedule:
    """Keeps each node's first and second visit, packed to the front in encounter order."""
    seen = [0] * (n + 1)
    kept = []
    for node in schedule.entries:
        if seen[node] < 2:
            seen[node] += 1
            kept.append(node)
    return Schedule(tuple(kept))


def two_visits_to_threshold_pws(src: KVisitsInstance) -> ThresholdPinwheelInstance:
    n = src.n
    return ThresholdPinwheelInstance(src.deadlines, (3 * n,) * n, (2,) * n)
