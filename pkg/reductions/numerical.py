"""
Numerical matching end of the reduction chain:

    RN3DM --range filter--> RN3DM --> IN3DM --normalize--> IN3DM --> Position Matching

plus the solution maps between consecutive stages where they are constructive.
"""

from pm.models import PmMatching, PositionMatchingInstance, validate, verify_matching
from reductions.models import (
    In3dmInstance,
    In3dmMatching,
    Rn3dmInstance,
    Rn3dmMatching,
    TrivialNo,
)
from utils.errors import (
    DuplicateTargets,
    NonPositiveTarget,
    PreconditionNotNormalized,
    RangeTooWide,
    ReductionError,
)
from utils.logger import logger


def rn3dm_range_filter(src: Rn3dmInstance) -> Rn3dmInstance | TrivialNo:
    """
    The triple holding max(A) sums to at least max(A) + 2, the one holding
    min(A) to at most min(A) + 2n; both must equal sigma.
    """
    n = src.n
    spread = max(src.A) - min(src.A)
    if spread > 2 * n - 2:
        return TrivialNo(f"max(A) - min(A) = {spread} > 2n - 2 = {2 * n - 2}")
    return src


def rn3dm_to_in3dm(src: Rn3dmInstance) -> In3dmInstance:
    """A unchanged, T[j] = sigma - (j + 1): target index j stands for c = j + 1."""
    n = src.n
    if src.sigma <= n:
        raise NonPositiveTarget(f"sigma = {src.sigma} <= n = {n} gives a non-positive target")
    return In3dmInstance(src.A, tuple(src.sigma - c for c in range(1, n + 1)))


def rn3dm_solution_to_in3dm(src: Rn3dmInstance, matching: Rn3dmMatching) -> In3dmMatching:
    return In3dmMatching(tuple((a, b, c - 1) for a, b, c in matching.triples))


def in3dm_solution_to_rn3dm(src: Rn3dmInstance, matching: In3dmMatching) -> Rn3dmMatching:
    """
    sum(a + b) equals sum(T) for a reduced RN3DM instance, so a + b >= t
    holds with equality in every triple and c = sigma - t = t_index + 1.
    """
    return Rn3dmMatching(tuple((a, b, t + 1) for a, b, t in matching.triples))


def is_normalized(src: In3dmInstance) -> bool:
    n = src.n
    return (min(src.A) == n and max(src.A) < 3 * n and max(src.T) < 4 * n
            and len(set(src.T)) == n)


def in3dm_normalize(src: In3dmInstance) -> In3dmInstance | TrivialNo:
    """
    Brings an IN3DM instance with max(A) - min(A) <= 2n - 2 into the shape
    min(A) = n, max(A) < 3n, max(T) < 4n with distinct targets.

    Targets <= min(A) are satisfied by any pair, so each is matched with
    min(A) and b = 1 and removed (the remaining b and t shift down by one).
    A single remaining element with such a target is a yes-instance and is
    replaced by the canonical A = {1}, T = {2}.

    The range precondition is checked again after discharging: each removal
    lowers the bound 2n - 2 by two while max(A) stays, so RangeTooWide can
    be raised even though the input satisfied the bound.
    """
    A = sorted(src.A)
    T = sorted(src.T)
    n = len(A)
    if len(set(T)) != n:
        raise DuplicateTargets("IN3DM normalisation needs distinct targets")
    if A[-1] - A[0] > 2 * n - 2:
        raise RangeTooWide(f"max(A) - min(A) = {A[-1] - A[0]} > 2n - 2 = {2 * n - 2}")

    discharged = 0
    while n > 1 and T[0] <= A[0]:
        A.pop(0)
        T = [t - 1 for t in T[1:]]
        n -= 1
        discharged += 1
    if discharged:
        logger.debug(f"IN3DM normalize: discharged {discharged} small target(s)")

    if n == 1 and T[0] <= A[0]:
        return In3dmInstance((1,), (2,))
    if A[-1] - A[0] > 2 * n - 2:
        raise RangeTooWide(f"after discharging, max(A) - min(A) = {A[-1] - A[0]} > 2n - 2 = {2 * n - 2}")
    if T[-1] > A[-1] + n:
        return TrivialNo(f"max(T) = {T[-1]} > max(A) + n = {A[-1] + n}")

    shift = n - A[0]
    return In3dmInstance(tuple(a + shift for a in A), tuple(t + shift for t in T))


def in3dm_to_pm(src: In3dmInstance) -> PositionMatchingInstance:
    """
    D = A plus 3n copies of 4n, positions 1..4n, targets T plus 5n+1..8n.
    The dummies occupy indices n..4n-1 of every coordinate.
    """
    if not is_normalized(src):
        raise PreconditionNotNormalized("in3dm_to_pm needs min(A) = n, max(A) < 3n, max(T) < 4n, distinct T")
    n = src.n
    D = tuple(sorted(src.A)) + (4 * n,) * (3 * n)
    A = tuple(range(1, 4 * n + 1))
    T = tuple(src.T) + tuple(range(5 * n + 1, 8 * n + 1))
    instance = PositionMatchingInstance(D, A, T)
    # raises NotDiscretizedSequence if 1..4n were not the discretized sequence of D
    validate(instance)
    return instance


def _sorted_rank(values) -> list[int]:
    order = sorted(range(len(values)), key=lambda i: (values[i], i))
    rank = [0] * len(values)
    for r, i in enumerate(order):
        rank[i] = r
    return rank


def in3dm_solution_to_pm(src: In3dmInstance, matching: In3dmMatching) -> PmMatching:
    """Non-dummy triples carry over; dummy d, position and target are matched largest to largest."""
    n = src.n
    rank = _sorted_rank(src.A)
    triples = [(rank[a], b - 1, t) for a, b, t in matching.triples]
    triples += [(n + j, n + j, n + j) for j in range(3 * n)]
    return PmMatching(tuple(triples))


def pm_solution_to_in3dm(src: In3dmInstance, matching: PmMatching) -> In3dmMatching:
    """
    In every solution of the gadget the dummies only meet dummies: the 2n + 2
    largest dummy targets exceed any non-dummy sum, which pins dummies to the
    positions 2n - 1..4n, and then no non-dummy sum reaches 5n + 1. The
    triples with a non-dummy target therefore form an IN3DM solution.
    """
    pm = in3dm_to_pm(src)
    if not verify_matching(pm, matching):
        raise ReductionError("not a solution of the Position Matching gadget")
    n = src.n
    by_rank = sorted(range(n), key=lambda i: (src.A[i], i))
    triples = []
    for d, a, t in matching.triples:
        if t >= n:
            continue
        if d >= n or a >= n:
            raise ReductionError(f"non-dummy target {t} matched with a dummy element")
        triples.append((by_rank[d], a + 1, t))
    return In3dmMatching(tuple(sorted(triples)))
