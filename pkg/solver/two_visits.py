"""
2-Visits pipeline: trim -> discretize -> positivity -> clusters/gaps ->
one Position Matching instance per cluster -> schedule reconstruction.

Clusters are independent; cluster j owns the nodes first..last of the core
instance and, because |gaps| = n after trimming, exactly the gaps with the
same indices first..last.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

from instances.models import ClusterDecomposition, DiscretizedSequence, KVisitsInstance, Schedule
from instances.preprocess import decompose, discretize_values, trim_large_deadlines
from pm.solvers import PmSolver, is_strictly_increasing, match_cluster
from solver.models import ClusterTrace, Feasibility, InfeasibilityReason, SolveResult
from utils.errors import InternalInvariantViolation, InvalidRepetitionCount
from utils.logger import logger
from verify.checker import verify_kvisits


def _solve_distinct_core(values, decomposition: ClusterDecomposition):
    """
    With distinct deadlines A = D and every cluster's pairing is forced, so
    node i (0-based) owns gap i and is feasible iff 2 * d_i >= gaps[i].
    """
    gaps = decomposition.gaps
    failing = next((i for i, a in enumerate(values) if 2 * a < gaps[i]), None)
    clusters = decomposition.clusters
    if failing is None:
        trace = [ClusterTrace(j, c.first, c.last, PmSolver.DISTINCT, True) for j, c in enumerate(clusters)]
        return trace, None, list(range(len(values)))

    trace = []
    for j, c in enumerate(clusters):
        ok = failing > c.last
        trace.append(ClusterTrace(j, c.first, c.last, PmSolver.DISTINCT, ok))
        if not ok:
            return trace, j, None
    raise InternalInvariantViolation(f"failing node {failing} lies outside every cluster")


def _solve_clusters(deadlines, values, decomposition: ClusterDecomposition, jobs: int):
    gaps = decomposition.gaps
    clusters = decomposition.clusters

    def run(cluster):
        lo, hi = cluster.first, cluster.last + 1
        return match_cluster(deadlines[lo:hi], values[lo:hi], gaps[lo:hi])

    if jobs > 1 and len(clusters) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as executor:
            futures = [executor.submit(run, c) for c in clusters]
            # merge in submission order so the outcome does not depend on jobs
            results = [f.result() for f in futures]
    else:
        results = None

    trace = []
    assignment = [0] * len(values)
    for j, cluster in enumerate(clusters):
        solver, pairs = results[j] if results is not None else run(cluster)
        trace.append(ClusterTrace(j, cluster.first, cluster.last, solver, pairs is not None))
        if pairs is None:
            return trace, j, None
        for d, a in pairs:
            assignment[cluster.first + a] = cluster.first + d
    return trace, None, assignment


def reconstruct_schedule(disc: DiscretizedSequence, decomposition: ClusterDecomposition,
                         assignment: Sequence[int], trimmed: Sequence[int]) -> Schedule:
    """
    assignment[j] is the 0-based core node whose primary visit sits at the
    discretized position values[j]. Secondary visits of each cluster fill that
    cluster's gaps in ascending order, nodes taken by non-decreasing induced
    deadline (ties: lower node first). Trimmed nodes (1-based, removal order)
    are appended pairwise, the first removed node last.
    """
    values, deadlines = disc.values, disc.deadlines
    gaps = decomposition.gaps
    n = len(values)
    entries = [0] * (2 * n)
    for j in range(n):
        entries[values[j] - 1] = assignment[j] + 1

    for cluster in decomposition.clusters:
        lo, hi = cluster.first, cluster.last + 1
        # induced deadline d + a, then node; stays below 5n^2
        keys = [(deadlines[assignment[j]] + values[j]) * n + assignment[j] for j in range(lo, hi)]
        if all(keys[i] < keys[i + 1] for i in range(hi - lo - 1)):
            # distinct deadlines always land here: node order is already induced-deadline order
            order = range(lo, hi)
        else:
            order = sorted(range(lo, hi), key=lambda j: keys[j - lo])
        for r, j in zip(range(lo, hi), order):
            entries[gaps[r] - 1] = assignment[j] + 1

    for node in reversed(trimmed):
        entries.append(node)
        entries.append(node)
    return Schedule(tuple(entries))


def solve_two_visits(instance: KVisitsInstance, jobs: int = 1) -> SolveResult:
    if instance.k != 2:
        raise InvalidRepetitionCount(f"solve_two_visits needs k=2, got k={instance.k}")

    core, trimmed = trim_large_deadlines(instance)
    logger.debug(f"2-Visits n={instance.n}: trimmed {len(trimmed)} node(s)")
    if core.n == 1:
        entries = [1, 1]
        for node in reversed(trimmed):
            entries += [node, node]
        return _finish(instance, Schedule(tuple(entries)), (), trimmed)

    deadlines = core.deadlines
    values = discretize_values(deadlines)
    if values[0] < 1:
        logger.info(f"2-Visits n={instance.n}: infeasible, discretized a_1={values[0]}")
        return SolveResult.infeasible(InfeasibilityReason.NON_POSITIVE_DISCRETIZED, trimmed=trimmed)

    disc = DiscretizedSequence(tuple(values), deadlines)
    decomposition = decompose(disc)

    if is_strictly_increasing(deadlines):
        trace, failed, assignment = _solve_distinct_core(values, decomposition)
    else:
        trace, failed, assignment = _solve_clusters(deadlines, values, decomposition, jobs)

    if failed is not None:
        logger.info(f"2-Visits n={instance.n}: infeasible, cluster {failed} of {len(decomposition.clusters)}")
        return SolveResult.infeasible(InfeasibilityReason.CLUSTER_PM_INFEASIBLE, trace, failed, trimmed)

    schedule = reconstruct_schedule(disc, decomposition, assignment, trimmed)
    return _finish(instance, schedule, trace, trimmed)


def _finish(instance: KVisitsInstance, schedule: Schedule, trace, trimmed) -> SolveResult:
    verdict = verify_kvisits(instance, schedule)
    if not verdict:
        raise InternalInvariantViolation(f"reconstructed schedule rejected: {verdict.violation.describe()}")
    logger.info(f"2-Visits n={instance.n}: feasible ({len(trace)} cluster(s), {len(trimmed)} trimmed)")
    return SolveResult(Feasibility.FEASIBLE, schedule, tuple(trace), trimmed=tuple(trimmed))
