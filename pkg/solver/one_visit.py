from instances.models import KVisitsInstance, Schedule
from instances.preprocess import discretize_values
from solver.models import Feasibility, InfeasibilityReason, SolveResult
from utils.errors import InternalInvariantViolation, InvalidRepetitionCount
from utils.logger import logger
from verify.checker import verify_kvisits


def solve_one_visit(instance: KVisitsInstance) -> SolveResult:
    """
    1-Visit is feasible iff the discretized sequence is positive; then visiting
    the nodes in deadline order (1, 2, ..., n) works.
    """
    if instance.k != 1:
        raise InvalidRepetitionCount(f"solve_one_visit needs k=1, got k={instance.k}")

    values = discretize_values(instance.deadlines)
    if values[0] < 1:
        logger.info(f"1-Visit n={instance.n}: infeasible (a_1={values[0]})")
        return SolveResult.infeasible(InfeasibilityReason.NON_POSITIVE_DISCRETIZED)

    schedule = Schedule(tuple(range(1, instance.n + 1)))
    verdict = verify_kvisits(instance, schedule)
    if not verdict:
        raise InternalInvariantViolation(f"1-Visit schedule rejected: {verdict.violation.describe()}")
    logger.info(f"1-Visit n={instance.n}: feasible")
    return SolveResult(Feasibility.FEASIBLE, schedule)
