"""
Exception hierarchy for the k-Visits toolkit.

Expected negative outcomes (an infeasible instance, a violated schedule, a
trivial no-instance) are returned as values. Exceptions are reserved for
malformed input, violated preconditions and solver bugs.
"""


class KVisitsError(Exception):
    """Root of every error raised by this project."""


# --- Instances -------------------------------------------------------------

class InstanceError(KVisitsError, ValueError):
    pass


class EmptyInput(InstanceError):
    pass


class NonPositiveDeadline(InstanceError):
    pass


class UnsortedDeadlines(InstanceError):
    pass


class InvalidRepetitionCount(InstanceError):
    pass


class NonPositiveDiscretizedValue(InstanceError):
    pass


class ValueExceedsHorizon(InstanceError):
    pass


class DuplicatePosition(InstanceError):
    pass


# --- Position Matching -----------------------------------------------------

class PositionMatchingError(KVisitsError, ValueError):
    pass


class NotDiscretizedSequence(PositionMatchingError):
    pass


class DuplicateTargets(PositionMatchingError):
    pass


class SizeMismatch(PositionMatchingError):
    pass


class PreconditionNotDistinct(PositionMatchingError):
    pass


class PreconditionNotSingleValue(PositionMatchingError):
    pass


class PreconditionNotTwoValues(PositionMatchingError):
    pass


# --- Solvers / oracles -----------------------------------------------------

class SolverError(KVisitsError):
    pass


class InternalInvariantViolation(SolverError):
    """A schedule produced by a solver failed its own verification."""


class OracleError(KVisitsError):
    pass


class BudgetExhausted(OracleError):
    def __init__(self, expanded: int):
        super().__init__(f"search budget exhausted after {expanded} node expansions")
        self.expanded = expanded


# --- Reductions ------------------------------------------------------------

class ReductionError(KVisitsError, ValueError):
    pass


class InvalidRn3dmInstance(ReductionError):
    pass


class InvalidIn3dmInstance(ReductionError):
    pass


class InvalidThresholdInstance(ReductionError):
    pass


class NonPositiveTarget(ReductionError):
    pass


class RangeTooWide(ReductionError):
    pass


class PreconditionNotNormalized(ReductionError):
    pass


class PreconditionNotConsecutive(ReductionError):
    pass


class PreconditionTargetsNotAboveA(ReductionError):
    pass


# --- Text formats ----------------------------------------------------------

class FormatError(KVisitsError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
