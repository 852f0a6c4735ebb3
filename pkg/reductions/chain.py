"""
Runs the reduction chain between two stages and decides every intermediate.

    rn3dm -> in3dm -> pm -> kvisits -> varkvisits
                                    -> tpws
"""

import os
from typing import NamedTuple

from instances.formats import write_file
from instances.models import KVisitsInstance, VarKVisitsInstance
from oracle.matching import oracle_in3dm, oracle_rn3dm
from oracle.search import OracleStatus, SearchBudget, oracle_var_kvisits
from pm.models import PositionMatchingInstance
from pm.solvers import dispatch
from reductions.models import In3dmInstance, Rn3dmInstance, ThresholdPinwheelInstance, TrivialNo
from reductions.numerical import in3dm_normalize, in3dm_to_pm, rn3dm_range_filter, rn3dm_to_in3dm
from reductions.visits import (
    pm_shift,
    pm_to_two_visits,
    targets_above_positions,
    two_visits_to_threshold_pws,
    two_visits_to_var_k,
)
from solver.two_visits import solve_two_visits
from utils.errors import ReductionError
from utils.logger import logger

STAGES = ("rn3dm", "in3dm", "pm", "kvisits", "varkvisits", "tpws")

STAGE_TYPES = {
    "rn3dm": Rn3dmInstance,
    "in3dm": In3dmInstance,
    "pm": PositionMatchingInstance,
    "kvisits": KVisitsInstance,
    "varkvisits": VarKVisitsInstance,
    "tpws": ThresholdPinwheelInstance,
}


class ChainStep(NamedTuple):
    stage: str
    label: str
    instance: object


def _path(source: str, target: str) -> list[str]:
    if source not in STAGES or target not in STAGES:
        raise ReductionError(f"unknown stage; choose from {', '.join(STAGES)}")
    if source in ("varkvisits", "tpws"):
        raise ReductionError(f"'{source}' is a sink of the chain")
    main = ["rn3dm", "in3dm", "pm", "kvisits"]
    full = main + [target] if target in ("varkvisits", "tpws") else main
    if target not in full or full.index(target) < full.index(source):
        raise ReductionError(f"no reduction from '{source}' to '{target}'")
    return full[full.index(source):full.index(target) + 1]


def run_chain(source, source_stage: str, target_stage: str, k_target: int = 3) -> list[ChainStep]:
    """
    Returns every intermediate instance from source to target. The chain stops
    early at a TrivialNo, which is then the last step.
    """
    path = _path(source_stage, target_stage)
    if not isinstance(source, STAGE_TYPES[source_stage]):
        raise ReductionError(f"expected a {STAGE_TYPES[source_stage].__name__} for stage '{source_stage}'")

    steps = [ChainStep(source_stage, source_stage, source)]
    current = source
    for stage in path[1:]:
        if stage == "in3dm":
            current = rn3dm_range_filter(current)
            if not isinstance(current, TrivialNo):
                current = rn3dm_to_in3dm(current)
            steps.append(ChainStep(stage, "in3dm", current))
        elif stage == "pm":
            current = in3dm_normalize(current)
            if not isinstance(current, TrivialNo):
                steps.append(ChainStep("in3dm", "in3dm-normalized", current))
                current = in3dm_to_pm(current)
            steps.append(ChainStep(stage, "pm", current))
        elif stage == "kvisits":
            if not targets_above_positions(current):
                current = pm_shift(current, current.A[-1])
                steps.append(ChainStep("pm", "pm-shifted", current))
            current = pm_to_two_visits(current)
            steps.append(ChainStep(stage, "kvisits", current))
        elif stage == "varkvisits":
            current = two_visits_to_var_k(current, k_target)
            steps.append(ChainStep(stage, "varkvisits", current))
        else:
            current = two_visits_to_threshold_pws(current)
            steps.append(ChainStep(stage, "tpws", current))
        if isinstance(current, TrivialNo):
            logger.info(f"Reduction {source_stage}->{target_stage}: trivial no-instance at {stage} ({current.reason})")
            break
    return steps


def decide_step(step: ChainStep, budget: "int | SearchBudget | None" = None) -> bool | None:
    """
    Verdict of one intermediate: True/False, or None for Threshold Pinwheel
    instances (not decided here) and exhausted oracle budgets.
    """
    instance = step.instance
    if isinstance(instance, TrivialNo):
        return False
    if step.stage == "rn3dm":
        outcome = oracle_rn3dm(instance, budget)
    elif step.stage == "in3dm":
        outcome = oracle_in3dm(instance, budget)
    elif step.stage == "pm":
        return dispatch(instance)[1] is not None
    elif step.stage == "kvisits":
        return solve_two_visits(instance).feasible
    elif step.stage == "varkvisits":
        outcome = oracle_var_kvisits(instance, budget)
    else:
        return None
    if outcome.status is OracleStatus.BUDGET_EXHAUSTED:
        return None
    return outcome.feasible


def write_steps(steps: list[ChainStep], out_dir: str) -> list[str]:
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    for i, step in enumerate(steps):
        if isinstance(step.instance, TrivialNo):
            continue
        path = os.path.join(out_dir, f"{i:02d}_{step.label}.txt")
        write_file(path, step.instance)
        paths.append(path)
    return paths
