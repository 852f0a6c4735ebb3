import argparse
import os
import random
import sys

from dotenv import load_dotenv

# Load Environment Variables first
load_dotenv()

import pandas as pd
from rich import box
from rich.console import Console
from rich.table import Table

from corpus import bench, claims
from corpus.generators import random_kvisits, random_pm, random_rn3dm
from instances.formats import FORMAT_VERSIONS, read_file, serialize_any, write_file
from instances.models import KVisitsInstance, VarKVisitsInstance
from instances.preprocess import (
    DENSITY_THRESHOLD,
    decompose,
    density,
    discretize,
    trim_large_deadlines,
    within_density_threshold,
)
from oracle.matching import oracle_in3dm, oracle_pm, oracle_rn3dm
from oracle.search import OracleStatus, oracle_kvisits, oracle_var_kvisits
from pm.models import PositionMatchingInstance
from reductions.chain import STAGES, decide_step, run_chain, write_steps
from reductions.models import In3dmInstance, Rn3dmInstance, TrivialNo
from solver.one_visit import solve_one_visit
from solver.two_visits import solve_two_visits
from utils.config import get_oracle_budget
from utils.errors import BudgetExhausted, FormatError, KVisitsError
from utils.logger import logger
from verify.checker import verify_kvisits, verify_var_kvisits

__version__ = "1.0.0"

EXIT_OK = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

console = Console()
error_console = Console(stderr=True)


def _emit(frame: pd.DataFrame, pretty: bool, title: str = "") -> None:
    """TSV on stdout for scripts, a rich table for humans."""
    if not pretty:
        sys.stdout.write(frame.to_csv(sep="\t", index=False))
        return
    table = Table(title=title or None, box=box.ROUNDED)
    for column in frame.columns:
        table.add_column(str(column))
    for row in frame.itertuples(index=False):
        table.add_row(*("" if v is None else str(v) for v in row))
    console.print(table)


def _fields(pairs: list[tuple[str, object]], pretty: bool, title: str = "") -> None:
    _emit(pd.DataFrame(pairs, columns=["field", "value"]), pretty, title)


def _ints(values) -> str:
    return " ".join(map(str, values))


# --- solve / verify / analyze ---------------------------------------------------

def cmd_solve(args) -> int:
    instance = read_file(args.instance, "kvisits")
    if args.k is not None:
        instance = KVisitsInstance(instance.deadlines, args.k)
    if instance.k >= 3:
        error_console.print(f"[red]k={instance.k}: no polynomial solver for k >= 3; use the 'oracle' command.[/red]")
        return EXIT_USAGE

    result = solve_one_visit(instance) if instance.k == 1 else solve_two_visits(instance, jobs=args.jobs)
    pairs = [("verdict", result.verdict.value), ("n", instance.n), ("k", instance.k)]
    if result.reason is not None:
        pairs.append(("reason", result.reason.value))
    if result.failed_cluster is not None:
        pairs.append(("failed_cluster", result.failed_cluster))
    if args.emit_schedule and result.schedule is not None:
        pairs.append(("schedule", _ints(result.schedule.entries)))
    _fields(pairs, args.pretty, "Solve")

    if args.trace and result.trace:
        frame = pd.DataFrame([{
            "cluster": t.index,
            "first": t.first + 1,
            "last": t.last + 1,
            "size": t.last - t.first + 1,
            "solver": t.solver.value,
            "feasible": t.feasible,
        } for t in result.trace])
        _emit(frame, args.pretty, "Cluster dispatch")
    return EXIT_OK if result.feasible else EXIT_NO


def cmd_verify(args) -> int:
    instance = read_file(args.instance)
    schedule = read_file(args.schedule, "schedule")
    if isinstance(instance, KVisitsInstance):
        verdict = verify_kvisits(instance, schedule)
    elif isinstance(instance, VarKVisitsInstance):
        verdict = verify_var_kvisits(instance, schedule)
    else:
        raise FormatError(f"{args.instance}: verify needs a kvisits or varkvisits instance")

    pairs = [("ok", verdict.ok)]
    if verdict.violation is not None:
        v = verdict.violation
        pairs += [("reason", v.reason.value), ("node", v.node), ("occurrence", v.occurrence_index),
                  ("position", v.position), ("allowed_by", v.allowed_by), ("message", v.describe())]
    _fields(pairs, args.pretty, "Verify")
    return EXIT_OK if verdict.ok else EXIT_NO


def cmd_analyze(args) -> int:
    instance = read_file(args.instance, "kvisits")
    disc = discretize(instance)
    value = density(instance)
    pairs = [
        ("n", instance.n),
        ("k", instance.k),
        ("discretized", _ints(disc.values)),
        ("positive", disc.is_positive()),
        ("density", f"{value.numerator}/{value.denominator}"),
        ("above_5_6", not within_density_threshold(instance)),
    ]
    if instance.k == 2:
        core, trimmed = trim_large_deadlines(instance)
        pairs.append(("trimmed", _ints(trimmed)))
        core_disc = discretize(core)
        if core_disc.is_positive():
            decomposition = decompose(core_disc)
            pairs.append(("clusters", len(decomposition.clusters)))
            pairs.append(("cluster_values", " | ".join(
                _ints(core_disc.values[c.first:c.last + 1]) for c in decomposition.clusters)))
            pairs.append(("gaps", _ints(decomposition.gaps)))
    _fields(pairs, args.pretty, f"Analysis (threshold {DENSITY_THRESHOLD})")
    return EXIT_OK


# --- oracle ----------------------------------------------------------------------

def cmd_oracle(args) -> int:
    obj = read_file(args.instance)
    budget = args.budget or get_oracle_budget()
    if isinstance(obj, KVisitsInstance):
        outcome = oracle_kvisits(obj, budget)
    elif isinstance(obj, VarKVisitsInstance):
        outcome = oracle_var_kvisits(obj, budget)
    elif isinstance(obj, PositionMatchingInstance):
        outcome = oracle_pm(obj, budget)
    elif isinstance(obj, Rn3dmInstance):
        outcome = oracle_rn3dm(obj, budget)
    elif isinstance(obj, In3dmInstance):
        outcome = oracle_in3dm(obj, budget)
    else:
        raise FormatError(f"{args.instance}: no oracle for this format")

    pairs = [("status", outcome.status.value), ("expanded", outcome.expanded), ("budget", budget)]
    if args.emit_schedule and outcome.witness is not None:
        witness = outcome.witness
        if hasattr(witness, "entries"):
            pairs.append(("schedule", _ints(witness.entries)))
        else:
            pairs.append(("matching", " ".join(f"{a},{b},{c}" for a, b, c in witness.triples)))
    _fields(pairs, args.pretty, "Oracle")
    if outcome.status is OracleStatus.BUDGET_EXHAUSTED:
        return EXIT_BUDGET
    return EXIT_OK if outcome.feasible else EXIT_NO


# --- reduce / gen / bench / claim -----------------------------------------------------

def _describe_size(instance) -> str:
    if isinstance(instance, TrivialNo):
        return instance.reason
    return f"n={instance.n}"


def cmd_reduce(args) -> int:
    source = read_file(args.source, args.source_stage)
    steps = run_chain(source, args.source_stage, args.target_stage, k_target=args.k_target)
    rows = []
    for i, step in enumerate(steps):
        row = {"step": i, "stage": step.stage, "label": step.label, "size": _describe_size(step.instance)}
        if args.decide:
            verdict = decide_step(step, args.budget)
            row["verdict"] = "undecided" if verdict is None else ("yes" if verdict else "no")
        rows.append(row)
    _emit(pd.DataFrame(rows), args.pretty, "Reduction chain")

    if args.out_dir:
        for path in write_steps(steps, args.out_dir):
            logger.info(f"Reduce: wrote {path}")
    return EXIT_OK


def cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    max_value = args.max_deadline or 2 * args.n

    def draw(index: int):
        if args.family == "kvisits":
            return random_kvisits(rng, args.n, args.max_deadline, allow_oversize=args.allow_oversize), None
        if args.family == "pm":
            return random_pm(rng, args.n, max_value), None
        return random_rn3dm(rng, args.n, max_value, yes=(index % 2 == 0), label=False)

    def label(item) -> str:
        instance, known = item
        if known is not None:
            return OracleStatus.FEASIBLE.value if known else OracleStatus.INFEASIBLE.value
        if isinstance(instance, KVisitsInstance):
            return oracle_kvisits(instance, args.budget).status.value
        if isinstance(instance, PositionMatchingInstance):
            return oracle_pm(instance, args.budget).status.value
        return oracle_rn3dm(instance, args.budget).status.value

    # instances are drawn sequentially so the random stream does not depend on --jobs
    generated = [draw(i) for i in range(args.count)]
    labels = bench.ordered_map(label, generated, args.jobs) if args.label_with_oracle else [""] * args.count

    rows = []
    for i, ((instance, _), status) in enumerate(zip(generated, labels)):
        row = {"index": i, "label": status, "instance": serialize_any(instance).strip().replace("\n", "; ")}
        if args.out_dir:
            os.makedirs(args.out_dir, exist_ok=True)
            path = os.path.join(args.out_dir, f"{args.family}_{i:04d}.txt")
            write_file(path, instance)
            row["path"] = path
        rows.append(row)
    _emit(pd.DataFrame(rows), args.pretty, f"Generated {args.family}")
    logger.info(f"Gen: {args.count} {args.family} instance(s), seed={args.seed}")
    if OracleStatus.BUDGET_EXHAUSTED.value in labels:
        error_console.print("[red]Oracle budget exhausted while labelling; raise --budget.[/red]")
        return EXIT_BUDGET
    return EXIT_OK


def cmd_bench(args) -> int:
    frame = bench.run_suite(args.suite, seed=args.seed, count=args.count, jobs=args.jobs)
    _emit(frame, args.pretty, f"Bench {args.suite}")
    if args.save_report:
        path = bench.save_markdown(frame, args.suite)
        error_console.print(f"[green]Report saved to: {path}[/green]")
    if "oracle" in frame.columns and (frame["oracle"] == OracleStatus.BUDGET_EXHAUSTED.value).any():
        error_console.print("[red]Oracle budget exhausted on some instances; see the oracle column.[/red]")
        return EXIT_BUDGET
    return EXIT_OK


def cmd_claim(args) -> int:
    report = claims.check_first_visit_order_claim(args.budget)
    pairs = [("outcome", report.outcome.value), ("expanded", report.expanded), ("budget", report.budget)]
    if report.counterexample is not None:
        pairs.append(("observed_order", _ints(report.observed_order)))
        pairs.append(("schedule", _ints(report.counterexample.entries)))
    _fields(pairs, args.pretty, "First-visit order claim")
    path = claims.save_report(report)
    error_console.print(f"[green]Report saved to: {path}[/green]")
    if report.outcome is claims.ClaimOutcome.BUDGET_EXHAUSTED:
        return EXIT_BUDGET
    return EXIT_OK if report.outcome is claims.ClaimOutcome.CONFIRMED else EXIT_NO


# --- parser ------------------------------------------------------------------------------

def _version_text() -> str:
    formats = ", ".join(f"{tag} {v}" for tag, v in FORMAT_VERSIONS.items())
    return f"kvisits {__version__} (formats: {formats})"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kvisits", description="k-Visits pinwheel scheduling toolkit")
    parser.add_argument("--version", action="version", version=_version_text())
    parser.add_argument("--pretty", action="store_true", help="Render tables with rich instead of TSV")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="Decide a 1-Visits or 2-Visits instance")
    p.add_argument("instance")
    p.add_argument("--k", type=int, help="Override the repetition count of the file")
    p.add_argument("--emit-schedule", action="store_true", help="Print the schedule when feasible")
    p.add_argument("--trace", action="store_true", help="Print the per-cluster solver dispatch")
    p.add_argument("--jobs", type=int, default=1, help="Worker threads for cluster subproblems")
    p.set_defaults(handler=cmd_solve)

    p = sub.add_parser("verify", help="Check a schedule against a kvisits or varkvisits instance")
    p.add_argument("instance")
    p.add_argument("schedule")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("analyze", help="Discretized sequence, clusters, gaps and exact density")
    p.add_argument("instance")
    p.set_defaults(handler=cmd_analyze)

    p = sub.add_parser("oracle", help="Brute-force decision for any instance format")
    p.add_argument("instance")
    p.add_argument("--budget", type=int, help="Node-expansion budget (default: KVISITS_BUDGET)")
    p.add_argument("--emit-schedule", action="store_true", help="Print the witness when feasible")
    p.set_defaults(handler=cmd_oracle)

    p = sub.add_parser("reduce", help="Run the reduction chain and write every intermediate")
    p.add_argument("source")
    p.add_argument("--from", dest="source_stage", choices=STAGES, required=True)
    p.add_argument("--to", dest="target_stage", choices=STAGES, required=True)
    p.add_argument("--out-dir", help="Directory for the intermediate instance files")
    p.add_argument("--k-target", type=int, default=3, help="Visits per node for the varkvisits stage")
    p.add_argument("--decide", action="store_true", help="Decide every intermediate instance")
    p.add_argument("--budget", type=int, help="Oracle budget for --decide")
    p.set_defaults(handler=cmd_reduce)

    p = sub.add_parser("gen", help="Generate a seeded instance corpus")
    p.add_argument("--family", choices=("kvisits", "pm", "rn3dm"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-deadline", type=int, help="Largest value (default 2n)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--label-with-oracle", action="store_true")
    p.add_argument("--allow-oversize", action="store_true", help="Lift the 2n cap to exercise trimming")
    p.add_argument("--out-dir", help="Write one file per instance")
    p.add_argument("--budget", type=int, help="Oracle budget for labelling")
    p.add_argument("--jobs", type=int, default=1, help="Worker threads for oracle labelling (output order is fixed)")
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("bench", help="Run a benchmark suite")
    p.add_argument("--suite", choices=bench.SUITES, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, help="Instances per configuration")
    p.add_argument("--jobs", type=int, default=1, help="Worker threads (results keep input order)")
    p.add_argument("--save-report", action="store_true", help="Save a markdown copy under the output directory")
    p.set_defaults(handler=cmd_bench)

    p = sub.add_parser("claim", help="Check the first-visit order claim on the twelve-node instance")
    p.add_argument("--budget", type=int, help="Node-expansion budget (default: KVISITS_BUDGET)")
    p.set_defaults(handler=cmd_claim)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    logger.info(f"Command started: {args.command}")
    try:
        return args.handler(args)
    except BudgetExhausted as e:
        error_console.print(f"[red]{e}[/red]")
        logger.warning(f"{args.command}: {e}")
        return EXIT_BUDGET
    except (KVisitsError, OSError) as e:
        error_console.print(f"[bold red]Error: {e}[/bold red]")
        logger.error(f"{args.command}: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
