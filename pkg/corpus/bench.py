"""
Benchmark suites. Each returns a pandas DataFrame; the CLI prints it as TSV
and can save a markdown copy under the output directory.
"""

import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime

import pandas as pd

from corpus.generators import planted_distinct_kvisits, random_consecutive_pm, random_kvisits
from oracle.matching import oracle_pm
from oracle.search import oracle_kvisits
from pm.solvers import solve_exact
from solver.two_visits import solve_two_visits
from utils.config import get_output_dir
from utils.logger import logger

SUITES = ("oracle-agreement", "distinct-scaling", "cluster-fpt")


def ordered_map(func, items, jobs: int) -> list:
    if jobs <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as executor:
        futures = [executor.submit(func, item) for item in items]
        return [f.result() for f in futures]


def oracle_agreement(seed: int = 0, count: int = 200, max_n: int = 8, jobs: int = 1,
                     budget: int | None = None) -> pd.DataFrame:
    rng = random.Random(seed)
    instances = [random_kvisits(rng, rng.randint(1, max_n)) for _ in range(count)]

    def run(instance):
        started = time.perf_counter()
        solved = solve_two_visits(instance)
        solver_ms = (time.perf_counter() - started) * 1000
        outcome = oracle_kvisits(instance, budget)
        return {
            "n": instance.n,
            "deadlines": " ".join(map(str, instance.deadlines)),
            "solver": solved.verdict.value,
            "oracle": outcome.status.value,
            "agree": (solved.feasible == outcome.feasible) if outcome.decided else None,
            "solver_ms": round(solver_ms, 3),
            "oracle_expanded": outcome.expanded,
        }

    rows = ordered_map(run, instances, jobs)
    frame = pd.DataFrame(rows)
    disagreements = sum(1 for row in rows if row["agree"] is False)
    logger.info(f"Bench oracle-agreement: {count} instances, {disagreements} disagreement(s)")
    return frame


def distinct_scaling(seed: int = 0, sizes: tuple[int, ...] = (125_000, 250_000, 500_000, 1_000_000)) -> pd.DataFrame:
    rng = random.Random(seed)
    rows = []
    previous = None
    for n in sizes:
        instance = planted_distinct_kvisits(rng, n)
        started = time.perf_counter()
        result = solve_two_visits(instance)
        seconds = time.perf_counter() - started
        rows.append({
            "n": n,
            "verdict": result.verdict.value,
            "clusters": len(result.trace),
            "seconds": round(seconds, 4),
            "ratio": round(seconds / previous, 3) if previous else None,
        })
        previous = seconds
        logger.info(f"Bench distinct-scaling: n={n} in {seconds:.3f}s")
    return pd.DataFrame(rows)


def cluster_fpt(seed: int = 0, sizes: tuple[int, ...] = (4, 6, 8, 10, 12), count: int = 20,
                jobs: int = 1) -> pd.DataFrame:
    """Exact solver cost against cluster size, with the brute-force oracle on the small sizes."""
    rng = random.Random(seed)
    rows = []
    for size in sizes:
        instances = [random_consecutive_pm(rng, size, 3 * size) for _ in range(count)]

        def run(instance):
            started = time.perf_counter()
            feasible = solve_exact(instance) is not None
            exact_ms = (time.perf_counter() - started) * 1000
            agree = None
            if size <= 8:
                agree = oracle_pm(instance).feasible == feasible
            return feasible, exact_ms, agree

        results = ordered_map(run, instances, jobs)
        checked = [a for _, _, a in results if a is not None]
        rows.append({
            "cluster_size": size,
            "instances": count,
            "feasible": sum(1 for f, _, _ in results if f),
            "mean_ms": round(sum(ms for _, ms, _ in results) / count, 3),
            "max_ms": round(max(ms for _, ms, _ in results), 3),
            "oracle_agree": all(checked) if checked else None,
        })
    return pd.DataFrame(rows)


def run_suite(name: str, seed: int = 0, count: int | None = None, jobs: int = 1) -> pd.DataFrame:
    logger.info(f"Bench: running suite {name} (seed={seed})")
    if name == "oracle-agreement":
        return oracle_agreement(seed, count or 200, jobs=jobs)
    if name == "distinct-scaling":
        return distinct_scaling(seed)
    if name == "cluster-fpt":
        return cluster_fpt(seed, count=count or 20, jobs=jobs)
    raise ValueError(f"unknown suite '{name}', choose from {', '.join(SUITES)}")


def save_markdown(frame: pd.DataFrame, name: str, output_dir: str | None = None) -> str:
    output_dir = output_dir or get_output_dir()
    os.makedirs(output_dir, exist_ok=True)
    timestamp = datetime.now().strftime("%Y-%m-%d_%H-%M-%S")
    filename = os.path.join(output_dir, f"bench_{name}_{timestamp}.md")
    with open(filename, "w", encoding="utf-8") as f:
        f.write(f"# Benchmark: {name}\n\n")
        f.write(frame.to_markdown(index=False))
        f.write("\n")
    logger.info(f"Bench: saved {filename}")
    return filename
