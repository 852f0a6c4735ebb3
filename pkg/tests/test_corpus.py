import random
from math import comb

import pytest

from corpus import bench
from corpus.generators import (
    exhaustive_multisets,
    planted_distinct_kvisits,
    random_consecutive_pm,
    random_distinct_kvisits,
    random_kvisits,
    random_pm,
    random_rn3dm,
    rn3dm_sigma_range,
)
from oracle.matching import oracle_rn3dm
from pm.models import validate
from solver.two_visits import solve_two_visits
from utils.errors import BudgetExhausted


def test_generators_are_seeded():
    first = [random_kvisits(random.Random(7), 6) for _ in range(3)]
    second = [random_kvisits(random.Random(7), 6) for _ in range(3)]
    assert first == second


def test_kvisits_ranges():
    rng = random.Random(1)
    for _ in range(50):
        assert max(random_kvisits(rng, 5).deadlines) <= 10
        assert max(random_kvisits(rng, 5, allow_oversize=True).deadlines) <= 20
        assert max(random_kvisits(rng, 5, max_deadline=3).deadlines) <= 3
    distinct = random_distinct_kvisits(rng, 100)
    assert len(set(distinct.deadlines)) == 100
    assert distinct.deadlines[-1] <= 200


def test_pm_generators_produce_valid_instances():
    rng = random.Random(2)
    for _ in range(50):
        validate(random_pm(rng, 5, 9))
        instance = random_consecutive_pm(rng, 6, 18)
        validate(instance)
        assert list(instance.A) == list(range(instance.A[0], instance.A[0] + 6))
    with pytest.raises(ValueError):
        random_pm(rng, 5, 4)


def test_rn3dm_generator():
    assert rn3dm_sigma_range(3, 6) == (7, 8)
    rng = random.Random(3)
    for i in range(40):
        instance, label = random_rn3dm(rng, 3, 6, yes=i % 2 == 0)
        assert all(1 <= a <= 6 for a in instance.A)
        assert oracle_rn3dm(instance).feasible == label
        if i % 2 == 0:
            assert label
    with pytest.raises(ValueError):
        random_rn3dm(rng, 3, 4)


def test_exhaustive_multisets():
    tuples = list(exhaustive_multisets(3, 4))
    assert len(tuples) == comb(6, 3)
    assert all(list(t) == sorted(t) for t in tuples)
    assert list(exhaustive_multisets(2, 3, min_value=3)) == [(3, 3)]


def test_oracle_agreement_suite():
    frame = bench.oracle_agreement(seed=5, count=30, max_n=5)
    assert len(frame) == 30
    assert not (frame["agree"] == False).any()  # noqa: E712
    threaded = bench.oracle_agreement(seed=5, count=30, max_n=5, jobs=4)
    columns = ["n", "deadlines", "solver", "oracle", "agree", "oracle_expanded"]
    assert threaded[columns].equals(frame[columns])


def test_cluster_fpt_suite():
    frame = bench.cluster_fpt(seed=1, sizes=(4, 6), count=4)
    assert list(frame["cluster_size"]) == [4, 6]
    assert frame["oracle_agree"].all()


def test_unknown_suite():
    with pytest.raises(ValueError, match="unknown suite"):
        bench.run_suite("sorting")


def test_save_markdown(tmp_path):
    frame = bench.oracle_agreement(seed=0, count=3, max_n=3)
    path = bench.save_markdown(frame, "oracle-agreement", str(tmp_path))
    with open(path, encoding="utf-8") as f:
        text = f.read()
    assert text.startswith("# Benchmark: oracle-agreement\n\n|")
    assert "agree" in text


def test_rn3dm_labelling_can_be_deferred():
    deferred = 0
    for seed in range(30):
        instance, label = random_rn3dm(random.Random(seed), 3, 6, yes=False, label=False)
        if label is not None:
            assert label
            continue
        deferred += 1
        same, _ = random_rn3dm(random.Random(seed), 3, 6, yes=False)
        assert same == instance
        with pytest.raises(BudgetExhausted):
            random_rn3dm(random.Random(seed), 3, 6, yes=False, budget=0)
    assert deferred


def test_planted_distinct_instances_are_feasible():
    rng = random.Random(4)
    for n in (1, 2, 7, 50):
        instance = planted_distinct_kvisits(rng, n)
        assert len(set(instance.deadlines)) == n
        assert solve_two_visits(instance).feasible
