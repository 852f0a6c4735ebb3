from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from instances.models import Cluster, DiscretizedSequence, KVisitsInstance
from instances.preprocess import (
    decompose,
    density,
    discretize,
    discretize_values,
    normalize,
    trim_large_deadlines,
    within_density_threshold,
)
from utils.errors import (
    EmptyInput,
    InvalidRepetitionCount,
    NonPositiveDeadline,
    NonPositiveDiscretizedValue,
    UnsortedDeadlines,
    ValueExceedsHorizon,
)

deadline_lists = st.lists(st.integers(min_value=1, max_value=24), min_size=1, max_size=12).map(sorted)


def test_normalize_sorts_multiset():
    instance = normalize([8, 6, 11, 8, 14, 8, 11], 2)
    assert instance.deadlines == (6, 8, 8, 8, 11, 11, 14)
    assert instance.k == 2


def test_normalize_singleton_and_sorted():
    assert normalize([5], 1) == KVisitsInstance((5,), 1)
    assert normalize([3, 3, 3], 2).deadlines == (3, 3, 3)


def test_normalize_rejects_bad_input():
    with pytest.raises(EmptyInput):
        normalize([], 2)
    with pytest.raises(NonPositiveDeadline):
        normalize([3, 0], 2)
    with pytest.raises(InvalidRepetitionCount):
        normalize([3], 0)


def test_instance_requires_sorted_deadlines():
    with pytest.raises(UnsortedDeadlines):
        KVisitsInstance((3, 2), 2)


@pytest.mark.parametrize("deadlines, expected", [
    ((6, 8, 8, 8, 11, 11, 14), [5, 6, 7, 8, 10, 11, 14]),
    ((4, 5, 6, 7, 8, 8, 10, 10, 11, 15, 22, 23), [3, 4, 5, 6, 7, 8, 9, 10, 11, 15, 22, 23]),
    ((1, 1, 1), [-1, 0, 1]),
])
def test_discretize_values(deadlines, expected):
    assert discretize_values(deadlines) == expected


def test_discretize_keeps_deadlines(seven_node_instance):
    disc = discretize(seven_node_instance)
    assert disc.deadlines == seven_node_instance.deadlines
    assert disc.is_positive()
    assert not discretize(KVisitsInstance((1, 1), 2)).is_positive()


@given(deadline_lists)
def test_discretized_sequence_is_strictly_increasing_and_bounded(deadlines):
    values = discretize_values(deadlines)
    assert values[-1] == deadlines[-1]
    assert all(a <= d for a, d in zip(values, deadlines))
    assert all(values[i] < values[i + 1] for i in range(len(values) - 1))


def test_trim_removes_never_expiring_node():
    core, trimmed = trim_large_deadlines(KVisitsInstance((3, 3, 99), 2))
    assert core.deadlines == (3, 3)
    assert trimmed == [3]


def test_trim_cascades_but_keeps_last_node():
    core, trimmed = trim_large_deadlines(KVisitsInstance((5, 20, 30), 2))
    assert core.deadlines == (5,)
    assert trimmed == [3, 2]


def test_trim_leaves_tight_instance_alone(seven_node_instance):
    core, trimmed = trim_large_deadlines(seven_node_instance)
    assert core is seven_node_instance
    assert trimmed == []


def test_trim_needs_two_visits():
    with pytest.raises(InvalidRepetitionCount):
        trim_large_deadlines(KVisitsInstance((3, 9), 1))


def test_decompose_seven_node_example(seven_node_instance):
    decomposition = decompose(discretize(seven_node_instance))
    assert decomposition.clusters == (Cluster(0, 3), Cluster(4, 5), Cluster(6, 6))
    assert decomposition.gaps == (1, 2, 3, 4, 9, 12, 13)
    assert decomposition.gaps_by_cluster() == [(1, 2, 3, 4), (9, 12), (13,)]


def test_decompose_twelve_node_gaps(twelve_node_instance):
    decomposition = decompose(discretize(twelve_node_instance))
    assert decomposition.gaps == (1, 2, 12, 13, 14, 16, 17, 18, 19, 20, 21, 24)
    assert [c.size for c in decomposition.clusters] == [9, 1, 2]


def test_decompose_single_cluster():
    decomposition = decompose(DiscretizedSequence((1, 2, 3), (1, 2, 3)))
    assert decomposition.clusters == (Cluster(0, 2),)
    assert decomposition.gaps == (4, 5, 6)


def test_decompose_rejects_non_positive_and_oversized():
    with pytest.raises(NonPositiveDiscretizedValue):
        decompose(DiscretizedSequence((0, 1), (1, 1)))
    with pytest.raises(ValueExceedsHorizon):
        decompose(DiscretizedSequence((1, 5), (1, 5)))


@given(deadline_lists)
def test_clusters_are_discretized_sequences_of_their_deadlines(deadlines):
    core, _ = trim_large_deadlines(KVisitsInstance(tuple(deadlines), 2))
    disc = discretize(core)
    # a one-node core may keep a deadline above 2n; the pipeline short-circuits it
    if not disc.is_positive() or core.n == 1:
        return
    decomposition = decompose(disc)
    assert len(decomposition.gaps) == core.n
    for cluster in decomposition.clusters:
        chunk = core.deadlines[cluster.first:cluster.last + 1]
        assert discretize_values(chunk) == list(disc.values[cluster.first:cluster.last + 1])


@pytest.mark.parametrize("deadlines, expected", [
    ((2, 4, 4), Fraction(1)),
    ((2, 3, 6), Fraction(1)),
    ((6, 8, 8, 8, 11, 11, 14), Fraction(1469, 1848)),
])
def test_density_is_exact(deadlines, expected):
    assert density(KVisitsInstance(deadlines, 2)) == expected


def test_density_matches_term_by_term_sum(seven_node_instance):
    expected = sum((Fraction(1, d) for d in seven_node_instance.deadlines), Fraction(0))
    assert density(seven_node_instance) == expected


def test_density_threshold_is_inclusive():
    assert within_density_threshold(KVisitsInstance((6, 6, 6, 6, 6), 2))
    assert not within_density_threshold(KVisitsInstance((2, 3, 6), 2))
