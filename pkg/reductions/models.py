"""
Source and sink types of the hardness reduction chain.

RN3DM: A (multiset), sigma; B = C = [n] implicitly. A solution pairs every a
with some b and c (each value of [n] used once per side) so that a + b + c = sigma.

IN3DM: A, T; B = [n] implicitly. A solution pairs every a with some b and t
so that a + b >= t.
"""

from dataclasses import dataclass

from utils.errors import InvalidIn3dmInstance, InvalidRn3dmInstance, InvalidThresholdInstance


@dataclass(frozen=True, slots=True)
class Rn3dmInstance:
    A: tuple[int, ...]
    sigma: int

    def __post_init__(self):
        object.__setattr__(self, "A", tuple(self.A))
        if not self.A:
            raise InvalidRn3dmInstance("an RN3DM instance needs at least one element")
        if any(a < 1 for a in self.A) or self.sigma < 1:
            raise InvalidRn3dmInstance("RN3DM values must be positive")
        n = len(self.A)
        # sum of (a_i + 2i) over i in [n]
        total = sum(self.A) + n * (n + 1)
        if total != n * self.sigma:
            raise InvalidRn3dmInstance(f"sum(a_i + 2i) = {total} differs from n * sigma = {n * self.sigma}")

    @property
    def n(self) -> int:
        return len(self.A)


@dataclass(frozen=True, slots=True)
class In3dmInstance:
    A: tuple[int, ...]
    T: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "A", tuple(self.A))
        object.__setattr__(self, "T", tuple(self.T))
        if not self.A or len(self.A) != len(self.T):
            raise InvalidIn3dmInstance(f"|A|={len(self.A)} and |T|={len(self.T)} must be equal and positive")
        if any(v < 1 for v in self.A + self.T):
            raise InvalidIn3dmInstance("IN3DM values must be positive")

    @property
    def n(self) -> int:
        return len(self.A)


@dataclass(frozen=True, slots=True)
class ThresholdPinwheelInstance:
    """Node i uses deadline d1[i] until it has been visited t[i] times, d2[i] afterwards."""
    d1: tuple[int, ...]
    d2: tuple[int, ...]
    thresholds: tuple[int, ...]

    def __post_init__(self):
        for name in ("d1", "d2", "thresholds"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if not self.d1 or not (len(self.d1) == len(self.d2) == len(self.thresholds)):
            raise InvalidThresholdInstance("d1, d2 and thresholds must be non-empty and equally long")
        if any(v < 1 for v in self.d1 + self.d2 + self.thresholds):
            raise InvalidThresholdInstance("threshold instance values must be positive")

    @property
    def n(self) -> int:
        return len(self.d1)


@dataclass(frozen=True, slots=True)
class TrivialNo:
    """A closed-form filter rejected the instance; it is a no-instance, not an error."""
    reason: str


@dataclass(frozen=True, slots=True)
class Rn3dmMatching:
    # (a_index, b, c): 0-based index into A, b and c values in [1, n]
    triples: tuple[tuple[int, int, int], ...]


@dataclass(frozen=True, slots=True)
class In3dmMatching:
    # (a_index, b, t_index): 0-based indices into A and T, b a value in [1, n]
    triples: tuple[tuple[int, int, int], ...]


def _is_permutation(values, n: int) -> bool:
    return sorted(values) == list(range(n))


def verify_rn3dm(instance: Rn3dmInstance, matching: Rn3dmMatching) -> bool:
    n = instance.n
    triples = matching.triples
    if len(triples) != n:
        return False
    if not _is_permutation([a for a, _, _ in triples], n):
        return False
    if not _is_permutation([b - 1 for _, b, _ in triples], n) or not _is_permutation([c - 1 for _, _, c in triples], n):
        return False
    return all(instance.A[a] + b + c == instance.sigma for a, b, c in triples)


def verify_in3dm(instance: In3dmInstance, matching: In3dmMatching) -> bool:
    n = instance.n
    triples = matching.triples
    if len(triples) != n:
        return False
    if not _is_permutation([a for a, _, _ in triples], n) or not _is_permutation([t for _, _, t in triples], n):
        return False
    if not _is_permutation([b - 1 for _, b, _ in triples], n):
        return False
    return all(instance.A[a] + b >= instance.T[t] for a, b, t in triples)
