"""Closed-form cancellation probability and potential-answer estimators."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Mapping

# |S_k| for the benchmark clean-up memory under plain agent-object construction
CORPUS_COUNTS = {1: 42, 2: 2, 3: 2, 4: 3, 5: 2, 6: 1, 7: 1, 8: 3, 9: 2, 10: 2, 11: 1}


class ProfileError(ValueError):
    pass


@dataclass(frozen=True)
class MemoryProfile:
    counts: Mapping[int, int]
    dimension: int | None = None

    def __post_init__(self):
        if any(k < 1 or v < 0 for k, v in self.counts.items()):
            raise ProfileError(f"invalid blade-count profile {dict(self.counts)}")

    @property
    def omega(self) -> int:
        """Largest blade count with a nonempty subset."""
        return max((k for k, v in self.counts.items() if v > 0), default=0)

    def size(self, k: int) -> int:
        return self.counts.get(k, 0)


@dataclass(frozen=True)
class AnswerProfile:
    """Known potential answers per subset (``p[k]``) and blade count ``blades`` of the noisy answer."""

    p: Mapping[int, int] = field(default_factory=dict)
    blades: int = 1

    @property
    def total(self) -> int:
        return sum(self.p.values())


def cancellation_probability(k: int) -> Fraction:
    """Chance that 2k random +-1 contributions sum to zero: C(2k, k) / 4**k."""
    if k < 1:
        raise ValueError("k must be positive")
    return Fraction(comb(2 * k, k), 4**k)


def _dimension(profile: MemoryProfile, dimension: int | None) -> int:
    n = dimension if dimension is not None else profile.dimension
    if n is None:
        raise ProfileError("no dimension given")
    return n


def expected_potential_answers_simple(
    profile: MemoryProfile, noise_blades: int, dimension: int | None = None
) -> float:
    """Expected |potential answers| for one meaningful atom plus ``noise_blades`` noisy blades."""
    n = _dimension(profile, dimension)
    if profile.size(1) < 1:
        raise ProfileError("profile needs at least one atom")
    q = (noise_blades + 1) / 2.0**n
    total = 1.0 + (profile.size(1) - 1) * q
    for k in range(2, profile.omega + 1):
        total += profile.size(k) * (1.0 - (1.0 - q) ** k)
    return total


def expected_potential_answers_general(
    profile: MemoryProfile, answer: AnswerProfile, dimension: int | None = None
) -> float:
    n = _dimension(profile, dimension)
    for k, pk in answer.p.items():
        if pk < 0 or pk > profile.size(k):
            raise ProfileError(f"p_{k} = {pk} exceeds |S_{k}| = {profile.size(k)}")
    q = answer.blades / 2.0**n
    total = float(answer.total) + (profile.size(1) - answer.p.get(1, 0)) * q
    for k in range(2, profile.omega + 1):
        total += (profile.size(k) - answer.p.get(k, 0)) * (1.0 - (1.0 - q) ** k)
    return total
