"""Vocabularies, sentence encoding, question asking and clean-up recognition."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .algebra import DimensionError, Multivector, inner_product, reversion_sign
from .cartan import euclidean_measure, hamming_measure, signature


class Kind(enum.Enum):
    ROLE = "role"
    FILLER = "filler"


class Construction(enum.Enum):
    PLATE = "plate"
    AGENT_OBJECT = "ao"
    AGENT_OBJECT_ODD = "ao-odd"


class Mode(enum.Enum):
    RIGHT_HAND_SIDE = "rhs"
    APPROPRIATE_REVERSED = "reversed"


class Measure(enum.Enum):
    INNER = "inner"
    HAMMING = "hamming"
    EUCLIDEAN = "euclid"


class EncodingError(ValueError):
    pass


def draw_mask(rng, n: int) -> int:
    """One blade mask drawn uniformly from all 2**n bit strings."""
    return int(rng.integers(0, 1 << n, dtype="uint64"))


@dataclass(frozen=True)
class Atom:
    name: str
    kind: Kind
    mask: int


@dataclass(frozen=True)
class Vocabulary:
    dimension: int
    atoms: tuple[Atom, ...]
    _index: dict[str, Atom] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        index = {}
        for atom in self.atoms:
            if atom.name in index:
                raise EncodingError(f"duplicate atom name {atom.name!r}")
            if not 0 <= atom.mask < (1 << self.dimension):
                raise DimensionError(f"atom {atom.name!r} mask wider than {self.dimension} bits")
            index[atom.name] = atom
        object.__setattr__(self, "_index", index)

    def __getitem__(self, name: str) -> Atom:
        return self._index[name]

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def blade(self, name: str) -> Multivector:
        return Multivector._wrap(self.dimension, {self._index[name].mask: 1})


def draw_vocabulary(spec: Iterable[tuple[str, Kind]], n: int, rng) -> Vocabulary:
    """Draw one uniform random blade per atom, in ``spec`` order."""
    spec = list(spec)
    seen = set()
    for name, _ in spec:
        if name in seen:
            raise EncodingError(f"duplicate atom name {name!r}")
        seen.add(name)
    masks = rng.integers(0, 1 << n, size=len(spec), dtype="uint64").tolist()
    return Vocabulary(n, tuple(Atom(name, kind, mask) for (name, kind), mask in zip(spec, masks)))


@dataclass(frozen=True)
class SentenceSpec:
    name: str
    pairs: tuple[tuple[str, str], ...]
    verb: str | None = None

    def __post_init__(self):
        if not self.pairs:
            raise EncodingError(f"sentence {self.name!r} has no role/filler pairs")


@dataclass(frozen=True)
class EncodedItem:
    name: str
    value: Multivector
    blade_count: int
    kind: Kind = Kind.FILLER
    odding_mask: int | None = None
    atomic: bool = False


class CleanupMemory:
    """Ordered, immutable collection of atoms and encoded sentences."""

    def __init__(self, dimension: int, items: Sequence[EncodedItem] = ()):
        self.dimension = dimension
        self.items: tuple[EncodedItem, ...] = tuple(items)
        self._index: dict[str, int] = {}
        for i, item in enumerate(self.items):
            if item.name in self._index:
                raise EncodingError(f"duplicate memory item {item.name!r}")
            if item.value.dimension != dimension:
                raise DimensionError(f"item {item.name!r} has dimension {item.value.dimension}")
            self._index[item.name] = i
        self._blade_index: dict[int, list[tuple[int, int]]] | None = None
        self._signatures: dict[str, object] = {}

    @classmethod
    def from_vocabulary(cls, vocabulary: Vocabulary) -> "CleanupMemory":
        items = [
            EncodedItem(a.name, vocabulary.blade(a.name), 1, kind=a.kind, atomic=True)
            for a in vocabulary.atoms
        ]
        return cls(vocabulary.dimension, items)

    def with_item(self, item: EncodedItem) -> "CleanupMemory":
        return CleanupMemory(self.dimension, self.items + (item,))

    def __getitem__(self, name: str) -> EncodedItem:
        try:
            return self.items[self._index[name]]
        except KeyError:
            raise KeyError(f"no item named {name!r} in clean-up memory") from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __len__(self) -> int:
        return len(self.items)

    def names(self) -> list[str]:
        return [item.name for item in self.items]

    def profile(self):
        from .analysis import MemoryProfile

        counts: dict[int, int] = {}
        for item in self.items:
            counts[item.blade_count] = counts.get(item.blade_count, 0) + 1
        return MemoryProfile(counts, self.dimension)

    def blade_index(self) -> dict[int, list[tuple[int, int]]]:
        """mask -> [(item position, coefficient), ...]; built once, on demand."""
        if self._blade_index is None:
            index: dict[int, list[tuple[int, int]]] = {}
            for i, item in enumerate(self.items):
                for mask, coeff in item.value:
                    index.setdefault(mask, []).append((i, coeff))
            self._blade_index = index
        return self._blade_index

    def signature(self, name: str):
        sig = self._signatures.get(name)
        if sig is None:
            sig = self._signatures[name] = signature(self[name].value)
        return sig


def encode(
    spec: SentenceSpec,
    memory: CleanupMemory | Mapping[str, EncodedItem],
    vocabulary: Vocabulary,
    construction: Construction,
    rng=None,
) -> EncodedItem:
    """Bind each role blade to its filler (atom or earlier sentence) and sum.

    Plate adds the verb blade; the odding variant adds one uniform random blade
    whenever the structural blade count would otherwise be even.
    """
    n = vocabulary.dimension
    terms: dict[int, int] = {}
    count = 0
    value = Multivector._wrap(n, terms)
    for role, filler in spec.pairs:
        if role not in vocabulary or vocabulary[role].kind is not Kind.ROLE:
            raise EncodingError(f"{spec.name}: {role!r} is not a role atom")
        if filler not in memory:
            raise EncodingError(f"{spec.name}: unresolved filler {filler!r}")
        target = memory[filler]
        if target.atomic and target.kind is Kind.ROLE:
            raise EncodingError(f"{spec.name}: role atom {filler!r} used as filler")
        value = value + vocabulary.blade(role) * target.value
        count += target.blade_count
    if construction is Construction.PLATE and spec.verb is not None:
        if spec.verb not in vocabulary:
            raise EncodingError(f"{spec.name}: unresolved verb {spec.verb!r}")
        value = value + vocabulary.blade(spec.verb)
        count += 1
    odding = None
    if construction is Construction.AGENT_OBJECT_ODD and count % 2 == 0:
        if rng is None:
            raise EncodingError("odding construction needs a random stream")
        odding = draw_mask(rng, n)
        value = value + Multivector._wrap(n, {odding: 1})
        count += 1
    return EncodedItem(spec.name, value, count, Kind.FILLER, odding)


def encode_all(
    specs: Iterable[SentenceSpec],
    vocabulary: Vocabulary,
    construction: Construction,
    rng=None,
) -> CleanupMemory:
    items = {item.name: item for item in CleanupMemory.from_vocabulary(vocabulary).items}
    for spec in specs:
        if spec.name in items:
            raise EncodingError(f"duplicate memory item {spec.name!r}")
        items[spec.name] = encode(spec, items, vocabulary, construction, rng)
    return CleanupMemory(vocabulary.dimension, list(items.values()))


def ask(item: EncodedItem | Multivector, question: EncodedItem, mode: Mode) -> Multivector:
    """Decode ``item`` with ``question``; the result is the raw noisy answer."""
    s = item.value if isinstance(item, EncodedItem) else item
    q = question.value
    if mode is Mode.RIGHT_HAND_SIDE:
        return s * q
    if mode is Mode.APPROPRIATE_REVERSED:
        if question.kind is Kind.ROLE:
            return q.reverse() * s
        if question.kind is Kind.FILLER:
            return s * q.reverse()
        raise EncodingError(f"unknown kind for question {question.name!r}")
    raise EncodingError(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class CleanupResult:
    names: tuple[str, ...]
    scores: tuple[int, ...]
    potential: tuple[str, ...]
    top: tuple[str, ...]
    best: int


def cleanup_query(memory: CleanupMemory, noisy: Multivector, definite: bool = False) -> CleanupResult:
    """|inner product| of ``noisy`` against every item; potential and top-scoring sets."""
    if noisy.dimension != memory.dimension:
        raise DimensionError(f"noisy answer dimension {noisy.dimension} != {memory.dimension}")
    raw = [0] * len(memory.items)
    index = memory.blade_index()
    for mask, coeff in noisy:
        hits = index.get(mask)
        if hits:
            c = coeff if definite else coeff * reversion_sign(mask)
            for i, d in hits:
                raw[i] += c * d
    scores = tuple(abs(v) for v in raw)
    names = tuple(item.name for item in memory.items)
    potential = tuple(name for name, s in zip(names, scores) if s)
    best = max(scores) if potential else 0
    top = tuple(name for name, s in zip(names, scores) if s and s == best)
    return CleanupResult(names, scores, potential, top, best)


def brute_force_scores(memory: CleanupMemory, noisy: Multivector, definite: bool = False) -> list[int]:
    return [abs(inner_product(noisy, item.value, definite)) for item in memory.items]


@dataclass(frozen=True)
class TrialOutcome:
    correct: bool
    potential_count: int
    top_set_size: int
    measure_used: Measure
    correct_in_potential: bool


def _measure_fn(measure: Measure, count_blank: bool = True):
    if measure is Measure.HAMMING:
        return lambda x, y: hamming_measure(x, y, count_blank)
    if measure is Measure.EUCLIDEAN:
        return euclidean_measure
    raise ValueError(f"{measure} is not a matrix measure")


def argmax_set(values: Sequence) -> list[int]:
    """Positions attaining the maximum (``math.inf`` beats every finite value)."""
    if not values:
        return []
    best = max(values)
    return [i for i, v in enumerate(values) if v == best]


def recognize(
    memory: CleanupMemory,
    item: str | EncodedItem,
    question: str | EncodedItem,
    expected: str,
    mode: Mode,
    measure: Measure = Measure.INNER,
    restrict_to_top: bool = False,
    definite: bool = False,
    count_blank: bool = True,
) -> TrialOutcome:
    """One recognition trial.

    With a matrix measure and more than one potential answer, candidates are
    re-ranked by comparing signatures; ``restrict_to_top`` re-ranks only the
    top inner-product set instead of every potential answer. ``definite`` and
    ``count_blank`` are passed on to the inner product and Hamming measure.
    """
    if expected not in memory:
        raise KeyError(f"expected answer {expected!r} not in clean-up memory")
    item = memory[item] if isinstance(item, str) else item
    question = memory[question] if isinstance(question, str) else question
    noisy = ask(item, question, mode)
    result = cleanup_query(memory, noisy, definite)
    in_potential = expected in result.potential
    if measure is Measure.INNER or len(result.potential) <= 1:
        return TrialOutcome(
            expected in result.top, len(result.potential), len(result.top), Measure.INNER, in_potential
        )
    candidates = result.top if restrict_to_top else result.potential
    fn = _measure_fn(measure, count_blank)
    noisy_sig = signature(noisy)
    values = [fn(noisy_sig, memory.signature(name)) for name in candidates]
    winners = {candidates[i] for i in argmax_set(values)}
    return TrialOutcome(
        expected in winners, len(result.potential), len(result.top), measure, in_potential
    )

