"""Holographic Reduced Representations (HRR) and Binary Spatter Codes (BSC).

Both models share the corpus sentence specs with the GA model so that the
three can be compared on identical questions.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .encoding import Construction, EncodingError, Kind, SentenceSpec, argmax_set


class Model(enum.Enum):
    GA = "ga"
    HRR = "hrr"
    BSC = "bsc"


class LengthError(ValueError):
    pass


def _same_length(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise LengthError(f"vector lengths differ: {a.shape} vs {b.shape}")


# HRR


def hrr_atom(rng, d: int) -> np.ndarray:
    if d < 1:
        raise LengthError("vector length must be positive")
    return rng.normal(0.0, 1.0 / np.sqrt(d), d)


def hrr_bind(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Circular convolution, computed through the real FFT."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    _same_length(a, b)
    d = a.shape[-1]
    return np.fft.irfft(np.fft.rfft(a) * np.fft.rfft(b), n=d)


def involution(q: np.ndarray) -> np.ndarray:
    """q*_j = q_{-j mod d}, the approximate inverse under convolution."""
    q = np.asarray(q)
    return np.concatenate((q[:1], q[:0:-1]))


def hrr_unbind(s: np.ndarray, q: np.ndarray) -> np.ndarray:
    return hrr_bind(s, involution(q))


def hrr_similarity(a: np.ndarray, b: np.ndarray) -> float:
    _same_length(np.asarray(a), np.asarray(b))
    return float(np.dot(a, b))


# BSC


def bsc_atom(rng, d: int) -> np.ndarray:
    if d < 1:
        raise LengthError("vector length must be positive")
    return rng.integers(0, 2, d, dtype=np.uint8)


def bsc_bind(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.uint8)
    b = np.asarray(b, dtype=np.uint8)
    _same_length(a, b)
    return a ^ b


def bsc_bundle(chunks: Sequence[np.ndarray], rng=None) -> np.ndarray:
    """Thresholded majority; an even chunk count gets one random tie-break vector."""
    if len(chunks) == 0:
        raise ValueError("cannot bundle an empty list of chunks")
    stack = [np.asarray(c, dtype=np.uint8) for c in chunks]
    for c in stack[1:]:
        _same_length(stack[0], c)
    if len(stack) % 2 == 0:
        if rng is None:
            raise ValueError("an even number of chunks needs a random tie-break vector")
        stack.append(bsc_atom(rng, stack[0].shape[0]))
    ones = np.sum(stack, axis=0, dtype=np.int64)
    return (2 * ones > len(stack)).astype(np.uint8)


def bsc_similarity(a: np.ndarray, b: np.ndarray) -> float:
    """Fraction of agreeing positions."""
    a = np.asarray(a)
    b = np.asarray(b)
    _same_length(a, b)
    return float(np.mean(a == b))


# shared encoding


def _check_construction(construction: Construction) -> None:
    if construction is Construction.AGENT_OBJECT_ODD:
        raise EncodingError("odding blades have no HRR/BSC counterpart; use plate or ao")


def _chunks(spec: SentenceSpec, table: dict, kinds: dict, construction: Construction, bind):
    out = []
    if construction is Construction.PLATE and spec.verb is not None:
        if spec.verb not in table:
            raise EncodingError(f"{spec.name}: unresolved verb {spec.verb!r}")
        out.append(table[spec.verb])
    for role, filler in spec.pairs:
        if kinds.get(role) is not Kind.ROLE:
            raise EncodingError(f"{spec.name}: {role!r} is not a role atom")
        if filler not in table:
            raise EncodingError(f"{spec.name}: unresolved filler {filler!r}")
        out.append(bind(table[role], table[filler]))
    return out


def hrr_encode(spec: SentenceSpec, table: dict, kinds: dict, construction: Construction) -> np.ndarray:
    """Sum of bound chunks scaled by 1/sqrt(number of chunks)."""
    _check_construction(construction)
    chunks = _chunks(spec, table, kinds, construction, hrr_bind)
    return np.sum(chunks, axis=0) / np.sqrt(len(chunks))


def bsc_encode(spec: SentenceSpec, table: dict, kinds: dict, construction: Construction, rng) -> np.ndarray:
    _check_construction(construction)
    return bsc_bundle(_chunks(spec, table, kinds, construction, bsc_bind), rng)


@dataclass(frozen=True)
class VectorMemory:
    model: Model
    names: tuple[str, ...]
    vectors: np.ndarray  # one row per item
    kinds: dict

    def __getitem__(self, name: str) -> np.ndarray:
        return self.vectors[self.names.index(name)]


def build_vector_memory(
    model: Model,
    atoms: Iterable[tuple[str, Kind]],
    sentences: Iterable[SentenceSpec],
    d: int,
    construction: Construction,
    rng,
) -> VectorMemory:
    """Draw atoms, encode every sentence in order and stack everything."""
    if model is Model.GA:
        raise ValueError("GA memories are built by the encoding module")
    _check_construction(construction)
    table: dict[str, np.ndarray] = {}
    kinds: dict[str, Kind] = {}
    for name, kind in atoms:
        table[name] = hrr_atom(rng, d) if model is Model.HRR else bsc_atom(rng, d)
        kinds[name] = kind
    for spec in sentences:
        if model is Model.HRR:
            table[spec.name] = hrr_encode(spec, table, kinds, construction)
        else:
            table[spec.name] = bsc_encode(spec, table, kinds, construction, rng)
        kinds[spec.name] = Kind.FILLER
    names = tuple(table)
    return VectorMemory(model, names, np.stack([table[n] for n in names]), kinds)


def decode(memory: VectorMemory, item: str, question: str) -> np.ndarray:
    s, q = memory[item], memory[question]
    return hrr_unbind(s, q) if memory.model is Model.HRR else bsc_bind(s, q)


def cleanup_scores(memory: VectorMemory, noisy: np.ndarray) -> np.ndarray:
    if memory.model is Model.HRR:
        return memory.vectors @ noisy
    return np.mean(memory.vectors == noisy, axis=1)


def recognize_vector(memory: VectorMemory, item: str, question: str, expected: str) -> bool:
    """Correct when the expected item is in the argmax set of the clean-up scores."""
    scores = cleanup_scores(memory, decode(memory, item, question))
    winners = argmax_set(scores.tolist())
    return memory.names.index(expected) in winners
