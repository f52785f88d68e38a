"""Cartan (Pauli tensor product) matrix representation of Cl_n and signature measures.

Every basis blade maps to a generalized permutation matrix. Internally such a
matrix is kept as a Pauli string ``(xor, parity, phase)`` meaning::

    M[r, r ^ xor] = i**phase * (-1)**popcount(r & parity)

with row bits ordered so that the leftmost tensor factor is the most
significant bit. Dense matrices are complex128 arrays holding Gaussian
integers; all values stay far below 2**53, so float arithmetic on them is exact.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce

import numpy as np

from .algebra import DimensionError, Multivector, SignedBlade

FULL_MAX_DIMENSION = 12

SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)
UNIT = np.eye(2, dtype=complex)

_PHASES = np.array([1, 1j, -1, -1j], dtype=complex)


class Form(enum.Enum):
    FULL = "full"
    REDUCED = "reduced"


def half_up(n: int) -> int:
    return (n + 1) // 2


def factor_count(n: int, form: Form) -> int:
    return n if form is Form.FULL else half_up(n) + 1


def box_side(n: int) -> int:
    """Side B of one diagonal box; the reduced matrix has side 2B."""
    return 1 << half_up(n)


def _generator_layout(i: int, n: int, form: Form) -> tuple[int, int]:
    """(number of leading sigma_1 factors, total factor count) for b_i."""
    if not 1 <= i <= n:
        raise IndexError(f"generator index {i} outside 1..{n}")
    k = (i + 1) // 2
    lead = n - k if form is Form.FULL else half_up(n) - k + 1
    return lead, factor_count(n, form)


def generator_factors(i: int, n: int, form: Form = Form.FULL) -> list[np.ndarray]:
    lead, m = _generator_layout(i, n, form)
    middle = SIGMA3 if i % 2 else SIGMA2
    return [SIGMA1] * lead + [middle] + [UNIT] * (m - lead - 1)


def _check_full(n: int, form: Form) -> None:
    if form is Form.FULL and n > FULL_MAX_DIMENSION:
        raise DimensionError(f"full form limited to n <= {FULL_MAX_DIMENSION}")


def generator_matrix(i: int, n: int, form: Form = Form.FULL) -> np.ndarray:
    """Kronecker product of Pauli/unit factors for generator b_i."""
    _check_full(n, form)
    return reduce(np.kron, generator_factors(i, n, form))


@lru_cache(maxsize=None)
def _generator_pauli(i: int, n: int, form: Form) -> tuple[int, int, int]:
    lead, m = _generator_layout(i, n, form)
    xor = 0
    for j in range(lead):
        xor |= 1 << (m - 1 - j)
    bit = 1 << (m - 1 - lead)
    if i % 2:  # sigma_3
        return xor, bit, 0
    return xor | bit, bit, 3  # sigma_2 = -i at r_p=0, +i at r_p=1


def _compose(a: tuple[int, int, int], b: tuple[int, int, int]) -> tuple[int, int, int]:
    xa, qa, ea = a
    xb, qb, eb = b
    return xa ^ xb, qa ^ qb, (ea + eb + 2 * (xa & qb).bit_count()) & 3


@lru_cache(maxsize=1 << 16)
def blade_pauli(mask: int, n: int, form: Form = Form.REDUCED) -> tuple[int, int, int]:
    """Pauli string of the blade with the given mask (generators in ascending order)."""
    rep = (0, 0, 0)
    j = 0
    m = mask
    while m:
        if m & 1:
            rep = _compose(rep, _generator_pauli(j + 1, n, form))
        m >>= 1
        j += 1
    if j > n:
        raise DimensionError(f"mask {mask:#x} does not fit in {n} bits")
    return rep


def _pauli_dense(rep: tuple[int, int, int], side: int, coeff: complex = 1) -> np.ndarray:
    xor, parity, phase = rep
    rows = np.arange(side, dtype=np.int64)
    out = np.zeros((side, side), dtype=complex)
    signs = 1 - 2 * (np.bitwise_count(rows & parity) & 1).astype(np.int64)
    out[rows, rows ^ xor] = coeff * _PHASES[phase] * signs
    return out


def blade_matrix(blade: SignedBlade | int, n: int, form: Form = Form.FULL, sign: int = 1) -> np.ndarray:
    """Matrix of a signed basis blade (``SignedBlade`` or raw mask plus sign)."""
    _check_full(n, form)
    if isinstance(blade, SignedBlade):
        if blade.mask.width != n:
            raise DimensionError(f"blade width {blade.mask.width} != {n}")
        sign, mask = blade.sign, blade.mask.bits
    else:
        mask = blade
    return _pauli_dense(blade_pauli(mask, n, form), 1 << factor_count(n, form), sign)


def multivector_matrix(a: Multivector, n: int | None = None, form: Form = Form.FULL) -> np.ndarray:
    n = a.dimension if n is None else n
    if n != a.dimension:
        raise DimensionError(f"multivector dimension {a.dimension} != {n}")
    _check_full(n, form)
    side = 1 << factor_count(n, form)
    out = np.zeros((side, side), dtype=complex)
    rows = np.arange(side, dtype=np.int64)
    for mask, coeff in a:
        xor, parity, phase = blade_pauli(mask, n, form)
        signs = 1 - 2 * (np.bitwise_count(rows & parity) & 1).astype(np.int64)
        out[rows, rows ^ xor] += coeff * _PHASES[phase] * signs
    return out


def matrix_triplets(matrix: np.ndarray) -> str:
    """Sparse ``row col re im`` dump of the nonzero entries, one per line."""
    rows, cols = np.nonzero(matrix)
    lines = []
    for r, c in zip(rows.tolist(), cols.tolist()):
        v = matrix[r, c]
        lines.append(f"{r} {c} {int(v.real)} {int(v.imag)}")
    return "\n".join(lines)


@dataclass(frozen=True)
class Signature:
    """Sparse rows x cols Gaussian-integer array grouped by column offset.

    ``groups[x][r]`` is the entry at ``(r, r ^ x)``. Each basis blade fills
    exactly one group, so blades only interfere when their offsets coincide.
    """

    shape: tuple[int, int]
    groups: dict[int, np.ndarray] = field(default_factory=dict)

    @property
    def size(self) -> int:
        return self.shape[0] * self.shape[1]

    @classmethod
    def from_dense(cls, array) -> "Signature":
        arr = np.asarray(array, dtype=complex)
        if arr.ndim != 2:
            raise ValueError("signature must be two-dimensional")
        rows, cols = arr.shape
        groups: dict[int, np.ndarray] = {}
        for r, c in zip(*np.nonzero(arr)):
            x = int(r) ^ int(c)
            groups.setdefault(x, np.zeros(rows, dtype=complex))[r] = arr[r, c]
        return cls((rows, cols), groups)

    def to_dense(self) -> np.ndarray:
        rows, cols = self.shape
        out = np.zeros(self.shape, dtype=complex)
        r = np.arange(rows)
        for x, vals in self.groups.items():
            nz = vals != 0
            out[r[nz], r[nz] ^ x] = vals[nz]
        return out

    def nonzero_count(self) -> int:
        return int(sum(np.count_nonzero(v) for v in self.groups.values()))


def signature(a: Multivector, n: int | None = None) -> Signature:
    """Top B rows (all 2B columns) of the reduced Cartan matrix of ``a``."""
    n = a.dimension if n is None else n
    if n != a.dimension:
        raise DimensionError(f"multivector dimension {a.dimension} != {n}")
    b = box_side(n)
    rows = np.arange(b, dtype=np.int64)
    acc: dict[int, np.ndarray] = {}
    for mask, coeff in a:
        xor, parity, phase = blade_pauli(mask, n, Form.REDUCED)
        signs = 1 - 2 * (np.bitwise_count(rows & parity) & 1).astype(np.int64)
        vals = (coeff * _PHASES[phase]) * signs
        if xor in acc:
            acc[xor] = acc[xor] + vals
        else:
            acc[xor] = vals
    groups = {x: v for x, v in acc.items() if np.any(v != 0)}
    return Signature((b, 2 * b), groups)


def _same_shape(x: Signature, y: Signature) -> None:
    if x.shape != y.shape:
        raise ValueError(f"signature shapes differ: {x.shape} vs {y.shape}")


def hamming_measure(x: Signature, y: Signature, count_blank: bool = True) -> Fraction | float:
    """Common-to-uncommon ratio C/U of nonzero support; ``math.inf`` when U = 0.

    By default positions where both entries vanish count as uncommon, so the
    ratio only grows with C. ``count_blank=False`` restricts U to positions
    where exactly one entry is nonzero.
    """
    _same_shape(x, y)
    common = 0
    for off, vx in x.groups.items():
        vy = y.groups.get(off)
        if vy is not None:
            common += int(np.count_nonzero((vx != 0) & (vy != 0)))
    if count_blank:
        uncommon = x.size - common
    else:
        uncommon = x.nonzero_count() + y.nonzero_count() - 2 * common
    if uncommon == 0:
        return math.inf
    return Fraction(common, uncommon)


def euclidean_measure(x: Signature, y: Signature) -> float:
    """1 / sum sqrt(| |x_ij|^2 - |y_ij|^2 |); ``math.inf`` when the sum is zero."""
    _same_shape(x, y)
    parts = []
    for off, vx in x.groups.items():
        vy = y.groups.get(off)
        if vy is None:
            parts.append(np.abs(vx))
        else:
            d = np.abs(np.rint(vx.real**2 + vx.imag**2 - vy.real**2 - vy.imag**2))
            parts.append(np.sqrt(d))
    for off, vy in y.groups.items():
        if off not in x.groups:
            parts.append(np.abs(vy))
    total = math.fsum(np.concatenate(parts).tolist()) if parts else 0.0
    if total == 0:
        return math.inf
    return 1.0 / total
