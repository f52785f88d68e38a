"""Sparse Clifford algebra over Cl_n with orthonormal generators b_i (b_i**2 = 1).

Basis blades are n-bit masks. Bit ``j`` of a mask stands for generator
``b_{j+1}``, so the literal ``c_00100`` (read left to right, first character is
``b_1``) is the mask ``1 << 2``, i.e. ``b_3``. Coefficients are exact Python
integers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

MAX_DIMENSION = 63
ORACLE_MAX_DIMENSION = 10


class DimensionError(ValueError):
    """Operands live in algebras of different (or unsupported) dimension."""


def _check_dimension(n: int) -> None:
    if not 1 <= n <= MAX_DIMENSION:
        raise DimensionError(f"dimension must be in 1..{MAX_DIMENSION}, got {n}")


def popcount(mask: int) -> int:
    return mask.bit_count()


def swap_count(left: int, right: int) -> int:
    """Number of index pairs k < l with right_k = 1 and left_l = 1.

    This is the sign exponent of the blade product ``c_left * c_right``.
    """
    d = 0
    left >>= 1
    while left:
        d += (left & right).bit_count()
        left >>= 1
    return d


def product_sign(left: int, right: int) -> int:
    return -1 if swap_count(left, right) & 1 else 1


def reversion_sign(mask: int) -> int:
    """(-1)**(g(g-1)/2) for a blade of grade g."""
    g = mask.bit_count()
    return -1 if (g * (g - 1) // 2) & 1 else 1


def mask_to_literal(mask: int, n: int) -> str:
    return "".join("1" if mask >> j & 1 else "0" for j in range(n))


def literal_to_mask(bits: str) -> int:
    if not bits or set(bits) - {"0", "1"}:
        raise ValueError(f"not a blade bit string: {bits!r}")
    return sum(1 << j for j, ch in enumerate(bits) if ch == "1")


@dataclass(frozen=True)
class BladeMask:
    bits: int
    width: int

    def __post_init__(self):
        _check_dimension(self.width)
        if not 0 <= self.bits < (1 << self.width):
            raise DimensionError(f"mask {self.bits:#x} does not fit in {self.width} bits")

    @classmethod
    def parse(cls, text: str) -> "BladeMask":
        text = text.strip()
        if text.startswith("c_"):
            text = text[2:]
        return cls(literal_to_mask(text), len(text))

    @property
    def grade(self) -> int:
        return self.bits.bit_count()

    def __str__(self) -> str:
        return "c_" + mask_to_literal(self.bits, self.width)


@dataclass(frozen=True)
class SignedBlade:
    sign: int
    mask: BladeMask

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")

    def __str__(self) -> str:
        return ("-" if self.sign < 0 else "+") + str(self.mask)


def _same_width(x: BladeMask, y: BladeMask) -> None:
    if x.width != y.width:
        raise DimensionError(f"blade widths differ: {x.width} vs {y.width}")


def sign_exponent(x: BladeMask, y: BladeMask) -> int:
    """Sign exponent D for the product c_x * c_y (x is the left operand)."""
    _same_width(x, y)
    return swap_count(x.bits, y.bits)


def blade_product(x: BladeMask, y: BladeMask) -> SignedBlade:
    _same_width(x, y)
    sign = -1 if swap_count(x.bits, y.bits) & 1 else 1
    return SignedBlade(sign, BladeMask(x.bits ^ y.bits, x.width))


_TERM_RE = re.compile(r"([+-]?)\s*(?:(\d+)\s*\*?\s*)?c_([01]+)")


class Multivector:
    """Immutable integer combination of basis blades.

    Terms keep insertion order for printing; equality ignores order. Zero
    coefficients are never stored.
    """

    __slots__ = ("dimension", "_terms")

    def __init__(self, dimension: int, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        _check_dimension(dimension)
        items = terms.items() if isinstance(terms, Mapping) else terms
        limit = 1 << dimension
        acc: dict[int, int] = {}
        for mask, coeff in items:
            if not 0 <= mask < limit:
                raise DimensionError(f"mask {mask:#x} does not fit in {dimension} bits")
            acc[mask] = acc.get(mask, 0) + int(coeff)
        self.dimension = dimension
        self._terms = {m: c for m, c in acc.items() if c}

    @classmethod
    def _wrap(cls, dimension: int, terms: dict[int, int]) -> "Multivector":
        # trusted constructor: terms already validated and zero-free
        mv = object.__new__(cls)
        mv.dimension = dimension
        mv._terms = terms
        return mv

    @classmethod
    def blade(cls, mask: int | BladeMask, dimension: int | None = None, coeff: int = 1) -> "Multivector":
        if isinstance(mask, BladeMask):
            dimension = mask.width
            mask = mask.bits
        if dimension is None:
            raise DimensionError("dimension required for a raw integer mask")
        return cls(dimension, {mask: coeff})

    @classmethod
    def scalar(cls, dimension: int, value: int = 1) -> "Multivector":
        return cls(dimension, {0: value})

    @classmethod
    def zero(cls, dimension: int) -> "Multivector":
        return cls(dimension)

    @classmethod
    def parse(cls, text: str, dimension: int | None = None) -> "Multivector":
        """Parse ``"c_00111 - c_10001"``, ``"-c_00110 + 2*c_11011"`` or ``"0"``."""
        body = text.strip()
        if body == "0":
            if dimension is None:
                raise DimensionError("dimension required to parse the zero multivector")
            return cls(dimension)
        pos = 0
        terms: list[tuple[int, int]] = []
        width = dimension
        for match in _TERM_RE.finditer(body):
            gap = body[pos:match.start()].strip()
            if gap:
                raise ValueError(f"unexpected text {gap!r} in {text!r}")
            sign, factor, bits = match.groups()
            if terms and not sign:
                raise ValueError(f"missing operator before term {match.group(0)!r}")
            if width is None:
                width = len(bits)
            elif len(bits) != width:
                raise DimensionError(f"term {bits} has width {len(bits)}, expected {width}")
            coeff = int(factor) if factor else 1
            terms.append((literal_to_mask(bits), -coeff if sign == "-" else coeff))
            pos = match.end()
        if body[pos:].strip() or not terms:
            raise ValueError(f"cannot parse multivector {text!r}")
        return cls(width, terms)

    @property
    def terms(self) -> Mapping[int, int]:
        return MappingProxyType(self._terms)

    def coefficient(self, mask: int) -> int:
        return self._terms.get(mask, 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self._terms.items())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.dimension == other.dimension and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.dimension, frozenset(self._terms.items())))

    def _check(self, other: "Multivector") -> None:
        if self.dimension != other.dimension:
            raise DimensionError(f"dimension mismatch: {self.dimension} vs {other.dimension}")

    def __add__(self, other: "Multivector") -> "Multivector":
        self._check(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Multivector._wrap(self.dimension, out)

    def __neg__(self) -> "Multivector":
        return Multivector._wrap(self.dimension, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "Multivector") -> "Multivector":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        if isinstance(other, int):
            if other == 0:
                return Multivector._wrap(self.dimension, {})
            return Multivector._wrap(self.dimension, {m: c * other for m, c in self._terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def reverse(self) -> "Multivector":
        return reversion(self)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (mask, coeff) in enumerate(self._terms.items()):
            mag = abs(coeff)
            body = ("" if mag == 1 else f"{mag}*") + "c_" + mask_to_literal(mask, self.dimension)
            if i == 0:
                parts.append(("-" if coeff < 0 else "") + body)
            else:
                parts.append(("- " if coeff < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Multivector({self.dimension}, {str(self)!r})"


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    a._check(b)
    out: dict[int, int] = {}
    get = out.get
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            c = -ca * cb if swap_count(ma, mb) & 1 else ca * cb
            m = ma ^ mb
            out[m] = get(m, 0) + c
    return Multivector._wrap(a.dimension, {m: c for m, c in out.items() if c})


def reversion(a: Multivector) -> Multivector:
    return Multivector._wrap(a.dimension, {m: c * reversion_sign(m) for m, c in a._terms.items()})


def inner_product(a: Multivector, b: Multivector, definite: bool = False) -> int:
    """Linear extension of the blade inner product.

    Equal basis blades of grade g give (-1)**(g(g-1)/2); distinct basis blades
    are orthogonal. With ``definite`` every equal blade pair gives +1 instead,
    i.e. the plain dot product of coefficient vectors.
    """
    a._check(b)
    x, y = (a._terms, b._terms) if len(a._terms) <= len(b._terms) else (b._terms, a._terms)
    total = 0
    for m, c in x.items():
        d = y.get(m)
        if d is not None:
            total += c * d if definite else c * d * reversion_sign(m)
    return total


def _rewrite_blade_pair(x: int, y: int) -> tuple[int, int]:
    seq = [j for j in range(x.bit_length()) if x >> j & 1]
    seq += [j for j in range(y.bit_length()) if y >> j & 1]
    swaps = 0
    for end in range(len(seq) - 1, 0, -1):
        for i in range(end):
            if seq[i] > seq[i + 1]:
                seq[i], seq[i + 1] = seq[i + 1], seq[i]
                swaps += 1
    mask = 0
    i = 0
    while i < len(seq):
        if i + 1 < len(seq) and seq[i] == seq[i + 1]:
            i += 2  # b_i b_i = 1
        else:
            mask |= 1 << seq[i]
            i += 1
    return (-1 if swaps & 1 else 1), mask


def dense_oracle_product(a: Multivector, b: Multivector) -> Multivector:
    """Reference product by literal generator rewriting (bubble sort with sign flips).

    Independent of :func:`swap_count`; used only to cross-check the fast path.
    """
    a._check(b)
    n = a.dimension
    if n > ORACLE_MAX_DIMENSION:
        raise DimensionError(f"oracle limited to n <= {ORACLE_MAX_DIMENSION}, got {n}")
    dense = [0] * (1 << n)
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            sign, m = _rewrite_blade_pair(ma, mb)
            dense[m] += sign * ca * cb
    return Multivector(n, ((m, c) for m, c in enumerate(dense) if c))
