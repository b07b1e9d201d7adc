"""Arithmetic in the ring R = Z4 + uZ4 + u^2 Z4 with u^3 = 1.

Elements are coefficient triples ``(a, b, c)`` standing for ``a + b*u + c*u^2``.
Each element also has a compact index ``16*a + 4*b + c`` in ``0..63``; the
index order is the lexicographic order on ``(a, b, c)`` and is the canonical
element order used throughout the package.  Addition and multiplication are
served from 64x64 lookup tables built once at import.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

import numpy as np

ORDER = 64
DIGITS = "0123"


class RingError(ValueError):
    """Raised for malformed ring elements or vectors."""


@dataclass(frozen=True, order=True, slots=True)
class RingElement:
    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        for name in ("a", "b", "c"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or not 0 <= v <= 3:
                raise RingError(f"coefficient {name}={v!r} is not in Z4")

    @classmethod
    def from_index(cls, idx: int) -> RingElement:
        return ELEMENTS[idx]

    @property
    def index(self) -> int:
        return 16 * self.a + 4 * self.b + self.c

    def __str__(self) -> str:
        return f"{self.a}{self.b}{self.c}"

    def __add__(self, other: RingElement) -> RingElement:
        return ELEMENTS[ADD[self.index, other.index]]

    def __sub__(self, other: RingElement) -> RingElement:
        return ELEMENTS[ADD[self.index, NEG[other.index]]]

    def __neg__(self) -> RingElement:
        return ELEMENTS[NEG[self.index]]

    def __mul__(self, other: RingElement) -> RingElement:
        return ELEMENTS[MUL[self.index, other.index]]


RingVector = tuple  # tuple[RingElement, ...]


class ElementClass(enum.Enum):
    UNIT = "unit"
    ZERO_DIVISOR = "zero_divisor"
    ZERO = "zero"


def _coeffs(idx: int) -> tuple[int, int, int]:
    return idx >> 4, (idx >> 2) & 3, idx & 3


def _index(a: int, b: int, c: int) -> int:
    return 16 * (a % 4) + 4 * (b % 4) + (c % 4)


def _poly_mul(x: tuple[int, int, int], y: tuple[int, int, int]) -> tuple[int, int, int]:
    # cyclic convolution: u^i * u^j = u^((i+j) mod 3)
    out = [0, 0, 0]
    for i in range(3):
        for j in range(3):
            out[(i + j) % 3] += x[i] * y[j]
    return out[0] % 4, out[1] % 4, out[2] % 4


def _build_tables():
    add = np.empty((ORDER, ORDER), dtype=np.uint8)
    mul = np.empty((ORDER, ORDER), dtype=np.uint8)
    for i in range(ORDER):
        x = _coeffs(i)
        for j in range(ORDER):
            y = _coeffs(j)
            add[i, j] = _index(x[0] + y[0], x[1] + y[1], x[2] + y[2])
            mul[i, j] = _index(*_poly_mul(x, y))
    neg = np.array([_index(*(-v for v in _coeffs(i))) for i in range(ORDER)], dtype=np.uint8)
    rev = np.array([_index(c, b, a) for a, b, c in map(_coeffs, range(ORDER))], dtype=np.uint8)
    sigma = np.array([_index(a, c, b) for a, b, c in map(_coeffs, range(ORDER))], dtype=np.uint8)
    for t in (add, mul, neg, rev, sigma):
        t.setflags(write=False)
    return add, mul, neg, rev, sigma


ADD, MUL, NEG, REV, SIGMA = _build_tables()
ELEMENTS: tuple[RingElement, ...] = tuple(RingElement(*_coeffs(i)) for i in range(ORDER))

ZERO = ELEMENTS[0]
ONE = ELEMENTS[_index(1, 0, 0)]
U = ELEMENTS[_index(0, 1, 0)]
U2 = ELEMENTS[_index(0, 0, 1)]
# 2 + 2u + 2u^2; adding it to an element complements its DNA image
COMPLEMENT_SHIFT = ELEMENTS[_index(2, 2, 2)]

_ONE_IDX = ONE.index
UNIT_MASK = np.array([bool((MUL[i] == _ONE_IDX).any()) for i in range(ORDER)])
UNIT_MASK.setflags(write=False)


def add(x: RingElement, y: RingElement) -> RingElement:
    return x + y


def mul(x: RingElement, y: RingElement) -> RingElement:
    return x * y


def classify(x: RingElement) -> ElementClass:
    """Unit if some ring element inverts ``x``, zero for 0, else zero divisor."""
    if x == ZERO:
        return ElementClass.ZERO
    return ElementClass.UNIT if UNIT_MASK[x.index] else ElementClass.ZERO_DIVISOR


def inverse(x: RingElement) -> RingElement:
    hits = np.flatnonzero(MUL[x.index] == _ONE_IDX)
    if hits.size == 0:
        raise RingError(f"{x} is not a unit")
    return ELEMENTS[int(hits[0])]


def units() -> list[RingElement]:
    return [ELEMENTS[i] for i in np.flatnonzero(UNIT_MASK)]


def element_reverse(x: RingElement) -> RingElement:
    """``a + bu + cu^2`` -> ``c + bu + au^2``."""
    return ELEMENTS[REV[x.index]]


def sigma(x: RingElement) -> RingElement:
    """The automorphism fixing Z4 and sending u to u^2."""
    return ELEMENTS[SIGMA[x.index]]


def ideal_elements(z: RingElement) -> frozenset[RingElement]:
    return frozenset(ELEMENTS[i] for i in np.unique(MUL[:, z.index]))


def parse_element(text: str) -> RingElement:
    if len(text) != 3:
        raise RingError(f"element {text!r} must have exactly 3 digits, got {len(text)}")
    for ch in text:
        if ch not in DIGITS:
            raise RingError(f"element {text!r}: digit {ch!r} is not in 0-3")
    return RingElement(int(text[0]), int(text[1]), int(text[2]))


def format_element(x: RingElement) -> str:
    return str(x)


def parse_vector(text: str | Iterable[str]) -> tuple[RingElement, ...]:
    tokens = text.split() if isinstance(text, str) else list(text)
    return tuple(parse_element(t) for t in tokens)


def format_vector(v: Iterable[RingElement]) -> str:
    return " ".join(str(x) for x in v)


def vector_indices(v: Iterable[RingElement]) -> np.ndarray:
    return np.fromiter((x.index for x in v), dtype=np.uint8)


def vector_from_indices(idx: Iterable[int]) -> tuple[RingElement, ...]:
    return tuple(ELEMENTS[int(i)] for i in idx)


def vec_add(x, y) -> tuple[RingElement, ...]:
    if len(x) != len(y):
        raise RingError(f"length mismatch: {len(x)} vs {len(y)}")
    return tuple(p + q for p, q in zip(x, y))


def vec_scale(a: RingElement, x) -> tuple[RingElement, ...]:
    return tuple(a * p for p in x)
