"""Gau distance on ring elements and vectors, and code minimum distance.

Each element sits in a 4x4x4 box at position ``(i, j, k)``; the distance
between positions ``(i, j, k)`` and ``(i', j', k')`` is

    min(1, (i + 3i') mod 4) + min(1, (j + 3j') mod 4) + min(1, (k + 3k') mod 4)

We place an element at the nucleotide codes of its DNA triple, one axis per
position.  Under that placement the distance between two elements equals the
Hamming distance between their triples, which is what makes the map into DNA
distance-preserving.  The test-suite checks the formula table against
``hamming(psi(x), psi(y))`` for all 64^2 pairs.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import dna, kernels, psi_map
from .ring import ELEMENTS, RingElement, RingError

log = logging.getLogger(__name__)


def box_position(x: RingElement) -> tuple[int, int, int]:
    i, j, k = psi_map.CODES[x.index]
    return int(i), int(j), int(k)


def _axis(t: int, t2: int) -> int:
    return min(1, (t + 3 * t2) % 4)


def _build_table() -> np.ndarray:
    table = np.empty((64, 64), dtype=np.uint8)
    pos = [box_position(x) for x in ELEMENTS]
    for p in range(64):
        for q in range(64):
            table[p, q] = sum(_axis(s, t) for s, t in zip(pos[p], pos[q]))
    table.setflags(write=False)
    return table


TABLE = _build_table()


def gau_element(x: RingElement, y: RingElement) -> int:
    return int(TABLE[x.index, y.index])


def gau_vec(x: Sequence[RingElement], y: Sequence[RingElement]) -> int:
    if len(x) != len(y):
        raise RingError(f"length mismatch: {len(x)} vs {len(y)}")
    return sum(int(TABLE[p.index, q.index]) for p, q in zip(x, y))


def gau_words(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Row-wise Gau distance between ``(M, n)`` element-index arrays."""
    return TABLE[np.atleast_2d(x), np.atleast_2d(y)].sum(axis=1, dtype=np.int64)


@dataclass(frozen=True)
class DistanceResult:
    value: int
    exact: bool
    witness: tuple[int, int] | None  # codeword indices of a pair attaining value
    pairs: int  # pairs examined (sampled) or total unordered pairs (exact)
    method: str = field(default="exhaustive")

    @property
    def label(self) -> str:
        return "exact" if self.exact else "upper bound"


def as_words(code) -> np.ndarray:
    """Accept a SpanCode, an index array or a sequence of RingVectors."""
    words = getattr(code, "words", None)
    if words is not None:
        return words
    if isinstance(code, np.ndarray):
        return np.atleast_2d(code).astype(np.uint8, copy=False)
    rows = [[x.index for x in v] for v in code]
    return np.array(rows, dtype=np.uint8).reshape(len(rows), -1)


def packed_image(words: np.ndarray) -> np.ndarray:
    return dna.pack(psi_map.image_codes(words))


def min_distance_packed(packed: np.ndarray, mode: str = "exact", *, pairs: int | None = None,
                        seed: int = 0, floor: int = 1, block_rows: int = 4096,
                        threads: int = 0, backend: str | None = None) -> DistanceResult:
    """Minimum Hamming distance of packed DNA rows (shared by both metrics)."""
    m = packed.shape[0]
    if m < 2:
        raise ValueError(f"minimum distance needs at least 2 codewords, got {m}")
    total = m * (m - 1) // 2
    if mode == "exact":
        sweep = kernels.min_pairwise(packed, floor=floor, block_rows=block_rows,
                                     threads=threads, backend=backend)
        if sweep.distance is None:
            raise ValueError("code has repeated codewords only")
        return DistanceResult(sweep.distance, True, sweep.witness, total, "exhaustive")
    if mode in ("sample", "sampled"):
        if not pairs or pairs < 1:
            raise ValueError("sampled mode needs a positive pair count")
        rng = np.random.default_rng(seed)
        i = rng.integers(0, m, size=pairs)
        j = rng.integers(0, m - 1, size=pairs)
        j = j + (j >= i)  # uniform over j != i
        d = kernels.pair_distances(packed, i, j)
        r = int(d.argmin())
        lo, hi = sorted((int(i[r]), int(j[r])))
        return DistanceResult(int(d[r]), False, (lo, hi), pairs, "sampled")
    raise ValueError(f"unknown distance mode {mode!r}")


def min_gau_distance(code, mode: str = "exact", **kw) -> DistanceResult:
    """Minimum Gau distance over distinct codeword pairs.

    Exact mode sweeps every unordered pair and stops early only if the floor
    of 1 is reached.  Sampled mode returns the minimum over ``pairs`` random
    pairs drawn from ``seed``; that is an upper bound and is flagged as such.
    The distance is never reduced to a minimum weight: Gau distance is not
    translation invariant.
    """
    words = as_words(code)
    return min_distance_packed(packed_image(words), mode, **kw)
