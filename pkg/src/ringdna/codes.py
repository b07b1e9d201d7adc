"""Generator matrices over R, the Reed-Muller type doubling construction, spans.

Codewords are stored as ``(M, n)`` uint8 arrays of element indices, sorted
lexicographically by coordinate.  That order fixes FASTA record numbers and
report contents across runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from . import gau, psi_map
from .ring import (
    ADD,
    COMPLEMENT_SHIFT,
    MUL,
    NEG,
    U2,
    ZERO,
    RingElement,
    RingError,
    format_vector,
    parse_vector,
    vector_from_indices,
    vector_indices,
)

DEFAULT_LIMIT = 1 << 24


class SpanTooLarge(RuntimeError):
    def __init__(self, bound: int, limit: int):
        super().__init__(
            f"span may hold up to {bound} codewords, above the limit of {limit}; "
            "raise the limit or use sampled/streaming analysis"
        )
        self.bound = bound
        self.limit = limit


@dataclass(frozen=True)
class GeneratorMatrix:
    rows: np.ndarray  # (k, n) element indices
    provenance: tuple[int, RingElement] | None = None  # (m, z) for Reed-Muller type

    def __post_init__(self):
        rows = np.atleast_2d(np.asarray(self.rows, dtype=np.uint8))
        if rows.shape[0] < 1 or rows.shape[1] < 1:
            raise RingError("generator matrix needs at least one row and one column")
        if rows.max(initial=0) > 63:
            raise RingError("generator matrix entries must be element indices 0..63")
        rows.setflags(write=False)
        object.__setattr__(self, "rows", rows)
        if self.provenance is not None:
            m, _ = self.provenance
            assert rows.shape == (m + 1, 2 ** m)

    @property
    def k(self) -> int:
        return self.rows.shape[0]

    @property
    def n(self) -> int:
        return self.rows.shape[1]

    def row_vectors(self) -> list[tuple[RingElement, ...]]:
        return [vector_from_indices(r) for r in self.rows]

    @classmethod
    def from_vectors(cls, rows: Sequence[Sequence[RingElement]]) -> GeneratorMatrix:
        lengths = {len(r) for r in rows}
        if len(lengths) > 1:
            raise RingError(f"rows have different lengths: {sorted(lengths)}")
        return cls(np.array([vector_indices(r) for r in rows], dtype=np.uint8))

    @classmethod
    def from_text(cls, text: str) -> GeneratorMatrix:
        rows = []
        for lineno, line in enumerate(text.splitlines(), 1):
            if not line.strip():
                continue
            try:
                rows.append(parse_vector(line))
            except RingError as exc:
                raise RingError(f"line {lineno}: {exc}") from None
        if not rows:
            raise RingError("matrix file has no rows")
        return cls.from_vectors(rows)

    def to_text(self) -> str:
        return "".join(format_vector(r) + "\n" for r in self.row_vectors())


def rm_generator(m: int, z: RingElement) -> GeneratorMatrix:
    """Generator of the length-2^m Reed-Muller type code with parameter ``z``.

    Starts from ``[[z, z], [0, z]]`` and doubles: ``G' = [[G, G], [0..0, z..z]]``.
    """
    if m < 1:
        raise RingError(f"m must be >= 1, got {m}")
    if z == ZERO:
        raise RingError("z must be nonzero")
    zi = z.index
    g = np.array([[zi, zi], [0, zi]], dtype=np.uint8)
    for i in range(1, m):
        width = 2 ** i
        tail = np.concatenate([np.zeros(width, np.uint8), np.full(width, zi, np.uint8)])
        g = np.vstack([np.hstack([g, g]), tail])
    return GeneratorMatrix(g, (m, z))


def _keys(words: np.ndarray) -> np.ndarray | None:
    """Order-preserving integer keys (first coordinate most significant)."""
    n = words.shape[1]
    if 6 * n > 64:
        return None
    keys = np.zeros(words.shape[0], dtype=np.uint64)
    for t in range(n):
        keys = (keys << np.uint64(6)) | words[:, t].astype(np.uint64)
    return keys


def _unique_rows(words: np.ndarray) -> np.ndarray:
    keys = _keys(words)
    if keys is None:
        return np.unique(words, axis=0)
    _, first = np.unique(keys, return_index=True)
    return words[first]


def multiples(row: np.ndarray) -> np.ndarray:
    """All distinct ``a * row`` for ``a`` in R, as a sorted ``(q, n)`` array."""
    return _unique_rows(MUL[:, row].astype(np.uint8))


@dataclass(frozen=True, eq=False)
class SpanCode:
    words: np.ndarray  # (M, n) sorted, deduplicated
    source: GeneratorMatrix | None = None

    def __len__(self) -> int:
        return self.words.shape[0]

    @property
    def n(self) -> int:
        return self.words.shape[1]

    def __iter__(self) -> Iterator[tuple[RingElement, ...]]:
        for row in self.words:
            yield vector_from_indices(row)

    def __contains__(self, v) -> bool:
        return contains(self, v)

    @cached_property
    def _sorted_keys(self) -> np.ndarray | None:
        return _keys(self.words)

    @cached_property
    def _byte_set(self) -> frozenset[bytes]:
        return frozenset(r.tobytes() for r in self.words)

    def contains_words(self, rows: np.ndarray) -> np.ndarray:
        """Vectorised membership for an ``(R, n)`` index array."""
        rows = np.atleast_2d(np.asarray(rows, dtype=np.uint8))
        if rows.shape[1] != self.n:
            raise RingError(f"length mismatch: {rows.shape[1]} vs code length {self.n}")
        keys = self._sorted_keys
        if keys is None:
            index = self._byte_set
            return np.array([r.tobytes() in index for r in rows], dtype=bool)
        q = _keys(rows)
        pos = np.minimum(np.searchsorted(keys, q), len(keys) - 1)
        return keys[pos] == q


def span_bound(g: GeneratorMatrix) -> int:
    return math.prod(len(multiples(r)) for r in g.rows)


def span(g: GeneratorMatrix, limit: int = DEFAULT_LIMIT) -> SpanCode:
    """Exact row span over R.

    Built as ``S_0 = {0}``, ``S_i = S_{i-1} + R*g_i`` with deduplication after
    each step.  The product of the row orbit sizes bounds every intermediate
    set, and is checked against ``limit`` before any work is done.
    """
    orbits = [multiples(r) for r in g.rows]
    bound = math.prod(len(o) for o in orbits)
    if bound > limit:
        raise SpanTooLarge(bound, limit)
    words = np.zeros((1, g.n), dtype=np.uint8)
    for orbit in orbits:
        words = ADD[words[:, None, :], orbit[None, :, :]].reshape(-1, g.n)
        words = _unique_rows(words)
    words.setflags(write=False)
    return SpanCode(words, g)


def contains(code: SpanCode, v: Sequence[RingElement]) -> bool:
    if len(v) != code.n:
        raise RingError(f"length mismatch: {len(v)} vs code length {code.n}")
    return bool(code.contains_words(vector_indices(v)[None, :])[0])


@dataclass(frozen=True)
class ClosureResult:
    ok: bool
    failing_rows: list[int]  # 0-based indices of rows whose reverse is outside the span

    def __bool__(self) -> bool:
        return self.ok


def check_reverse_closure(g: GeneratorMatrix, code: SpanCode | None = None,
                          limit: int = DEFAULT_LIMIT) -> ClosureResult:
    """Every row's ring reverse lies in the span (so the DNA image is reverse-closed)."""
    code = code if code is not None else span(g, limit)
    inside = code.contains_words(psi_map.reverse_words(g.rows))
    failing = [int(i) for i in np.flatnonzero(~inside)]
    return ClosureResult(not failing, failing)


def check_complement_condition(g: GeneratorMatrix, code: SpanCode | None = None,
                               limit: int = DEFAULT_LIMIT) -> bool:
    """The all-(2+2u+2u^2) vector lies in the span."""
    code = code if code is not None else span(g, limit)
    return bool(code.contains_words(np.full((1, g.n), COMPLEMENT_SHIFT.index, np.uint8))[0])


def reverse_identity_diagnostic(g: GeneratorMatrix) -> dict[str, list[bool]]:
    """Per-row checks of two closed forms for the reverse of an RM-type row.

    ``literal``: ``g_1^r = g_1`` and ``g_i^r = g_1 - g_i`` for ``i >= 2``.
    ``u2_scaled``: the same right-hand sides multiplied by u^2.
    Diagnostic only; closure decisions use span membership.
    """
    rev = psi_map.reverse_words(g.rows)
    first = g.rows[0]
    rhs = np.vstack([first] + [ADD[first, NEG[r]] for r in g.rows[1:]])
    scaled = MUL[U2.index, rhs]
    return {
        "literal": [bool((a == b).all()) for a, b in zip(rev, rhs)],
        "u2_scaled": [bool((a == b).all()) for a, b in zip(rev, scaled)],
    }


def distance_witness(g: GeneratorMatrix) -> tuple[np.ndarray, np.ndarray, int]:
    """The zero codeword and the last RM row ``0..0 || z..z`` with their distance.

    For the doubling construction this pair is at Gau distance
    ``2^(m-1) * d_G(0, z)``, an upper bound on the minimum distance.
    """
    zero = np.zeros(g.n, dtype=np.uint8)
    last = g.rows[-1]
    return zero, last, int(gau.gau_words(zero, last)[0])


@dataclass(frozen=True)
class CodeParams:
    n_ring: int
    n_dna: int
    size: int
    d_gau: int
    d_hamming: int
    distance: gau.DistanceResult


def table_min_distance(words: np.ndarray) -> int:
    """Minimum Gau distance by direct table lookups, for cross-checking small codes."""
    best = None
    for i in range(len(words) - 1):
        d = gau.TABLE[words[i], words[i + 1:]].sum(axis=1, dtype=np.int64)
        cand = int(d.min())
        best = cand if best is None else min(best, cand)
    return best


def code_params(g: GeneratorMatrix, mode: str = "exact", *, code: SpanCode | None = None,
                limit: int = DEFAULT_LIMIT, verify_limit: int = 1024, **kw) -> CodeParams:
    """Length, size and minimum distance of ``<g>`` and its DNA image.

    The minimum Hamming distance of the DNA image is computed by the pairwise
    kernel.  In exact mode on codes with at most ``verify_limit`` words the
    minimum Gau distance is recomputed from the element table and must agree.
    """
    code = code if code is not None else span(g, limit)
    result = gau.min_gau_distance(code, mode, **kw)
    d_gau = result.value
    if mode == "exact" and len(code) <= verify_limit:
        d_gau = table_min_distance(code.words)
        if d_gau != result.value:
            raise AssertionError(f"Gau distance {d_gau} != DNA Hamming distance {result.value}")
    return CodeParams(g.n, 3 * g.n, len(code), d_gau, result.value, result)
