"""Pairwise minimum-distance sweeps with a compiled or pure-numpy backend.

The compiled extension ``ringdna._kernels`` is used when it imports; set
``RINGDNA_PURE=1`` to force the numpy fallback.  Both expose
``cross_minima`` with identical results.

Sweeps run over row blocks.  Every row's minimum is computed independently,
and the reduction picks the smallest distance and, among ties, the smallest
row index, so the answer and witness do not depend on the block size or the
thread count.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass

import numpy as np

from . import _pykernels

log = logging.getLogger(__name__)

if os.environ.get("RINGDNA_PURE", "") not in ("", "0"):
    _compiled = None
else:
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

BIG = _pykernels.BIG
BACKENDS = {"python": _pykernels}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled
DEFAULT_BACKEND = "compiled" if _compiled is not None else "python"


def backend_name() -> str:
    return DEFAULT_BACKEND


@dataclass(frozen=True)
class Sweep:
    distance: int | None  # None when there was no candidate pair
    witness: tuple[int, int] | None
    rows_scanned: int


def _sweep(a, b, triangular, floor, block_rows, threads, backend) -> Sweep:
    impl = BACKENDS[backend or DEFAULT_BACKEND]
    a = np.ascontiguousarray(a, dtype=np.uint64)
    b = np.ascontiguousarray(b, dtype=np.uint64)
    best, witness = BIG, None
    n = a.shape[0]
    start = 0
    while start < n:
        stop = min(n, start + block_rows)
        d, j = impl.cross_minima(a, b, start, stop, floor, triangular, threads)
        r = int(d.argmin()) if d.size else 0
        if d.size and d[r] < best:
            best, witness = int(d[r]), (start + r, int(j[r]))
        start = stop
        if best <= floor:
            break
    if witness is None:
        return Sweep(None, None, start)
    return Sweep(best, witness, start)


def min_pairwise(packed: np.ndarray, *, floor: int = 1, block_rows: int = 4096,
                 threads: int = 0, backend: str | None = None) -> Sweep:
    """Smallest nonzero distance over unordered pairs ``i < j`` of ``packed``."""
    return _sweep(packed, packed, True, floor, block_rows, threads, backend)


def min_cross(a: np.ndarray, b: np.ndarray, *, floor: int = 1, block_rows: int = 4096,
              threads: int = 0, backend: str | None = None) -> Sweep:
    """Smallest nonzero distance from any row of ``a`` to any row of ``b``."""
    return _sweep(a, b, False, floor, block_rows, threads, backend)


def pair_distances(packed: np.ndarray, i: np.ndarray, j: np.ndarray) -> np.ndarray:
    x = packed[i] ^ packed[j]
    return np.bitwise_count((x | (x >> _pykernels.ONE)) & _pykernels.LOW).sum(axis=1, dtype=np.int64)
