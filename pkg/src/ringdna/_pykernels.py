"""Pure numpy fallback for the compiled kernels in ``_kernels.pyx``.

Same signatures and results; used when the extension is not built or when
``RINGDNA_PURE=1`` is set.  ``floor`` must be a lower bound on every nonzero
distance, so the first ``j`` attaining the row minimum is the same whether or
not a row stops early; this version never stops early.
"""

from __future__ import annotations

import numpy as np

BIG = 1 << 30
LOW = np.uint64(0x5555555555555555)
ONE = np.uint64(1)
# pairs per broadcast block
_BLOCK = 1 << 22


def cross_minima(a, b, start, stop, floor, triangular, num_threads=0):
    a = np.ascontiguousarray(a, dtype=np.uint64)
    b = np.ascontiguousarray(b, dtype=np.uint64)
    if a.shape[1] != b.shape[1]:
        raise ValueError("word width mismatch")
    if start < 0 or stop > a.shape[0] or start > stop:
        raise ValueError("row range out of bounds")
    m = b.shape[0]
    n_rows = stop - start
    out_d = np.full(n_rows, BIG, dtype=np.int32)
    out_j = np.full(n_rows, -1, dtype=np.int64)
    if m == 0 or n_rows == 0:
        return out_d, out_j
    step = max(1, _BLOCK // m)
    cols = np.arange(m)
    for r0 in range(0, n_rows, step):
        r1 = min(n_rows, r0 + step)
        rows = np.arange(start + r0, start + r1)
        x = a[rows][:, None, :] ^ b[None, :, :]
        d = np.bitwise_count((x | (x >> ONE)) & LOW).sum(axis=2, dtype=np.int32)
        d[d == 0] = BIG
        if triangular:
            d[cols[None, :] <= rows[:, None]] = BIG
        j = d.argmin(axis=1)
        best = d[np.arange(len(rows)), j]
        out_d[r0:r1] = best
        out_j[r0:r1] = np.where(best < BIG, j, -1)
    return out_d, out_j
