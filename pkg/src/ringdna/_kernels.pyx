# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled pairwise-distance kernels over 2-bit packed DNA words.

Each row of a packed array is one sequence, 32 nucleotides per uint64.  Two
symbols differ iff their 2-bit XOR is nonzero, so the Hamming distance is the
popcount of ``(x | x >> 1) & 0x5555...``.
"""

from cython.parallel cimport prange
from libc.stdint cimport uint64_t, int64_t, int32_t

import numpy as np

cdef extern from *:
    int popcount64 "__builtin_popcountll"(unsigned long long) nogil

cdef uint64_t LOW = 0x5555555555555555ULL
BIG = 1 << 30


cdef inline int _dist(const uint64_t* a, const uint64_t* b, Py_ssize_t w) noexcept nogil:
    cdef int d = 0
    cdef Py_ssize_t k
    cdef uint64_t x
    for k in range(w):
        x = a[k] ^ b[k]
        d += popcount64((x | (x >> 1)) & LOW)
    return d


cdef inline void _scan1(const uint64_t* b, uint64_t ai, Py_ssize_t j0, Py_ssize_t m,
                        int floor, int32_t* best_d, int64_t* best_j) noexcept nogil:
    # single-word fast path; chunks of 256 keep the inner loop branch-light
    cdef int best = best_d[0]
    cdef int64_t arg = best_j[0]
    cdef Py_ssize_t j, jc, end
    cdef int d
    cdef uint64_t x
    jc = j0
    while jc < m:
        end = jc + 256
        if end > m:
            end = m
        for j in range(jc, end):
            x = ai ^ b[j]
            d = popcount64((x | (x >> 1)) & LOW)
            if d != 0 and d < best:
                best = d
                arg = j
        if best <= floor:
            break
        jc = end
    best_d[0] = best
    best_j[0] = arg


def cross_minima(const uint64_t[:, ::1] a, const uint64_t[:, ::1] b,
                 Py_ssize_t start, Py_ssize_t stop, int floor, bint triangular,
                 int num_threads=0):
    """Per-row nonzero minimum distance from ``a[i]`` to rows of ``b``.

    For ``i`` in ``[start, stop)`` returns ``(dist, arg)`` arrays where
    ``dist[i - start]`` is the smallest nonzero Hamming distance between
    ``a[i]`` and any ``b[j]`` (``j > i`` when ``triangular``) and ``arg`` the
    first ``j`` attaining it.  Rows with no candidate get ``BIG`` and ``-1``.
    A row stops scanning once it reaches ``floor``.
    """
    cdef Py_ssize_t m = b.shape[0]
    cdef Py_ssize_t w = b.shape[1]
    cdef Py_ssize_t n_rows = stop - start
    if a.shape[1] != w:
        raise ValueError("word width mismatch")
    if start < 0 or stop > a.shape[0] or start > stop:
        raise ValueError("row range out of bounds")
    out_d_arr = np.full(n_rows, BIG, dtype=np.int32)
    out_j_arr = np.full(n_rows, -1, dtype=np.int64)
    cdef int32_t[::1] out_d = out_d_arr
    cdef int64_t[::1] out_j = out_j_arr
    cdef Py_ssize_t r, i, j, j0
    cdef int d, nt = num_threads
    if nt <= 0:
        nt = 1
    if m == 0 or n_rows == 0:
        return out_d_arr, out_j_arr
    cdef const uint64_t* pa = &a[0, 0]
    cdef const uint64_t* pb = &b[0, 0]
    for r in prange(n_rows, nogil=True, schedule="dynamic", chunksize=16, num_threads=nt):
        i = start + r
        j0 = i + 1 if triangular else 0
        if w == 1:
            _scan1(pb, pa[i], j0, m, floor, &out_d[r], &out_j[r])
        else:
            for j in range(j0, m):
                d = _dist(pa + i * w, pb + j * w, w)
                if d != 0 and d < out_d[r]:
                    out_d[r] = d
                    out_j[r] = j
                    if d <= floor:
                        break
    return out_d_arr, out_j_arr
