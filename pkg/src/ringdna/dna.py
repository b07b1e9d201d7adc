"""DNA alphabet rules and the scalar measures used by the constraint checks.

Sequences are plain ``str`` over ``ACGT``.  For bulk work the same data is held
as ``uint8`` arrays with A=0, C=1, G=2, T=3, in which case the Watson-Crick
complement is ``3 - x``.
"""

from __future__ import annotations

import itertools

import numpy as np

ALPHABET = "ACGT"
_COMPLEMENT = str.maketrans("ACGT", "TGCA")
_CODE = {ch: i for i, ch in enumerate(ALPHABET)}
_LUT = np.full(256, 255, dtype=np.uint8)
for _ch, _i in _CODE.items():
    _LUT[ord(_ch)] = _i
    _LUT[ord(_ch.lower())] = _i


class DnaError(ValueError):
    """Raised for symbols outside ``ACGT`` or mismatched lengths."""


def normalize(seq: str) -> str:
    """Uppercase ``seq`` and reject anything outside the four-letter alphabet."""
    up = seq.upper()
    for pos, ch in enumerate(up):
        if ch not in _CODE:
            raise DnaError(f"invalid nucleotide {seq[pos]!r} at position {pos + 1}")
    return up


def complement(s: str) -> str:
    return s.translate(_COMPLEMENT)


def reverse(s: str) -> str:
    return s[::-1]


def reverse_complement(s: str) -> str:
    return s.translate(_COMPLEMENT)[::-1]


def gc_content(s: str) -> int:
    return s.count("G") + s.count("C")


def max_homopolymer_run(s: str) -> int:
    return max((sum(1 for _ in grp) for _, grp in itertools.groupby(s)), default=0)


def hamming(s1: str, s2: str) -> int:
    if len(s1) != len(s2):
        raise DnaError(f"length mismatch: {len(s1)} vs {len(s2)}")
    return sum(a != b for a, b in zip(s1, s2))


# -- array forms -------------------------------------------------------------


def encode(seqs: list[str] | str) -> np.ndarray:
    """Map sequences (all the same length) to a ``(M, L)`` uint8 code array."""
    if isinstance(seqs, str):
        seqs = [seqs]
    if not seqs:
        return np.zeros((0, 0), dtype=np.uint8)
    length = len(seqs[0])
    if any(len(s) != length for s in seqs):
        raise DnaError("sequences have mixed lengths")
    raw = np.frombuffer("".join(seqs).encode("ascii"), dtype=np.uint8)
    codes = _LUT[raw]
    if (codes == 255).any():
        bad = int(np.flatnonzero(codes == 255)[0])
        raise DnaError(f"invalid nucleotide {chr(raw[bad])!r} in sequence {bad // max(length, 1)}")
    return codes.reshape(len(seqs), length)


def decode(codes: np.ndarray) -> list[str]:
    letters = np.frombuffer(ALPHABET.encode("ascii"), dtype=np.uint8)[codes]
    return [row.tobytes().decode("ascii") for row in np.atleast_2d(letters)]


def pack(codes: np.ndarray) -> np.ndarray:
    """Pack 2-bit nucleotide codes, 32 per ``uint64`` word, into ``(M, W)``.

    Unused high positions of the last word are zero, so they never count
    towards a Hamming distance.
    """
    codes = np.atleast_2d(np.asarray(codes, dtype=np.uint64))
    m, length = codes.shape
    words = max(1, -(-length // 32))
    out = np.zeros((m, words), dtype=np.uint64)
    for pos in range(length):
        w, off = divmod(pos, 32)
        out[:, w] |= codes[:, pos] << np.uint64(2 * off)
    return out
