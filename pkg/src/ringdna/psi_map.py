"""The bijection between ring elements and DNA triples, and its vector forms.

The table below is the single source of truth for the package.  It is checked
on import: it must be a bijection onto all 64 triples, adding 2+2u+2u^2 must
complement the image, and reversing an element's coefficients must reverse
the image.  A table that fails any check raises at import time.
"""

from __future__ import annotations

import itertools
from typing import Sequence

import numpy as np

from . import dna
from .ring import (
    ADD,
    COMPLEMENT_SHIFT,
    ELEMENTS,
    REV,
    RingElement,
    RingError,
    parse_element,
)

# element "abc" (a + bu + cu^2) -> triple
TABLE = {
    "000": "GAG", "032": "AGT", "121": "TTT", "210": "TCA", "203": "TAG", "331": "GGC",
    "010": "ACA", "003": "AAG", "131": "CGC", "220": "TCG", "213": "TTA", "302": "GAT",
    "020": "GTG", "013": "ACG", "102": "CAT", "230": "TGA", "223": "TTG", "312": "ATT",
    "030": "AGA", "023": "ATG", "112": "CCT", "201": "TAC", "233": "TGG", "322": "GTT",
    "001": "AAC", "033": "AGG", "122": "CTT", "211": "TCC", "300": "GAA", "332": "GGT",
    "011": "ACC", "100": "CAA", "132": "CGT", "221": "TTC", "310": "GCA", "303": "AAA",
    "021": "ATC", "110": "CCA", "103": "CAG", "231": "TGC", "320": "GTA", "313": "GCG",
    "031": "AAT", "120": "CTA", "113": "CCG", "202": "CAC", "330": "GGA", "323": "ATA",
    "002": "AGC", "130": "TAA", "123": "CTG", "212": "TCT", "301": "GAC", "333": "GGG",
    "012": "ACT", "101": "TAT", "133": "CGG", "222": "CTC", "311": "GCC",
    "022": "GCT", "111": "CCC", "200": "CGA", "232": "TGT", "321": "GTC",
}


class PsiTableError(RuntimeError):
    pass


def _load(table: dict[str, str]):
    if len(table) != 64:
        raise PsiTableError(f"table has {len(table)} entries, expected 64")
    forward = [""] * 64
    for key, triple in table.items():
        forward[parse_element(key).index] = triple
    if sorted(forward) != ["".join(p) for p in itertools.product(dna.ALPHABET, repeat=3)]:
        raise PsiTableError("table images are not exactly the 64 DNA triples")
    backward = {t: i for i, t in enumerate(forward)}
    shift = COMPLEMENT_SHIFT.index
    for i in range(64):
        if forward[ADD[i, shift]] != dna.complement(forward[i]):
            raise PsiTableError(f"complement rule fails at {ELEMENTS[i]}")
        if forward[REV[i]] != dna.reverse(forward[i]):
            raise PsiTableError(f"reverse rule fails at {ELEMENTS[i]}")
    return tuple(forward), backward


FORWARD, BACKWARD = _load(TABLE)
# (64, 3) nucleotide codes of each element's image
CODES = dna.encode(list(FORWARD))
CODES.setflags(write=False)
# triple code 16*n0 + 4*n1 + n2 -> element index
INVERSE_CODES = np.empty(64, dtype=np.uint8)
for _i, _row in enumerate(CODES):
    INVERSE_CODES[16 * _row[0] + 4 * _row[1] + _row[2]] = _i
INVERSE_CODES.setflags(write=False)


def psi(x: RingElement) -> str:
    return FORWARD[x.index]


def psi_inv(s: str) -> RingElement:
    if len(s) != 3:
        raise dna.DnaError(f"{s!r} is not a DNA triple (length {len(s)})")
    return ELEMENTS[BACKWARD[dna.normalize(s)]]


def psi_vec(v: Sequence[RingElement]) -> str:
    return "".join(FORWARD[x.index] for x in v)


def psi_vec_inv(s: str) -> tuple[RingElement, ...]:
    if len(s) % 3:
        raise dna.DnaError(f"sequence length {len(s)} is not a multiple of 3")
    return tuple(psi_inv(s[i:i + 3]) for i in range(0, len(s), 3))


def ring_reverse(v: Sequence[RingElement]) -> tuple[RingElement, ...]:
    return tuple(ELEMENTS[REV[x.index]] for x in reversed(v))


def ring_complement(v: Sequence[RingElement]) -> tuple[RingElement, ...]:
    return tuple(x + COMPLEMENT_SHIFT for x in v)


def ring_reverse_complement(v: Sequence[RingElement]) -> tuple[RingElement, ...]:
    return ring_complement(ring_reverse(v))


# -- array forms over (M, n) element-index matrices --------------------------


def image_codes(words: np.ndarray) -> np.ndarray:
    """``(M, n)`` element indices -> ``(M, 3n)`` nucleotide codes."""
    words = np.atleast_2d(words)
    return CODES[words].reshape(words.shape[0], -1)


def preimage_words(codes: np.ndarray) -> np.ndarray:
    """Inverse of :func:`image_codes`; the code length must be a multiple of 3."""
    codes = np.atleast_2d(codes)
    if codes.shape[1] % 3:
        raise RingError(f"DNA length {codes.shape[1]} is not a multiple of 3")
    t = codes.reshape(codes.shape[0], -1, 3).astype(np.intp)
    return INVERSE_CODES[16 * t[..., 0] + 4 * t[..., 1] + t[..., 2]]


def reverse_words(words: np.ndarray) -> np.ndarray:
    return REV[np.atleast_2d(words)[:, ::-1]]


def complement_words(words: np.ndarray) -> np.ndarray:
    return ADD[np.atleast_2d(words), COMPLEMENT_SHIFT.index]
