"""Constraint verdicts for DNA codes, code rate, and the assembled report."""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from . import codes as cb
from . import dna, gau, kernels, psi_map
from .ring import format_vector, vector_from_indices

log = logging.getLogger(__name__)

EXHAUSTIVE_PAIR_GATE = 1 << 16
ALL_CONSTRAINTS = ("gc", "homopolymer", "reversible", "reversible_complement")


class DnaCode:
    """A deduplicated set of equal-length DNA sequences, held as nucleotide codes."""

    def __init__(self, codes: np.ndarray, min_distance: int | None = None):
        codes = np.atleast_2d(np.asarray(codes, dtype=np.uint8))
        if codes.shape[0] == 0:
            raise ValueError("a DNA code needs at least one codeword")
        packed = dna.pack(codes)
        _, first = np.unique(packed, axis=0, return_index=True)
        if len(first) != len(codes):
            keep = np.sort(first)
            codes, packed = codes[keep], packed[keep]
        self.codes = codes
        self.packed = packed
        self.min_distance = min_distance
        self._index: frozenset[bytes] | None = None

    @classmethod
    def from_strings(cls, seqs: list[str], min_distance: int | None = None) -> DnaCode:
        return cls(dna.encode([dna.normalize(s) for s in seqs]), min_distance)

    @classmethod
    def from_span(cls, code: cb.SpanCode) -> DnaCode:
        return cls(psi_map.image_codes(code.words))

    def __len__(self) -> int:
        return self.codes.shape[0]

    @property
    def length(self) -> int:
        return self.codes.shape[1]

    def sequences(self) -> list[str]:
        return dna.decode(self.codes)

    def contains_codes(self, codes: np.ndarray) -> np.ndarray:
        if self._index is None:
            self._index = frozenset(r.tobytes() for r in self.packed)
        return np.array([r.tobytes() in self._index for r in dna.pack(codes)], dtype=bool)

    def minimum_distance(self, **kw) -> int:
        if self.min_distance is None:
            if len(self) < 2:
                raise ValueError("minimum distance needs at least 2 codewords")
            self.min_distance = gau.min_distance_packed(self.packed, "exact", **kw).value
        return self.min_distance


@dataclass
class Verdict:
    satisfied: bool | None  # None: the chosen method could not decide
    method: str
    evidence: dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> dict[str, Any]:
        return asdict(self)


def check_gc_constraint(code: DnaCode) -> Verdict:
    gc = np.isin(code.codes, (1, 2)).sum(axis=1)
    values, counts = np.unique(gc, return_counts=True)
    if len(values) == 1:
        w = int(values[0])
        return Verdict(True, "exhaustive", {"w": w, "fraction": str(Fraction(w, code.length))})
    hist = {str(int(v)): int(c) for v, c in zip(values, counts)}
    return Verdict(False, "exhaustive", {"histogram": hist})


def _max_runs(codes: np.ndarray) -> np.ndarray:
    m, length = codes.shape
    if length == 0:
        return np.zeros(m, dtype=np.int64)
    run = np.ones(m, dtype=np.int64)
    best = run.copy()
    for t in range(1, length):
        run = np.where(codes[:, t] == codes[:, t - 1], run + 1, 1)
        np.maximum(best, run, out=best)
    return best


def check_homopolymer(code: DnaCode, k: int) -> Verdict:
    if k < 1:
        raise ValueError(f"run-length bound must be >= 1, got {k}")
    runs = _max_runs(code.codes)
    worst = int(runs.argmax())
    evidence = {"k": k, "max_run": int(runs[worst]),
                "witness": dna.decode(code.codes[worst:worst + 1])[0]}
    return Verdict(bool(runs[worst] <= k), "exhaustive", evidence)


def _transform(codes: np.ndarray, kind: str) -> np.ndarray:
    rev = codes[:, ::-1]
    return rev if kind == "reverse" else 3 - rev


def _pair_check(code: DnaCode, kind: str, d: int | None, method: str, **kw) -> Verdict:
    if d is not None and d < 1:
        raise ValueError(f"distance threshold must be >= 1, got {d}")
    if method == "auto":
        method = "exhaustive" if len(code) <= EXHAUSTIVE_PAIR_GATE else "closure"
    image = _transform(code.codes, kind)
    if method == "closure":
        inside = code.contains_codes(image)
        if not inside.all():
            bad = int(np.flatnonzero(~inside)[0])
            return Verdict(None, "closure", {
                "closed": False, "d": d,
                "outside": dna.decode(code.codes[bad:bad + 1])[0],
                "note": "code is not closed; closure argument does not apply",
            })
        # closed: every transformed codeword is a codeword, so each cross
        # distance is a within-code distance, hence >= the code's own minimum
        if d is None:
            return Verdict(True, "closure", {"closed": True, "d": "code minimum"})
        if len(code) < 2:
            # the only pair is (c, c) with t(c) == c, which is excluded
            return Verdict(True, "closure", {"closed": True, "d": d, "pairs": 0})
        dmin = code.min_distance
        if dmin is None:
            return Verdict(None, "closure", {"closed": True, "d": d,
                                             "note": "code minimum distance unknown"})
        return Verdict(dmin >= d, "closure", {"closed": True, "d": d, "code_min_distance": dmin})
    if method != "exhaustive":
        raise ValueError(f"unknown method {method!r}")
    threshold = d if d is not None else code.minimum_distance(**kw)
    sweep = kernels.min_cross(dna.pack(image), code.packed, **kw)
    if sweep.distance is None:
        return Verdict(True, "exhaustive", {"d": threshold, "min_cross_distance": None})
    i, j = sweep.witness
    evidence = {"d": threshold, "min_cross_distance": sweep.distance,
                "witness": [dna.decode(image[i:i + 1])[0], dna.decode(code.codes[j:j + 1])[0]]}
    return Verdict(sweep.distance >= threshold, "exhaustive", evidence)


def check_reversible(code: DnaCode, d: int | None = None, method: str = "exhaustive", **kw) -> Verdict:
    """Every pair with ``reverse(c1) != c2`` has ``d_H(reverse(c1), c2) >= d``.

    ``d=None`` uses the code's own minimum distance.  The closure method only
    proves the constraint (reverse-closed plus a known minimum >= d); when the
    code is not closed it returns an undecided verdict.
    """
    return _pair_check(code, "reverse", d, method, **kw)


def check_reversible_complement(code: DnaCode, d: int | None = None, method: str = "exhaustive",
                                **kw) -> Verdict:
    return _pair_check(code, "reverse_complement", d, method, **kw)


@dataclass(frozen=True)
class Rate:
    value: float
    exact: str | None  # e.g. "9/12"; None when log4(M) is not rational

    @property
    def text(self) -> str:
        return f"{self.value:.3f}"


def code_rate(size: int, length: int) -> Rate:
    """``log4(size) / length``; exact text is ``log4(M)/L`` with an integer numerator."""
    if size < 1 or length < 1:
        raise ValueError("code rate needs size >= 1 and length >= 1")
    if size & (size - 1) == 0:
        e = size.bit_length() - 1
        exact = f"{e // 2}/{length}" if e % 2 == 0 else f"{e}/{2 * length}"
        return Rate(e / (2 * length), exact)
    return Rate(math.log(size, 4) / length, None)


def relative_distance(d: int, length: int) -> Rate:
    if length < 1:
        raise ValueError("length must be >= 1")
    return Rate(d / length, f"{d}/{length}")


@dataclass
class CodeReport:
    m: int | None
    z: str | None
    n_ring: int
    n_dna: int
    size: int
    d_gau: int
    d_hamming: int
    distance_exact: bool
    distance_method: str
    rate: Rate
    relative_distance: Rate
    constraints: dict[str, Verdict]
    closure: dict[str, Any]
    distance_witness: dict[str, Any] | None = None
    gc_distribution: dict[str, int] | None = None
    max_run_observed: int | None = None

    def to_json(self) -> dict[str, Any]:
        return {
            "m": self.m,
            "z": self.z,
            "n_ring": self.n_ring,
            "n_dna": self.n_dna,
            "size": self.size,
            "d_gau": self.d_gau,
            "d_hamming": self.d_hamming,
            "distance_exact": self.distance_exact,
            "distance_method": self.distance_method,
            "distance_witness": self.distance_witness,
            "rate": round(self.rate.value, 3),
            "rate_exact": self.rate.exact,
            "relative_distance": round(self.relative_distance.value, 3),
            "relative_distance_exact": self.relative_distance.exact,
            "constraints": {k: v.satisfied for k, v in self.constraints.items()},
            "constraint_details": {k: v.as_dict() for k, v in self.constraints.items()},
            "closure": self.closure,
            "gc_distribution": self.gc_distribution,
            "max_run_observed": self.max_run_observed,
        }


def _gc_histogram(code: DnaCode) -> dict[str, int]:
    gc = np.isin(code.codes, (1, 2)).sum(axis=1)
    values, counts = np.unique(gc, return_counts=True)
    return {str(int(v)): int(c) for v, c in zip(values, counts)}


def full_report(g: cb.GeneratorMatrix, *, distance: str = "exact", pairs: int = 1_000_000,
                seed: int = 0, slow: bool = False, k: int = 2,
                constraints: tuple[str, ...] = ALL_CONSTRAINTS, pair_method: str = "auto",
                limit: int = cb.DEFAULT_LIMIT, pair_gate: int = EXHAUSTIVE_PAIR_GATE,
                threads: int = 0) -> CodeReport:
    """Parameters and constraint verdicts of the DNA image of ``<g>``.

    Exact distance on codes above ``pair_gate`` words needs ``slow=True``;
    otherwise the distance is an upper bound from ``pairs`` seeded random
    pairs, tightened by the structural witness pair when ``g`` is RM-type.
    """
    code = cb.span(g, limit)
    dcode = DnaCode.from_span(code)
    size = len(code)

    witness = None
    if g.provenance is not None:
        zero, last, wd = cb.distance_witness(g)
        witness = {"pair": [format_vector(vector_from_indices(zero)),
                            format_vector(vector_from_indices(last))],
                   "distance": wd}

    mode = distance
    if mode == "exact" and size > pair_gate and not slow:
        log.warning("%d codewords: exact sweep needs --slow; using a sampled upper bound", size)
        mode = "sample"
    if mode == "exact":
        params = cb.code_params(g, "exact", code=code, threads=threads)
        d_g, d_h, exact, method = params.d_gau, params.d_hamming, True, "exhaustive"
    else:
        res = gau.min_gau_distance(code, "sample", pairs=pairs, seed=seed)
        d_h = res.value
        if witness is not None:
            d_h = min(d_h, witness["distance"])
        d_g, exact, method = d_h, False, "sampled"
    if exact:
        dcode.min_distance = d_h

    rev_closure = cb.check_reverse_closure(g, code)
    comp = cb.check_complement_condition(g, code)
    closure = {"reverse_rows_in_span": rev_closure.ok, "failing_rows": rev_closure.failing_rows,
               "complement_vector_in_span": comp}

    pm = pair_method
    if pm == "auto":
        pm = "exhaustive" if size <= pair_gate else "closure"
    verdicts: dict[str, Verdict] = {}
    for name in constraints:
        if name == "gc":
            verdicts[name] = check_gc_constraint(dcode)
        elif name == "homopolymer":
            verdicts[name] = check_homopolymer(dcode, k)
        elif name == "reversible":
            verdicts[name] = check_reversible(dcode, None, pm, threads=threads)
        elif name == "reversible_complement":
            verdicts[name] = check_reversible_complement(dcode, None, pm, threads=threads)
        else:
            raise ValueError(f"unknown constraint {name!r}")

    m, z = (g.provenance[0], str(g.provenance[1])) if g.provenance else (None, None)
    return CodeReport(
        m=m, z=z, n_ring=g.n, n_dna=3 * g.n, size=size, d_gau=d_g, d_hamming=d_h,
        distance_exact=exact, distance_method=method,
        rate=code_rate(size, 3 * g.n), relative_distance=relative_distance(d_h, 3 * g.n),
        constraints=verdicts, closure=closure, distance_witness=witness,
        gc_distribution=_gc_histogram(dcode), max_run_observed=int(_max_runs(dcode.codes).max()),
    )

