"""DNA codes from linear codes over R = Z4 + uZ4 + u^2 Z4 with u^3 = 1."""

from .ring import RingElement, parse_element, parse_vector
from .psi_map import psi, psi_inv, psi_vec
from .gau import gau_element, gau_vec, min_gau_distance
from .codes import GeneratorMatrix, SpanCode, rm_generator, span
from .audit import DnaCode, full_report
from .kernels import backend_name

__all__ = [
    "RingElement", "parse_element", "parse_vector",
    "psi", "psi_inv", "psi_vec",
    "gau_element", "gau_vec", "min_gau_distance",
    "GeneratorMatrix", "SpanCode", "rm_generator", "span",
    "DnaCode", "full_report", "backend_name",
]
