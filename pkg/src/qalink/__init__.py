"""Jones polynomial, Khovanov homology and quasi-alternating obstructions."""

from .diagram import LinkDiagram, PDError, SmoothingResult, parse_pd
from .generate import braid_closure, torus2, twist
from .khovanov import BigradedDims, euler_check, homology, kh_polynomial
from .laurent import GapRecord, HalfLaurent, breadth, determinant_eval, gap_between, gaps_of
from .skein import bracket, bracket_twist, jones, jones_by_skein

__all__ = [
    "BigradedDims", "GapRecord", "HalfLaurent", "LinkDiagram", "PDError", "SmoothingResult",
    "braid_closure", "bracket", "bracket_twist", "breadth", "determinant_eval", "euler_check",
    "gap_between", "gaps_of", "homology", "jones", "jones_by_skein", "kh_polynomial", "parse_pd",
    "torus2", "twist",
]
