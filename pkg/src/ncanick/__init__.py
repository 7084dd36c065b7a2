"""Noncommutative Groebner bases, Anick resolutions and the cohomology of U_n^+."""

from .ncpoly import Alphabet, MonomialOrder, Polynomial
from .rewrite import RewriteSystem, check_diamond, complete, normal_form, reduce_gb
from .anick import AnickResolution, ModuleVector
from .presentation import Presentation, format_presentation, parse_presentation
from .unitary import build_presentation, closed_groebner, verify_un
from .cohom import RationalMatrix, ext_dimensions, rank_defect
from .quasiiso import verify_quasiiso

__all__ = [
    "Alphabet", "MonomialOrder", "Polynomial",
    "RewriteSystem", "check_diamond", "complete", "normal_form", "reduce_gb",
    "AnickResolution", "ModuleVector",
    "Presentation", "format_presentation", "parse_presentation",
    "build_presentation", "closed_groebner", "verify_un",
    "RationalMatrix", "ext_dimensions", "rank_defect",
    "verify_quasiiso",
]
