"""Real entries of complex Hadamard matrices."""

from .phasecore import EntryClass, Phase, Radians, Turn, classify, parse_phase, format_phase, r, t
from .matrix import Census, UnitMatrix, census, conjugate, fourier, is_chm, transpose
from .equivalence import MonomialTransform, apply, are_equivalent, dephase, random_orbit
from .constructions import (
    S_TABLE,
    NotAchievable,
    chm_with_count,
    g6,
    m4,
    m4_with_count,
    s6_with_count,
    theorem_i_matrix,
    theorem_ii_matrix,
)

__all__ = [
    "Census", "EntryClass", "MonomialTransform", "NotAchievable", "Phase", "Radians",
    "S_TABLE", "Turn", "UnitMatrix", "apply", "are_equivalent", "census", "chm_with_count",
    "classify", "conjugate", "dephase", "format_phase", "fourier", "g6", "is_chm", "m4",
    "m4_with_count", "parse_phase", "r", "random_orbit", "s6_with_count", "t",
    "theorem_i_matrix", "theorem_ii_matrix", "transpose",
]
