"""Exact Deligne-Lusztig character values and spherical periods for small
GL_n and U_n over finite fields.

Everything is computed in exact arithmetic: finite-field towers, cyclotomic
character values, integer Green polynomials, and integer periods checked two
independent ways (group summation vs. closed formulas).
"""

from .cyclotomic import Cyclotomic, cyclo
from .ffield import FieldElem, FieldSpec, make_field

__all__ = [
    "Cyclotomic",
    "cyclo",
    "FieldElem",
    "FieldSpec",
    "make_field",
]

__version__ = "0.1.0"
