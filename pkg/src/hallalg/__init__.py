"""Exact Hall algebras of quiver representations over finite fields.

Ten algebras (twisted, modified and derived Hall algebras and their lattice
variants) are presented as rewriting systems over exact coefficients in
Q(sqrt q).  The package also ships the comparison maps between them and a
verifier that checks every defining relation against independent counts.
"""

from .catalog import ALGEBRA_IDS, make_spec, resolve_id
from .engine import Element, KindError, Letter, multiply, normalize
from .expr import ParseError, parse_expression, render
from .quiver import CapacityError, IsoClass, Quiver, QuiverCategory
from .scalars import TwistScalar, v_power

__all__ = [
    "ALGEBRA_IDS", "CapacityError", "Element", "IsoClass", "KindError", "Letter", "ParseError",
    "Quiver", "QuiverCategory", "TwistScalar", "make_spec", "multiply", "normalize",
    "parse_expression", "render", "resolve_id", "v_power",
]
__version__ = "0.1.0"
