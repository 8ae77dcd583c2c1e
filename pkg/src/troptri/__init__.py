"""Exact tropical points of zero-dimensional triangular systems.

The coefficient field is the field of Puiseux series over an exact
residue field (rationals or a small prime field), represented by finite
sums; truncated root tails stay symbolic so no precision is ever lost to
cancellation.
"""

from .errors import (
    DivisionByZero,
    ExactRootError,
    InvalidTargetError,
    NonSplittingError,
    NonTriangularError,
    ParseError,
    PrecisionLimitError,
    RecursionLimitError,
    ReservedIdentifierError,
    TropError,
    ZeroHasNoValuation,
    ZeroPolynomialError,
    ZeroSubstitutionError,
)
from .expansion import (
    ApproxRoot,
    has_maximal_precision,
    is_approximate_root,
    puiseux_expansion,
)
from .polygon import (
    Polygon,
    is_unique,
    newton_polygon,
    tropical_points,
    uniqueness_oracle,
)
from .puiseux import PuiseuxScalar
from .rationals import Rat, format_rat, parse_rat, rat
from .residue import PrimeField, RationalField, ResiduePoly, roots_in_units
from .roottree import RootTree, TriangularSystem, starting_tree, trop_triangular
from .sysparse import format_system, parse_system
from .upoly import MPoly, UCoeff, UPoly, compose, initial_form

__version__ = "0.1.0"

__all__ = [
    "ApproxRoot",
    "DivisionByZero",
    "ExactRootError",
    "InvalidTargetError",
    "MPoly",
    "NonSplittingError",
    "NonTriangularError",
    "ParseError",
    "Polygon",
    "PrecisionLimitError",
    "PrimeField",
    "PuiseuxScalar",
    "Rat",
    "RationalField",
    "RecursionLimitError",
    "ReservedIdentifierError",
    "ResiduePoly",
    "RootTree",
    "TriangularSystem",
    "TropError",
    "UCoeff",
    "UPoly",
    "ZeroHasNoValuation",
    "ZeroPolynomialError",
    "ZeroSubstitutionError",
    "compose",
    "format_rat",
    "format_system",
    "has_maximal_precision",
    "initial_form",
    "is_approximate_root",
    "is_unique",
    "newton_polygon",
    "parse_rat",
    "parse_system",
    "puiseux_expansion",
    "rat",
    "roots_in_units",
    "starting_tree",
    "trop_triangular",
    "tropical_points",
    "uniqueness_oracle",
]
