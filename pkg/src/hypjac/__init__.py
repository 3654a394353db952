"""Exact algebra of affine hyperelliptic Jacobians.

Characters, Mumford triples, normal forms, commuting flows, de Rham
cohomology ranks and the symplectic/Koszul layer, all over the rationals.
"""
from .errors import (
    DegenerateDivisor,
    GenusMismatch,
    HypJacError,
    InexactDivision,
    Inconsistency,
    InvalidParameter,
    OffCurve,
    ParseError,
    StructuralError,
    UndefinedDerivation,
    WindowTooSmall,
)
from .kernels import BACKEND
from .mumford import Curve, MumfordTriple, det_coefficients, divisor_to_triple, triple_to_divisor
from .polyring import Derivation, GenId, Poly, parse_poly, ring
from .qseries import QSeries
from .reduce import basis_enum, build_reduction_system, normal_form

__all__ = [
    "BACKEND",
    "Curve",
    "DegenerateDivisor",
    "Derivation",
    "GenId",
    "GenusMismatch",
    "HypJacError",
    "InexactDivision",
    "Inconsistency",
    "InvalidParameter",
    "MumfordTriple",
    "OffCurve",
    "ParseError",
    "Poly",
    "QSeries",
    "StructuralError",
    "UndefinedDerivation",
    "WindowTooSmall",
    "basis_enum",
    "build_reduction_system",
    "det_coefficients",
    "divisor_to_triple",
    "normal_form",
    "parse_poly",
    "ring",
    "triple_to_divisor",
]
