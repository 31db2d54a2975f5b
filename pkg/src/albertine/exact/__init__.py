"""Exact scalar arithmetic: rings, polynomials, integer linear algebra."""

from .linalg import (FieldSpan, IntMatrix, ModSpan, det, hnf, ldl_signature, mat_det, mat_inverse,
                     mat_mul, mat_vec)
from .poly import DictPoly, FlintPoly, Poly, PolyRing, evaluate
from .rings import GF, GF8, QQ, ZZ, FiniteField, IntegerRing, Modular, ModularRing, RationalField, Ring
from .trunc import SquareFreeRing, TruncRing

__all__ = [
    "DictPoly", "FieldSpan", "FiniteField", "FlintPoly", "GF", "GF8", "IntMatrix", "IntegerRing",
    "ModSpan", "Modular", "ModularRing", "Poly", "PolyRing", "QQ", "RationalField", "Ring",
    "SquareFreeRing", "TruncRing", "ZZ", "det", "evaluate", "hnf", "ldl_signature", "mat_det",
    "mat_inverse", "mat_mul", "mat_vec",
]


def extend(R: Ring, prefix: str, count: int, laurent: bool = False) -> PolyRing:
    """Adjoin ``count`` fresh indeterminates ``prefix0, prefix1, ...`` to ``R``."""
    names = [f"{prefix}{i}" for i in range(count)]
    return PolyRing(R, names, names if laurent else ())
