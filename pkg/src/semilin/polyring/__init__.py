"""Exact fields, polynomials, rational functions and linear algebra."""
from .fields import (QQ, GF, ExtElem, FieldCtx, FieldError, PrimeField, Rationals,
                     ReducibleModulusError, SimpleExtension)
from .poly import Poly, PolyError, Ring, reduce_quadratic, ring
from .gcd import gcd, lcm
from .ratfunc import RatFunc, apply_perm
from .perm import Perm, PermError, all_perms
from .parse import (ExprError, ExprSyntaxError, ExprZeroDivisionError, UnknownVariableError,
                    format_poly, format_ratfunc, parse_expr, parse_poly)
from .linalg import DimensionError, LinearSolution, det, mat_vec, rank, solve_linear

__all__ = [
    "QQ", "GF", "ExtElem", "FieldCtx", "FieldError", "PrimeField", "Rationals",
    "ReducibleModulusError", "SimpleExtension", "Poly", "PolyError", "Ring",
    "reduce_quadratic", "ring", "gcd", "lcm", "RatFunc", "apply_perm", "Perm",
    "PermError", "all_perms", "ExprError", "ExprSyntaxError", "ExprZeroDivisionError",
    "UnknownVariableError", "format_poly", "format_ratfunc", "parse_expr", "parse_poly",
    "DimensionError", "LinearSolution", "det", "mat_vec", "rank", "solve_linear",
]
