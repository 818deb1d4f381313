"""Exact sparse multivariate polynomials over Q."""

from .core import MultiPoly, NotDivisible, VariableMismatch
from .parse import ParseError, UnknownVariable, parse
from .algebra import (
    DegenerateDegree,
    ZeroPolynomialError,
    content,
    gcd,
    lowest_form,
    mult_at_point,
    normalize,
    rational_roots,
    resultant,
    squarefree_decomposition,
    translate,
    unit_of,
    valuation_along,
)


def divide_exact(p: MultiPoly, q: MultiPoly):
    """``p / q`` if exact, else the string ``"not divisible"``."""
    try:
        return p.divide_exact(q)
    except NotDivisible:
        return "not divisible"


def arith(p: MultiPoly, q, op: str) -> MultiPoly:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "pow":
        return p**q
    raise ValueError(f"unknown operation {op!r}")
