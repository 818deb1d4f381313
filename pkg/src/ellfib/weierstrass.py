"""Weierstrass fibrations y^2 = x^3 + a4 x + a6 over an affine base chart."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .poly import (
    MultiPoly,
    ZeroPolynomialError,
    gcd,
    lowest_form,
    mult_at_point,
    parse,
    rational_roots,
    resultant,
    translate,
    valuation_along,
)
from .poly.algebra import normalize

INF = math.inf

# variables of a pencil restriction: line parameter and slope
PENCIL_VARS = ("u", "lam")


class DecompositionError(ValueError):
    def __init__(self, message, difference: Optional[MultiPoly] = None):
        self.difference = difference
        super().__init__(message)


class InvariantViolation(AssertionError):
    """An internal consistency check on computed orders failed."""


@dataclass(frozen=True)
class WeierstrassData:
    a4: MultiPoly
    a6: MultiPoly
    chart_name: str = "affine"

    def __post_init__(self):
        if self.a4.variables != self.a6.variables:
            raise ValueError("a4 and a6 must share one variable list")

    @classmethod
    def from_text(cls, a4: str, a6: str, variables=("s", "t"), chart_name="affine"):
        return cls(parse(a4, variables), parse(a6, variables), chart_name)

    @property
    def variables(self):
        return self.a4.variables

    @property
    def degenerate(self) -> bool:
        """True when the discriminant vanishes identically."""
        return discriminant(self).is_zero()

    def rescaled(self, c) -> "WeierstrassData":
        c = Fraction(c)
        return WeierstrassData(self.a4.scale(c**4), self.a6.scale(c**6), self.chart_name)


@dataclass(frozen=True)
class BasePoint:
    s: Fraction
    t: Fraction

    def __post_init__(self):
        object.__setattr__(self, "s", Fraction(self.s))
        object.__setattr__(self, "t", Fraction(self.t))

    def coords(self) -> Tuple[Fraction, Fraction]:
        return (self.s, self.t)

    def __str__(self):
        return f"({self.s}, {self.t})"


ORIGIN = BasePoint(0, 0)


@dataclass(frozen=True)
class DiscriminantDecomposition:
    components: Tuple[Tuple[MultiPoly, int], ...]
    unit: Fraction


@dataclass(frozen=True)
class PencilRestriction:
    base_point: BasePoint
    a4_line: MultiPoly
    a6_line: MultiPoly
    disc_line: MultiPoly
    generic_orders: tuple
    exceptional_slopes: Tuple[MultiPoly, ...]
    vertical_orders: tuple = field(default=())


def discriminant(w: WeierstrassData) -> MultiPoly:
    """4 a4^3 + 27 a6^2."""
    return w.a4**3 * 4 + w.a6**2 * 27


def verify_decomposition(w: WeierstrassData, candidate: Sequence[Tuple[MultiPoly, int]], unit=1) -> DiscriminantDecomposition:
    """Check a user-supplied factorization of the discriminant exactly."""
    if not candidate:
        raise DecompositionError("empty decomposition")
    unit = Fraction(unit)
    comps = []
    for poly, order in candidate:
        if int(order) < 1:
            raise DecompositionError(f"order of {poly} must be positive")
        if poly.is_constant():
            raise DecompositionError(f"component {poly} is constant")
        comps.append((poly.with_variables(w.variables), int(order)))
    for i in range(len(comps)):
        for j in range(i + 1, len(comps)):
            g = gcd(comps[i][0], comps[j][0])
            if not g.is_constant():
                raise DecompositionError(
                    f"components {comps[i][0]} and {comps[j][0]} share the factor {g}"
                )
    product = MultiPoly.constant(unit, w.variables)
    for poly, order in comps:
        product = product * poly**order
    diff = discriminant(w) - product
    if not diff.is_zero():
        raise DecompositionError(f"product differs from the discriminant by {diff}", diff)
    return DiscriminantDecomposition(tuple(comps), unit)


def _order(p: MultiPoly, g: MultiPoly):
    try:
        return valuation_along(p, g)
    except ZeroPolynomialError:
        return INF


def _mult(p: MultiPoly, b):
    try:
        return mult_at_point(p, b)
    except ZeroPolynomialError:
        return INF


def check_orders(triple, where="") -> None:
    """ord D = min(3 ord a4, 2 ord a6) unless the two agree, then ord D is at least that."""
    m4, m6, md = triple
    lo = min(3 * m4, 2 * m6)
    if 3 * m4 != 2 * m6:
        ok = md == lo
    else:
        ok = md >= lo
    if not ok:
        raise InvariantViolation(f"inconsistent orders {triple} {where}".strip())


def component_orders(w: WeierstrassData, d: DiscriminantDecomposition, i: int):
    g = d.components[i][0]
    if g.is_constant():
        raise ValueError("component polynomial must be non-constant")
    triple = (_order(w.a4, g), _order(w.a6, g), _order(discriminant(w), g))
    check_orders(triple, f"along {g}")
    return triple


def point_orders(w: WeierstrassData, b: BasePoint):
    disc = discriminant(w)
    if disc.is_zero():
        raise ValueError("discriminant vanishes identically")
    coords = b.coords()
    return (_mult(w.a4, coords), _mult(w.a6, coords), _mult(disc, coords))


def intersection_points(d: DiscriminantDecomposition, i: int, j: int):
    """Rational common points of components i and j.

    Returns ``(points, unresolved)``; ``unresolved`` lists the normalized factors of
    the elimination polynomials that have no rational roots (irrational or complex
    intersections that are not enumerated).
    """
    if i == j:
        raise ValueError("need two distinct components")
    f, g = d.components[i][0], d.components[j][0]
    variables = f.variables
    x, y = variables[0], variables[1]
    common = gcd(f, g)
    if not common.is_constant():
        raise DecompositionError(f"components share the factor {common}")

    unresolved: List[MultiPoly] = []
    if f.involves(x) and g.involves(x):
        elim = resultant(f, g, x)
    elif not f.involves(x):
        elim = f
    else:
        elim = g
    if elim.is_zero():
        raise DecompositionError("elimination polynomial vanishes")
    y_roots, rest = rational_roots(elim, y) if elim.involves(y) else ([], elim)
    if not rest.is_constant():
        unresolved.append(rest)

    points = []
    for r, _ in y_roots:
        fr = f.substitute({y: r}, variables)
        gr = g.substitute({y: r}, variables)
        if fr.is_zero() and gr.is_zero():
            raise DecompositionError(f"components share the line {y} = {r}")
        if fr.is_zero():
            h = gr
        elif gr.is_zero():
            h = fr
        else:
            h = gcd(fr, gr)
        if h.is_constant():
            continue
        x_roots, xrest = rational_roots(h, x)
        if not xrest.is_constant():
            unresolved.append(xrest)
        for xr, _ in x_roots:
            points.append(BasePoint(xr, r) if x == variables[0] else BasePoint(r, xr))
    points.sort(key=lambda p: (p.s, p.t))
    return points, unresolved


def _u_order(p: MultiPoly):
    """Lowest power of u with a coefficient that is nonzero as a polynomial in lam."""
    if p.is_zero():
        return INF, None
    coeffs = p.coefficients_in("u")
    k = min(coeffs)
    return k, coeffs[k]


def restrict_to_pencil(w: WeierstrassData, b: BasePoint) -> PencilRestriction:
    """Restrict to the line (s, t) = b + u (1, lam) with lam a free parameter."""
    u = MultiPoly.var("u", PENCIL_VARS)
    lam = MultiPoly.var("lam", PENCIL_VARS)
    sv, tv = w.variables[:2]
    line = {sv: u + b.s, tv: lam * u + b.t}
    a4l = w.a4.substitute(line, PENCIL_VARS)
    a6l = w.a6.substitute(line, PENCIL_VARS)
    dl = a4l**3 * 4 + a6l**2 * 27
    orders, slopes = [], []
    for p in (a4l, a6l, dl):
        k, lead = _u_order(p)
        orders.append(k)
        if lead is not None and lead.involves("lam"):
            n = normalize(lead)
            if n not in slopes:
                slopes.append(n)

    vertical = {sv: MultiPoly.constant(b.s, PENCIL_VARS), tv: u + b.t}
    vorders = []
    for p in (w.a4, w.a6, discriminant(w)):
        vorders.append(_u_order(p.substitute(vertical, PENCIL_VARS))[0])

    return PencilRestriction(
        base_point=b,
        a4_line=a4l,
        a6_line=a6l,
        disc_line=dl,
        generic_orders=tuple(orders),
        exceptional_slopes=tuple(slopes),
        vertical_orders=tuple(vorders),
    )


def generic_line_matches_point(w: WeierstrassData, b: BasePoint, which: str) -> Optional[bool]:
    """For a4 or a6: None if the lowest form vanishes on the generic line, else whether
    the generic u-order equals the multiplicity at b."""
    p = w.a4 if which == "a4" else w.a6
    if p.is_zero():
        return None
    low = lowest_form(translate(p, b.coords()))
    u = MultiPoly.var("u", PENCIL_VARS)
    lam = MultiPoly.var("lam", PENCIL_VARS)
    sv, tv = w.variables[:2]
    if low.substitute({sv: u, tv: lam * u}, PENCIL_VARS).is_zero():
        return None
    k = restrict_to_pencil(w, b).generic_orders[0 if which == "a4" else 1]
    return k == mult_at_point(p, b.coords())
