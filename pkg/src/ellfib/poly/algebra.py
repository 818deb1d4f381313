"""gcd, resultant, square-free decomposition and valuations on MultiPoly."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Tuple, Union

from .core import MultiPoly, NotDivisible, VariableMismatch


class ZeroPolynomialError(ValueError):
    """Raised where a valuation or multiplicity of the zero polynomial is asked for."""


class DegenerateDegree(ValueError):
    pass


def normalize(p: MultiPoly) -> MultiPoly:
    """Scale to integer coefficients with content 1 and positive grlex-leading coefficient."""
    if p.is_zero():
        return p
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // math.gcd(den, c.denominator)
    nums = [int(c * den) for c in p.terms.values()]
    g = 0
    for n in nums:
        g = math.gcd(g, n)
    factor = Fraction(den, g)
    if p.leading_coefficient() < 0:
        factor = -factor
    return p.scale(factor)


def unit_of(p: MultiPoly) -> Fraction:
    """The rational constant with ``p == unit_of(p) * normalize(p)``."""
    n = normalize(p)
    return p.leading_coefficient() / n.leading_coefficient()


def _main_variable(*polys: MultiPoly):
    for i, v in enumerate(polys[0].variables):
        if any(any(e[i] for e in p.terms) for p in polys):
            return v
    return None


def content(p: MultiPoly, x: str) -> MultiPoly:
    """gcd of the coefficients of ``p`` viewed as a polynomial in ``x``."""
    g = MultiPoly.zero(p.variables)
    for c in p.coefficients_in(x).values():
        g = gcd(g, c)
        if g.is_constant():
            break
    return g


def lead_in(p: MultiPoly, x: str) -> MultiPoly:
    coeffs = p.coefficients_in(x)
    return coeffs[max(coeffs)]


def pseudo_remainder(a: MultiPoly, b: MultiPoly, x: str) -> MultiPoly:
    db = b.degree(x)
    if db < 0:
        raise ZeroDivisionError("pseudo-division by zero")
    xp = MultiPoly.var(x, a.variables)
    lb = lead_in(b, x)
    r = a
    steps = max(a.degree(x) - db + 1, 0)
    while not r.is_zero() and r.degree(x) >= db:
        lr = lead_in(r, x)
        r = lb * r - lr * xp ** (r.degree(x) - db) * b
        steps -= 1
    return r * lb**steps if steps > 0 else r


def _coprime_by_specialization(a: MultiPoly, b: MultiPoly, x: str, tries: int = 3) -> bool:
    """True only if a and b certainly share no factor of positive degree in x.

    Setting the other variables to integers that keep both leading coefficients
    nonzero can only raise the x-degree of the gcd, so a constant gcd of the
    specializations settles the question.  False means "unknown".
    """
    others = [v for v in a.variables if v != x and (a.involves(v) or b.involves(v))]
    if not others:
        return False
    la, lb = lead_in(a, x), lead_in(b, x)
    for k in range(tries):
        pt = {v: Fraction(2 + 3 * k + i) for i, v in enumerate(others)}
        if la.evaluate(pt) == 0 or lb.evaluate(pt) == 0:
            continue
        sa = a.substitute(pt, a.variables)
        sb = b.substitute(pt, b.variables)
        return gcd(sa, sb).is_constant()
    return False


def gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """A gcd of ``p`` and ``q``, normalized (primitive, positive leading coefficient)."""
    if p.variables != q.variables:
        raise VariableMismatch(f"{p.variables} vs {q.variables}")
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if p.is_zero():
        return normalize(q)
    if q.is_zero():
        return normalize(p)
    if p.is_constant() or q.is_constant():
        return MultiPoly.constant(1, p.variables)
    x = _main_variable(p, q)
    if not p.involves(x):
        return gcd(p, content(q, x))
    if not q.involves(x):
        return gcd(content(p, x), q)
    cp, cq = content(p, x), content(q, x)
    a, b = normalize(p.divide_exact(cp)), normalize(q.divide_exact(cq))
    if a.degree(x) < b.degree(x):
        a, b = b, a
    if _coprime_by_specialization(a, b, x):
        return normalize(gcd(cp, cq))
    while True:
        r = pseudo_remainder(a, b, x)
        if r.is_zero():
            g = b
            break
        if not r.involves(x):
            g = MultiPoly.constant(1, p.variables)
            break
        # primitive part, with the rational scalar stripped too, keeps the
        # remainder sequence from growing
        a, b = b, normalize(r.divide_exact(content(r, x)))
    return normalize(gcd(cp, cq) * g)


def _det_bareiss(rows: List[List[MultiPoly]]) -> MultiPoly:
    m = [list(r) for r in rows]
    n = len(m)
    variables = m[0][0].variables
    sign = 1
    prev = MultiPoly.constant(1, variables)
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if swap is None:
                return MultiPoly.zero(variables)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]).divide_exact(prev)
        prev = m[k][k]
    return m[n - 1][n - 1] if sign > 0 else -m[n - 1][n - 1]


def sylvester_matrix(p: MultiPoly, q: MultiPoly, x: str) -> List[List[MultiPoly]]:
    dp, dq = p.degree(x), q.degree(x)
    cp, cq = p.coefficients_in(x), q.coefficients_in(x)
    zero = MultiPoly.zero(p.variables)
    n = dp + dq
    rows = []
    for i in range(dq):
        row = [zero] * n
        for k in range(dp + 1):
            row[i + dp - k] = cp.get(k, zero)
        rows.append(row)
    for i in range(dp):
        row = [zero] * n
        for k in range(dq + 1):
            row[i + dq - k] = cq.get(k, zero)
        rows.append(row)
    return rows


def resultant(p: MultiPoly, q: MultiPoly, eliminate: str) -> MultiPoly:
    """Sylvester resultant of ``p`` and ``q`` with respect to ``eliminate``.

    The result stays in the input ring but no longer involves ``eliminate``.
    """
    if p.variables != q.variables:
        raise VariableMismatch(f"{p.variables} vs {q.variables}")
    if p.degree(eliminate) < 1 or q.degree(eliminate) < 1:
        raise DegenerateDegree(f"both polynomials need positive degree in {eliminate!r}")
    return _det_bareiss(sylvester_matrix(p, q, eliminate))


def _yun(f: MultiPoly, x: str) -> List[Tuple[MultiPoly, int]]:
    out = []
    df = f.derivative(x)
    a = gcd(f, df)
    b = f.divide_exact(a)
    c = df.divide_exact(a)
    d = c - b.derivative(x)
    i = 1
    while not b.is_constant():
        a = gcd(b, d)
        if not a.is_constant():
            out.append((normalize(a), i))
        b = b.divide_exact(a)
        c = d.divide_exact(a)
        d = c - b.derivative(x)
        i += 1
    return out


def squarefree_decomposition(p: MultiPoly) -> List[Tuple[MultiPoly, int]]:
    """Pairwise coprime square-free factors with exponents, product = p up to a constant.

    Factors are normalized and need not be irreducible.  Sorted by exponent.
    """
    if p.is_zero():
        raise ZeroPolynomialError("square-free decomposition of 0")
    by_exp: Dict[int, MultiPoly] = {}

    def walk(f: MultiPoly):
        if f.is_constant():
            return
        x = _main_variable(f)
        c = content(f, x)
        for g, k in _yun(f.divide_exact(c), x):
            by_exp[k] = by_exp[k] * g if k in by_exp else g
        walk(c)

    walk(p)
    return [(normalize(by_exp[k]), k) for k in sorted(by_exp)]


def valuation_along(p: MultiPoly, g: MultiPoly) -> int:
    """Largest k with g^k | p (the g-adic order; g need not be irreducible)."""
    if p.is_zero():
        raise ZeroPolynomialError("valuation of the zero polynomial is infinite")
    if g.is_constant():
        raise ValueError("valuation along a constant is undefined")
    k = 0
    while True:
        try:
            p = p.divide_exact(g)
        except NotDivisible:
            return k
        k += 1


Point = Union[Mapping[str, object], Sequence[object]]


def _point_map(p: MultiPoly, b: Point) -> Dict[str, Fraction]:
    if isinstance(b, Mapping):
        return {v: Fraction(b.get(v, 0)) for v in p.variables}
    b = list(b)
    if len(b) != p.nvars:
        raise VariableMismatch(f"point {b} does not match {p.variables}")
    return {v: Fraction(c) for v, c in zip(p.variables, b)}


def translate(p: MultiPoly, b: Point) -> MultiPoly:
    """p(v + b_v): moves the point ``b`` to the origin."""
    coords = _point_map(p, b)
    assignment = {
        v: MultiPoly.var(v, p.variables) + coords[v] for v in p.variables if coords[v]
    }
    return p.substitute(assignment, p.variables) if assignment else p


def mult_at_point(p: MultiPoly, b: Point) -> int:
    """Multiplicity of ``p`` at the rational point ``b``."""
    if p.is_zero():
        raise ZeroPolynomialError("multiplicity of the zero polynomial is infinite")
    return translate(p, b).min_degree()


def lowest_form(p: MultiPoly) -> MultiPoly:
    """The homogeneous part of least total degree."""
    d = p.min_degree()
    return MultiPoly(p.variables, {e: c for e, c in p.terms.items() if sum(e) == d})


def _divisors(n: int) -> List[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p: MultiPoly, x: str) -> Tuple[List[Tuple[Fraction, int]], MultiPoly]:
    """Rational roots with multiplicity of a univariate ``p`` in ``x``, and the cofactor.

    The cofactor is ``p`` with every ``(x - r)^k`` divided out; it has no rational
    roots and is returned normalized (1 if nothing is left).
    """
    if p.is_zero():
        raise ZeroPolynomialError("every value is a root of 0")
    others = [v for v in p.used_variables() if v != x]
    if others:
        raise ValueError(f"expected a polynomial in {x!r} only, also uses {others}")
    xp = MultiPoly.var(x, p.variables)
    rest = normalize(p)
    roots: List[Tuple[Fraction, int]] = []

    def strip(r):
        nonlocal rest
        lin = xp - r
        k = 0
        while rest.degree(x) > 0:
            try:
                rest = rest.divide_exact(lin)
            except NotDivisible:
                break
            k += 1
        if k:
            roots.append((Fraction(r), k))

    strip(0)
    if rest.degree(x) > 0:
        coeffs = rest.coefficients_in(x)
        a0 = int(coeffs[0].constant_term())
        an = int(coeffs[max(coeffs)].constant_term())
        for num in _divisors(a0):
            for den in _divisors(an):
                if math.gcd(num, den) != 1:
                    continue
                for r in (Fraction(num, den), Fraction(-num, den)):
                    if rest.degree(x) > 0 and rest.evaluate({x: r}) == 0:
                        strip(r)
    roots.sort()
    return roots, normalize(rest)
