from fractions import Fraction
from itertools import permutations

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from conftest import ST, polys, rational_points, term_by_term_product
from ellfib.poly import (
    DegenerateDegree,
    MultiPoly,
    ParseError,
    UnknownVariable,
    VariableMismatch,
    ZeroPolynomialError,
    arith,
    divide_exact,
    gcd,
    mult_at_point,
    normalize,
    parse,
    rational_roots,
    resultant,
    squarefree_decomposition,
    valuation_along,
)

F = Fraction
s_, t_ = sympy.symbols("s t")


def to_sympy(p: MultiPoly):
    syms = sympy.symbols(p.variables)
    out = 0
    for e, c in p.terms.items():
        m = sympy.Rational(c.numerator, c.denominator)
        for x, k in zip(syms, e):
            m *= x**k
        out += m
    return sympy.expand(out)


def leibniz_det(rows):
    """Permutation-expansion determinant, independent of Bareiss."""
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = sign
        for i in range(n):
            term = term * rows[i][perm[i]]
        total = total + term
    return sympy.expand(total)


# parse


def test_parse_examples(P):
    assert P("s^4*(27*s^4 + 4*t^3)").terms == {(8, 0): 27, (4, 3): 4}
    assert P("0").terms == {}
    assert P("(s - t)*(s + t)").terms == {(2, 0): 1, (0, 2): -1}


def test_parse_rationals_and_unary(P):
    assert P("-1/3*t^2").terms == {(0, 2): F(-1, 3)}
    assert P("s^4 + 2/27*t^3") == P("s^4 + (2/27)*t^3")
    assert P("-(s - t)") == P("t - s")


@pytest.mark.parametrize("text", ["s +", "s^", "(s", "s ** 2", "2/0", "s t", ""])
def test_parse_errors_carry_position(text):
    with pytest.raises(ParseError) as info:
        parse(text, ST)
    assert isinstance(info.value.position, int)


def test_unknown_variable():
    with pytest.raises(UnknownVariable) as info:
        parse("s + z", ST)
    assert info.value.position == 4


def test_canonical_printing(P):
    assert str(P("4*t^3 + 27*s^4")) == "27*s^4 + 4*t^3"
    assert str(P("0")) == "0"
    assert str(P("-1/3*t^2")) == "-1/3*t^2"


# arith


def test_arith_examples(P):
    p = P("s^3 - 2*t + 5")
    assert arith(p, P("0"), "add") == p
    assert arith(P("s"), P("s"), "mul") == P("s^2")
    a6 = P("s^4 + 2/27*t^3")
    sq = arith(a6, 2, "pow")
    assert sq.terms == term_by_term_product(a6, a6)
    assert sq.terms == {(8, 0): 1, (4, 3): F(4, 27), (0, 6): F(4, 729)}


def test_mismatched_rings():
    with pytest.raises(VariableMismatch):
        MultiPoly.var("s", ("s", "t")) + MultiPoly.var("s", ("s",))


def test_exponent_overflow_is_an_error():
    x = MultiPoly.var("s", ST)
    with pytest.raises(OverflowError):
        x ** (2**63)


# divide_exact


def test_divide_exact_examples(P):
    assert divide_exact(P("27*s^8 + 4*s^4*t^3"), P("s^4")) == P("27*s^4 + 4*t^3")
    assert divide_exact(P("s + t"), P("s")) == "not divisible"
    p = P("s^2*t - 3")
    assert divide_exact(p, P("1")) == p
    with pytest.raises(ZeroDivisionError):
        p.divide_exact(P("0"))


# valuation and multiplicity


def test_valuation_examples(P):
    assert valuation_along(P("27*s^8 + 4*s^4*t^3"), P("s")) == 4
    assert valuation_along(P("s + t"), P("s")) == 0
    assert valuation_along(P("s^3*(27*s^3 + 4*t^6)"), P("s")) == 3
    with pytest.raises(ZeroPolynomialError):
        valuation_along(P("0"), P("s"))


def test_mult_at_point_examples(P):
    assert mult_at_point(P("s^4 + 2/27*t^3"), (0, 0)) == 3
    assert mult_at_point(P("7"), (F(1, 2), 3)) == 0
    assert mult_at_point(P("27*s^8 + 4*s^4*t^3"), (0, 0)) == 7
    assert mult_at_point(P("(s - 1)^2 + (t + 2)^3"), (1, -2)) == 2
    with pytest.raises(ZeroPolynomialError):
        mult_at_point(P("0"), (0, 0))


# gcd


def test_gcd_examples(P):
    assert gcd(P("s^2 - t^2"), P("s - t")) == P("s - t")
    p = P("-2*s^2*t + 4*t")
    assert gcd(p, p) == normalize(p) == P("s^2*t - 2*t")
    assert gcd(P("s^4*(27*s^4 + 4*t^3)"), P("s^2")) == P("s^2")


# resultant


def test_resultant_examples(P):
    assert resultant(P("s"), P("27*s^4 + 4*t^3"), "s") == P("4*t^3")
    r = resultant(P("t - s"), P("t + s"), "t")
    assert r in (P("2*s"), P("-2*s"))
    p = P("s^2 + t")
    assert resultant(p, p, "s").is_zero()
    with pytest.raises(DegenerateDegree):
        resultant(P("t"), P("s"), "s")


def test_resultant_against_leibniz_sylvester(P):
    # Sylvester matrix built by hand from sympy coefficients, determinant by permutations
    p, q = P("s^2*t + s - 3*t"), P("2*s^2 - t^2*s + 1")
    cp = sympy.Poly(to_sympy(p), s_).all_coeffs()
    cq = sympy.Poly(to_sympy(q), s_).all_coeffs()
    m, n = len(cp) - 1, len(cq) - 1
    rows = [[0] * i + cp + [0] * (n - 1 - i) for i in range(n)]
    rows += [[0] * i + cq + [0] * (m - 1 - i) for i in range(m)]
    assert sympy.expand(to_sympy(resultant(p, q, "s")) - leibniz_det(rows)) == 0


# squarefree


def test_squarefree_examples(P):
    assert squarefree_decomposition(P("s^4*(27*s^4 + 4*t^3)")) == [
        (P("27*s^4 + 4*t^3"), 1),
        (P("s"), 4),
    ]
    p = P("s^2 + t^3 + 1")
    assert squarefree_decomposition(p) == [(p, 1)]
    assert squarefree_decomposition(P("(s - t)^2*(s + t)^2")) == [(P("s^2 - t^2"), 2)]


# substitute


def test_substitute_examples():
    ring = ("s", "t", "lam")
    t = MultiPoly.var("t", ring)
    lam_s = MultiPoly.var("lam", ring) * MultiPoly.var("s", ring)
    assert t.substitute({"t": lam_s}, ring) == lam_s

    amb = ("s", "t", "x", "y")
    chart = ("T", "X", "Y", "w")
    f = parse("y^2 - x^3 - s^4*x - t^6", amb)
    w, T, X, Y = (MultiPoly.var(v, chart) for v in ("w", "T", "X", "Y"))
    pulled = f.substitute({"s": w, "t": T * w, "x": X * w**2, "y": Y * w**3}, chart)
    assert pulled == w**6 * parse("Y^2 - X^3 - X - T^6", chart)

    p = parse("s*t - 3", ST)
    ident = {v: MultiPoly.var(v, ST) for v in ST}
    assert p.substitute(ident, ST) == p


def test_substitute_incomplete_assignment():
    p = parse("s*t", ST)
    with pytest.raises(ValueError):
        p.substitute({"s": MultiPoly.var("u", ("u",))}, ("u",))


def test_rational_roots(P):
    roots, rest = rational_roots(P("(2*t - 1)^2*(t + 3)*(t^2 + 1)"), "t")
    assert roots == [(F(-3), 1), (F(1, 2), 2)]
    assert rest == P("t^2 + 1")


# properties

RING = settings(max_examples=1000, deadline=None)
SOME = settings(max_examples=200, deadline=None)


@pytest.mark.property
@RING
@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p + (-p)).is_zero()
    assert str(p + q) == str(q + p)
    assert (p * q).terms == term_by_term_product(p, q)


IRREDUCIBLE = ["s", "t", "s - t", "s + 2*t + 1", "27*s^4 + 4*t^3", "s^2 + t^2 + 1"]


@pytest.mark.property
@RING
@given(polys(nonzero=True), polys(nonzero=True), st.sampled_from(IRREDUCIBLE))
def test_valuation_additive(p, q, g):
    g = parse(g, ST)
    assert valuation_along(p * q, g) == valuation_along(p, g) + valuation_along(q, g)


@pytest.mark.property
@SOME
@given(polys(nonzero=True), polys(nonzero=True), rational_points())
def test_multiplicity_additive(p, q, b):
    assert mult_at_point(p * q, b) == mult_at_point(p, b) + mult_at_point(q, b)


@pytest.mark.property
@SOME
@given(polys())
def test_parse_print_roundtrip(p):
    assert parse(str(p), ST) == p


@SOME
@given(polys(max_terms=3, max_exp=2), polys(max_terms=3, max_exp=2), polys(max_terms=2, max_exp=2),
       st.sampled_from(ST))
@pytest.mark.property
def test_resultant_vanishes_iff_common_factor(p, q, h, v):
    for a, b in ((p, q), (p * h, q * h)):
        if a.degree(v) < 1 or b.degree(v) < 1:
            continue
        shared = gcd(a, b).degree(v) > 0
        assert resultant(a, b, v).is_zero() == shared
        # independent oracle
        assert (sympy.resultant(to_sympy(a), to_sympy(b), sympy.Symbol(v)) == 0) == shared


@pytest.mark.property
@SOME
@given(polys(max_terms=3, max_exp=2), polys(max_terms=3, max_exp=2))
def test_gcd_matches_sympy(p, q):
    if p.is_zero() and q.is_zero():
        return
    g = gcd(p, q)
    ref = sympy.gcd(to_sympy(p), to_sympy(q))
    assert sympy.simplify(to_sympy(g) / ref).is_constant()


@pytest.mark.property
@SOME
@given(polys(nonzero=True, max_terms=3, max_exp=2), polys(nonzero=True, max_terms=2, max_exp=2))
def test_squarefree_reexpands(p, h):
    f = p * h * h
    parts = squarefree_decomposition(f)
    prod = MultiPoly.constant(1, ST)
    for g, k in parts:
        prod = prod * g**k
    ratio = f.divide_exact(prod)
    assert ratio.is_constant() and not ratio.is_zero()
    exps = [k for _, k in parts]
    assert exps == sorted(exps) and len(set(exps)) == len(exps)
    for i, (a, _) in enumerate(parts):
        for b, _ in parts[i + 1:]:
            assert gcd(a, b).is_constant()
