"""Weighted blow-ups of hypersurfaces in affine space, chart by chart."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .poly import MultiPoly, gcd
from .poly.algebra import _det_bareiss

W = "w"


@dataclass(frozen=True)
class WeightVector:
    blown_variables: Tuple[str, ...]
    weights: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "blown_variables", tuple(self.blown_variables))
        object.__setattr__(self, "weights", tuple(int(a) for a in self.weights))
        if len(self.blown_variables) != len(self.weights):
            raise ValueError("one weight per blown variable")
        if len(self.blown_variables) < 2:
            raise ValueError("need at least two blown variables")
        if len(set(self.blown_variables)) != len(self.blown_variables):
            raise ValueError("repeated blown variable")
        if any(a < 1 for a in self.weights):
            raise ValueError("weights must be positive")

    def weight(self, v: str) -> int:
        """Weight of ``v``; variables that are not blown up have weight 0."""
        if v in self.blown_variables:
            return self.weights[self.blown_variables.index(v)]
        return 0


@dataclass(frozen=True)
class Chart:
    chart_variable: str
    variables: Tuple[str, ...]
    substitution: Dict[str, MultiPoly]
    group_order: int

    def coordinate(self, v: str) -> Optional[str]:
        """The chart coordinate standing for ambient ``v`` (None for the chart variable)."""
        if v == self.chart_variable:
            return None
        up = v.upper()
        return up if up in self.variables else v

    def action_weights(self, wv: WeightVector) -> Dict[str, int]:
        """Exponents of the cyclic group action on the chart coordinates, mod group order."""
        a = self.group_order
        out = {W: 1 % a}
        for v in self.substitution:
            c = self.coordinate(v)
            if c is not None:
                out[c] = (-wv.weight(v)) % a
        return out


@dataclass(frozen=True)
class StrictTransformReport:
    chart: str
    exceptional_order: int
    strict_equation: MultiPoly
    discrepancy: int
    crepant: bool
    through_center: bool


def weighted_order(f: MultiPoly, wv: WeightVector) -> int:
    if f.is_zero():
        raise ValueError("weighted order of the zero polynomial")
    ws = [wv.weight(v) for v in f.variables]
    return min(sum(a * k for a, k in zip(ws, e)) for e in f.terms)


def charts(wv: WeightVector, ambient: Sequence[str] = None) -> List[Chart]:
    """One chart per blown variable: v -> V w^{a_v}, the chart variable's V set to 1."""
    ambient = tuple(ambient or wv.blown_variables)
    missing = set(wv.blown_variables) - set(ambient)
    if missing:
        raise ValueError(f"blown variables {sorted(missing)} not in {ambient}")
    if W in ambient:
        raise ValueError(f"the name {W!r} is reserved for the exceptional coordinate")
    out = []
    for c in wv.blown_variables:
        names = []
        for v in ambient:
            if v == c:
                continue
            names.append(v.upper() if v in wv.blown_variables else v)
        names.append(W)
        if len(set(names)) != len(names):
            raise ValueError(f"chart coordinate names collide: {names}")
        names = tuple(names)
        w = MultiPoly.var(W, names)
        sub = {}
        for v in ambient:
            a = wv.weight(v)
            if v == c:
                sub[v] = w**a
            elif a:
                sub[v] = MultiPoly.var(v.upper(), names) * w**a
            else:
                sub[v] = MultiPoly.var(v, names)
        out.append(Chart(c, names, sub, wv.weight(c)))
    return out


def chart_for(wv: WeightVector, ambient: Sequence[str], variable: str) -> Chart:
    for c in charts(wv, ambient):
        if c.chart_variable == variable:
            return c
    raise KeyError(variable)


def total_transform(f: MultiPoly, c: Chart) -> MultiPoly:
    return f.substitute(c.substitution, c.variables)


def strict_transform(f: MultiPoly, c: Chart, wv: WeightVector) -> StrictTransformReport:
    """Pull back along the chart and divide out the largest power of w."""
    m = weighted_order(f, wv)
    total = total_transform(f, c)
    w = MultiPoly.var(W, c.variables)
    strict = total.divide_exact(w**m)
    if w.divides(strict):
        raise AssertionError("strict transform still divisible by w")  # pragma: no cover
    d, crepant = discrepancy(f, wv)
    return StrictTransformReport(c.chart_variable, m, strict, d, crepant, m > 0)


def discrepancy(f: MultiPoly, wv: WeightVector) -> Tuple[int, bool]:
    """Discrepancy of the exceptional divisor: sum of weights - 1 - weighted order."""
    d = sum(wv.weights) - 1 - weighted_order(f, wv)
    return d, d == 0


def _w_order(p: MultiPoly) -> int:
    return p.min_degree(W)


@dataclass(frozen=True)
class PullbackCheck:
    chart: str
    denominator_variable: str
    numerator_order: int
    denominator_order: int
    discrepancy: int
    generator_on_exceptional: bool


def form_pullback_discrepancy(f: MultiPoly, wv: WeightVector, c: Chart) -> PullbackCheck:
    """Pull back the residue form (wedge of du, u != v) / (df/dv) through a smooth chart.

    The numerator is the Jacobian minor of the chart map on the coordinates other
    than the one replacing v; the denominator is the pulled-back partial
    derivative.  The difference of their w-orders is the discrepancy.
    """
    if c.group_order != 1:
        raise ValueError("the form check needs a chart of weight 1")
    candidates = [
        v for v in f.variables
        if v != c.chart_variable and v in wv.blown_variables and not f.derivative(v).is_zero()
    ]
    if not candidates:
        raise ValueError("f has no usable partial derivative")
    v = candidates[-1]
    others = [u for u in f.variables if u != v]
    cols = [x for x in c.variables if x != c.coordinate(v)]
    rows = [[c.substitution[u].derivative(x) for x in cols] for u in others]
    minor = _det_bareiss(rows)
    den = total_transform(f.derivative(v), c)
    num_order, den_order = _w_order(minor), _w_order(den)

    # the chart form (wedge of the other coordinates) / (d strict / dV) only
    # generates along E if E meets the strict transform here and that partial
    # does not vanish on any component of the intersection
    strict = strict_transform(f, c, wv).strict_equation
    partial = strict.derivative(c.coordinate(v)).substitute({W: 0}, c.variables)
    on_e = strict.substitute({W: 0}, c.variables)
    generator = (
        not partial.is_zero()
        and not on_e.is_constant()
        and gcd(partial, on_e).is_constant()
    )
    return PullbackCheck(c.chart_variable, v, num_order, den_order, num_order - den_order, generator)


def singular_locus_check(f: MultiPoly, c: Chart, wv: WeightVector) -> dict:
    """Restrict the strict equation to the fixed locus of the chart's group action."""
    if c.group_order == 1:
        return {"chart_singular": False}
    weights = c.action_weights(wv)
    fixed_zero = sorted(x for x, a in weights.items() if a != 0)
    strict = strict_transform(f, c, wv).strict_equation
    restricted = strict.substitute({x: 0 for x in fixed_zero}, c.variables)
    return {
        "chart_singular": True,
        "vanishing_coordinates": fixed_zero,
        "restricted_equation": restricted,
        "misses_singular_locus": restricted.is_constant() and not restricted.is_zero(),
    }


def _grid(height: int):
    vals = {Fraction(p, q) for q in range(1, height + 1) for p in range(-height, height + 1)}
    return sorted(vals)


def rational_singular_search(g: MultiPoly, height: int = 2) -> List[Dict[str, Fraction]]:
    """Rational points of small height where g and all its partials vanish.

    An empty result is no proof of smoothness, only the absence of an
    obstruction among the points tried.
    """
    used = [v for v in g.variables]
    partials = [g.derivative(v) for v in used]
    hits = []
    grid = _grid(height)
    for vals in itertools.product(grid, repeat=len(used)):
        pt = dict(zip(used, vals))
        if g.evaluate(pt) == 0 and all(p.evaluate(pt) == 0 for p in partials):
            hits.append(pt)
    return hits


def transition_check(f: MultiPoly, wv: WeightVector, c1: Chart, c2: Chart) -> bool:
    """Compare the strict transforms of two charts on their overlap.

    Chart c2's coordinate for c1's variable is written r^{a1}; then c1's
    coordinates are w1 = r w2 and U = U'/r^{a_u}, and the two strict equations
    must agree up to the unit r^m.  Negative powers of r are cleared by r^D.
    """
    if c1.chart_variable == c2.chart_variable:
        return True
    m = weighted_order(f, wv)
    s1 = strict_transform(f, c1, wv).strict_equation
    s2 = strict_transform(f, c2, wv).strict_equation
    a1 = c1.group_order
    pivot = c2.coordinate(c1.chart_variable)
    names = tuple("r" if x == pivot else x for x in c2.variables)
    if len(set(names)) != len(names):
        raise ValueError("coordinate name r is taken")
    ring = names

    # weights of c1's coordinates
    coord_weight = {W: 0}
    coord_target = {W: W}
    for v in c1.substitution:
        x = c1.coordinate(v)
        if x is None:
            continue
        coord_weight[x] = wv.weight(v)
        coord_target[x] = None if v == c2.chart_variable else c2.coordinate(v)
    D = max(sum(coord_weight[x] * k for x, k in zip(c1.variables, e)) for e in s1.terms)

    lhs = MultiPoly.zero(ring)
    for e, coeff in s1.terms.items():
        exps = {x: 0 for x in ring}
        r_power = D
        for x, k in zip(c1.variables, e):
            if not k:
                continue
            r_power -= coord_weight[x] * k
            if x == W:
                exps[W] += k
                r_power += k
            elif coord_target[x] is not None:
                exps[coord_target[x]] += k
        exps["r"] += r_power + m
        lhs = lhs + MultiPoly.monomial(exps, ring, coeff)

    r = MultiPoly.var("r", ring)
    rhs = s2.substitute(
        {x: (r**a1 if x == pivot else MultiPoly.var(x, ring)) for x in c2.variables}, ring
    ) * r**D
    return lhs == rhs


def exceptional_fibre_dimension(wv: WeightVector) -> int:
    """Dimension of the exceptional locus of the strict transform over the centre."""
    return len(wv.blown_variables) - 2
