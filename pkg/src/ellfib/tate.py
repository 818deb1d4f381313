"""Kodaira types from order triples, and the minimality / cDV checks built on them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .poly import MultiPoly, ZeroPolynomialError, mult_at_point
from .weierstrass import (
    BasePoint,
    DiscriminantDecomposition,
    WeierstrassData,
    component_orders,
    discriminant,
    point_orders,
)

INF = math.inf

TAGS = ("I0", "In", "InStar", "II", "III", "IV", "IVStar", "IIIStar", "IIStar")


@dataclass(frozen=True, order=True)
class KodairaType:
    tag: str
    n: int = 0

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"unknown Kodaira tag {self.tag!r}")
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if self.tag == "In" and self.n < 1:
            raise ValueError("I_n needs n >= 1")
        if self.tag not in ("In", "InStar") and self.n:
            raise ValueError(f"{self.tag} takes no parameter")

    @classmethod
    def parse(cls, text: str) -> "KodairaType":
        """Read names like ``I0``, ``I4``, ``I1*``, ``IV*``, ``II``."""
        s = text.strip().replace("_", "").replace("^", "")
        star = s.endswith("*")
        if star:
            s = s[:-1]
        named = {"II": "II", "III": "III", "IV": "IV"}
        if s in named:
            return cls(named[s] + ("Star" if star else ""))
        if s.startswith("I") and s[1:].isdigit():
            n = int(s[1:])
            if star:
                return cls("InStar", n)
            return cls("I0") if n == 0 else cls("In", n)
        raise ValueError(f"cannot read Kodaira type {text!r}")

    def __str__(self):
        if self.tag == "I0":
            return "I0"
        if self.tag == "In":
            return f"I{self.n}"
        if self.tag == "InStar":
            return f"I{self.n}*"
        return self.tag.replace("Star", "*")


class ClassificationError(ValueError):
    pass


class NonMinimal(ClassificationError):
    """The triple can be reduced by (4, 6, 12): the Weierstrass model is not minimal."""


class NoRow(ClassificationError):
    """No row of the table matches; the triple cannot come from a Weierstrass model."""


def classify(triple) -> KodairaType:
    m4, m6, md = triple
    if md == INF:
        raise NoRow("discriminant vanishes identically")
    if m4 >= 4 and m6 >= 6:
        raise NonMinimal(f"{_fmt(triple)} is not minimal")
    if md == 0:
        return KodairaType("I0")
    if m4 == 0 and m6 == 0:
        return KodairaType("In", md)
    if md == 2 and m6 == 1 and m4 >= 1:
        return KodairaType("II")
    if md == 3 and m4 == 1 and m6 >= 2:
        return KodairaType("III")
    if md == 4 and m6 == 2 and m4 >= 2:
        return KodairaType("IV")
    if md == 6 and ((m4 == 2 and m6 >= 3) or (m4 >= 3 and m6 == 3)):
        return KodairaType("InStar", 0)
    if m4 == 2 and m6 == 3 and md > 6:
        return KodairaType("InStar", md - 6)
    if md == 8 and m6 == 4 and m4 >= 3:
        return KodairaType("IVStar")
    if md == 9 and m4 == 3 and m6 >= 5:
        return KodairaType("IIIStar")
    if md == 10 and m6 == 5 and m4 >= 4:
        return KodairaType("IIStar")
    raise NoRow(f"no row matches {_fmt(triple)}")


def classify_normalized(triple) -> Tuple[KodairaType, int]:
    """Subtract (4, 6, 12) while non-minimal, then classify; returns (type, twists)."""
    m4, m6, md = triple
    if m4 == INF and m6 == INF:
        raise NoRow("a4 and a6 both vanish")
    twists = 0
    while m4 >= 4 and m6 >= 6:
        m4, m6, md = m4 - 4, m6 - 6, md - 12
        twists += 1
    return classify((m4, m6, md)), twists


def _fmt(triple):
    return "(" + ", ".join("inf" if x == INF else str(x) for x in triple) + ")"


def generic_fibre_types(w: WeierstrassData, d: DiscriminantDecomposition) -> List[Tuple[MultiPoly, KodairaType]]:
    out = []
    for i, (g, _) in enumerate(d.components):
        out.append((g, classify(component_orders(w, d, i))))
    return out


def surface_minimality_check(a4: MultiPoly, a6: MultiPoly, b=0) -> str:
    """Minimality at ``b`` of a Weierstrass surface over a one-parameter disc."""
    def mult(p):
        used = p.used_variables()
        if len(used) > 1:
            raise ValueError("expected univariate data")
        try:
            return mult_at_point(p, {(used or p.variables)[0]: b})
        except ZeroPolynomialError:
            return INF

    return "non-minimal" if mult(a4) >= 4 and mult(a6) >= 6 else "minimal"


@dataclass(frozen=True)
class PointVerdict:
    point: BasePoint
    orders: tuple
    verdict: str  # "passes" | "violates"


def threefold_necessary_condition(w: WeierstrassData, candidates: Sequence[BasePoint]) -> List[PointVerdict]:
    out = []
    for b in candidates:
        m4, m6, md = point_orders(w, b)
        verdict = "violates" if (m4 >= 4 and m6 >= 6) else "passes"
        out.append(PointVerdict(b, (m4, m6, md), verdict))
    return out


def cdv_indicator(w: WeierstrassData, b: BasePoint) -> str:
    """``"k=0"`` on the cDV side, ``"k>=1"`` when both multiplicity thresholds are met."""
    m4, m6, _ = point_orders(w, b)
    return "k>=1" if (m4 >= 4 and m6 >= 6) else "k=0"


def on_discriminant(w: WeierstrassData, b: BasePoint) -> bool:
    return discriminant(w).evaluate(dict(zip(w.variables, b.coords()))) == 0
