"""Job configs and the commands they run; every result is a plain JSON-ready dict.

Config files are YAML::

    version: 1
    variables: [s, t]
    a4: "-1/3*t^2"
    a6: "s^4 + 2/27*t^3"
    components:                # optional, verified against the discriminant
      - {poly: "s", order: 4}
      - {poly: "27*s^4 + 4*t^3", order: 1}
    unit: "1"                  # optional constant of the decomposition
    points: [["0", "0"]]       # optional extra base points, rationals as "p/q"
    commands:
      - analyze
      - classify: {triple: [2, 3, 7]}
      - restrict: {point: ["0", "0"]}
      - contract: {fibre: "I0*", subset: [1, 2, 3]}
      - realizable: {target: concurring-lines, types: ["I0*"]}
      - realizable: {target: cusp-with-line, n_max: 12}
      - fundamental-cycle: {dynkin: "D4"}
      - fundamental-cycle: {matrix: [[-2, 1], [1, -3]]}
      - blowup: {ambient: [s, t, x, y], weights: {s: 1, t: 1, x: 2, y: 3},
                 equation: "y^2 - x^3 - s^4*x - t^6"}

A fibre target is either a name (``concurring-lines``, ``cusp-with-line``, a
Kodaira type such as ``I3``) or ``{multiplicities: {id: m}, points: [[[id, order], ...], ...]}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

import yaml

from . import blowup as bl
from .fibre import (
    FibreConfig,
    IntersectionMatrix,
    concurring_lines,
    contract,
    cusp_with_line,
    dynkin_matrix,
    kodaira_config,
    laufer_fundamental_cycle,
    realizable_any,
    realizable_as_contraction,
    to_dot,
)
from .poly import MultiPoly, parse, squarefree_decomposition, unit_of
from .tate import (
    ClassificationError,
    KodairaType,
    NonMinimal,
    cdv_indicator,
    classify,
    classify_normalized,
)
from .weierstrass import (
    BasePoint,
    DecompositionError,
    WeierstrassData,
    component_orders,
    discriminant,
    intersection_points,
    point_orders,
    restrict_to_pencil,
    verify_decomposition,
)

SCHEMA_VERSION = 1
COMMANDS = ("analyze", "classify", "restrict", "contract", "realizable", "fundamental-cycle", "blowup")


class ConfigInvalid(ValueError):
    pass


def rat(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def num(x):
    return "inf" if x == math.inf else int(x)


def triple_out(t):
    return [num(x) for x in t]


def _rational(text) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ConfigInvalid(f"not a rational number: {text!r}") from e


@dataclass
class Job:
    variables: Tuple[str, ...]
    weierstrass: Optional[WeierstrassData]
    components: Optional[List[Tuple[MultiPoly, int]]]
    unit: Fraction
    points: List[BasePoint]
    commands: List[Tuple[str, Dict[str, Any]]]
    normalize_tate: bool = False
    dot: Dict[str, str] = field(default_factory=dict)


def load_job(text: str) -> Job:
    try:
        data = yaml.safe_load(text) or {}
    except yaml.YAMLError as e:
        raise ConfigInvalid(f"config is not valid YAML: {e}") from e
    if not isinstance(data, dict):
        raise ConfigInvalid("config must be a mapping")
    version = data.get("version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ConfigInvalid(f"unsupported config version {version}")
    variables = tuple(str(v) for v in data.get("variables", ["s", "t"]))
    if len(variables) != 2:
        raise ConfigInvalid("the base chart needs exactly two variables")

    w = None
    if "a4" in data or "a6" in data:
        a4 = parse(str(data.get("a4", "0")), variables)
        a6 = parse(str(data.get("a6", "0")), variables)
        w = WeierstrassData(a4, a6, str(data.get("chart", "affine")))

    comps = None
    if data.get("components"):
        comps = []
        for item in data["components"]:
            if not isinstance(item, dict) or "poly" not in item:
                raise ConfigInvalid(f"component entry needs 'poly': {item!r}")
            comps.append((parse(str(item["poly"]), variables), int(item.get("order", 1))))
    unit = _rational(data.get("unit", 1))

    points = []
    for p in data.get("points") or []:
        if len(p) != 2:
            raise ConfigInvalid(f"a base point needs two coordinates: {p!r}")
        points.append(BasePoint(_rational(p[0]), _rational(p[1])))

    commands = []
    for c in data.get("commands") or []:
        if isinstance(c, str):
            name, params = c, {}
        elif isinstance(c, dict) and len(c) == 1:
            name, params = next(iter(c.items()))
            params = params or {}
        else:
            raise ConfigInvalid(f"cannot read command {c!r}")
        if name not in COMMANDS:
            raise ConfigInvalid(f"unknown command {name!r}")
        commands.append((name, params))
    return Job(variables, w, comps, unit, points, commands)


# -- serialization helpers -------------------------------------------------


def poly_out(p: MultiPoly) -> str:
    return str(p)


def point_out(b: BasePoint):
    return [rat(b.s), rat(b.t)]


def config_out(c: FibreConfig) -> dict:
    return {
        "components": [
            {"id": x.id, "multiplicity": x.multiplicity, "singularity": x.singularity}
            for x in c.components
        ],
        "points": [[[a, o] for a, o in p] for p in c.points],
        "section_component": c.section_component,
    }


def _type_out(triple, normalize: bool) -> dict:
    try:
        if normalize:
            k, twists = classify_normalized(triple)
            return {"type": str(k), "twists": twists}
        return {"type": str(classify(triple))}
    except NonMinimal:
        return {"type": "non-minimal"}


def fibre_from_spec(spec) -> FibreConfig:
    if isinstance(spec, str):
        if spec == "concurring-lines":
            return concurring_lines()
        if spec == "cusp-with-line":
            return cusp_with_line()
        try:
            return kodaira_config(KodairaType.parse(spec))
        except ValueError as e:
            raise ConfigInvalid(str(e)) from e
    if isinstance(spec, dict):
        mults = {int(k): int(v) for k, v in (spec.get("multiplicities") or {}).items()}
        pts = [[(int(a), int(o)) for a, o in p] for p in spec.get("points") or []]
        section = spec.get("section")
        try:
            return FibreConfig.build(mults, pts, None if section is None else int(section))
        except ValueError as e:
            raise ConfigInvalid(str(e)) from e
    raise ConfigInvalid(f"cannot read fibre {spec!r}")


# -- commands ----------------------------------------------------------------


def _need_weierstrass(job: Job) -> WeierstrassData:
    if job.weierstrass is None:
        raise ConfigInvalid("this command needs a4 and a6")
    return job.weierstrass


def _decomposition(job: Job, w: WeierstrassData):
    disc = discriminant(w)
    if job.components:
        try:
            return verify_decomposition(w, job.components, job.unit), "supplied"
        except DecompositionError as e:
            raise ConfigInvalid(f"decomposition rejected: {e}") from e
    if disc.is_constant():
        return None, "none"
    sqf = squarefree_decomposition(disc)
    prod = MultiPoly.constant(1, w.variables)
    for g, k in sqf:
        prod = prod * g**k
    return verify_decomposition(w, sqf, unit_of(disc) / unit_of(prod)), "square-free"


def _pencil_out(w: WeierstrassData, b: BasePoint, normalize: bool) -> dict:
    r = restrict_to_pencil(w, b)
    out = {
        "line": f"({w.variables[0]}, {w.variables[1]}) = ({rat(b.s)} + u, {rat(b.t)} + lam*u)",
        "a4": poly_out(r.a4_line),
        "a6": poly_out(r.a6_line),
        "discriminant": poly_out(r.disc_line),
        "generic_orders": triple_out(r.generic_orders),
        "exceptional_slopes": [poly_out(p) for p in r.exceptional_slopes],
        "vertical_orders": triple_out(r.vertical_orders),
        "vertical_type": _type_out(r.vertical_orders, normalize)["type"] if r.vertical_orders[2] != math.inf else "degenerate",
    }
    out.update(_type_out(r.generic_orders, normalize))
    return out


def _point_out(w: WeierstrassData, b: BasePoint, normalize: bool) -> dict:
    m4, m6, md = point_orders(w, b)
    violates = m4 >= 4 and m6 >= 6
    out = {
        "point": point_out(b),
        "orders": triple_out((m4, m6, md)),
        "verdict": "violates" if violates else "passes",
        "cdv": cdv_indicator(w, b),
        "pencil": _pencil_out(w, b, normalize),
    }
    if violates:
        out["detail"] = f"violates: mult a4 = {num(m4)}, mult a6 = {num(m6)}"
    return out


def cmd_analyze(job: Job, params: dict) -> dict:
    w = _need_weierstrass(job)
    disc = discriminant(w)
    out: Dict[str, Any] = {"discriminant": poly_out(disc)}
    if disc.is_zero():
        raise ConfigInvalid("discriminant vanishes identically")
    out["squarefree"] = [[poly_out(g), k] for g, k in squarefree_decomposition(disc)] if not disc.is_constant() else []
    d, source = _decomposition(job, w)
    out["decomposition_source"] = source
    comps_out = []
    points: List[BasePoint] = []
    unresolved = []
    if d is not None:
        out["decomposition"] = {
            "unit": rat(d.unit),
            "components": [[poly_out(g), k] for g, k in d.components],
        }
        for i, (g, _) in enumerate(d.components):
            triple = component_orders(w, d, i)
            entry = {"component": poly_out(g), "orders": triple_out(triple)}
            try:
                entry.update(_type_out(triple, job.normalize_tate))
            except ClassificationError as e:
                raise ConfigInvalid(f"component {g}: {e}") from e
            comps_out.append(entry)
        for i in range(len(d.components)):
            for j in range(i + 1, len(d.components)):
                pts, rest = intersection_points(d, i, j)
                points.extend(pts)
                unresolved.extend(
                    {"components": [poly_out(d.components[i][0]), poly_out(d.components[j][0])], "factor": poly_out(f)}
                    for f in rest
                )
    out["components"] = comps_out
    out["unresolved_intersections"] = unresolved
    for b in job.points:
        if b not in points:
            points.append(b)
    points = sorted(set(points), key=lambda b: (b.s, b.t))
    try:
        out["points"] = [_point_out(w, b, job.normalize_tate) for b in points]
    except ClassificationError as e:
        raise ConfigInvalid(str(e)) from e
    for p in out["points"]:
        t = p["pencil"]["type"]
        if t not in ("I0", "non-minimal"):
            name = f"pencil_{p['point'][0]}_{p['point'][1]}".replace("/", "_").replace("-", "m")
            job.dot[name] = to_dot(kodaira_config(KodairaType.parse(t)), name=name)
    return out


def cmd_classify(job: Job, params: dict) -> dict:
    triple = params.get("triple")
    if not triple or len(triple) != 3:
        raise ConfigInvalid("classify needs triple: [m4, m6, mD]")
    triple = tuple(math.inf if x in ("inf", math.inf) else int(x) for x in triple)
    try:
        res = _type_out(triple, job.normalize_tate)
    except ClassificationError as e:
        raise ConfigInvalid(str(e)) from e
    return {"triple": triple_out(triple), **res}


def cmd_restrict(job: Job, params: dict) -> dict:
    w = _need_weierstrass(job)
    p = params.get("point", ["0", "0"])
    b = BasePoint(_rational(p[0]), _rational(p[1]))
    try:
        return {"point": point_out(b), **_pencil_out(w, b, job.normalize_tate)}
    except ClassificationError as e:
        raise ConfigInvalid(str(e)) from e


def cmd_contract(job: Job, params: dict) -> dict:
    source = fibre_from_spec(params.get("fibre"))
    subset = sorted(int(i) for i in params.get("subset") or [])
    try:
        result = contract(source, subset)
    except ValueError as e:
        raise ConfigInvalid(str(e)) from e
    name = f"contract_{params.get('fibre')}_{'_'.join(map(str, subset)) or 'none'}".replace("*", "star")
    job.dot[name + "_source"] = to_dot(source, name=name + "_source", contracted=subset)
    job.dot[name + "_result"] = to_dot(result, name=name + "_result")
    return {"fibre": str(params.get("fibre")), "subset": subset, "result": config_out(result)}


def cmd_realizable(job: Job, params: dict) -> dict:
    target = fibre_from_spec(params.get("target"))
    if params.get("types"):
        try:
            kinds = [KodairaType.parse(str(t)) for t in params["types"]]
        except ValueError as e:
            raise ConfigInvalid(str(e)) from e
        results = [realizable_as_contraction(target, k) for k in kinds]
        bound = None
    else:
        bound = int(params.get("n_max", 12))
        results = realizable_any(target, bound)
    entries = []
    for r in results:
        entries.append({"type": str(r.kodaira), "found": r.found, "witness": list(r.witness) if r.found else None})
        if r.found:
            name = f"witness_{r.kodaira}".replace("*", "star")
            job.dot[name] = to_dot(kodaira_config(r.kodaira), name=name, contracted=r.witness)
    out = {
        "target": str(params.get("target")) if isinstance(params.get("target"), str) else config_out(target),
        "results": entries,
        "verdict": "yes" if any(r.found for r in results) else "no",
    }
    if bound is not None:
        out["n_bound"] = bound
        out["statement"] = f"search covers every singular Kodaira type with n <= {bound}"
    return out


def cmd_fundamental_cycle(job: Job, params: dict) -> dict:
    if "dynkin" in params:
        spec = str(params["dynkin"]).strip().upper()
        m = dynkin_matrix(spec[0], int(spec[1:]))
    elif "matrix" in params:
        m = IntersectionMatrix(tuple(tuple(int(x) for x in r) for r in params["matrix"]))
    else:
        raise ConfigInvalid("fundamental-cycle needs dynkin or matrix")
    try:
        z, k = laufer_fundamental_cycle(m)
    except ValueError as e:
        raise ConfigInvalid(str(e)) from e
    return {"matrix": [list(r) for r in m.rows], "cycle": list(z), "k": k, "self_intersection": -k}


def cmd_blowup(job: Job, params: dict) -> dict:
    weights = params.get("weights") or {}
    if not weights:
        raise ConfigInvalid("blowup needs weights")
    ambient = tuple(str(v) for v in params.get("ambient") or (job.variables + ("x", "y")))
    if "equation" in params:
        f = parse(str(params["equation"]), ambient)
    else:
        w = _need_weierstrass(job)
        f = parse("y^2 - x^3", ambient) - (
            parse("x", ambient) * w.a4.with_variables(ambient) + w.a6.with_variables(ambient)
        )
    wv = bl.WeightVector(tuple(weights), tuple(int(a) for a in weights.values()))
    if f.is_zero():
        raise ConfigInvalid("blowup equation is zero")
    d, crepant = bl.discrepancy(f, wv)
    cs = bl.charts(wv, ambient)
    chart_reports = []
    for c in cs:
        r = bl.strict_transform(f, c, wv)
        entry = {
            "chart": c.chart_variable,
            "coordinates": list(c.variables),
            "substitution": {v: poly_out(p) for v, p in c.substitution.items()},
            "group_order": c.group_order,
            "strict_equation": poly_out(r.strict_equation),
        }
        if c.group_order == 1:
            pb = bl.form_pullback_discrepancy(f, wv, c)
            entry["form_pullback"] = {
                "denominator_variable": pb.denominator_variable,
                "numerator_w_order": pb.numerator_order,
                "denominator_w_order": pb.denominator_order,
                "discrepancy": pb.discrepancy,
                "agrees": pb.discrepancy == d,
                "generator_on_exceptional": pb.generator_on_exceptional,
            }
        else:
            sl = bl.singular_locus_check(f, c, wv)
            entry["singular_locus"] = {
                "vanishing_coordinates": sl["vanishing_coordinates"],
                "restricted_equation": poly_out(sl["restricted_equation"]),
                "misses_singular_locus": sl["misses_singular_locus"],
            }
        height = int(params.get("search_height", 1))
        hits = bl.rational_singular_search(r.strict_equation, height)
        entry["singular_search"] = {
            "height": height,
            "hits": [{k: rat(v) for k, v in h.items()} for h in hits],
            "finding": "no smoothness obstruction found" if not hits else "singular points found",
        }
        chart_reports.append(entry)
    transitions = {}
    for a in cs:
        for b in cs:
            if a.chart_variable != b.chart_variable:
                transitions[f"{a.chart_variable}->{b.chart_variable}"] = bl.transition_check(f, wv, a, b)
    return {
        "equation": poly_out(f),
        "weights": {v: a for v, a in zip(wv.blown_variables, wv.weights)},
        "exceptional_order": bl.weighted_order(f, wv),
        "discrepancy": d,
        "crepant": crepant,
        "exceptional_fibre_dimension": bl.exceptional_fibre_dimension(wv),
        "charts": chart_reports,
        "transitions_agree": transitions,
    }


HANDLERS = {
    "analyze": cmd_analyze,
    "classify": cmd_classify,
    "restrict": cmd_restrict,
    "contract": cmd_contract,
    "realizable": cmd_realizable,
    "fundamental-cycle": cmd_fundamental_cycle,
    "blowup": cmd_blowup,
}


def run_command(job: Job, name: str, params: dict) -> Tuple[dict, Dict[str, str]]:
    """Run one command; returns its result and any DOT texts it produced."""
    job.dot = {}
    result = HANDLERS[name](job, params)
    return {"command": name, **result}, dict(job.dot)


def input_echo(job: Job) -> dict:
    out: Dict[str, Any] = {"variables": list(job.variables)}
    if job.weierstrass is not None:
        out["a4"] = poly_out(job.weierstrass.a4)
        out["a6"] = poly_out(job.weierstrass.a6)
    if job.components:
        out["components"] = [[poly_out(g), k] for g, k in job.components]
        out["unit"] = rat(job.unit)
    if job.points:
        out["points"] = [point_out(b) for b in job.points]
    return out
