"""Fibres as configurations of components meeting at contact points.

A contact point is a sorted tuple of branches ``(component id, order)``.  A
component may appear twice at one point: two transverse own branches form a
node, and a pair of own branches one of which has order >= 2 is how a cusp is
stored.  The ``singularity`` label of each component is derived from its
points, so it always agrees with the contact data.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..tate import KodairaType
from .lattice import IntersectionMatrix, affine_edges, affine_matrix, multiplicities_from_matrix

Branch = Tuple[int, int]
Point = Tuple[Branch, ...]

# largest n accepted for I_n and I_n^*
N_BOUND = 64

SINGULARITIES = ("smooth", "node", "cusp")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Component:
    id: int
    multiplicity: int
    singularity: str = "smooth"
    self_intersection: Optional[int] = field(default=None, compare=False)


def _point(branches: Iterable[Sequence[int]]) -> Point:
    out = tuple(sorted((int(c), int(o)) for c, o in branches))
    for _, o in out:
        if o < 1:
            raise ConfigError("branch contact order must be >= 1")
    return out


def _label(cid: int, points: Sequence[Point]) -> str:
    label = "smooth"
    for p in points:
        own = [o for c, o in p if c == cid]
        if len(own) >= 2:
            if any(o >= 2 for o in own):
                return "cusp"
            label = "node"
    return label


@dataclass(frozen=True)
class FibreConfig:
    components: Tuple[Component, ...]
    points: Tuple[Point, ...]
    section_component: Optional[int] = None

    def __post_init__(self):
        points = tuple(sorted(_point(p) for p in self.points))
        comps = sorted(self.components, key=lambda c: c.id)
        ids = [c.id for c in comps]
        if not ids:
            raise ConfigError("a fibre needs at least one component")
        if len(set(ids)) != len(ids):
            raise ConfigError("duplicate component ids")
        known = set(ids)
        for p in points:
            if len(p) < 2:
                raise ConfigError(f"contact point {p} has fewer than two branches")
            for c, _ in p:
                if c not in known:
                    raise ConfigError(f"contact point references unknown component {c}")
        labelled = tuple(
            Component(c.id, int(c.multiplicity), _label(c.id, points), c.self_intersection)
            for c in comps
        )
        for c in labelled:
            if c.multiplicity < 1:
                raise ConfigError("multiplicities must be positive")
        object.__setattr__(self, "components", labelled)
        object.__setattr__(self, "points", points)
        if self.section_component is not None:
            sec = self.component(self.section_component)
            if sec.multiplicity != 1:
                raise ConfigError("the section meets a component of multiplicity 1")
        if not self._connected():
            raise ConfigError("configuration is not connected")

    @classmethod
    def build(cls, multiplicities: Dict[int, int], points, section=None, self_intersections=None):
        si = self_intersections or {}
        comps = tuple(Component(i, m, "smooth", si.get(i)) for i, m in multiplicities.items())
        return cls(comps, tuple(points), section)

    # -- queries ----------------------------------------------------------

    @property
    def ids(self) -> Tuple[int, ...]:
        return tuple(c.id for c in self.components)

    def component(self, cid: int) -> Component:
        for c in self.components:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def multiplicity(self, cid: int) -> int:
        return self.component(cid).multiplicity

    def _connected(self) -> bool:
        ids = self.ids
        parent = {i: i for i in ids}

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for p in self.points:
            first = find(p[0][0])
            for c, _ in p[1:]:
                parent[find(c)] = first
        return len({find(i) for i in ids}) == 1

    def intersection_matrix(self, default_self: int = -2) -> IntersectionMatrix:
        """Pairwise intersection numbers from the contacts; a pair of branches at a
        point contributes the smaller of their contact orders."""
        ids = self.ids
        pos = {c: k for k, c in enumerate(ids)}
        n = len(ids)
        rows = [[0] * n for _ in range(n)]
        for k, c in enumerate(self.components):
            rows[k][k] = default_self if c.self_intersection is None else c.self_intersection
        for p in self.points:
            for (a, oa), (b, ob) in itertools.combinations(p, 2):
                if a != b:
                    rows[pos[a]][pos[b]] += min(oa, ob)
                    rows[pos[b]][pos[a]] += min(oa, ob)
        return IntersectionMatrix(tuple(tuple(r) for r in rows))

    def invariant(self):
        """Relabeling-invariant summary used to reject non-isomorphic pairs early."""
        mults = self.multiplicity
        comps = sorted((c.multiplicity, c.singularity, self._signature(c.id)) for c in self.components)
        shapes = sorted(tuple(sorted((mults(c), o) for c, o in p)) for p in self.points)
        return (len(self.components), tuple(comps), tuple(shapes))

    def _signature(self, cid: int):
        sig = []
        for p in self.points:
            own = sorted(o for c, o in p if c == cid)
            if own:
                others = sorted((self.multiplicity(c), o) for c, o in p if c != cid)
                sig.append((tuple(own), tuple(others)))
        return tuple(sorted(sig))


# -- Kodaira fibres -------------------------------------------------------


def kodaira_config(k: KodairaType) -> FibreConfig:
    """The standard configuration of a singular Kodaira fibre; the section meets component 0."""
    tag, n = k.tag, k.n
    if tag in ("In", "InStar") and n > N_BOUND:
        raise ConfigError(f"n = {n} exceeds the bound {N_BOUND}")
    if tag == "I0":
        raise ConfigError("I0 is a smooth fibre and has no singular configuration")
    if tag == "In":
        if n == 1:
            return FibreConfig.build({0: 1}, [((0, 1), (0, 1))], 0, {0: 0})
        if n == 2:
            return FibreConfig.build({0: 1, 1: 1}, [((0, 1), (1, 1))] * 2, 0)
        return FibreConfig.build(
            {i: 1 for i in range(n)}, [((i, 1), ((i + 1) % n, 1)) for i in range(n)], 0
        )
    if tag == "II":
        return FibreConfig.build({0: 1}, [((0, 1), (0, 2))], 0, {0: 0})
    if tag == "III":
        return FibreConfig.build({0: 1, 1: 1}, [((0, 2), (1, 2))], 0)
    if tag == "IV":
        return FibreConfig.build({0: 1, 1: 1, 2: 1}, [((0, 1), (1, 1), (2, 1))], 0)
    kind, rank = {
        "InStar": ("D", n + 4),
        "IVStar": ("E", 6),
        "IIIStar": ("E", 7),
        "IIStar": ("E", 8),
    }[tag]
    size, edges = affine_edges(kind, rank)
    mults = multiplicities_from_matrix(affine_matrix(kind, rank))
    return FibreConfig.build(
        {i: mults[i] for i in range(size)},
        [((a, 1), (b, 1)) for a, b in edges],
        0,
    )


def kodaira_types(n_max: int) -> List[KodairaType]:
    """All singular Kodaira types with n <= n_max, in a fixed order."""
    out = [KodairaType("In", n) for n in range(1, n_max + 1)]
    out += [KodairaType("InStar", n) for n in range(0, n_max + 1)]
    out += [KodairaType(t) for t in ("II", "III", "IV", "IVStar", "IIIStar", "IIStar")]
    return out


# -- contraction ----------------------------------------------------------


def contract(c: FibreConfig, subset: Iterable[int]) -> FibreConfig:
    """Collapse each connected group of ``subset`` to a point.

    Survivors keep their ids and multiplicities.  All surviving branches at the
    contact points of one group end up at a single new point; points left with
    fewer than two branches are ordinary smooth points and are dropped.
    """
    subset = set(subset)
    unknown = subset - set(c.ids)
    if unknown:
        raise ConfigError(f"unknown components {sorted(unknown)}")
    if c.section_component is not None and c.section_component in subset:
        raise ConfigError("cannot contract the component meeting the section")
    if subset == set(c.ids):
        raise ConfigError("cannot contract every component")
    if not subset:
        return c

    parent = {i: i for i in subset}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for p in c.points:
        inside = [x for x, _ in p if x in subset]
        for x in inside[1:]:
            parent[find(x)] = find(inside[0])

    merged: Dict[int, List[Branch]] = {}
    kept: List[Point] = []
    for p in c.points:
        inside = [x for x, _ in p if x in subset]
        if not inside:
            kept.append(p)
            continue
        merged.setdefault(find(inside[0]), []).extend(b for b in p if b[0] not in subset)
    new_points = kept + [tuple(bs) for bs in merged.values() if len(bs) >= 2]
    survivors = tuple(x for x in c.components if x.id not in subset)
    return FibreConfig(survivors, tuple(new_points), c.section_component)


# -- isomorphism ----------------------------------------------------------


def find_isomorphism(a: FibreConfig, b: FibreConfig) -> Optional[Dict[int, int]]:
    """A bijection of components preserving multiplicities, singularity labels and
    the contact points with their branch orders; None if there is none."""
    if a.invariant() != b.invariant():
        return None
    key_a = {x.id: (x.multiplicity, x.singularity, a._signature(x.id)) for x in a.components}
    key_b = {x.id: (x.multiplicity, x.singularity, b._signature(x.id)) for x in b.components}

    # breadth-first order so every new component touches an assigned one
    order: List[int] = []
    seen = set()
    nbrs: Dict[int, List[int]] = {i: [] for i in a.ids}
    for p in a.points:
        for (x, _), (y, _) in itertools.permutations(p, 2):
            if x != y:
                nbrs[x].append(y)
    for root in a.ids:
        if root in seen:
            continue
        seen.add(root)
        queue = [root]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(set(nbrs[v])):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)

    # points of a become checkable once their last component is mapped
    pos = {v: k for k, v in enumerate(order)}
    completes: Dict[int, List[Point]] = {v: [] for v in order}
    for p in a.points:
        completes[max((x for x, _ in p), key=pos.get)].append(p)

    remaining = Counter(b.points)
    mapping: Dict[int, int] = {}
    used = set()

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        v = order[k]
        for cand in b.ids:
            if cand in used or key_b[cand] != key_a[v]:
                continue
            mapping[v] = cand
            used.add(cand)
            consumed = []
            ok = True
            for p in completes[v]:
                img = tuple(sorted((mapping[x], o) for x, o in p))
                if remaining[img] <= 0:
                    ok = False
                    break
                remaining[img] -= 1
                consumed.append(img)
            if ok and extend(k + 1):
                return True
            for img in consumed:
                remaining[img] += 1
            used.discard(cand)
            del mapping[v]
        return False

    return dict(mapping) if extend(0) else None


def config_isomorphic(a: FibreConfig, b: FibreConfig) -> bool:
    return find_isomorphism(a, b) is not None


# -- realizability --------------------------------------------------------


@dataclass(frozen=True)
class Realization:
    kodaira: KodairaType
    found: bool
    witness: Optional[Tuple[int, ...]] = None
    n_bound: int = N_BOUND


def realizable_as_contraction(target: FibreConfig, k: KodairaType) -> Realization:
    """Search the contractions of kodaira_config(k) for one isomorphic to ``target``.

    A contraction is fixed by its set of survivors, which must contain the
    section's component and carry the target's multiplicities; every such set is
    tried, in lexicographic order.
    """
    source = kodaira_config(k)
    need = len(target.components)
    if need > len(source.components):
        return Realization(k, False)
    want = sorted(x.multiplicity for x in target.components)
    sec = source.section_component
    others = [i for i in source.ids if i != sec]
    for rest in itertools.combinations(others, need - 1):
        keep = set(rest) | {sec}
        if sorted(source.multiplicity(i) for i in keep) != want:
            continue
        subset = tuple(i for i in source.ids if i not in keep)
        if config_isomorphic(contract(source, subset), target):
            return Realization(k, True, subset)
    return Realization(k, False)


def realizable_any(target: FibreConfig, n_max: int = 12) -> List[Realization]:
    """Run the search against every singular Kodaira type with n <= n_max."""
    if n_max > N_BOUND:
        raise ConfigError(f"n_max = {n_max} exceeds the bound {N_BOUND}")
    return [realizable_as_contraction(target, k) for k in kodaira_types(n_max)]


def enumerate_contractions(source: FibreConfig, must_keep: Iterable[int] = ()):
    """All contractions of ``source`` up to isomorphism, each with its first witness.

    Subsets are ordered by size, then lexicographically; ``must_keep`` components
    are never contracted.
    """
    must_keep = set(must_keep)
    if source.section_component is not None:
        must_keep.add(source.section_component)
    free = [i for i in source.ids if i not in must_keep]
    classes: List[Tuple[Tuple[int, ...], FibreConfig]] = []
    for size in range(len(free) + 1):
        for subset in itertools.combinations(free, size):
            if len(subset) == len(source.ids):
                continue
            result = contract(source, subset)
            if not any(config_isomorphic(result, seen) for _, seen in classes):
                classes.append((subset, result))
    return classes


# -- named configurations -------------------------------------------------


def concurring_lines() -> FibreConfig:
    """x^2 y = 0: a double line and a simple line through one point."""
    return FibreConfig.build({0: 1, 1: 2}, [((0, 1), (1, 1))], 0)


def cusp_with_line() -> FibreConfig:
    """A cuspidal curve and a smooth curve through its cusp, both of multiplicity 1."""
    return FibreConfig.build({0: 1, 1: 1}, [((0, 1), (0, 2), (1, 1))], 1)
