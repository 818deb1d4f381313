"""Deterministic Graphviz DOT text for fibre configurations."""

from __future__ import annotations

from typing import Iterable

from .config import FibreConfig


def to_dot(c: FibreConfig, name: str = "fibre", contracted: Iterable[int] = ()) -> str:
    """Components become nodes labelled ``id:multiplicity``.

    A two-branch contact is an edge (a loop for a self-contact); larger contacts
    are drawn as a star around a point node.  Branch orders above 1 appear as
    edge labels.  Components listed in ``contracted`` are drawn dashed.
    """
    contracted = set(contracted)
    lines = [f'graph "{name}" {{', "  node [shape=circle];"]
    for x in c.components:
        attrs = [f'label="{x.id}:{x.multiplicity}"']
        if x.singularity != "smooth":
            attrs.append(f'xlabel="{x.singularity}"')
        if x.id in contracted:
            attrs.append("style=dashed")
        if x.id == c.section_component:
            attrs.append("peripheries=2")
        lines.append(f"  c{x.id} [{', '.join(attrs)}];")
    for k, p in enumerate(c.points):
        if len(p) == 2:
            (a, oa), (b, ob) = p
            attr = "" if (oa, ob) == (1, 1) else f' [label="{oa},{ob}"]'
            lines.append(f"  c{a} -- c{b}{attr};")
        else:
            lines.append(f'  p{k} [shape=point, label=""];')
            for a, o in p:
                attr = "" if o == 1 else f' [label="{o}"]'
                lines.append(f"  p{k} -- c{a}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_dot(c: FibreConfig, path, **kwargs) -> str:
    text = to_dot(c, **kwargs)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return text
