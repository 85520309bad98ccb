"""Graphviz DOT rendering of a graph with its heads and out-rays."""

from __future__ import annotations

from .counts import OMEGA
from .cycles import no_exit_cycles
from .graph import Graph

RAY_SAMPLE = 3


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(g: Graph, name: str = "G") -> str:
    """DOT document: core, 3 sample vertices per head or ray, exitless cycles in red."""
    hot_edges = set()
    hot_vertices = set()
    for c in no_exit_cycles(g):
        hot_edges |= {e.name for e in c.edges}
        hot_vertices |= set(c.base_vertices)
    lines = [f"digraph {_q(name)} {{", "  rankdir=LR;"]
    for v in sorted(g.vertices):
        attrs = ["shape=circle"]
        if g.is_sink(v):
            attrs = ["shape=doublecircle"]
        if v in hot_vertices:
            attrs.append("color=red")
        lines.append(f"  {_q(v)} [{', '.join(attrs)}];")
    for b in sorted(g.bundles, key=lambda b: b.label):
        label = b.label
        if b.multiplicity is OMEGA:
            label += " (x omega)"
        elif b.multiplicity != 1:
            label += f" (x {b.multiplicity})"
        attrs = [f"label={_q(label)}"]
        if b.label in hot_edges:
            attrs += ["color=red", "penwidth=2"]
        lines.append(f"  {_q(b.source)} -> {_q(b.range)} [{', '.join(attrs)}];")
    for rid, anchor in sorted(g.rays):
        chain = [anchor] + [f"{rid}.{i}" for i in range(1, RAY_SAMPLE + 1)]
        for v in chain[1:]:
            lines.append(f"  {_q(v)} [shape=point, xlabel={_q(v)}];")
        dots = f"{rid}..."
        lines.append(f"  {_q(dots)} [shape=plaintext, label=\"...\"];")
        for i, (a, b) in enumerate(zip(chain, chain[1:] + [dots]), start=1):
            style = ", style=dashed" if b == dots else ""
            lines.append(f"  {_q(a)} -> {_q(b)} [label={_q(f'{rid}[{i}]') if b != dots else _q('')}{style}];")
    for rid, anchor in sorted(g.heads):
        chain = [anchor] + [f"{rid}.{i}" for i in range(1, RAY_SAMPLE + 1)]
        for v in chain[1:]:
            lines.append(f"  {_q(v)} [shape=point, xlabel={_q(v)}];")
        dots = f"{rid}..."
        lines.append(f"  {_q(dots)} [shape=plaintext, label=\"...\"];")
        for i, (a, b) in enumerate(zip(chain, chain[1:] + [dots]), start=1):
            if b == dots:
                lines.append(f"  {_q(b)} -> {_q(a)} [style=dashed];")
            else:
                lines.append(f"  {_q(b)} -> {_q(a)} [label={_q(f'{rid}[{i}]')}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
