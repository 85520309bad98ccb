"""Isolated points of a graph with every kind of tail, checked by the oracle.

The graph has a loop with an exit into a sink, an exitless 2-cycle fed by
a branching vertex, and an out-ray. The analytic classifier and the
depth-bounded oracle are run side by side on the points the tree exposes.

Run with ``python demos/isolated_points.py``.
"""

from grpd.boundary import point_to_text
from grpd.counts import count_to_json
from grpd.graph import parse_graph
from grpd.isolated import census, classify_isolated
from grpd.oracle import cross_check

G = parse_graph("""
vertex a
vertex b
vertex c
vertex d
vertex s
edge loop: a -> a
edge out: a -> s
edge ab: d -> b
edge dc: d -> c
edge bc: b -> c
edge cb: c -> b
ray R: d
""")

c = census(G, sample=2)
for key, value in sorted(c.to_json().items()):
    if key != "witnesses":
        print(f"{key:>20}: {value}")

rep = cross_check(G)
print(f"\noracle depth {rep.depth}: {rep.checked} points, {rep.certified} certified, "
      f"{rep.refuted} refuted, {len(rep.unknowns)} unknown, {len(rep.disagreements)} disagreements")
for x, verdict, analytic in rep.pairs[:12]:
    kind = classify_isolated(G, x).value if analytic else "-"
    print(f"  {point_to_text(x):<34} oracle={verdict.tag:<19} type={kind}")
print(f"\nisolated eventually periodic points: {count_to_json(c.isolated_ep)}")
