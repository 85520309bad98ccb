"""Orbits of isolated points and their enumeration.

Isolatedness depends only on the tail of a point, so the isolated part of
the boundary path space is a union of tail-equivalence classes, one for

* each sink ``s``: the finite paths ending at ``s``;
* each cycle without an exit: the paths that eventually wind around it;
* each out-ray: the paths that eventually run along it.

When the space is discrete these classes are all of its orbits. Each class
is enumerated level by level (level = length of the part before the
tail), which gives every point a stable index in N.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

import networkx as nx

from .boundary import BoundaryPoint, EpPt, FinitePt, RayPt
from .counts import OMEGA, Count
from .cycles import Cycle, no_exit_cycles
from .graph import Graph, Path


def cyclic_vertices(g: Graph) -> frozenset:
    """Core vertices lying on some cycle."""
    dg = nx.DiGraph()
    dg.add_nodes_from(g.vertices)
    dg.add_edges_from((b.source, b.range) for b in g.bundles)
    out = set()
    for comp in nx.strongly_connected_components(dg):
        if len(comp) > 1:
            out |= comp
        else:
            (v,) = comp
            if dg.has_edge(v, v):
                out.add(v)
    return frozenset(out)


def _infinite_region(g: Graph) -> frozenset:
    """Core vertices with infinitely many paths ending at them."""
    seeds = set(cyclic_vertices(g))
    seeds |= {a for _, a in g.heads}
    seeds |= {b.range for b in g.bundles if b.multiplicity is OMEGA}
    region = set(seeds)
    stack = list(seeds)
    succ = {}
    for b in g.bundles:
        succ.setdefault(b.source, []).append(b.range)
    while stack:
        v = stack.pop()
        for w in succ.get(v, ()):
            if w not in region:
                region.add(w)
                stack.append(w)
    return frozenset(region)


class PathCounter:
    """Number of finite paths (all lengths, all sources) ending at a vertex."""

    def __init__(self, g: Graph):
        self.g = g
        self._infinite = _infinite_region(g)
        self._in = {}
        for b in g.bundles:
            self._in.setdefault(b.range, []).append(b)
        self._memo = {}

    def into(self, v: str) -> Count:
        if v in self._infinite:
            return OMEGA
        if v not in self._memo:
            # outside the infinite region the backward graph is finite and acyclic
            total = 1
            for b in self._in.get(v, ()):
                total = total + b.multiplicity * self.into(b.source)
            self._memo[v] = total
        return self._memo[v]

    def into_cycle(self, c: Cycle) -> Count:
        """Points winding eventually around the exitless cycle ``c``."""
        own = {e.name for e in c.edges}
        total = 0
        for v in c.base_vertices:
            total = total + 1
            if self.g.heads_at(v):
                return OMEGA
            for b in self._in.get(v, ()):
                if b.label not in own:
                    total = total + b.multiplicity * self.into(b.source)
        return total


@dataclass(frozen=True)
class OrbitFamily:
    """One tail-equivalence class of isolated points.

    ``kind`` is ``"finite"``, ``"ep"`` or ``"wandering"``; ``anchor`` names
    the sink, the exitless cycle or the out-ray carrying the tails.
    """

    kind: str
    anchor: str
    base: BoundaryPoint
    cardinality: Count
    cycle: Optional[Cycle] = None
    graph: Graph = field(default=None, repr=False, compare=False)

    @property
    def ep(self) -> bool:
        return self.kind == "ep"

    @property
    def lp(self) -> Optional[int]:
        return len(self.cycle) if self.cycle is not None else None

    @property
    def isotropy(self) -> str:
        return "infinite_cyclic" if self.ep else "trivial"

    @property
    def description(self) -> str:
        moves = {
            "finite": f"finite paths into sink {self.anchor}, generated by prepending edges",
            "ep": f"paths winding around {self.anchor}, generated by prepending edges and rotating",
            "wandering": f"paths running along out-ray {self.anchor}, generated by prepending edges "
                         "and shifting along the ray",
        }
        return moves[self.kind]

    def enumerator(self) -> "OrbitEnumerator":
        # kept on the instance: families of different graphs can compare equal
        en = self.__dict__.get("_enumerator")
        if en is None:
            en = OrbitEnumerator(self)
            object.__setattr__(self, "_enumerator", en)
        return en


class OrbitEnumerator:
    """Lazily enumerates the points of an orbit family in a fixed order."""

    def __init__(self, family: OrbitFamily):
        self.family = family
        self.g = family.graph
        self._levels = []  # list of lists of points
        self._frontier = []  # paths of the current level, for extension
        self._points = []
        self._index = {}
        self._exhausted = False
        if family.kind == "ep":
            c = family.cycle
            self._offset = {v: i for i, v in enumerate(c.base_vertices)}
            self._own = set(c.edges)
        self._start()

    # level construction

    def _start(self):
        f = self.family
        g = self.g
        if f.kind == "finite":
            self._frontier = [Path.vertex(f.anchor)]
            self._add_level([FinitePt(p) for p in self._frontier])
        elif f.kind == "ep":
            c = f.cycle
            lvl = [EpPt(Path.vertex(c.rotate(i).source), c.rotate(i)) for i in range(len(c))]
            self._frontier = [Path.vertex(v) for v in c.base_vertices]
            self._add_level(lvl)
        else:
            a = g.ray_anchor[f.anchor]
            self._frontier = [Path.vertex(a)]
            self._add_level([RayPt(Path.vertex(a), f.anchor, 0)])

    def _point_for(self, p: Path) -> BoundaryPoint:
        f = self.family
        if f.kind == "finite":
            return FinitePt(p)
        if f.kind == "ep":
            return EpPt(p, f.cycle.rotate(self._offset[p.range]))
        return RayPt(p, f.anchor, 0)

    def _extend(self) -> bool:
        g = self.g
        nxt = []
        for p in self._frontier:
            for e in g.in_edges(p.source):
                if self.family.kind == "ep" and not p.edges and e in self._own:
                    continue
                nxt.append(Path((g.source(e),) + p.vertices, (e,) + p.edges))
        level = len(self._levels)
        pts = []
        if self.family.kind == "wandering":
            rid = self.family.anchor
            pts.append(RayPt(Path.vertex(f"{rid}.{level}"), rid, level))
        pts += [self._point_for(p) for p in nxt]
        self._frontier = nxt
        if not pts:
            self._exhausted = True
            return False
        self._add_level(pts)
        return True

    def _add_level(self, pts):
        self._levels.append(pts)
        for x in pts:
            self._index[x] = len(self._points)
            self._points.append(x)

    # public

    def point(self, i: int) -> BoundaryPoint:
        while i >= len(self._points):
            if self._exhausted or not self._extend():
                raise IndexError(f"orbit has only {len(self._points)} points")
        return self._points[i]

    def points(self, limit: int) -> list:
        out = []
        for i in range(limit):
            try:
                out.append(self.point(i))
            except IndexError:
                break
        return out

    def __iter__(self) -> Iterator[BoundaryPoint]:
        i = 0
        while True:
            try:
                yield self.point(i)
            except IndexError:
                return
            i += 1

    @staticmethod
    def level_of(x: BoundaryPoint) -> int:
        if isinstance(x, FinitePt):
            return len(x.path)
        if isinstance(x, RayPt) and x.entry > 0:
            return x.entry
        return len(x.prefix)

    def index_of(self, x: BoundaryPoint) -> int:
        target = self.level_of(x)
        while len(self._levels) <= target and not self._exhausted:
            self._extend()
        try:
            return self._index[x]
        except KeyError:
            raise KeyError(f"{x} is not in orbit {self.family.anchor}") from None

    def __contains__(self, x) -> bool:
        try:
            self.index_of(x)
        except KeyError:
            return False
        return True

    def j(self, x: EpPt) -> int:
        """Least ``j`` with ``shift^j(x)`` equal to the family's base point."""
        c = self.family.cycle
        t = self._offset[x.cycle.source]
        return len(x.prefix) + (len(c) - t) % len(c)


def isolated_orbits(g: Graph) -> list:
    """Orbit families covering every isolated point of ``g``."""
    counter = PathCounter(g)
    fams = []
    for v in sorted(g.vertices):
        if g.is_sink(v):
            fams.append(OrbitFamily("finite", v, FinitePt(Path.vertex(v)), counter.into(v), graph=g))
    for c in no_exit_cycles(g):
        base = EpPt(Path.vertex(c.source), c)
        fams.append(OrbitFamily("ep", str(c), base, counter.into_cycle(c), cycle=c, graph=g))
    for rid, a in sorted(g.rays):
        fams.append(OrbitFamily("wandering", rid, RayPt(Path.vertex(a), rid, 0), OMEGA, graph=g))
    return fams


def family_of(families, x: BoundaryPoint):
    """Index of the family containing ``x``, or ``None``."""
    for i, f in enumerate(families):
        if f.kind == "finite" and isinstance(x, FinitePt) and x.path.range == f.anchor:
            return i
        if f.kind == "ep" and isinstance(x, EpPt) and x.cycle.same_cycle(f.cycle):
            return i
        if f.kind == "wandering" and isinstance(x, RayPt) and x.ray == f.anchor:
            return i
    return None
