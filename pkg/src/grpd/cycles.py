"""Cycles of the finite core: enumeration, exits, condition (L)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import networkx as nx

from . import config
from .errors import CapExceededError, InvalidPathError, NotACycleError
from .graph import Graph, Path


@dataclass(frozen=True)
class Cycle:
    """A closed path of length >= 1, kept in the rotation it was given."""

    path: Path

    def __post_init__(self):
        if len(self.path) < 1 or self.path.source != self.path.range:
            raise NotACycleError(f"{self.path} is not a closed path of positive length")

    @classmethod
    def from_edges(cls, g: Graph, edges) -> "Cycle":
        edges = list(edges)
        if not edges:
            raise NotACycleError("a cycle needs at least one edge")
        first = edges[0] if not isinstance(edges[0], str) else g.edge(edges[0])
        return cls(g.path(g.source(first), edges))

    @property
    def edges(self) -> tuple:
        return self.path.edges

    @property
    def source(self) -> str:
        return self.path.source

    @property
    def base_vertices(self) -> tuple:
        """Vertex at the start of each edge."""
        return self.path.vertices[:-1]

    def __len__(self):
        return len(self.path)

    def rotate(self, k: int) -> "Cycle":
        """Rotation starting at edge ``k`` (mod length)."""
        n = len(self)
        k %= n
        vs = self.base_vertices
        vs = vs[k:] + vs[:k]
        return Cycle(Path(vs + (vs[0],), self.edges[k:] + self.edges[:k]))

    def labels(self) -> tuple:
        return tuple(e.label for e in self.edges)

    def canonical_offset(self) -> int:
        n = len(self)
        labels = self.labels()
        return min(range(n), key=lambda k: labels[k:] + labels[:k])

    def canonical(self) -> "Cycle":
        """Rotation whose edge-label sequence is lexicographically least."""
        return _canonical(self)

    def same_cycle(self, other: "Cycle") -> bool:
        """Equal up to rotation."""
        return len(self) == len(other) and self.canonical() == other.canonical()

    def __str__(self):
        return "(" + " ".join(self.labels()) + ")"


@lru_cache(maxsize=65536)
def _canonical(c: Cycle) -> Cycle:
    return c.rotate(c.canonical_offset())


def simple_cycles(g: Graph, cap: int = None) -> list:
    """All vertex-simple cycles of the core, canonical and sorted.

    Parallel edges give distinct cycles; ω-bundles take part through their
    traversable sample. Raises :class:`CapExceededError` past ``cap``.
    """
    cap = config.cycle_cap() if cap is None else cap
    dg = nx.DiGraph()
    dg.add_nodes_from(g.vertices)
    parallel = {}
    for e in g.core_edges:
        s, r = g.source(e), g.range(e)
        dg.add_edge(s, r)
        parallel.setdefault((s, r), []).append(e)
    found = set()
    for vs in nx.simple_cycles(dg):
        hops = [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]
        for choice in product(*(parallel[h] for h in hops)):
            found.add(Cycle(Path(tuple(vs) + (vs[0],), choice)).canonical())
            if len(found) > cap:
                raise CapExceededError(f"more than {cap} simple cycles")
    return sorted(found, key=Cycle.labels)


def _check_cycle_of(g: Graph, gamma: Cycle) -> None:
    try:
        g.check_path(gamma.path)
    except (InvalidPathError, KeyError):
        raise NotACycleError(f"{gamma} is not a cycle of this graph") from None


def has_exit(g: Graph, gamma: Cycle) -> bool:
    """Whether some edge leaves a vertex of ``gamma`` other than along it."""
    _check_cycle_of(g, gamma)
    # out-degree >= 2 at a cycle vertex is exactly an exit, ω included
    return any(g.out_degree(v) != 1 for v in gamma.base_vertices)


def condition_L(g: Graph, cap: int = None) -> bool:
    return all(has_exit(g, c) for c in simple_cycles(g, cap))


def no_exit_cycles(g: Graph) -> list:
    """Simple cycles without an exit, canonical and sorted.

    Such a cycle runs through vertices of out-degree one only, so it is a
    cycle of the partial successor map on those vertices.
    """
    succ = {}
    for v in g.vertices:
        if g.out_degree(v) == 1:
            (e,) = g.out_edges(v)
            if e.kind == "core":
                succ[v] = e
    state = {}
    cycles = []
    for start in sorted(succ):
        walk = []
        v = start
        while v in succ and v not in state:
            state[v] = start
            walk.append(v)
            v = g.range(succ[v])
        if v in succ and state.get(v) == start:
            i = walk.index(v)
            loop = walk[i:]
            p = Path(tuple(loop) + (loop[0],), tuple(succ[u] for u in loop))
            cycles.append(Cycle(p).canonical())
    return sorted(cycles, key=Cycle.labels)


def primitive_root(gamma: Cycle):
    """Return ``(delta, k)`` with ``gamma == delta**k`` and ``delta`` primitive."""
    n = len(gamma)
    edges = gamma.edges
    for d in range(1, n + 1):
        if n % d == 0 and edges == edges[:d] * (n // d):
            return Cycle(gamma.path[0:d]), n // d
    raise AssertionError("unreachable")
