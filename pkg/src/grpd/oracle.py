"""Depth-bounded brute force over the cylinder-set tree.

Only the graph itself and the edge expansion of points are used here: no
cycle analysis and no classifier logic, so the verdicts can be compared
against :func:`grpd.boundary.is_isolated` as an independent check.

A point ``x`` is certified isolated by a cylinder ``Z(mu \\ F)`` where
``mu`` is a prefix of ``x`` and ``F`` holds all other edges leaving
``r(mu)``: the cylinder is ``{x}`` once every vertex after ``mu`` emits
exactly one edge, which is known for all time as soon as that forced chain
revisits a vertex or enters an out-ray.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import config
from .boundary import (BoundaryPoint, EpPt, FinitePt, RayPt, canonicalize_ep, expand,
                       finite_part, is_isolated, make_finite, make_ray, point_to_json,
                       tail_period)
from .counts import OMEGA
from .errors import CapExceededError
from .graph import Graph, Path


@dataclass(frozen=True)
class TreeNode:
    path: Path
    out_degree: object  # int or OMEGA
    sampled: tuple  # edges actually expanded below this node
    in_boundary: bool  # the finite path itself is a boundary point


@dataclass(frozen=True)
class TruncatedTree:
    depth: int
    roots: tuple
    nodes: tuple

    def __len__(self):
        return len(self.nodes)

    def boundary_paths(self):
        return [n.path for n in self.nodes if n.in_boundary]


def default_depth(g: Graph) -> int:
    return 4 * (len(g.vertices) + 2)


def enumerate_boundary_truncated(g: Graph, depth: int, roots=None, cap: int = None) -> TruncatedTree:
    """Every path of length ``<= depth`` from ``roots`` (default: core vertices)."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    cap = config.node_cap() if cap is None else cap
    roots = tuple(sorted(g.vertices)) if roots is None else tuple(roots)
    nodes = []
    level = [Path.vertex(r) for r in roots]
    for d in range(depth + 1):
        nxt = []
        for p in level:
            out = g.out_edges(p.range)
            nodes.append(TreeNode(p, g.out_degree(p.range), out if d < depth else (), g.is_singular(p.range)))
            if len(nodes) > cap:
                raise CapExceededError(f"truncated tree exceeds {cap} nodes")
            if d < depth:
                nxt.extend(Path(p.vertices + (g.range(e),), p.edges + (e,)) for e in out)
        level = nxt
    return TruncatedTree(depth, roots, tuple(nodes))


@dataclass(frozen=True)
class OracleVerdict:
    tag: str  # "isolated_certified" | "not_isolated" | "unknown"
    certificate: Optional[tuple] = None  # (mu: Path, F: tuple of edges)
    evidence: str = ""

    def to_json(self) -> dict:
        out = {"tag": self.tag, "evidence": self.evidence}
        if self.certificate is not None:
            mu, F = self.certificate
            out["certificate"] = {"mu": {"source": mu.source, "edges": mu.labels()},
                                  "excluded": [e.label for e in F]}
        return out


ISOLATED = "isolated_certified"
NOT_ISOLATED = "not_isolated"
UNKNOWN = "unknown"


def _ray_vertex(g: Graph, v: str) -> bool:
    sym = g.split_symbolic(v)
    return sym is not None and sym[0] == "ray"


def oracle_isolated(g: Graph, x: BoundaryPoint, depth: int) -> OracleVerdict:
    """Three-valued isolation verdict from the first ``depth`` levels of the tree."""
    if isinstance(x, FinitePt):
        if len(x.path) + 1 > depth:
            return OracleVerdict(UNKNOWN, evidence="depth below the length of the path")
        d = g.out_degree(x.path.range)
        if d == 0:
            return OracleVerdict(ISOLATED, (x.path, ()), "the path ends at a sink; Z(mu) = {mu}")
        if d is OMEGA:
            return OracleVerdict(NOT_ISOLATED, evidence=(
                f"{x.path.range} emits infinitely many edges; every Z(mu \\ F) with F finite "
                "contains an extension of x"))
        raise ValueError(f"{x} is not a boundary point")

    edges = expand(g, x, depth)
    verts = [x.prefix.source]
    for e in edges:
        verts.append(g.range(e))
    # verts[j] = r(x_{j-1}); the node for the prefix of length j sits at verts[j]
    deg = [g.out_degree(v) for v in verts]

    last_branch = -1
    for j, d in enumerate(deg):
        if d != 1:
            last_branch = j
    n = max(last_branch, 0)
    if deg[n] is OMEGA:
        n += 1
    if n < len(verts) - 1:
        seen = set()
        for j in range(n + 1, len(verts)):
            v = verts[j]
            if v in seen or _ray_vertex(g, v):
                mu = Path(tuple(verts[: n + 1]), tuple(edges[:n]))
                F = tuple(e for e in g.out_edges(verts[n]) if e != edges[n])
                closure = "enters an out-ray" if v not in seen else f"revisits {v}"
                return OracleVerdict(ISOLATED, (mu, F), (
                    f"every vertex after the prefix of length {n} emits one edge and the forced "
                    f"chain {closure}"))
            seen.add(v)

    tp = tail_period(x)
    if tp is not None:
        a, p = tp
        if a + p <= depth:
            for t in range(a, a + p):
                if deg[t] != 1:
                    return OracleVerdict(NOT_ISOLATED, evidence=(
                        f"{verts[t]} emits {deg[t]} edges and is visited at every position "
                        f"{t} + {p}k, so every cylinder around x branches again"))
    return OracleVerdict(UNKNOWN, evidence=f"no closure or recurring branch within depth {depth}")


# ---- cross check -----------------------------------------------------------

def _paths_by_level(g: Graph, roots, depth: int, budget: int):
    """Paths from roots not entering out-rays, level by level within ``budget``.

    Returns ``(paths, depth_used)`` where ``depth_used`` is the last level
    kept whole.
    """
    level = [Path.vertex(r) for r in roots]
    out = []
    d = -1
    while level and d < depth:
        if len(out) + len(level) > budget:
            break
        out.extend(level)
        d += 1
        if d == depth:
            break
        level = [Path(p.vertices + (g.range(e),), p.edges + (e,))
                 for p in level for e in g.out_edges(p.range) if e.kind != "ray"]
    if not level:
        d = depth
    return out, d


def _enumeration_roots(g: Graph, depth: int, symbolic: int):
    roots = sorted(g.vertices)
    for rid, _ in sorted(g.heads):
        roots += [f"{rid}.{i}" for i in range(1, symbolic + 1)]
    return roots


def representable_points(g: Graph, depth: int, budget: int = 2000, symbolic: int = 2):
    """Representable boundary points read off the paths of the truncated tree.

    Returns ``(points, depth_used)``; the depth is lowered until the number
    of tree paths fits ``budget``.
    """
    roots = _enumeration_roots(g, depth, symbolic)
    paths, d = _paths_by_level(g, roots, depth, budget)
    seen = set()
    pts = []

    def add(x):
        if x not in seen:
            seen.add(x)
            pts.append(x)

    for p in paths:
        v = p.range
        if g.is_singular(v):
            add(make_finite(g, p.source, p.edges))
        for rid in g.rays_at(v):
            add(make_ray(g, p.source, p.edges, rid))
        for i in range(len(p)):
            if p.vertices[i] == v:
                add(canonicalize_ep(g, p[:i], p[i:]))
    for rid, _ in sorted(g.rays):
        for i in range(1, symbolic + 1):
            add(RayPt(Path.vertex(f"{rid}.{i}"), rid, i))
    return pts, d


@dataclass
class CrossCheckReport:
    depth: int
    enumeration_depth: int
    checked: int = 0
    certified: int = 0
    refuted: int = 0
    pairs: list = field(default_factory=list)  # (point, verdict, analytic)
    disagreements: list = field(default_factory=list)
    unknowns: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def to_json(self) -> dict:
        return {
            "certified": self.certified,
            "checked": self.checked,
            "depth": self.depth,
            "disagreements": [{"point": point_to_json(x), "oracle": v.to_json(), "is_isolated": a}
                              for x, v, a in self.disagreements],
            "enumeration_depth": self.enumeration_depth,
            "not_isolated": self.refuted,
            "unknowns": [point_to_json(x) for x in self.unknowns],
            "verdicts": [{"point": point_to_json(x), "oracle": v.tag, "is_isolated": a}
                         for x, v, a in self.pairs],
        }


def cross_check(g: Graph, depth: int = None, enum_depth: int = None, budget: int = 2000) -> CrossCheckReport:
    """Compare :func:`is_isolated` with the oracle on the tree's points."""
    depth = default_depth(g) if depth is None else depth
    enum_depth = depth // 2 if enum_depth is None else enum_depth
    pts, used = representable_points(g, enum_depth, budget)
    rep = CrossCheckReport(depth, used)
    for x in pts:
        v = oracle_isolated(g, x, depth)
        a = is_isolated(g, x)
        rep.checked += 1
        rep.pairs.append((x, v, a))
        if v.tag == ISOLATED:
            rep.certified += 1
            if not a:
                rep.disagreements.append((x, v, a))
        elif v.tag == NOT_ISOLATED:
            rep.refuted += 1
            if a:
                rep.disagreements.append((x, v, a))
        else:
            rep.unknowns.append(x)
    return rep


def oracle_census(g: Graph, depth: int, budget: int = 20000):
    """Isolated-point counts by kind, read off the truncated tree.

    A count is an ``int`` when the tree shows it saturated (no certified
    point of that kind beyond half the horizon, and no ω-bundle sample
    edge used), ``OMEGA`` when it keeps growing, and ``None`` for every
    kind when the tree does not fit ``budget``.
    """
    pts, used = representable_points(g, depth, budget, symbolic=depth)
    kinds = ("finite", "ep", "ray")
    if used < depth:
        return {k: None for k in kinds}
    counts = {k: 0 for k in kinds}
    grows = {k: False for k in kinds}
    for x in pts:
        if oracle_isolated(g, x, 2 * depth + 2).tag != ISOLATED:
            continue
        counts[x.kind] += 1
        level = finite_part(x) if not isinstance(x, RayPt) else len(x.prefix) + x.entry
        omega_edge = any(e.kind == "core" and g.bundle(e.name).multiplicity is OMEGA
                         for e in expand(g, x, finite_part(x)))
        if level > depth // 2 or omega_edge or isinstance(x, RayPt):
            grows[x.kind] = True
    return {k: (OMEGA if grows[k] else counts[k]) for k in kinds}
