"""Seeded random graphs for property tests and the acceptance corpus."""

from __future__ import annotations

import random

from .boundary import RayPt, canonicalize_ep, make_finite, make_ray
from .counts import OMEGA
from .graph import Bundle, Graph, Path, relabel


def _rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_graph(seed=None, max_vertices: int = 8, max_edges: int = 16, symbolic: bool = True,
                 omega: bool = True, multiplicity: bool = True) -> Graph:
    """Uniform-ish random graph: vertices, bundles, and optional heads and rays."""
    rng = _rng(seed)
    n = rng.randint(1, max_vertices)
    vs = [f"v{i}" for i in range(n)]
    m = rng.randint(0, max_edges)
    bundles = []
    for i in range(m):
        mult = 1
        if multiplicity and rng.random() < 0.15:
            mult = rng.choice([2, 3])
        if omega and rng.random() < 0.05:
            mult = OMEGA
        bundles.append(Bundle(f"e{i}", rng.choice(vs), rng.choice(vs), mult))
    heads, rays = set(), set()
    if symbolic:
        for i in range(rng.choice([0, 0, 1, 2])):
            heads.add((f"H{i}", rng.choice(vs)))
        for i in range(rng.choice([0, 0, 1, 2])):
            rays.add((f"R{i}", rng.choice(vs)))
    return Graph(frozenset(vs), frozenset(bundles), frozenset(heads), frozenset(rays))


def random_no_sink_graph(seed=None, max_vertices: int = 8, max_edges: int = 16) -> Graph:
    """Random core graph in which every vertex emits at least one edge."""
    rng = _rng(seed)
    n = rng.randint(1, max_vertices)
    vs = [f"v{i}" for i in range(n)]
    bundles = [Bundle(f"e{i}", v, rng.choice(vs)) for i, v in enumerate(vs)]
    for i in range(n, rng.randint(n, max(n, max_edges))):
        mult = rng.choice([1, 1, 1, 2])
        bundles.append(Bundle(f"e{i}", rng.choice(vs), rng.choice(vs), mult))
    return Graph(frozenset(vs), frozenset(bundles))


def random_discrete_graph(seed=None, max_vertices: int = 6, symbolic: bool = True) -> Graph:
    """Random graph whose boundary path space is discrete.

    Cyclic vertices must emit exactly one edge and nothing may emit
    infinitely many, so such a graph is a set of disjoint exitless cycles
    fed by an acyclic part. Every discrete graph arises this way.
    """
    rng = _rng(seed)
    n = rng.randint(1, max_vertices)
    vs = [f"v{i}" for i in range(n)]
    rng.shuffle(vs)
    bundles = []
    label = iter(f"e{i}" for i in range(10 ** 6))
    on_cycle = set()
    pos = 0
    while pos < n and rng.random() < 0.5:
        L = rng.randint(1, min(3, n - pos))
        cyc = vs[pos:pos + L]
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            bundles.append(Bundle(next(label), a, b))
        on_cycle |= set(cyc)
        pos += L
    rest = vs[pos:]
    for i, v in enumerate(rest):
        targets = rest[i + 1:] + sorted(on_cycle)
        for _ in range(rng.choice([0, 1, 1, 2, 3]) if targets else 0):
            bundles.append(Bundle(next(label), v, rng.choice(targets), rng.choice([1, 1, 1, 2])))
    heads, rays = set(), set()
    if symbolic:
        for i in range(rng.choice([0, 0, 1, 2])):
            heads.add((f"H{i}", rng.choice(vs)))
        if rest:
            for i in range(rng.choice([0, 0, 1])):
                rays.add((f"R{i}", rng.choice(rest)))
    return Graph(frozenset(vs), frozenset(bundles), frozenset(heads), frozenset(rays))


def random_signature(seed=None, max_orbits: int = 3, max_size: int = 4) -> list:
    """Random list of ``(cardinality, ep)`` orbit descriptions."""
    rng = _rng(seed)
    out = []
    for _ in range(rng.randint(1, max_orbits)):
        ep = rng.random() < 0.5
        card = OMEGA if rng.random() < 0.4 else rng.randint(1, max_size)
        out.append((card, ep))
    return out


def realize_signature(sig, seed=None) -> Graph:
    """A discrete graph with one orbit per entry of ``sig``.

    Each orbit is its own component, built from random choices: finite
    orbits of size ``n`` are a chain of ``n`` vertices into a sink (or a
    cycle of length ``L`` fed by ``n - L`` vertices when periodic); infinite
    ones attach a head or, for trivial isotropy, may use an out-ray.
    """
    rng = _rng(seed)
    vs, bundles, heads, rays = [], [], set(), set()
    counter = iter(range(10 ** 6))

    def vertex():
        v = f"u{next(counter)}"
        vs.append(v)
        return v

    def edge(a, b):
        bundles.append(Bundle(f"a{next(counter)}", a, b))

    def chain_into(target, length):
        prev = target
        for _ in range(length):
            u = vertex()
            edge(u, prev)
            prev = u
        return prev

    for card, ep in sig:
        if ep:
            L = rng.randint(1, 3) if card is OMEGA else rng.randint(1, min(3, card))
            cyc = [vertex() for _ in range(L)]
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                edge(a, b)
            if card is OMEGA:
                top = chain_into(rng.choice(cyc), rng.randint(0, 1))
                heads.add((f"H{next(counter)}", top))
            else:
                chain_into(rng.choice(cyc), card - L)
        else:
            if card is OMEGA:
                base = vertex()
                if rng.random() < 0.5:
                    rays.add((f"R{next(counter)}", base))
                else:
                    heads.add((f"H{next(counter)}", chain_into(base, rng.randint(0, 1))))
            else:
                chain_into(vertex(), card - 1)
    return Graph(frozenset(vs), frozenset(bundles), frozenset(heads), frozenset(rays))


def random_relabel(g: Graph, seed=None) -> Graph:
    """Copy of ``g`` with vertices, edges and ray identifiers renamed at random."""
    rng = _rng(seed)
    vs = sorted(g.vertices)
    names = [f"w{i}" for i in range(len(vs))]
    rng.shuffle(names)
    labels = sorted(b.label for b in g.bundles)
    new_labels = [f"f{i}" for i in range(len(labels))]
    rng.shuffle(new_labels)
    rids = sorted({r for r, _ in g.heads} | {r for r, _ in g.rays})
    new_rids = [f"S{i}" for i in range(len(rids))]
    rng.shuffle(new_rids)
    return relabel(g, dict(zip(vs, names)), dict(zip(labels, new_labels)), dict(zip(rids, new_rids)))


def discrete_pair(seed=None):
    """A pair of discrete graphs; about half share an orbit signature."""
    rng = _rng(seed)
    r = rng.random()
    if r < 0.4:
        sig = random_signature(rng)
        return realize_signature(sig, rng), realize_signature(sig, rng)
    if r < 0.55:
        g = random_discrete_graph(rng)
        return g, random_relabel(g, rng)
    if r < 0.75:
        sig = random_signature(rng)
        other = list(sig)
        i = rng.randrange(len(other))
        card, ep = other[i]
        other[i] = (card, not ep) if rng.random() < 0.5 else (OMEGA if card != OMEGA else 1, ep)
        return realize_signature(sig, rng), realize_signature(other, rng)
    return random_discrete_graph(rng), random_discrete_graph(rng)


def random_point(g: Graph, seed=None, max_steps: int = 12):
    """A random representable boundary point of ``g``, or ``None``.

    Walks forward from a random core or head vertex and stops at the first
    of: a singular vertex (finite point), a repeated vertex (eventually
    periodic point) or an out-ray (ray point).
    """
    rng = _rng(seed)
    starts = sorted(g.vertices) + [f"{rid}.{rng.randint(1, 3)}" for rid, _ in sorted(g.heads)]
    starts += [f"{rid}.{rng.randint(1, 3)}" for rid, _ in sorted(g.rays)]
    if not starts:
        return None
    v = rng.choice(starts)
    sym = g.split_symbolic(v)
    if sym is not None and sym[0] == "ray":
        return RayPt(Path.vertex(v), sym[1], sym[2])
    src, edges, seen = v, [], {v: 0}
    for _ in range(max_steps):
        out = g.out_edges(v)
        if g.is_singular(v) and (not out or rng.random() < 0.5):
            return make_finite(g, src, edges)
        core = [e for e in out if e.kind != "ray"]
        rays = [e for e in out if e.kind == "ray"]
        if rays and (not core or rng.random() < 0.3):
            return make_ray(g, src, edges, rng.choice(rays).name)
        e = rng.choice(core)
        edges.append(e)
        v = g.range(e)
        if v in seen and rng.random() < 0.7:
            p = g.path(src, edges)
            i = seen[v]
            return canonicalize_ep(g, p[:i], p[i:])
        seen.setdefault(v, len(edges))
    return None
