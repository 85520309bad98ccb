"""Directed graphs with a finite core and symbolic infinite attachments.

A :class:`Graph` consists of

* a finite set of core vertices,
* edge *bundles* ``label: src -> dst * m`` standing for ``m`` parallel
  edges (``m`` may be :data:`~grpd.counts.OMEGA`, which makes ``src`` an
  infinite emitter),
* *heads* ``head H: v``: an infinite chain ``... -> H.2 -> H.1 -> v``,
* out-*rays* ``ray R: v``: an infinite chain ``v -> R.1 -> R.2 -> ...``.

Symbolic vertices are named ``<id>.<i>`` (``i >= 1``); the edge of a head
leaving ``H.i`` is ``H[i]``, the edge of a ray entering ``R.i`` is ``R[i]``.
Copies of a bundle of multiplicity ``m > 1`` are ``label#1 .. label#m``;
an ω-bundle exposes a finite traversable sample of such copies.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from . import config
from .counts import OMEGA, Count, count_from_json, count_to_json
from .errors import GraphFormatError, InvalidPathError

_IDENT = re.compile(r"[A-Za-z0-9_]+\Z")


@dataclass(frozen=True)
class Edge:
    kind: str  # "core" | "head" | "ray"
    name: str
    index: int = 0

    @property
    def label(self) -> str:
        if self.kind == "core":
            return self.name if self.index == 0 else f"{self.name}#{self.index}"
        return f"{self.name}[{self.index}]"

    def __lt__(self, other):
        return self.label < other.label

    def __str__(self):
        return self.label

    def __repr__(self):
        return f"Edge({self.label})"


@dataclass(frozen=True)
class Path:
    """A finite path, stored as its vertex and edge sequences.

    ``vertices`` has one more entry than ``edges``; a vertex is the path
    ``Path((v,), ())``. Composability is checked by :meth:`Graph.path`.
    """

    vertices: tuple
    edges: tuple = ()

    def __post_init__(self):
        if len(self.vertices) != len(self.edges) + 1:
            raise InvalidPathError("a path needs exactly one more vertex than edges")

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.vertices, self.edges))
            object.__setattr__(self, "_hash", h)
        return h

    @classmethod
    def vertex(cls, v: str) -> "Path":
        return cls((v,), ())

    @property
    def source(self) -> str:
        return self.vertices[0]

    @property
    def range(self) -> str:
        return self.vertices[-1]

    def __len__(self):
        return len(self.edges)

    def __getitem__(self, item):
        if not isinstance(item, slice) or item.step not in (None, 1):
            raise TypeError("paths support contiguous slicing only")
        start, stop, _ = item.indices(len(self.edges))
        stop = max(start, stop)
        return Path(self.vertices[start:stop + 1], self.edges[start:stop])

    def __add__(self, other: "Path") -> "Path":
        if self.range != other.source:
            raise InvalidPathError(f"cannot concatenate: {self.range} != {other.source}")
        return Path(self.vertices + other.vertices[1:], self.edges + other.edges)

    def labels(self) -> list:
        return [e.label for e in self.edges]

    def __str__(self):
        if not self.edges:
            return f"@{self.source}"
        return " ".join(self.labels())


@dataclass(frozen=True)
class Bundle:
    label: str
    source: str
    range: str
    multiplicity: Count = 1


class VertexKind(str, Enum):
    REGULAR = "regular"
    SINK = "sink"
    INFINITE_EMITTER = "infinite_emitter"


class VertexClass(Mapping):
    """Vertex tags of a graph.

    Iterates over core vertices; symbolic head/ray vertices can still be
    looked up and are always regular.
    """

    def __init__(self, graph: "Graph", core: dict):
        self._graph = graph
        self._core = core

    def __getitem__(self, v):
        if v in self._core:
            return self._core[v]
        if self._graph.is_symbolic(v):
            return VertexKind.REGULAR
        raise KeyError(v)

    def __iter__(self):
        return iter(sorted(self._core))

    def __len__(self):
        return len(self._core)

    def _of(self, kind):
        return frozenset(v for v, k in self._core.items() if k is kind)

    @property
    def sinks(self):
        return self._of(VertexKind.SINK)

    @property
    def infinite_emitters(self):
        return self._of(VertexKind.INFINITE_EMITTER)

    @property
    def singular(self):
        return self.sinks | self.infinite_emitters

    @property
    def regular(self):
        return self._of(VertexKind.REGULAR)


@dataclass(frozen=True)
class Graph:
    vertices: frozenset = frozenset()
    bundles: frozenset = frozenset()
    heads: frozenset = frozenset()  # of (ray id, anchor)
    rays: frozenset = frozenset()  # of (ray id, anchor)
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "bundles", frozenset(self.bundles))
        object.__setattr__(self, "heads", frozenset(tuple(h) for h in self.heads))
        object.__setattr__(self, "rays", frozenset(tuple(r) for r in self.rays))
        _validate(self)
        object.__setattr__(self, "_hash", hash((self.vertices, self.bundles, self.heads, self.rays)))

    def __hash__(self):
        return self._hash

    # ---- lookup tables -------------------------------------------------

    @cached_property
    def _bundle_by_label(self):
        return {b.label: b for b in self.bundles}

    @cached_property
    def _out_bundles(self):
        out = {v: [] for v in self.vertices}
        for b in sorted(self.bundles, key=lambda b: b.label):
            out[b.source].append(b)
        return out

    @cached_property
    def _in_bundles(self):
        inc = {v: [] for v in self.vertices}
        for b in sorted(self.bundles, key=lambda b: b.label):
            inc[b.range].append(b)
        return inc

    @cached_property
    def head_anchor(self) -> dict:
        return dict(self.heads)

    @cached_property
    def ray_anchor(self) -> dict:
        return dict(self.rays)

    @cached_property
    def _heads_at(self):
        at = {v: [] for v in self.vertices}
        for rid, a in sorted(self.heads):
            at[a].append(rid)
        return at

    @cached_property
    def _rays_at(self):
        at = {v: [] for v in self.vertices}
        for rid, a in sorted(self.rays):
            at[a].append(rid)
        return at

    def heads_at(self, v) -> list:
        return list(self._heads_at.get(v, ()))

    def rays_at(self, v) -> list:
        return list(self._rays_at.get(v, ()))

    def bundle(self, label: str) -> Bundle:
        return self._bundle_by_label[label]

    # ---- vertices --------------------------------------------------------

    def split_symbolic(self, v: str):
        """Return ``(kind, ray id, index)`` for a symbolic vertex, else ``None``."""
        if not isinstance(v, str) or "." not in v:
            return None
        rid, _, idx = v.rpartition(".")
        if not idx.isdigit() or int(idx) < 1:
            return None
        if rid in self.head_anchor:
            return ("head", rid, int(idx))
        if rid in self.ray_anchor:
            return ("ray", rid, int(idx))
        return None

    def is_symbolic(self, v) -> bool:
        return self.split_symbolic(v) is not None

    def has_vertex(self, v) -> bool:
        return v in self.vertices or self.is_symbolic(v)

    def ray_vertex(self, rid: str, i: int) -> str:
        """The ``i``-th vertex of head/ray ``rid``; index 0 is the anchor."""
        if i == 0:
            return self.head_anchor.get(rid) or self.ray_anchor[rid]
        return f"{rid}.{i}"

    # ---- edges -----------------------------------------------------------

    def bundle_edges(self, b: Bundle) -> tuple:
        m = b.multiplicity
        if m == 1:
            return (Edge("core", b.label, 0),)
        n = config.OMEGA_SAMPLE if m is OMEGA else m
        return tuple(Edge("core", b.label, i) for i in range(1, n + 1))

    @cached_property
    def core_edges(self) -> tuple:
        return tuple(sorted(e for b in self.bundles for e in self.bundle_edges(b)))

    def edge(self, label: str) -> Edge:
        """Parse an edge label back into an :class:`Edge` of this graph."""
        m = re.fullmatch(r"([A-Za-z0-9_]+)\[(\d+)\]", label)
        if m:
            rid, i = m.group(1), int(m.group(2))
            if i >= 1 and rid in self.head_anchor:
                return Edge("head", rid, i)
            if i >= 1 and rid in self.ray_anchor:
                return Edge("ray", rid, i)
            raise KeyError(label)
        stem, sep, idx = label.partition("#")
        b = self._bundle_by_label.get(stem)
        if b is None:
            raise KeyError(label)
        e = Edge("core", stem, int(idx) if sep and idx.isdigit() else 0)
        if e not in self.bundle_edges(b):
            raise KeyError(label)
        return e

    def source(self, e: Edge) -> str:
        if e.kind == "core":
            return self._bundle_by_label[e.name].source
        if e.kind == "head":
            return self.ray_vertex(e.name, e.index)
        return self.ray_vertex(e.name, e.index - 1)

    def range(self, e: Edge) -> str:
        if e.kind == "core":
            return self._bundle_by_label[e.name].range
        if e.kind == "head":
            return self.ray_vertex(e.name, e.index - 1)
        return self.ray_vertex(e.name, e.index)

    def out_edges(self, v: str) -> tuple:
        """Traversable edges leaving ``v`` (ω-bundles contribute their sample)."""
        sym = self.split_symbolic(v)
        if sym is not None:
            kind, rid, i = sym
            return (Edge("head", rid, i),) if kind == "head" else (Edge("ray", rid, i + 1),)
        key = ("out", v)
        if key not in self._cache:
            es = [e for b in self._out_bundles[v] for e in self.bundle_edges(b)]
            es += [Edge("ray", rid, 1) for rid in self._rays_at[v]]
            self._cache[key] = tuple(sorted(es))
        return self._cache[key]

    def in_edges(self, v: str) -> tuple:
        sym = self.split_symbolic(v)
        if sym is not None:
            kind, rid, i = sym
            return (Edge("head", rid, i + 1),) if kind == "head" else (Edge("ray", rid, i),)
        key = ("in", v)
        if key not in self._cache:
            es = [e for b in self._in_bundles[v] for e in self.bundle_edges(b)]
            es += [Edge("head", rid, 1) for rid in self._heads_at[v]]
            self._cache[key] = tuple(sorted(es))
        return self._cache[key]

    def out_degree(self, v: str) -> Count:
        key = ("deg", v)
        d = self._cache.get(key)
        if d is None:
            if self.is_symbolic(v):
                d = 1
            else:
                d = len(self._rays_at[v])
                for b in self._out_bundles[v]:
                    d = d + b.multiplicity
            self._cache[key] = d
        return d

    def is_sink(self, v) -> bool:
        return self.out_degree(v) == 0

    def is_infinite_emitter(self, v) -> bool:
        return self.out_degree(v) is OMEGA

    def is_singular(self, v) -> bool:
        d = self.out_degree(v)
        return d == 0 or d is OMEGA

    def path(self, source: str, edges: Iterable = ()) -> Path:
        """Build a validated path from ``source`` along ``edges``.

        Edges may be :class:`Edge` objects or labels.
        """
        if not self.has_vertex(source):
            raise InvalidPathError(f"unknown vertex {source!r}")
        verts = [source]
        es = []
        for e in edges:
            if isinstance(e, str):
                try:
                    e = self.edge(e)
                except KeyError:
                    raise InvalidPathError(f"unknown edge {e!r}") from None
            if self.source(e) != verts[-1]:
                raise InvalidPathError(f"edge {e.label} does not start at {verts[-1]}")
            es.append(e)
            verts.append(self.range(e))
        return Path(tuple(verts), tuple(es))

    def check_path(self, p: Path) -> None:
        if self.path(p.source, p.edges) != p:
            raise InvalidPathError(f"inconsistent path {p}")


def _validate(g: Graph) -> None:
    for v in g.vertices:
        if not isinstance(v, str) or not _IDENT.match(v):
            raise GraphFormatError(f"invalid vertex name {v!r}")
    labels = set()
    for b in g.bundles:
        if not _IDENT.match(b.label):
            raise GraphFormatError(f"invalid edge label {b.label!r}")
        if b.label in labels:
            raise GraphFormatError(f"duplicate edge label {b.label!r}")
        labels.add(b.label)
        for end in (b.source, b.range):
            if end not in g.vertices:
                raise GraphFormatError(f"edge {b.label!r} references undeclared vertex {end!r}")
        m = b.multiplicity
        if m is not OMEGA and not (isinstance(m, int) and m >= 1):
            raise GraphFormatError(f"edge {b.label!r} has invalid multiplicity {m!r}")
    ids = set()
    for rid, anchor in list(g.heads) + list(g.rays):
        if not _IDENT.match(rid):
            raise GraphFormatError(f"invalid ray identifier {rid!r}")
        if rid in ids:
            raise GraphFormatError(f"duplicate ray identifier {rid!r}")
        if rid in g.vertices:
            raise GraphFormatError(f"ray identifier {rid!r} clashes with a vertex name")
        if anchor not in g.vertices:
            raise GraphFormatError(f"ray {rid!r} anchored at undeclared vertex {anchor!r}")
        ids.add(rid)


def make_graph(vertices=(), edges=(), heads=(), rays=()) -> Graph:
    """Convenience constructor.

    ``edges`` holds ``(label, src, dst)`` or ``(label, src, dst, mult)``
    tuples.
    """
    bundles = []
    for e in edges:
        if isinstance(e, Bundle):
            bundles.append(e)
        else:
            bundles.append(Bundle(*e))
    return Graph(frozenset(vertices), frozenset(bundles), frozenset(heads), frozenset(rays))


# ---- text format -----------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(->)|(:)|(\*)|([A-Za-z0-9_]+)|(\S))")


def _tokens(line: str):
    pos = 0
    out = []
    while True:
        m = _TOKEN.match(line, pos)
        if m is None or m.end() == pos:
            break
        text = m.group(m.lastindex)
        col = m.start(m.lastindex) + 1
        kind = ("arrow", "colon", "star", "ident", "junk")[m.lastindex - 1]
        out.append((kind, text, col))
        pos = m.end()
    return out


def parse_graph(text: str) -> Graph:
    """Parse the line-oriented graph format.

    Raises :class:`~grpd.errors.GraphFormatError` carrying the 1-based line
    and column of the problem.
    """
    vertices = {}
    bundles = {}
    rays = {}  # id -> (kind, anchor, line, col)
    refs = []  # (vertex, line, col)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = _tokens(line)
        if not toks:
            continue
        end_col = len(line.rstrip()) + 1

        def expect(i, kind, what):
            if i >= len(toks):
                raise GraphFormatError(f"expected {what}", lineno, end_col)
            if toks[i][0] != kind:
                raise GraphFormatError(f"expected {what}, got {toks[i][1]!r}", lineno, toks[i][2])
            return toks[i]

        head = toks[0]
        if head[0] != "ident" or head[1] not in ("vertex", "edge", "head", "ray"):
            raise GraphFormatError(f"unknown declaration {head[1]!r}", lineno, head[2])
        kw = head[1]
        if kw == "vertex":
            _, name, col = expect(1, "ident", "vertex name")
            n = 2
            if name in vertices:
                raise GraphFormatError(f"duplicate vertex {name!r}", lineno, col)
            vertices[name] = (lineno, col)
        elif kw == "edge":
            _, label, col = expect(1, "ident", "edge label")
            expect(2, "colon", "':'")
            src = expect(3, "ident", "source vertex")
            expect(4, "arrow", "'->'")
            dst = expect(5, "ident", "range vertex")
            n = 6
            mult = 1
            if n < len(toks) and toks[n][0] == "star":
                _, mtext, mcol = expect(n + 1, "ident", "multiplicity")
                if mtext == "omega":
                    mult = OMEGA
                elif mtext.isdigit() and int(mtext) >= 1:
                    mult = int(mtext)
                else:
                    raise GraphFormatError(f"invalid multiplicity {mtext!r}", lineno, mcol)
                n += 2
            if label in bundles:
                raise GraphFormatError(f"duplicate edge label {label!r}", lineno, col)
            bundles[label] = Bundle(label, src[1], dst[1], mult)
            refs.append((src[1], lineno, src[2]))
            refs.append((dst[1], lineno, dst[2]))
        else:
            _, rid, col = expect(1, "ident", "ray identifier")
            expect(2, "colon", "':'")
            anchor = expect(3, "ident", "anchor vertex")
            n = 4
            if rid in rays:
                raise GraphFormatError(f"duplicate ray identifier {rid!r}", lineno, col)
            rays[rid] = (kw, anchor[1], lineno, col)
            refs.append((anchor[1], lineno, anchor[2]))
        if n < len(toks):
            raise GraphFormatError(f"unexpected {toks[n][1]!r}", lineno, toks[n][2])
    for v, line, col in refs:
        if v not in vertices:
            raise GraphFormatError(f"undeclared vertex {v!r}", line, col)
    for rid, (_, _, line, col) in rays.items():
        if rid in vertices:
            raise GraphFormatError(f"ray identifier {rid!r} clashes with a vertex name", line, col)
    return Graph(
        frozenset(vertices),
        frozenset(bundles.values()),
        frozenset((rid, a) for rid, (k, a, _, _) in rays.items() if k == "head"),
        frozenset((rid, a) for rid, (k, a, _, _) in rays.items() if k == "ray"),
    )


def serialize_graph(g: Graph) -> str:
    """Canonical text: vertices, edges, heads, rays, each section sorted."""
    lines = [f"vertex {v}" for v in sorted(g.vertices)]
    for b in sorted(g.bundles, key=lambda b: b.label):
        s = f"edge {b.label}: {b.source} -> {b.range}"
        if b.multiplicity is OMEGA:
            s += " * omega"
        elif b.multiplicity != 1:
            s += f" * {b.multiplicity}"
        lines.append(s)
    lines += [f"head {rid}: {a}" for rid, a in sorted(g.heads)]
    lines += [f"ray {rid}: {a}" for rid, a in sorted(g.rays)]
    return "\n".join(lines) + "\n"


def graph_to_json(g: Graph) -> dict:
    return {
        "vertices": sorted(g.vertices),
        "edges": [
            {"label": b.label, "source": b.source, "range": b.range,
             "multiplicity": count_to_json(b.multiplicity)}
            for b in sorted(g.bundles, key=lambda b: b.label)
        ],
        "heads": [{"id": rid, "anchor": a} for rid, a in sorted(g.heads)],
        "rays": [{"id": rid, "anchor": a} for rid, a in sorted(g.rays)],
    }


def graph_from_json(doc) -> Graph:
    if isinstance(doc, str):
        doc = json.loads(doc)
    try:
        return make_graph(
            doc.get("vertices", ()),
            [Bundle(e["label"], e["source"], e["range"], count_from_json(e.get("multiplicity", 1)))
             for e in doc.get("edges", ())],
            [(h["id"], h["anchor"]) for h in doc.get("heads", ())],
            [(r["id"], r["anchor"]) for r in doc.get("rays", ())],
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphFormatError(f"malformed graph JSON: {exc}") from None


# ---- analyses --------------------------------------------------------------

def classify_vertices(g: Graph) -> VertexClass:
    core = {}
    for v in g.vertices:
        d = g.out_degree(v)
        if d is OMEGA:
            core[v] = VertexKind.INFINITE_EMITTER
        elif d == 0:
            core[v] = VertexKind.SINK
        else:
            core[v] = VertexKind.REGULAR
    return VertexClass(g, core)


def _fresh(base: str, taken: set) -> str:
    name, i = base, 1
    while name in taken:
        i += 1
        name = f"{base}_{i}"
    taken.add(name)
    return name


def stabilize(g: Graph) -> Graph:
    """Attach a fresh head to every core vertex."""
    taken = set(g.vertices) | {rid for rid, _ in g.heads} | {rid for rid, _ in g.rays}
    new_heads = {(_fresh(f"S_{v}", taken), v) for v in sorted(g.vertices)}
    return Graph(g.vertices, g.bundles, g.heads | new_heads, g.rays)


def relabel(g: Graph, vmap: dict, emap: dict = None, rmap: dict = None) -> Graph:
    """Rename vertices, bundle labels and ray identifiers."""
    emap = emap or {}
    rmap = rmap or {}
    return Graph(
        frozenset(vmap.get(v, v) for v in g.vertices),
        frozenset(Bundle(emap.get(b.label, b.label), vmap.get(b.source, b.source),
                         vmap.get(b.range, b.range), b.multiplicity) for b in g.bundles),
        frozenset((rmap.get(r, r), vmap.get(a, a)) for r, a in g.heads),
        frozenset((rmap.get(r, r), vmap.get(a, a)) for r, a in g.rays),
    )


def iter_symbolic(g: Graph, depth: int) -> Iterator[str]:
    """Head and ray vertices with index ``<= depth``."""
    for rid, _ in sorted(g.heads | g.rays):
        for i in range(1, depth + 1):
            yield f"{rid}.{i}"
