"""Boundary points, the shift map, eventual periodicity and tail equivalence.

Three kinds of representable boundary points:

``FinitePt(path)``
    a finite path ending at a sink or an infinite emitter;
``EpPt(prefix, cycle)``
    the eventually periodic path ``prefix cycle cycle ...``, always stored
    canonically: ``cycle`` primitive, and ``prefix`` either empty or not
    ending with the last edge of ``cycle``;
``RayPt(prefix, ray, entry)``
    ``prefix`` followed by the out-ray ``ray`` from its vertex ``entry``
    (0 is the anchor). A point starting inside the ray has an empty
    prefix at ``<ray>.<entry>``.

Points that run down a head are ordinary paths beginning with head edges,
so their tail is always one of the three kinds above.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Union

from .counts import OMEGA
from .cycles import Cycle, has_exit, primitive_root
from .errors import CanonicalFormError, DomainError, InvalidPathError
from .graph import Edge, Graph, Path


@dataclass(frozen=True)
class FinitePt:
    path: Path
    kind = "finite"

    def __str__(self):
        return point_to_text(self)


@dataclass(frozen=True)
class EpPt:
    prefix: Path
    cycle: Cycle
    kind = "ep"

    def __post_init__(self):
        if self.prefix.range != self.cycle.source:
            raise InvalidPathError("prefix must end where the cycle starts")
        if primitive_root(self.cycle)[1] != 1:
            raise CanonicalFormError(f"cycle {self.cycle} is a proper power")
        if self.prefix.edges and self.prefix.edges[-1] == self.cycle.edges[-1]:
            raise CanonicalFormError("prefix ends with the last edge of the cycle")

    def __str__(self):
        return point_to_text(self)


@dataclass(frozen=True)
class RayPt:
    prefix: Path
    ray: str
    entry: int = 0
    kind = "ray"

    def __post_init__(self):
        if self.entry < 0:
            raise InvalidPathError("ray entry must be >= 0")
        if self.entry > 0 and (self.prefix.edges or self.prefix.source != f"{self.ray}.{self.entry}"):
            raise CanonicalFormError("a point starting inside a ray has an empty prefix at that vertex")
        if self.prefix.edges and self.prefix.edges[-1].kind == "ray":
            raise CanonicalFormError("ray edges belong to the tail, not the prefix")

    def __str__(self):
        return point_to_text(self)


BoundaryPoint = Union[FinitePt, EpPt, RayPt]


@dataclass(frozen=True)
class ShiftWitness:
    """Exponents with ``shift^m(x) == shift^n(y)``."""

    m: int
    n: int
    minimal: bool = True

    @property
    def k(self) -> int:
        return self.m - self.n

    def swap(self) -> "ShiftWitness":
        return ShiftWitness(self.n, self.m, self.minimal)


# ---- construction ----------------------------------------------------------

def _as_path(g: Graph, p, source=None) -> Path:
    if isinstance(p, Path):
        g.check_path(p)
        return p
    return g.path(source, p)


def _as_cycle(g: Graph, c) -> Cycle:
    if isinstance(c, Cycle):
        g.check_path(c.path)
        return c
    if isinstance(c, Path):
        g.check_path(c)
        return Cycle(c)
    return Cycle.from_edges(g, c)


def make_finite(g: Graph, source: str, edges=()) -> FinitePt:
    p = g.path(source, edges)
    if not g.is_singular(p.range):
        raise InvalidPathError(f"finite path must end at a sink or infinite emitter, ends at {p.range}")
    return FinitePt(p)


def canonicalize_ep(g: Graph, prefix, cycle) -> EpPt:
    """Canonical :class:`EpPt` for the infinite path ``prefix cycle cycle ...``.

    ``prefix`` is a :class:`Path` (or ``(source, edges)``), ``cycle`` a
    :class:`Cycle` or an edge sequence.
    """
    cyc = _as_cycle(g, cycle)
    if not isinstance(prefix, Path):
        src, edges = prefix
        prefix = g.path(src, edges)
    else:
        g.check_path(prefix)
    if prefix.range != cyc.source:
        raise InvalidPathError(f"prefix ends at {prefix.range}, cycle starts at {cyc.source}")
    delta, _ = primitive_root(cyc)
    while prefix.edges and prefix.edges[-1] == delta.edges[-1]:
        prefix = prefix[: len(prefix) - 1]
        delta = delta.rotate(-1)
    return EpPt(prefix, delta)


def make_ray(g: Graph, source: str, edges, ray: str) -> RayPt:
    """Point following ``edges`` from ``source`` and then out-ray ``ray``.

    Trailing edges of ``ray`` in ``edges`` are absorbed into the tail.
    """
    if ray not in g.ray_anchor:
        raise InvalidPathError(f"unknown out-ray {ray!r}")
    p = g.path(source, edges)
    cut = len(p)
    while cut > 0 and p.edges[cut - 1].kind == "ray" and p.edges[cut - 1].name == ray:
        cut -= 1
    p = p[:cut]
    sym = g.split_symbolic(p.range)
    if sym is not None and sym[0] == "ray":
        if sym[1] != ray or p.edges:
            raise InvalidPathError(f"path ends at {p.range}, which is not on ray {ray}")
        return RayPt(p, ray, sym[2])
    if p.range != g.ray_anchor[ray]:
        raise InvalidPathError(f"path ends at {p.range}, ray {ray} is anchored at {g.ray_anchor[ray]}")
    return RayPt(p, ray, 0)


def validate_point(g: Graph, x: BoundaryPoint) -> None:
    """Raise unless ``x`` is a boundary point of ``g`` in canonical form."""
    if isinstance(x, FinitePt):
        g.check_path(x.path)
        if not g.is_singular(x.path.range):
            raise InvalidPathError("finite boundary paths end at singular vertices")
    elif isinstance(x, EpPt):
        g.check_path(x.prefix)
        g.check_path(x.cycle.path)
    elif isinstance(x, RayPt):
        g.check_path(x.prefix)
        if x.ray not in g.ray_anchor:
            raise InvalidPathError(f"unknown out-ray {x.ray!r}")
        if x.entry == 0 and x.prefix.range != g.ray_anchor[x.ray]:
            raise InvalidPathError("ray prefix must end at the anchor")
    else:
        raise TypeError(f"not a boundary point: {x!r}")


# ---- the shift map ---------------------------------------------------------

def length(x: BoundaryPoint):
    return len(x.path) if isinstance(x, FinitePt) else OMEGA


def finite_part(x: BoundaryPoint) -> int:
    """Length of the part of ``x`` that is not an infinitely repeated tail."""
    if isinstance(x, FinitePt):
        return len(x.path)
    if isinstance(x, EpPt):
        return len(x.prefix) + len(x.cycle)
    return len(x.prefix)


def tail_period(x: BoundaryPoint):
    """``(preperiod, period)`` of an eventually periodic point, else ``None``."""
    if isinstance(x, EpPt):
        return len(x.prefix), len(x.cycle)
    return None


def shift_by(g: Graph, x: BoundaryPoint, m: int) -> BoundaryPoint:
    """``shift^m(x)``; raises :class:`DomainError` when ``|x| < m``."""
    if m < 0:
        raise ValueError("shift exponent must be >= 0")
    if isinstance(x, FinitePt):
        if m > len(x.path):
            raise DomainError(f"cannot shift a path of length {len(x.path)} {m} times")
        return x if m == 0 else FinitePt(x.path[m:])
    a = len(x.prefix)
    if isinstance(x, EpPt):
        if m <= a:
            return x if m == 0 else EpPt(x.prefix[m:], x.cycle)
        rot = x.cycle.rotate(m - a)
        return EpPt(Path.vertex(rot.source), rot)
    if m <= a:
        return x if m == 0 else RayPt(x.prefix[m:], x.ray, x.entry)
    e = x.entry + m - a
    return RayPt(Path.vertex(f"{x.ray}.{e}"), x.ray, e)


def shift(g: Graph, x: BoundaryPoint) -> BoundaryPoint:
    if isinstance(x, FinitePt) and not x.path.edges:
        raise DomainError("the shift is not defined on paths of length 0")
    return shift_by(g, x, 1)


def expand(g: Graph, x: BoundaryPoint, n: int) -> tuple:
    """The first ``n`` edges of ``x`` (fewer when ``x`` is shorter)."""
    if isinstance(x, FinitePt):
        return x.path.edges[:n]
    out = list(x.prefix.edges[:n])
    if isinstance(x, EpPt):
        cyc = x.cycle.edges
        i = 0
        while len(out) < n:
            out.append(cyc[i % len(cyc)])
            i += 1
    else:
        i = x.entry + 1
        while len(out) < n:
            out.append(Edge("ray", x.ray, i))
            i += 1
    return tuple(out)


def source(x: BoundaryPoint) -> str:
    return x.path.source if isinstance(x, FinitePt) else x.prefix.source


def least_period(x: EpPt) -> int:
    if not isinstance(x, EpPt):
        raise TypeError("least_period needs an eventually periodic point")
    return len(x.cycle)


# ---- tail equivalence ------------------------------------------------------

def _common_suffix(a: tuple, b: tuple) -> int:
    n = 0
    while n < len(a) and n < len(b) and a[-1 - n] == b[-1 - n]:
        n += 1
    return n


def _search(g, x, y, mx, my) -> Optional[ShiftWitness]:
    sx = [shift_by(g, x, m) for m in range(mx)]
    sy = [shift_by(g, y, n) for n in range(my)]
    for s in range(mx + my - 1):
        for m in range(max(0, s - my + 1), min(s, mx - 1) + 1):
            if sx[m] == sy[s - m]:
                return ShiftWitness(m, s - m)
    return None


def tail_equivalent(g: Graph, x: BoundaryPoint, y: BoundaryPoint) -> Optional[ShiftWitness]:
    """Minimal ``(m, n)`` (by ``m + n``, then ``m``) with ``shift^m x == shift^n y``."""
    if x.kind != y.kind:
        return None
    if isinstance(x, FinitePt):
        a, b = len(x.path), len(y.path)
        t = _common_suffix(x.path.edges, y.path.edges)
        if t == 0 and x.path.range != y.path.range:
            return None
        return ShiftWitness(a - t, b - t)
    if isinstance(x, EpPt):
        if not x.cycle.same_cycle(y.cycle):
            return None
        p = len(x.cycle)
        # past both prefixes a common shift by p can be removed
        return _search(g, x, y, len(x.prefix) + p, len(y.prefix) + p)
    if x.ray != y.ray:
        return None
    d = abs(x.entry - y.entry)
    return _search(g, x, y, len(x.prefix) + d + 1, len(y.prefix) + d + 1)


def is_isolated(g: Graph, x: BoundaryPoint) -> bool:
    """Whether ``{x}`` is open in the boundary path space."""
    if isinstance(x, FinitePt):
        return g.is_sink(x.path.range)
    if isinstance(x, EpPt):
        return not has_exit(g, x.cycle)
    # every vertex on an out-ray emits exactly one edge
    return True


# ---- text and JSON ---------------------------------------------------------

def point_to_text(x: BoundaryPoint) -> str:
    if isinstance(x, FinitePt):
        return f"finite {x.path.source}: " + " ".join(x.path.labels())
    if isinstance(x, EpPt):
        return f"ep {x.prefix.source}: " + " ".join(x.prefix.labels() + ["|"] + list(x.cycle.labels()))
    return f"ray {x.prefix.source}: " + " ".join(x.prefix.labels() + ["|", x.ray])


_POINT = re.compile(r"\s*(finite|ep|ray)\s+(\S+)\s*:(.*)\Z")


def parse_point(g: Graph, text: str) -> BoundaryPoint:
    """Parse ``finite v: e f``, ``ep v: e | c1 c2`` or ``ray v: e | R``."""
    m = _POINT.match(text)
    if not m:
        raise ValueError(f"cannot parse point {text!r}")
    kind, src, rest = m.groups()
    left, bar, right = rest.partition("|")
    prefix = left.split()
    if kind == "finite":
        if bar:
            raise ValueError("finite points have no tail")
        return make_finite(g, src, prefix)
    if not bar:
        raise ValueError(f"{kind} points need a '|' tail")
    tail = right.split()
    if kind == "ep":
        return canonicalize_ep(g, (src, prefix), tail)
    if len(tail) != 1:
        raise ValueError("ray tail is a single ray identifier")
    return make_ray(g, src, prefix, tail[0])


def point_to_json(x: BoundaryPoint) -> dict:
    if isinstance(x, FinitePt):
        return {"kind": "finite", "source": x.path.source, "edges": x.path.labels()}
    if isinstance(x, EpPt):
        return {"kind": "ep", "source": x.prefix.source, "prefix": x.prefix.labels(),
                "cycle": list(x.cycle.labels())}
    return {"kind": "ray", "source": x.prefix.source, "prefix": x.prefix.labels(),
            "ray": x.ray, "entry": x.entry}


def point_from_json(g: Graph, doc: dict) -> BoundaryPoint:
    kind = doc["kind"]
    if kind == "finite":
        return make_finite(g, doc["source"], doc["edges"])
    if kind == "ep":
        return canonicalize_ep(g, (doc["source"], doc["prefix"]), doc["cycle"])
    if kind == "ray":
        x = make_ray(g, doc["source"], doc["prefix"], doc["ray"])
        if "entry" in doc and doc["entry"] != x.entry:
            raise InvalidPathError("entry does not match the source vertex")
        return x
    raise ValueError(f"unknown point kind {kind!r}")
