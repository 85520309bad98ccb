"""Isolated points: the finite / eventually periodic / wandering trichotomy.

An isolated point is either a finite path into a sink, an eventually
periodic path around a cycle without an exit, or a path that visits every
vertex finitely often, which in this graph model means it ends up running
along an out-ray.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import islice, zip_longest

from . import config
from .boundary import BoundaryPoint, EpPt, FinitePt, RayPt, is_isolated, point_to_json
from .counts import Count, count_to_json
from .cycles import no_exit_cycles
from .errors import NotIsolatedError
from .graph import Graph
from .orbits import cyclic_vertices, isolated_orbits


class IsolatedType(str, Enum):
    FINITE = "finite"
    EVENTUALLY_PERIODIC = "eventually_periodic"
    WANDERING = "wandering"


_KIND_TO_TYPE = {
    "finite": IsolatedType.FINITE,
    "ep": IsolatedType.EVENTUALLY_PERIODIC,
    "wandering": IsolatedType.WANDERING,
}


def classify_isolated(g: Graph, x: BoundaryPoint) -> IsolatedType:
    if not is_isolated(g, x):
        raise NotIsolatedError(f"{x} is not an isolated point")
    if isinstance(x, FinitePt):
        return IsolatedType.FINITE
    if isinstance(x, EpPt):
        return IsolatedType.EVENTUALLY_PERIODIC
    if isinstance(x, RayPt):
        return IsolatedType.WANDERING
    raise TypeError(f"not a boundary point: {x!r}")


def is_discrete_space(g: Graph) -> bool:
    """Whether every boundary point of ``g`` is isolated.

    That fails exactly when there is an infinite emitter (the emitter is a
    non-isolated finite path) or a cycle with an exit (its periodic point
    is a limit of the paths leaving through the exit). Otherwise every
    infinite path ends in an exitless cycle or an out-ray.
    """
    for v in g.vertices:
        if g.is_infinite_emitter(v):
            return False
    return all(g.out_degree(v) == 1 for v in cyclic_vertices(g))


@dataclass(frozen=True)
class Census:
    isolated_finite: Count
    isolated_ep: Count
    isolated_wandering: Count
    isolated_ep_orbits: Count
    discrete: bool
    no_exit_cycles: tuple = ()
    witnesses: dict = field(default_factory=dict)

    @property
    def isolated_total(self) -> Count:
        return self.isolated_finite + self.isolated_ep + self.isolated_wandering

    def to_json(self) -> dict:
        return {
            "discrete": self.discrete,
            "isolated_ep": count_to_json(self.isolated_ep),
            "isolated_ep_orbits": count_to_json(self.isolated_ep_orbits),
            "isolated_finite": count_to_json(self.isolated_finite),
            "isolated_wandering": count_to_json(self.isolated_wandering),
            "no_exit_cycles": [list(c.labels()) for c in self.no_exit_cycles],
            "witnesses": {t.value: [point_to_json(x) for x in pts]
                          for t, pts in sorted(self.witnesses.items())},
        }


def _sample(families, size):
    """Round-robin over the families' enumerations."""
    iters = [iter(f.enumerator()) for f in families]
    out = []
    for row in zip_longest(*iters):
        out.extend(x for x in row if x is not None)
        if len(out) >= size:
            break
    return tuple(islice(out, size))


def census(g: Graph, sample: int = None) -> Census:
    sample = config.WITNESS_SAMPLE if sample is None else sample
    fams = isolated_orbits(g)
    by_kind = {k: [f for f in fams if f.kind == k] for k in _KIND_TO_TYPE}

    def total(fs):
        t = 0
        for f in fs:
            t = t + f.cardinality
        return t

    return Census(
        isolated_finite=total(by_kind["finite"]),
        isolated_ep=total(by_kind["ep"]),
        isolated_wandering=total(by_kind["wandering"]),
        isolated_ep_orbits=len(by_kind["ep"]),
        discrete=is_discrete_space(g),
        no_exit_cycles=tuple(no_exit_cycles(g)),
        witnesses={_KIND_TO_TYPE[k]: _sample(fs, sample) for k, fs in by_kind.items()},
    )
