"""The graph groupoid on discrete boundary spaces.

Elements are triples ``(x, k, y)`` with ``shift^m(x) == shift^n(y)`` and
``k = m - n``. When every boundary point is isolated the groupoid is
described by its orbits: each is countable, with trivial isotropy or, on
an eventually periodic orbit, isotropy ``lp * Z``.

Given a bijection of orbits preserving size and eventual periodicity, an
explicit isomorphism is built. On an orbit without periodic points the
integer of an element is forced. On an eventually periodic orbit ``W`` a
periodic point ``x_W`` is fixed, ``j(x)`` is the number of shifts taking
``x`` to ``x_W``, and ``(x, k, y)`` is sent to

    (h(x), j(h(x)) - j(h(y)) - n * lp_F, h(y)),  where  j(x) - j(y) - k = n * lp_E.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .boundary import (BoundaryPoint, EpPt, FinitePt, ShiftWitness, point_to_json, shift_by,
                       tail_equivalent)
from .counts import Count, count_key, count_to_json
from .errors import DomainError, MatchingError, NotDiscreteError
from .graph import Graph
from .isolated import is_discrete_space
from .orbits import OrbitFamily, family_of, isolated_orbits


# ---- elements --------------------------------------------------------------

@dataclass(frozen=True)
class IntegerSet:
    """Empty, a singleton ``{base}``, or the coset ``base + step * Z``."""

    base: Optional[int] = None
    step: int = 0

    @property
    def empty(self) -> bool:
        return self.base is None

    def __contains__(self, k) -> bool:
        if self.base is None:
            return False
        if self.step == 0:
            return k == self.base
        return (k - self.base) % self.step == 0

    def within(self, bound: int) -> list:
        """Members ``k`` with ``|k| <= bound``."""
        return [k for k in range(-bound, bound + 1) if k in self]

    def to_json(self):
        if self.base is None:
            return {"kind": "empty"}
        if self.step == 0:
            return {"kind": "singleton", "value": self.base}
        return {"kind": "coset", "base": self.base, "step": self.step}

    def __str__(self):
        if self.base is None:
            return "{}"
        if self.step == 0:
            return f"{{{self.base}}}"
        return f"{self.base} + {self.step}Z"


def elements_between(g: Graph, x: BoundaryPoint, y: BoundaryPoint) -> IntegerSet:
    """All ``k`` with ``(x, k, y)`` in the groupoid."""
    w = tail_equivalent(g, x, y)
    if w is None:
        return IntegerSet()
    if isinstance(x, EpPt):
        p = len(x.cycle)
        return IntegerSet(w.k % p, p)
    return IntegerSet(w.k, 0)


@dataclass(frozen=True)
class GroupoidElement:
    x: BoundaryPoint
    k: int
    y: BoundaryPoint
    witness: ShiftWitness

    def inverse(self) -> "GroupoidElement":
        return GroupoidElement(self.y, -self.k, self.x, self.witness.swap())

    def to_json(self) -> dict:
        return {"range": point_to_json(self.x), "k": self.k, "source": point_to_json(self.y),
                "m": self.witness.m, "n": self.witness.n}


class ShiftCache:
    """Memoized shift sequences, for brute-force membership checks."""

    def __init__(self, g: Graph):
        self.g = g
        self._seq = {}

    def shifts(self, x: BoundaryPoint, upto: int) -> list:
        seq = self._seq.setdefault(x, [x])
        while len(seq) <= upto:
            try:
                seq.append(shift_by(self.g, seq[-1], 1))
            except DomainError:
                break
        return seq

    def find(self, x, k, y) -> Optional[ShiftWitness]:
        """Some ``(m, n)`` with ``m - n == k`` and equal shifts, by direct search."""
        tx, ty = _prefix_len(x), _prefix_len(y)
        # past both prefixes the shift is injective, so a solution with
        # n <= tx + ty + |k| exists whenever any does
        bound = tx + ty + abs(k) + 1
        sx = self.shifts(x, bound + k if k > 0 else bound)
        sy = self.shifts(y, bound)
        for n in range(bound + 1):
            m = n + k
            if m < 0:
                continue
            if m >= len(sx) or n >= len(sy):
                break
            if sx[m] == sy[n]:
                return ShiftWitness(m, n, minimal=False)
        return None

    def ks(self, x, y, span: int) -> list:
        """All ``k`` with ``|k| <= span`` and ``(x, k, y)`` an element."""
        return [k for k in range(-span, span + 1) if self.find(x, k, y) is not None]


def _prefix_len(x) -> int:
    return len(x.path) if isinstance(x, FinitePt) else len(x.prefix)


def element(g: Graph, x: BoundaryPoint, k: int, y: BoundaryPoint) -> GroupoidElement:
    w = ShiftCache(g).find(x, k, y)
    if w is None:
        raise ValueError(f"({x}, {k}, {y}) is not in the groupoid")
    return GroupoidElement(x, k, y, w)


def compose(a: GroupoidElement, b: GroupoidElement, g: Graph) -> GroupoidElement:
    if a.y != b.x:
        raise ValueError("elements are not composable")
    return element(g, a.x, a.k + b.k, b.y)


# ---- orbits and signatures -------------------------------------------------

def _require_discrete(g: Graph):
    if not is_discrete_space(g):
        raise NotDiscreteError("the boundary path space is not discrete")


def orbits(g: Graph) -> list:
    """Orbit families of a discrete boundary space (all of its points)."""
    _require_discrete(g)
    return isolated_orbits(g)


def _entry(f: OrbitFamily):
    return (f.cardinality, f.isotropy, f.lp)


def _entry_key(e):
    return (count_key(e[0]), e[1], e[2] or 0)


@dataclass(frozen=True)
class DiscreteGroupoidSignature:
    entries: tuple  # sorted (cardinality, isotropy, lp or None)

    def key(self, with_lp: bool = False) -> tuple:
        return tuple(sorted(((c, i, lp) if with_lp else (c, i, None) for c, i, lp in self.entries),
                            key=_entry_key))

    def matches(self, other: "DiscreteGroupoidSignature", with_lp: bool = False) -> bool:
        return self.key(with_lp) == other.key(with_lp)

    def to_json(self):
        return [{"cardinality": count_to_json(c), "isotropy": i, "lp": lp} for c, i, lp in self.entries]


def signature_of(families) -> DiscreteGroupoidSignature:
    return DiscreteGroupoidSignature(tuple(sorted((_entry(f) for f in families), key=_entry_key)))


def signature(g: Graph) -> DiscreteGroupoidSignature:
    return signature_of(orbits(g))


def match_families(famsE, famsF, key) -> Optional[list]:
    """Pair families with equal ``key`` values in a fixed order, or ``None``."""
    a = sorted(range(len(famsE)), key=lambda i: (key(famsE[i]), i))
    b = sorted(range(len(famsF)), key=lambda j: (key(famsF[j]), j))
    if [key(famsE[i]) for i in a] != [key(famsF[j]) for j in b]:
        return None
    return list(zip(a, b))


# ---- the isomorphism -------------------------------------------------------

@dataclass(frozen=True)
class IsoWitness:
    """An isomorphism of discrete graph groupoids, given by its rule.

    ``orientation[i] = -1`` composes the rule on eventually periodic family
    ``i`` with the automorphism ``n -> -n`` of its isotropy; ``offsets``
    adds a constant to the integer on a family (which never gives a
    homomorphism, and exists to exercise :func:`verify_phi`).
    """

    gE: Graph
    gF: Graph
    families_E: tuple
    families_F: tuple
    matching: tuple  # (i, j) pairs
    orientation: dict = field(default_factory=dict)
    offsets: dict = field(default_factory=dict)
    _memo: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def _fwd(self):
        return dict(self.matching)

    @property
    def _bwd(self):
        return {j: i for i, j in self.matching}

    def representative_E(self, i) -> EpPt:
        return self.families_E[i].base

    def representative_F(self, j) -> EpPt:
        return self.families_F[j].base

    def family_E(self, x) -> int:
        i = self._memo.get(("E", x), -1)
        if i == -1:
            i = self._memo[("E", x)] = family_of(self.families_E, x)
        if i is None:
            raise KeyError(f"{x} lies in no orbit of the first graph")
        return i

    def family_F(self, y) -> int:
        j = self._memo.get(("F", y), -1)
        if j == -1:
            j = self._memo[("F", y)] = family_of(self.families_F, y)
        if j is None:
            raise KeyError(f"{y} lies in no orbit of the second graph")
        return j

    def h(self, x: BoundaryPoint) -> BoundaryPoint:
        i = self.family_E(x)
        idx = self.families_E[i].enumerator().index_of(x)
        return self.families_F[self._fwd[i]].enumerator().point(idx)

    def h_inverse(self, y: BoundaryPoint) -> BoundaryPoint:
        j = self.family_F(y)
        idx = self.families_F[j].enumerator().index_of(y)
        return self.families_E[self._bwd[j]].enumerator().point(idx)

    def j_E(self, x) -> int:
        return self.families_E[self.family_E(x)].enumerator().j(x)

    def j_F(self, y) -> int:
        return self.families_F[self.family_F(y)].enumerator().j(y)

    def phi(self, x, k, y):
        """Image of ``(x, k, y)`` as a triple."""
        i = self.family_E(x)
        if self.family_E(y) != i:
            raise ValueError("range and source lie in different orbits")
        fE = self.families_E[i]
        fF = self.families_F[self._fwd[i]]
        hx, hy = self.h(x), self.h(y)
        off = self.offsets.get(i, 0)
        if not fE.ep:
            return (hx, _any_k(self.gF, hx, hy) + off, hy)
        n, rem = divmod(self.j_E(x) - self.j_E(y) - k, fE.lp)
        if rem:
            raise ValueError(f"({x}, {k}, {y}) is not in the groupoid")
        sign = self.orientation.get(i, 1)
        return (hx, self.j_F(hx) - self.j_F(hy) - sign * n * fF.lp + off, hy)

    def phi_inverse(self, hx, kk, hy):
        j = self.family_F(hx)
        i = self._bwd[j]
        fE = self.families_E[i]
        fF = self.families_F[j]
        x, y = self.h_inverse(hx), self.h_inverse(hy)
        off = self.offsets.get(i, 0)
        if not fE.ep:
            return (x, _any_k(self.gE, x, y), y)
        t = self.j_F(hx) - self.j_F(hy) - (kk - off)
        sign = self.orientation.get(i, 1)
        n, rem = divmod(t, sign * fF.lp)
        if rem:
            raise ValueError(f"({hx}, {kk}, {hy}) is not in the image")
        return (x, self.j_E(x) - self.j_E(y) - n * fE.lp, y)

    def with_orientation(self, orientation: dict) -> "IsoWitness":
        return replace(self, orientation=dict(orientation), _memo={})

    def with_offsets(self, offsets: dict) -> "IsoWitness":
        return replace(self, offsets=dict(offsets), _memo={})

    def to_json(self, sample: int = 4) -> dict:
        fams = []
        for i, j in self.matching:
            fE, fF = self.families_E[i], self.families_F[j]
            entry = {
                "source_family": fE.anchor,
                "target_family": fF.anchor,
                "kind": fE.kind,
                "target_kind": fF.kind,
                "cardinality": count_to_json(fE.cardinality),
                "h_sample": [[point_to_json(x), point_to_json(self.h(x))]
                             for x in fE.enumerator().points(sample)],
            }
            if fE.ep:
                entry["representative_source"] = point_to_json(fE.base)
                entry["representative_target"] = point_to_json(fF.base)
                entry["lp_source"] = fE.lp
                entry["lp_target"] = fF.lp
                entry["rule"] = "k' = j(h x) - j(h y) - orientation * n * lp_target, j(x) - j(y) - k = n * lp_source"
                entry["orientation"] = self.orientation.get(i, 1)
            else:
                entry["rule"] = "k' = the unique integer with (h x, k', h y) in the groupoid"
            if self.offsets.get(i):
                entry["offset"] = self.offsets[i]
            fams.append(entry)
        return {"families": fams}


def _any_k(g, x, y) -> int:
    w = tail_equivalent(g, x, y)
    if w is None:
        raise ValueError(f"{x} and {y} are not tail equivalent")
    return w.k


def build_phi(gE: Graph, gF: Graph, matching=None, orientation=None) -> IsoWitness:
    """Isomorphism data for an orbit bijection preserving size and periodicity.

    ``matching`` is a sequence of ``(i, j)`` family-index pairs over
    :func:`orbits` of each graph; by default families are paired in
    signature order.
    """
    famsE, famsF = orbits(gE), orbits(gF)
    if matching is None:
        matching = match_families(famsE, famsF, lambda f: _entry_key(_entry(f))[:2])
        if matching is None:
            raise MatchingError("the orbit signatures differ")
    matching = tuple((int(i), int(j)) for i, j in matching)
    left = sorted(i for i, _ in matching)
    right = sorted(j for _, j in matching)
    if left != list(range(len(famsE))) or right != list(range(len(famsF))):
        raise MatchingError("matching is not a bijection of orbit families")
    for i, j in matching:
        fE, fF = famsE[i], famsF[j]
        if fE.cardinality != fF.cardinality:
            raise MatchingError(f"orbit sizes differ: {fE.cardinality} vs {fF.cardinality}")
        if fE.ep != fF.ep:
            raise MatchingError("matching pairs an eventually periodic orbit with one that is not")
    return IsoWitness(gE, gF, tuple(famsE), tuple(famsF), matching, dict(orientation or {}))


# ---- verification ----------------------------------------------------------

@dataclass(frozen=True)
class Verification:
    ok: bool
    checked: int = 0
    reason: str = ""
    counterexample: Optional[tuple] = None

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        out = {"ok": self.ok, "checked": self.checked, "reason": self.reason}
        if self.counterexample is not None:
            out["counterexample"] = [_triple_json(t) for t in self.counterexample]
        return out


def _triple_json(t):
    x, k, y = t
    return {"range": point_to_json(x), "k": k, "source": point_to_json(y)}


def _fail(checked, reason, *triples):
    return Verification(False, checked, reason, tuple(triples))


def verify_phi(w: IsoWitness, window: int = 10) -> Verification:
    """Check the isomorphism on every element with point indices and ``|k|`` up to ``window``.

    Membership in either groupoid is decided by brute-force shifting. The
    checks are: images are elements, units go to units over ``h``, the map
    is injective and onto the target window, inverses are preserved, and
    ``phi(a) phi(b) == phi(ab)`` for every composable pair in the window.
    """
    cE, cF = ShiftCache(w.gE), ShiftCache(w.gF)
    W = window
    checked = 0
    for i, jf in w.matching:
        ptsE = w.families_E[i].enumerator().points(W + 1)
        ptsF = w.families_F[jf].enumerator().points(W + 1)
        if len(ptsE) != len(ptsF):
            return _fail(checked, "orbit windows differ in size")
        for x, y in zip(ptsE, ptsF):
            if w.h(x) != y or w.h_inverse(y) != x:
                return _fail(checked, "h is not the matched index bijection", (x, 0, x))
        P = len(ptsE)
        span = 2 * W
        table = {}
        images = set()
        for a, x in enumerate(ptsE):
            for b, y in enumerate(ptsE):
                ks = cE.ks(x, y, span)
                row = {}
                for k in ks:
                    try:
                        img = w.phi(x, k, y)
                    except (ValueError, KeyError) as exc:
                        return _fail(checked, f"phi undefined: {exc}", (x, k, y))
                    row[k] = img[1]
                    if abs(k) > W:
                        continue
                    checked += 1
                    hx, kk, hy = img
                    if (hx, hy) != (ptsF[a], ptsF[b]):
                        return _fail(checked, "phi does not induce h", (x, k, y), img)
                    if cF.find(hx, kk, hy) is None:
                        return _fail(checked, "image is not a groupoid element", (x, k, y), img)
                    if x == y and k == 0 and kk != 0:
                        return _fail(checked, "a unit is not sent to a unit", (x, k, y), img)
                    if img in images:
                        return _fail(checked, "phi is not injective", (x, k, y), img)
                    images.add(img)
                table[a, b] = row
        for a in range(P):
            for b in range(P):
                for k, kk in table[a, b].items():
                    if abs(k) <= W and table[b, a].get(-k) != -kk:
                        return _fail(checked, "inverses are not preserved",
                                     (ptsE[a], k, ptsE[b]), (ptsF[a], kk, ptsF[b]))
        for a, y1 in enumerate(ptsF):
            for b, y2 in enumerate(ptsF):
                for kk in cF.ks(y1, y2, W):
                    try:
                        pre = w.phi_inverse(y1, kk, y2)
                        back = w.phi(*pre)
                    except (ValueError, KeyError):
                        return _fail(checked, "target element has no preimage", (y1, kk, y2))
                    if back != (y1, kk, y2) or cE.find(*pre) is None:
                        return _fail(checked, "phi is not onto the target window", (y1, kk, y2))
        bad = _multiplicativity(table, P, W)
        if bad is not None:
            a, b, c, k1, k2 = bad
            return _fail(checked, "phi is not multiplicative",
                         (ptsE[a], k1, ptsE[b]), (ptsE[b], k2, ptsE[c]))
    return Verification(True, checked)


def _multiplicativity(table, P, W):
    """First ``(a, b, c, k1, k2)`` with ``phi(a k1 b) phi(b k2 c) != phi(a k1+k2 c)``."""
    span = 2 * W
    dense = {}
    for (a, c), row in table.items():
        arr = np.full(2 * span + 1, np.nan)
        for k, kk in row.items():
            arr[k + span] = kk
        dense[a, c] = arr
    win = {}
    for (a, b), row in table.items():
        ks = np.array([k for k in row if abs(k) <= W], dtype=np.int64)
        vals = np.array([row[k] for k in ks], dtype=float)
        win[a, b] = (ks, vals)
    for a in range(P):
        for b in range(P):
            k1, v1 = win[a, b]
            if not len(k1):
                continue
            for c in range(P):
                k2, v2 = win[b, c]
                if not len(k2):
                    continue
                s = k1[:, None] + k2[None, :]
                expected = dense[a, c][s + span]
                got = v1[:, None] + v2[None, :]
                mism = ~(expected == got)
                if mism.any():
                    r, q = np.argwhere(mism)[0]
                    return a, b, c, int(k1[r]), int(k2[q])
    return None
