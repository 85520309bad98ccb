"""Deciding orbit equivalence and groupoid isomorphism for discrete spaces.

For discrete boundary path spaces all three questions reduce to orbit
data. Orbit equivalence needs a bijection of orbits preserving their
sizes. Keeping eventually periodic points on eventually periodic points
adds the periodicity flag. Groupoid isomorphism needs matching isotropy,
which for these spaces is the same flag, so the last two agree.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional

from .counts import count_key, count_to_json
from .groupoid import build_phi, match_families, orbits, verify_phi
from .isolated import census, is_discrete_space
from .graph import Graph
from .orbits import isolated_orbits

YES, NO, UNDECIDED = "yes", "no", "undecided"


@dataclass(frozen=True)
class Obstruction:
    invariant: str
    left: object
    right: object

    def to_json(self) -> dict:
        return {"invariant": self.invariant, "left": _jsonable(self.left), "right": _jsonable(self.right)}


@dataclass(frozen=True)
class Verdict:
    answer: str  # "yes" | "no" | "undecided"
    witness: object = None
    obstruction: Optional[Obstruction] = None
    reason: str = ""

    def __bool__(self):
        return self.answer == YES

    def to_json(self) -> dict:
        out = {"answer": self.answer, "reason": self.reason}
        if self.obstruction is not None:
            out["obstruction"] = self.obstruction.to_json()
        if self.witness is not None:
            w = self.witness
            out["witness"] = w.to_json() if hasattr(w, "to_json") else _jsonable(w)
        return out


def _jsonable(v):
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (bool, str)) or v is None:
        return v
    return count_to_json(v)


def _multiset(items, key):
    return tuple(sorted(items, key=key))


def _not_discrete(gE, gF) -> Optional[Verdict]:
    bad = [name for name, g in (("first", gE), ("second", gF)) if not is_discrete_space(g)]
    if bad:
        return Verdict(UNDECIDED, reason=f"the {' and '.join(bad)} boundary space is not discrete")
    return None


def _cards(fams):
    return _multiset((f.cardinality for f in fams), count_key)


def _card_ep(fams):
    return _multiset(((f.cardinality, f.ep) for f in fams), lambda t: (count_key(t[0]), t[1]))


@dataclass(frozen=True)
class OrbitMatching:
    pairs: tuple
    families_E: tuple
    families_F: tuple

    def to_json(self) -> dict:
        return {"pairs": [{"source": self.families_E[i].anchor, "source_kind": self.families_E[i].kind,
                           "target": self.families_F[j].anchor, "target_kind": self.families_F[j].kind,
                           "cardinality": count_to_json(self.families_E[i].cardinality)}
                          for i, j in self.pairs]}


def decide_oe_discrete(gE: Graph, gF: Graph) -> Verdict:
    """Orbit equivalence: equal multisets of orbit sizes."""
    nd = _not_discrete(gE, gF)
    if nd is not None:
        return nd
    fE, fF = orbits(gE), orbits(gF)
    pairs = match_families(fE, fF, lambda f: count_key(f.cardinality))
    if pairs is None:
        return Verdict(NO, obstruction=Obstruction("orbit cardinality mismatch", _cards(fE), _cards(fF)))
    return Verdict(YES, witness=OrbitMatching(tuple(pairs), tuple(fE), tuple(fF)),
                   reason="orbits can be matched size for size")


def decide_oe_preserving_ep_discrete(gE: Graph, gF: Graph) -> Verdict:
    """Orbit equivalence sending eventually periodic points to eventually periodic points."""
    nd = _not_discrete(gE, gF)
    if nd is not None:
        return nd
    fE, fF = orbits(gE), orbits(gF)
    pairs = match_families(fE, fF, lambda f: (count_key(f.cardinality), f.ep))
    if pairs is None:
        if _cards(fE) != _cards(fF):
            return Verdict(NO, obstruction=Obstruction("orbit cardinality mismatch", _cards(fE), _cards(fF)))
        return Verdict(NO, obstruction=Obstruction("ep flag mismatch", _card_ep(fE), _card_ep(fF)))
    return Verdict(YES, witness=OrbitMatching(tuple(pairs), tuple(fE), tuple(fF)),
                   reason="orbits can be matched by size and periodicity")


def decide_groupoid_iso_discrete(gE: Graph, gF: Graph, window: int = 10) -> Verdict:
    """Groupoid isomorphism, with an explicit isomorphism checked on a window.

    A signature match whose constructed isomorphism fails verification is
    reported as undecided rather than yes.
    """
    nd = _not_discrete(gE, gF)
    if nd is not None:
        return nd
    fE, fF = orbits(gE), orbits(gF)

    def iso_sig(fams):
        return _multiset(((f.cardinality, f.isotropy) for f in fams), lambda t: (count_key(t[0]), t[1]))

    pairs = match_families(fE, fF, lambda f: (count_key(f.cardinality), f.isotropy))
    if pairs is None:
        if _cards(fE) != _cards(fF):
            return Verdict(NO, obstruction=Obstruction("orbit cardinality mismatch", _cards(fE), _cards(fF)))
        return Verdict(NO, obstruction=Obstruction("isotropy mismatch", iso_sig(fE), iso_sig(fF)))
    w = build_phi(gE, gF, pairs)
    check = verify_phi(w, window)
    if not check:
        return Verdict(UNDECIDED, witness=w, reason=f"constructed isomorphism failed verification: {check.reason}")
    return Verdict(YES, witness=w, reason=f"isomorphism verified on window {window} ({check.checked} elements)")


def invariant_refute(gE: Graph, gF: Graph) -> Optional[Obstruction]:
    """A homeomorphism-and-isomorphism invariant that differs, or ``None``.

    Works for arbitrary graphs: only the isolated part is compared.
    """
    cE, cF = census(gE, sample=0), census(gF, sample=0)
    for name, attr in (("isolated eventually periodic count", "isolated_ep"),
                       ("isolated eventually periodic orbit count", "isolated_ep_orbits"),
                       ("isolated point count", "isolated_total")):
        a, b = getattr(cE, attr), getattr(cF, attr)
        if a != b:
            return Obstruction(name, a, b)

    def sig(g):
        return _multiset(((f.cardinality, f.isotropy) for f in isolated_orbits(g)),
                         lambda t: (count_key(t[0]), t[1]))

    a, b = sig(gE), sig(gF)
    if Counter(a) != Counter(b):
        return Obstruction("isolated orbit signature", a, b)
    return None


def theorem_consistency_check(gE: Graph, gF: Graph) -> bool:
    """Isomorphism and ep-preserving orbit equivalence give the same decided answer."""
    iso = decide_groupoid_iso_discrete(gE, gF)
    oe = decide_oe_preserving_ep_discrete(gE, gF)
    return iso.answer != UNDECIDED and iso.answer == oe.answer
