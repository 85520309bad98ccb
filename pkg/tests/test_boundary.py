import random

import pytest
from hypothesis import given, settings, strategies as st

from grpd import fixtures
from grpd.boundary import (EpPt, FinitePt, RayPt, ShiftWitness, canonicalize_ep, expand,
                           finite_part, is_isolated, least_period, make_finite, make_ray,
                           parse_point, point_from_json, point_to_json, point_to_text, shift,
                           shift_by, tail_equivalent, validate_point)
from grpd.cycles import Cycle
from grpd.errors import CanonicalFormError, DomainError, InvalidPathError
from grpd.generators import random_graph, random_point
from grpd.graph import Path, parse_graph

TWO_CYCLE = parse_graph(
    "vertex a\nvertex b\nvertex c\n"
    "edge e: a -> b\nedge f: b -> a\nedge g: c -> a\nedge h: c -> b\n")


def brute_witness(g, x, y, bound):
    """Least ``(m + n, m)`` with the first ``L`` edges of the shifts equal."""
    L = 3 * (finite_part(x) + finite_part(y) + bound) + 4
    for s in range(2 * bound + 1):
        for m in range(s + 1):
            n = s - m
            try:
                a, b = shift_by(g, x, m), shift_by(g, y, n)
            except DomainError:
                continue
            if isinstance(a, FinitePt) != isinstance(b, FinitePt):
                continue
            same = expand(g, a, L) == expand(g, b, L)
            if isinstance(a, FinitePt):
                same = same and a.path == b.path
            else:
                same = same and source_of(a) == source_of(b)
            if same:
                return m, n
    return None


def source_of(x):
    return x.path.source if isinstance(x, FinitePt) else x.prefix.source


# ---- shift -----------------------------------------------------------------

def test_shift_fixed_point():
    g = fixtures.load("loop")
    x = canonicalize_ep(g, ("v", []), ["e"])
    assert shift(g, x) == x


def test_shift_finite():
    g = parse_graph("vertex a\nvertex b\nvertex c\nedge e: a -> b\nedge f: b -> c\n")
    assert shift(g, make_finite(g, "a", ["e", "f"])) == make_finite(g, "b", ["f"])
    assert shift(g, make_finite(g, "b", ["f"])) == make_finite(g, "c")
    with pytest.raises(DomainError):
        shift(g, make_finite(g, "c"))


def test_shift_moves_along_out_ray():
    g = fixtures.load("example32_G")
    x = make_ray(g, "v", [], "R")
    y = shift(g, x)
    assert y == RayPt(Path.vertex("R.1"), "R", 1)
    assert shift(g, y) == RayPt(Path.vertex("R.2"), "R", 2)


def test_shift_down_a_head():
    g = fixtures.load("example32_F")
    x = make_finite(g, "H.3", ["H[3]", "H[2]", "H[1]"])
    assert shift(g, x) == make_finite(g, "H.2", ["H[2]", "H[1]"])


# ---- canonical form and least period ----------------------------------------

def test_least_period_examples():
    g = fixtures.load("loop")
    assert least_period(canonicalize_ep(g, ("v", []), ["e"])) == 1
    g = parse_graph("vertex a\nvertex b\nvertex c\nvertex d\n"
                    "edge p: d -> a\nedge x: a -> b\nedge y: b -> c\nedge z: c -> a\n")
    assert least_period(canonicalize_ep(g, ("d", ["p"]), ["x", "y", "z"])) == 3


def test_raw_power_is_rejected():
    g = fixtures.load("loop")
    ee = Cycle.from_edges(g, ["e", "e"])
    with pytest.raises(CanonicalFormError):
        EpPt(Path.vertex("v"), ee)
    assert canonicalize_ep(g, ("v", ["e"]), ["e", "e"]) == EpPt(Path.vertex("v"), Cycle.from_edges(g, ["e"]))


def test_canonicalize_absorbs_shared_suffix():
    g = TWO_CYCLE
    x = canonicalize_ep(g, ("c", ["h", "f"]), ["e", "f"])
    # c h (f e)(f e)... = c h f e f ... , prefix h, cycle (f e)
    assert x.prefix.labels() == ["h"]
    assert x.cycle.labels() == ("f", "e")
    raw_prefix, raw_cycle = ["h", "f"], ["e", "f"]
    n = 3 * 4
    want = (raw_prefix + raw_cycle * n)[:n]
    assert [e.label for e in expand(g, x, n)] == want


def test_canonicalize_identity_case():
    g = TWO_CYCLE
    x = canonicalize_ep(g, ("a", []), ["e", "f"])
    assert x == EpPt(Path.vertex("a"), Cycle.from_edges(g, ["e", "f"]))


def test_canonicalize_composability():
    with pytest.raises(InvalidPathError):
        canonicalize_ep(TWO_CYCLE, ("c", ["g"]), ["f", "e"])


def test_prefix_ending_with_cycle_edge_is_rejected():
    g = TWO_CYCLE
    with pytest.raises(CanonicalFormError):
        EpPt(g.path("c", ["h", "f"]), Cycle.from_edges(g, ["e", "f"]))


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_canonical_form_uniqueness(seed):
    rng = random.Random(seed)
    g = TWO_CYCLE
    # the same infinite path c h f (e f)^inf written in many ways
    for _ in range(5):
        k = rng.randint(0, 2)
        power = rng.randint(1, 3)
        prefix = ["h", "f"] + ["e", "f"] * k
        x = canonicalize_ep(g, ("c", prefix), ["e", "f"] * power)
        assert x == canonicalize_ep(g, ("c", ["h"]), ["f", "e"])
    # different infinite paths never collide
    y = canonicalize_ep(g, ("c", ["g"]), ["e", "f"])
    assert y != canonicalize_ep(g, ("c", ["h"]), ["f", "e"])


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_canonical_iff_same_expansion(seed):
    rng = random.Random(seed)
    g = parse_graph("vertex a\nvertex b\nedge e: a -> a\nedge h: a -> a\nedge f: a -> b\nedge g: b -> a\n")
    blocks = [["e"], ["h"], ["f", "g"]]

    def word(lo, hi):
        return [x for _ in range(rng.randint(lo, hi)) for x in rng.choice(blocks)]

    pts = []
    for _ in range(4):
        pre, cyc = word(0, 2), word(1, 2) * rng.randint(1, 3)
        pts.append((pre, cyc, canonicalize_ep(g, ("a", pre), cyc)))
    for p1, c1, x1 in pts:
        for p2, c2, x2 in pts:
            depth = 3 * (len(p1) + len(c1) + len(p2) + len(c2))
            e1 = (p1 + c1 * depth)[:depth]
            e2 = (p2 + c2 * depth)[:depth]
            assert (x1 == x2) == (e1 == e2)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_shift_commutes_with_canonical_form(seed):
    rng = random.Random(seed)
    g = parse_graph("vertex a\nvertex b\nedge e: a -> a\nedge f: a -> b\nedge g: b -> a\n")
    blocks = [["e"], ["f", "g"]]
    pre = [x for _ in range(rng.randint(0, 3)) for x in rng.choice(blocks)]
    cyc = [x for _ in range(rng.randint(1, 2)) for x in rng.choice(blocks)] * rng.randint(1, 2)
    x = canonicalize_ep(g, ("a", pre), cyc)
    raw = pre + cyc
    if pre:
        src = g.range(g.edge(pre[0]))
        expected = canonicalize_ep(g, (src, pre[1:]), cyc)
    else:
        src = g.range(g.edge(cyc[0]))
        expected = canonicalize_ep(g, (src, []), cyc[1:] + cyc[:1])
    assert raw
    assert shift(g, x) == expected


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_least_period_divides_periods(seed):
    rng = random.Random(seed)
    g = parse_graph("vertex a\nvertex b\nedge e: a -> a\nedge h: a -> a\nedge f: a -> b\nedge g: b -> a\n")
    blocks = [["e"], ["h"], ["f", "g"]]
    delta = [x for _ in range(rng.randint(1, 3)) for x in rng.choice(blocks)]
    x = canonicalize_ep(g, ("a", []), delta * rng.randint(1, 4))
    lp = least_period(x)
    for p in range(1, 3 * lp + 1):
        periodic = any(shift_by(g, x, n + p) == shift_by(g, x, n) for n in range(4))
        assert periodic == (p % lp == 0)


# ---- tail equivalence ------------------------------------------------------

def test_tail_equivalent_examples():
    g = parse_graph("vertex a\nvertex b\nvertex c\nedge e: a -> b\nedge f: b -> c\n")
    x = make_finite(g, "a", ["e", "f"])
    assert tail_equivalent(g, x, x) == ShiftWitness(0, 0)
    assert tail_equivalent(g, x, make_finite(g, "b", ["f"])) == ShiftWitness(1, 0)
    g = TWO_CYCLE
    x = canonicalize_ep(g, ("a", []), ["e", "f"])
    y = canonicalize_ep(g, ("b", []), ["f", "e"])
    w = tail_equivalent(g, x, y)
    assert (w.m, w.n) == brute_witness(g, x, y, 4) == (0, 1)
    z = canonicalize_ep(g, ("c", ["g"]), ["e", "f"])
    w = tail_equivalent(g, z, y)
    assert w.m <= len(z.prefix) + 2 and w.n <= len(y.prefix) + 2
    assert (w.m, w.n) == brute_witness(g, z, y, 4)


def test_tail_equivalence_across_kinds_is_empty():
    g = parse_graph("vertex a\nvertex s\nedge e: a -> a\nedge f: a -> s\n")
    assert tail_equivalent(g, make_finite(g, "s"), canonicalize_ep(g, ("a", []), ["e"])) is None


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_tail_equivalent_matches_brute_force(seed):
    rng = random.Random(seed)
    g = random_graph(rng, max_vertices=5, max_edges=8)
    x, y = random_point(g, rng), random_point(g, rng)
    if x is None or y is None:
        return
    w = tail_equivalent(g, x, y)
    bound = finite_part(x) + finite_part(y) + 4 + getattr(x, "entry", 0) + getattr(y, "entry", 0)
    b = brute_witness(g, x, y, bound)
    assert (None if w is None else (w.m, w.n)) == b
    if w is not None:
        assert shift_by(g, x, w.m) == shift_by(g, y, w.n)
        # the swap is a witness for (y, x); ties in m + n may pick another
        back = tail_equivalent(g, y, x)
        assert back.m + back.n == w.m + w.n
        assert shift_by(g, y, w.swap().m) == shift_by(g, x, w.swap().n)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_tail_equivalence_is_transitive(seed):
    rng = random.Random(seed)
    g = random_graph(rng, max_vertices=4, max_edges=6)
    pts = [p for p in (random_point(g, rng) for _ in range(6)) if p is not None]
    for x in pts:
        assert tail_equivalent(g, x, x) == ShiftWitness(0, 0)
        for y in pts:
            for z in pts:
                if tail_equivalent(g, x, y) and tail_equivalent(g, y, z):
                    assert tail_equivalent(g, x, z) is not None


# ---- isolation -------------------------------------------------------------

def test_is_isolated_examples():
    g = fixtures.load("omega_emitter")
    assert is_isolated(g, make_finite(g, "w"))
    assert not is_isolated(g, make_finite(g, "v"))
    g = parse_graph("vertex a\nvertex b\nvertex c\nedge e: a -> a\nedge p: b -> a\nedge q: b -> c\n")
    x = canonicalize_ep(g, ("b", ["p"]), ["e"])
    assert is_isolated(g, x)
    g = fixtures.load("loop_exit_sink")
    assert not is_isolated(g, canonicalize_ep(g, ("v", []), ["e"]))
    assert is_isolated(g, make_ray(fixtures.load("example32_G"), "v", [], "R"))


# ---- text and JSON ---------------------------------------------------------

def test_parse_point_forms():
    g = fixtures.load("example32_G")
    assert parse_point(g, "ray v: | R") == RayPt(Path.vertex("v"), "R", 0)
    assert parse_point(g, "ray R.3: | R") == RayPt(Path.vertex("R.3"), "R", 3)
    g = TWO_CYCLE
    assert parse_point(g, "ep c: h f | e f") == canonicalize_ep(g, ("c", ["h"]), ["f", "e"])
    with pytest.raises(ValueError):
        parse_point(g, "ep c: h")
    with pytest.raises(ValueError):
        parse_point(g, "spiral a: e")


def test_make_ray_absorbs_ray_edges():
    g = fixtures.load("example32_G")
    assert make_ray(g, "v", ["R[1]", "R[2]"], "R") == RayPt(Path.vertex("v"), "R", 0)
    with pytest.raises(InvalidPathError):
        make_ray(g, "R.2", ["R[3]"], "Q")


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_text_and_json_roundtrip(seed):
    rng = random.Random(seed)
    g = random_graph(rng)
    x = random_point(g, rng)
    if x is None:
        return
    validate_point(g, x)
    assert parse_point(g, point_to_text(x)) == x
    assert point_from_json(g, point_to_json(x)) == x
