"""Acceptance criteria 1-8, one summary line each.

Each test prints ``criterion N: PASS|FAIL ...`` with its measured runtime
and then asserts, so the summary lines appear in the pytest log even when
a criterion fails.
"""

import io
import json
import random
import time
from pathlib import Path

import pytest

from grpd import fixtures
from grpd.boundary import EpPt, canonicalize_ep, expand, least_period, tail_equivalent
from grpd.cli import run
from grpd.counts import OMEGA
from grpd.cycles import Cycle, condition_L, primitive_root
from grpd.equivalence import (NO, YES, decide_groupoid_iso_discrete, decide_oe_discrete,
                              theorem_consistency_check)
from grpd.generators import (discrete_pair, random_discrete_graph, random_graph,
                             random_no_sink_graph, random_point, random_relabel)
from grpd.graph import parse_graph, stabilize
from grpd.groupoid import ShiftCache, build_phi, elements_between, verify_phi
from grpd.isolated import IsolatedType, census, classify_isolated
from grpd.oracle import ISOLATED, NOT_ISOLATED, cross_check, default_depth

CORPUS_SIZE = 1000
FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def corpus():
    return [random_graph(seed) for seed in range(CORPUS_SIZE)]


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail, seconds, limit=None):
        budget = f" (limit {limit} s)" if limit else ""
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'}  {detail}  [{seconds:.2f} s{budget}]")
    return emit


def test_criterion_1_fixture_reproduction(report):
    t = time.perf_counter()
    E, F, G = (fixtures.load(n) for n in ("example32_E", "example32_F", "example32_G"))
    problems = []
    expected = {
        "E": (E, IsolatedType.EVENTUALLY_PERIODIC, (0, OMEGA, 0)),
        "F": (F, IsolatedType.FINITE, (OMEGA, 0, 0)),
        "G": (G, IsolatedType.WANDERING, (0, 0, OMEGA)),
    }
    for name, (g, kind, counts) in expected.items():
        c = census(g, sample=3)
        got = (c.isolated_finite, c.isolated_ep, c.isolated_wandering)
        if not c.discrete or got != counts:
            problems.append(f"census {name}: {got} discrete={c.discrete}")
        if {t for t, xs in c.witnesses.items() if xs} != {kind} or any(classify_isolated(g, x) is not kind for x in c.witnesses[kind]):
            problems.append(f"types {name}")
    paths = {k: str(FIXTURES / f"example32_{k}.gph") for k in "EFG"}
    for a, b in (("E", "F"), ("E", "G"), ("F", "G")):
        out = io.StringIO()
        code = run(["compare", paths[a], paths[b], "--mode", "oe", "--json"], out, io.StringIO())
        if code != 0 or json.loads(out.getvalue())["answer"] != YES:
            problems.append(f"oe {a}{b}")
    v = decide_groupoid_iso_discrete(F, G, window=10)
    if v.answer != YES or not verify_phi(v.witness, 10):
        problems.append("iso FG")
    for other in ("F", "G"):
        v = decide_groupoid_iso_discrete(E, expected[other][0])
        if v.answer != NO or v.obstruction.invariant != "isotropy mismatch":
            problems.append(f"iso E{other}")
    dt = time.perf_counter() - t
    ok = not problems and dt < 1
    report(1, ok, "E/F/G censuses, oe on all pairs, iso yes F-G and no E-F, E-G"
           + (f"; problems: {problems}" if problems else ""), dt, 1)
    assert not problems
    assert dt < 1


def test_criterion_2_condition_L_biconditional(report):
    t = time.perf_counter()
    bad = [s for s, g in enumerate(corpus()) if condition_L(g) != (census(g, sample=0).isolated_ep == 0)]
    dt = time.perf_counter() - t
    ok = not bad and dt < 30
    report(2, ok, f"{CORPUS_SIZE} graphs, {len(bad)} counterexamples", dt, 30)
    assert not bad, bad[:10]
    assert dt < 30


def test_criterion_3_classifier_oracle_agreement(report):
    t = time.perf_counter()
    bad, checked, certified, refuted = [], 0, 0, 0
    for seed, g in enumerate(corpus()):
        rep = cross_check(g, depth=default_depth(g))
        checked += rep.checked
        certified += rep.certified
        refuted += rep.refuted
        mism = [(x, a) for x, v, a in rep.pairs if v.tag == ISOLATED and not a]
        mism += [(x, a) for x, v, a in rep.pairs if v.tag == NOT_ISOLATED and a]
        if rep.disagreements or mism:
            bad.append(seed)
    dt = time.perf_counter() - t
    ok = not bad and dt < 300
    report(3, ok, f"{CORPUS_SIZE} graphs, {checked} points, {certified} certified, {refuted} refuted, "
           f"{len(bad)} graphs with disagreements", dt, 300)
    assert not bad, bad[:10]
    assert dt < 300


def test_criterion_4_no_sinks(report):
    t = time.perf_counter()
    n = 500
    bad = []
    for seed in range(n):
        g = random_no_sink_graph(seed)
        c = census(g, sample=0)
        se = census(stabilize(g), sample=0)
        if c.isolated_finite != 0 or c.isolated_wandering != 0 or se.isolated_wandering != 0:
            bad.append(seed)
    dt = time.perf_counter() - t
    report(4, not bad, f"{n} no-sink graphs and their stabilizations, {len(bad)} counterexamples", dt)
    assert not bad, bad[:10]


def test_criterion_5_isomorphism_biconditional(report):
    t = time.perf_counter()
    n = 300
    inconsistent, unverified, yes = [], [], 0
    for seed in range(n):
        a, b = discrete_pair(seed)
        if not theorem_consistency_check(a, b):
            inconsistent.append(seed)
            continue
        if decide_oe_discrete(a, b).answer == YES and decide_groupoid_iso_discrete(a, b).answer == YES:
            yes += 1
            if not verify_phi(build_phi(a, b), window=10):
                unverified.append(seed)
    dt = time.perf_counter() - t
    ok = not inconsistent and not unverified
    report(5, ok, f"{n} discrete pairs, {yes} isomorphic, {len(inconsistent)} inconsistent, "
           f"{len(unverified)} witnesses failing at window 10", dt)
    assert not inconsistent, inconsistent[:10]
    assert not unverified, unverified[:10]


def test_criterion_6_elements_between(report):
    t = time.perf_counter()
    bad, singletons, cosets = [], 0, 0
    for seed, g in enumerate(corpus()):
        rng = random.Random(seed)
        pts = [x for x in (random_point(g, rng) for _ in range(4)) if x is not None]
        cache = ShiftCache(g)
        for x in pts:
            for y in pts:
                if tail_equivalent(g, x, y) is None:
                    continue
                s = elements_between(g, x, y)
                if isinstance(x, EpPt):
                    lp = least_period(x)
                    span = 3 * lp
                    if s.step != lp or s.within(span) != cache.ks(x, y, span) or not s.within(span):
                        bad.append((seed, x, y))
                    cosets += 1
                else:
                    span = abs(s.base) + 6 if not s.empty else 6
                    if s.step != 0 or cache.ks(x, y, span) != [s.base]:
                        bad.append((seed, x, y))
                    singletons += 1
    dt = time.perf_counter() - t
    report(6, not bad, f"{singletons} non-ep pairs singleton, {cosets} ep pairs coset k0 + lp Z, "
           f"{len(bad)} failures", dt)
    assert not bad, bad[:5]


LOOPS = parse_graph("vertex a\nvertex b\nvertex c\n"
                    "edge e: a -> a\nedge h: a -> a\nedge f: a -> b\nedge g: b -> a\nedge p: c -> a\n")


def _random_primitive(rng, max_len=6):
    while True:
        word, v = [], "a"
        for _ in range(rng.randint(1, max_len)):
            opts = ["e", "h", "f"] if v == "a" else ["g"]
            e = rng.choice(opts)
            word.append(e)
            v = "b" if e == "f" else "a"
        if v != "a":
            if len(word) == max_len:
                continue
            word.append("g")
        n = len(word)
        if all(any(word[i] != word[i % d] for i in range(n)) for d in range(1, n) if n % d == 0):
            return word


def _brute_periods(g, x, bound):
    a = len(x.prefix)
    seq = [e.label for e in expand(g, x, a + 4 * bound + 8)]
    tail = seq[a:]
    return [p for p in range(1, bound + 1) if all(tail[i] == tail[i + p] for i in range(len(tail) - p))]


def test_criterion_7_least_period(report):
    t = time.perf_counter()
    rng = random.Random(7)
    bad, n = [], 400
    for _ in range(n):
        delta = _random_primitive(rng)
        k = rng.randint(1, 4)
        prefix = rng.choice([[], ["p"]])
        src = "c" if prefix else "a"
        x = canonicalize_ep(LOOPS, (src, prefix), delta * k)
        assert primitive_root(Cycle.from_edges(LOOPS, delta * k))[1] == k
        periods = _brute_periods(LOOPS, x, 3 * len(delta))
        lp = least_period(x)
        if lp != len(delta) or len(delta) not in periods or any(p % lp for p in periods):
            bad.append((delta, k))
    dt = time.perf_counter() - t
    report(7, not bad, f"{n} points from powers of primitive cycles, {len(bad)} failures", dt)
    assert not bad, bad[:5]


def test_criterion_8_uniqueness_spot_check(report):
    t = time.perf_counter()
    problems = []
    E = fixtures.load("example32_E")
    w = build_phi(E, E)
    w2 = w.with_orientation({0: -1})
    x = w.representative_E(0)
    if w.phi(x, 1, x) == w2.phi(x, 1, x):
        problems.append("witnesses on E coincide")
    for name, ww in (("identity", w), ("flipped", w2)):
        if not verify_phi(ww, 10):
            problems.append(f"{name} witness on E fails")
    # condition (L) with a discrete space: every integer rule is forced
    pairs = [(fixtures.load("example32_F"), fixtures.load("example32_G")),
             (fixtures.load("two_sinks"), fixtures.load("two_sinks"))]
    rng = random.Random(8)
    while len(pairs) < 12:
        g = random_discrete_graph(rng, max_vertices=4)
        if condition_L(g) and not all(g.is_sink(v) for v in g.vertices):
            pairs.append((g, random_relabel(g, rng)))
    mutations = 0
    for a, b in pairs:
        base = build_phi(a, b)
        if not verify_phi(base, 6):
            problems.append("unmutated witness fails")
        for i, _ in base.matching:
            for d in (1, -1):
                mutations += 1
                if verify_phi(base.with_offsets({i: d}), 6):
                    problems.append(f"mutation {d:+d} on family {i} passes")
    dt = time.perf_counter() - t
    ok = not problems and dt < 10
    report(8, ok, f"two valid witnesses on E; {mutations} mutations over {len(pairs)} condition-(L) "
           "pairs all rejected" + (f"; problems: {problems}" if problems else ""), dt, 10)
    assert not problems
    assert dt < 10
