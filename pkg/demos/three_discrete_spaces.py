"""Three graphs with discrete boundary spaces, compared three ways.

E is a head into a vertex with a loop, F a head into a sink and G an
out-ray. All boundary spaces are countable and discrete, so all three are
orbit equivalent, but only F and G have isomorphic groupoids: every point
of E carries infinite cyclic isotropy.

Run with ``python demos/three_discrete_spaces.py``.
"""

from grpd import fixtures
from grpd.counts import count_to_json
from grpd.equivalence import (decide_groupoid_iso_discrete, decide_oe_discrete,
                              decide_oe_preserving_ep_discrete)
from grpd.isolated import census

GRAPHS = {k: fixtures.load(f"example32_{k}") for k in "EFG"}

for name, g in GRAPHS.items():
    c = census(g, sample=0)
    print(f"{name}: finite={count_to_json(c.isolated_finite)} ep={count_to_json(c.isolated_ep)} "
          f"wandering={count_to_json(c.isolated_wandering)} discrete={c.discrete}")

print()
for a, b in (("E", "F"), ("E", "G"), ("F", "G")):
    gE, gF = GRAPHS[a], GRAPHS[b]
    oe = decide_oe_discrete(gE, gF).answer
    oe_ep = decide_oe_preserving_ep_discrete(gE, gF).answer
    iso = decide_groupoid_iso_discrete(gE, gF)
    why = iso.obstruction.invariant if iso.obstruction else iso.reason
    print(f"{a} vs {b}: oe={oe} oe-ep={oe_ep} iso={iso.answer} ({why})")
