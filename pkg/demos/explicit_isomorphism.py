"""An explicit groupoid isomorphism and the two choices on a periodic orbit.

F (head into a sink) and G (out-ray) have isomorphic groupoids; the
isomorphism is built from an orbit bijection and checked on a window. On
E (head into a loop) the rule on the periodic orbit can be composed with
the automorphism n -> -n of the isotropy, giving a second valid witness.
Shifting an integer rule by a constant is never valid.

Run with ``python demos/explicit_isomorphism.py``.
"""

from grpd import fixtures
from grpd.boundary import point_to_text
from grpd.groupoid import build_phi, verify_phi

F, G, E = (fixtures.load(f"example32_{k}") for k in "FGE")

w = build_phi(F, G)
pts = w.families_E[0].enumerator().points(4)
for x in pts:
    for y in pts[:2]:
        hx, k, hy = w.phi(x, len(x.path) - len(y.path), y)
        print(f"({point_to_text(x)}, {len(x.path) - len(y.path)}, {point_to_text(y)})"
              f"  ->  ({point_to_text(hx)}, {k}, {point_to_text(hy)})")
print("F -> G:", verify_phi(w, 10).to_json())

w = build_phi(E, E)
x = w.representative_E(0)
flipped = w.with_orientation({0: -1})
print("\nE -> E identity :", w.phi(x, 1, x)[1], verify_phi(w, 8).ok)
print("E -> E flipped  :", flipped.phi(x, 1, x)[1], verify_phi(flipped, 8).ok)
bad = verify_phi(w.with_offsets({0: 1}), 8)
print("E -> E offset +1:", bad.ok, "-", bad.reason)
