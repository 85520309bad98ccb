"""Boundary path spaces and graph groupoids of directed graphs.

Graphs have a finite core, optional edge multiplicities (including
``omega``), and symbolic infinite heads and out-rays. The package
classifies isolated boundary points, checks condition (L), computes
groupoid orbits and isotropy, and for discrete boundary spaces decides
orbit equivalence and groupoid isomorphism with an explicit, verified
isomorphism.
"""

from .boundary import (EpPt, FinitePt, RayPt, ShiftWitness, canonicalize_ep, is_isolated,
                       least_period, make_finite, make_ray, parse_point, shift, shift_by,
                       tail_equivalent)
from .counts import OMEGA
from .cycles import Cycle, condition_L, has_exit, no_exit_cycles, simple_cycles
from .equivalence import (Obstruction, Verdict, decide_groupoid_iso_discrete, decide_oe_discrete,
                          decide_oe_preserving_ep_discrete, invariant_refute,
                          theorem_consistency_check)
from .errors import GrpdError
from .graph import (Graph, Path, classify_vertices, make_graph, parse_graph, serialize_graph,
                    stabilize)
from .groupoid import (IsoWitness, build_phi, elements_between, orbits, signature, verify_phi)
from .isolated import Census, IsolatedType, census, classify_isolated, is_discrete_space
from .oracle import cross_check, enumerate_boundary_truncated, oracle_isolated

__version__ = "0.1.0"
