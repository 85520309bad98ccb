"""Named example graphs in the text format.

``E``, ``F`` and ``G`` are the three graphs whose boundary path spaces are
all homeomorphic to N with the discrete topology: a head into a vertex with
a loop, a head into a sink, and an out-ray.
"""

from .graph import Graph, parse_graph

TEXTS = {
    "example32_E": "vertex v\nhead H: v\nedge e: v -> v\n",
    "example32_F": "vertex v\nhead H: v\n",
    "example32_G": "vertex v\nray R: v\n",
    "loop": "vertex v\nedge e: v -> v\n",
    "two_loops": "vertex v\nedge e: v -> v\nedge f: v -> v\n",
    "three_loops": "vertex v\nedge e: v -> v\nedge f: v -> v\nedge g: v -> v\n",
    "loop_exit_sink": "vertex v\nvertex w\nedge e: v -> v\nedge f: v -> w\n",
    "sink": "vertex v\n",
    "two_sinks": "vertex v\nvertex w\n",
    "omega_emitter": "vertex v\nvertex w\nedge e: v -> w * omega\n",
}


def load(name: str) -> Graph:
    return parse_graph(TEXTS[name])


def names():
    return sorted(TEXTS)
