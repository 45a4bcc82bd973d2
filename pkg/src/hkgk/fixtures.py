"""Reference graphs with independently known invariants."""

from __future__ import annotations

from .graph import OrientedGraph, analyze, parse_graph

# Two triangles; y1 hangs below the first with two sinks, y4 receives from
# both, y5 feeds the second triangle and y6, which reaches no cycle.
EXAMPLE4 = """\
# two disjoint triangles with attached vertices; GK dimension 8
vertices: x11 x21 x31 x12 x22 x32 y1 y2 y3 y4 y5 y6
edges: x11->x21 x21->x31 x31->x11
edges: x12->x22 x22->x32 x32->x12
edges: x31->y1 y1->y2 y1->y3 x21->y4 x32->y4 y5->x32 y5->y6
"""

EXAMPLE4_K = {"y1": 3, "y2": 1, "y3": 1, "y4": 1, "y5": 1}
EXAMPLE4_A = ({"y1", "y4"}, {"y4", "y5"})


def load_example4() -> OrientedGraph:
    """The golden graph, refusing to load if its invariants are off."""
    g = parse_graph(EXAMPLE4)
    cs = analyze(g)
    if dict(cs.path_count) != EXAMPLE4_K:
        raise AssertionError(f"k-values {dict(cs.path_count)} != {EXAMPLE4_K}")
    if tuple(set(a) for a in cs.adjacency) != EXAMPLE4_A:
        raise AssertionError(f"adjacency sets {cs.adjacency} != {EXAMPLE4_A}")
    if cs.theta_prime != frozenset(g.vertices) - {"y6"}:
        raise AssertionError("cycle-reachable part should be everything but y6")
    return g


def cycle_graph(n: int, prefix: str = "x") -> OrientedGraph:
    names = [f"{prefix}{i}" for i in range(1, n + 1)]
    return OrientedGraph.from_arcs(names, [(names[i], names[(i + 1) % n]) for i in range(n)])
