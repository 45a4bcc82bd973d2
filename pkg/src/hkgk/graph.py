"""Oriented graphs and the graph invariants that determine GK dimension.

A graph is read from a small line-oriented text format::

    # comment
    vertices: x1 x2 x3 y
    edges: x1->x2 x2->x3 x3->x1
    edges: x1->y

and is analysed into its simple cycles, the cycle-reachable part
(cycle vertices together with everything joined to a cycle by an
oriented path), per-vertex path counts ``k_x`` and the sets ``A_j`` of
vertices adjacent to each cycle.  From these the Gelfand-Kirillov
dimension of the Hecke-Kiselman algebra is

    sum over cycles j of (sum of k_x for x in A_j) + 1

whenever no two distinct simple cycles are joined by an oriented path,
0 for acyclic graphs and infinite otherwise.
"""

from __future__ import annotations

import enum
import itertools
import json
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Mapping

import networkx as nx

from .errors import BudgetExceeded, GraphError, InconsistentDirection, NotFinite

__all__ = [
    "OrientedGraph",
    "SimpleCycle",
    "InfiniteWitness",
    "Finiteness",
    "Direction",
    "CycleStructure",
    "VertexOrder",
    "CycleSummand",
    "GkReport",
    "parse_graph",
    "simple_cycles",
    "finiteness_check",
    "cycle_reachable_subgraph",
    "classify_and_count",
    "adjacency_to_cycles",
    "analyze",
    "build_order",
    "gk_dimension",
]

NAME_RE = re.compile(r"[A-Za-z0-9_]+\Z")
ARC_RE = re.compile(r"([A-Za-z0-9_]+)->([A-Za-z0-9_]+)\Z")

DEFAULT_CYCLE_BUDGET = 10**6


@dataclass(frozen=True)
class OrientedGraph:
    """A finite simple oriented graph.

    Vertices keep their declaration order; that order fixes the integer
    index of each vertex, which is how words refer to letters.
    """

    vertices: tuple[str, ...]
    arcs: frozenset[tuple[str, str]]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arcs", frozenset(tuple(a) for a in self.arcs))
        seen = set()
        for v in self.vertices:
            if not NAME_RE.match(v):
                raise GraphError(f"invalid vertex name {v!r}")
            if v in seen:
                raise GraphError(f"vertex {v!r} declared twice")
            seen.add(v)
        for u, v in self.arcs:
            if u not in seen or v not in seen:
                raise GraphError(f"arc {u}->{v} uses an undeclared vertex")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if (v, u) in self.arcs:
                raise GraphError(f"2-cycle between {u} and {v}")

    @classmethod
    def from_arcs(cls, vertices: Iterable[str], arcs: Iterable[tuple[str, str]]) -> OrientedGraph:
        arcs = list(arcs)
        if len(set(arcs)) != len(arcs):
            dup = next(a for a, c in _counts(arcs).items() if c > 1)
            raise GraphError(f"duplicate arc {dup[0]}->{dup[1]}")
        return cls(tuple(vertices), frozenset(arcs))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def out_mask(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.arcs:
            masks[self.index[u]] |= 1 << self.index[v]
        return tuple(masks)

    @cached_property
    def in_mask(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.arcs:
            masks[self.index[v]] |= 1 << self.index[u]
        return tuple(masks)

    @cached_property
    def _succ(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {v: [] for v in self.vertices}
        for u, v in self.arcs:
            out[u].append(v)
        return {v: tuple(sorted(ws, key=self.index.__getitem__)) for v, ws in out.items()}

    @cached_property
    def _pred(self) -> dict[str, tuple[str, ...]]:
        inn: dict[str, list[str]] = {v: [] for v in self.vertices}
        for u, v in self.arcs:
            inn[v].append(u)
        return {v: tuple(sorted(ws, key=self.index.__getitem__)) for v, ws in inn.items()}

    def successors(self, v: str) -> tuple[str, ...]:
        return self._succ[v]

    def predecessors(self, v: str) -> tuple[str, ...]:
        return self._pred[v]

    def has_arc(self, u: str, v: str) -> bool:
        return (u, v) in self.arcs

    def adjacent(self, u: str, v: str) -> bool:
        return (u, v) in self.arcs or (v, u) in self.arcs

    def to_nx(self) -> nx.DiGraph:
        G = nx.DiGraph()
        G.add_nodes_from(self.vertices)
        G.add_edges_from(sorted(self.arcs))
        return G

    def reversed(self) -> OrientedGraph:
        return OrientedGraph(self.vertices, frozenset((v, u) for u, v in self.arcs))

    def sorted_arcs(self) -> list[tuple[str, str]]:
        return sorted(self.arcs, key=lambda a: (self.index[a[0]], self.index[a[1]]))

    def to_text(self) -> str:
        lines = ["vertices: " + " ".join(self.vertices)]
        arcs = self.sorted_arcs()
        # one edges line is required even when there are no arcs
        for start in range(0, max(len(arcs), 1), 8):
            chunk = arcs[start:start + 8]
            lines.append(("edges: " + " ".join(f"{u}->{v}" for u, v in chunk)).rstrip())
        return "\n".join(lines) + "\n"


def _counts(items):
    out: dict = {}
    for it in items:
        out[it] = out.get(it, 0) + 1
    return out


def parse_graph(text: str) -> OrientedGraph:
    """Parse the graph text format, reporting errors with line numbers."""
    vertices: list[str] | None = None
    vertex_line = 0
    arcs: list[tuple[str, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or key not in ("vertices", "edges"):
            raise GraphError(f"expected 'vertices:' or 'edges:', got {line!r}", lineno)
        if key == "vertices":
            if vertices is not None:
                raise GraphError("second 'vertices:' line", lineno)
            vertices = rest.split()
            vertex_line = lineno
            for v in vertices:
                if not NAME_RE.match(v):
                    raise GraphError(f"invalid vertex name {v!r}", lineno)
            dup = [v for v, c in _counts(vertices).items() if c > 1]
            if dup:
                raise GraphError(f"vertex {dup[0]!r} declared twice", lineno)
        else:
            for token in rest.split():
                m = ARC_RE.match(token)
                if not m:
                    raise GraphError(f"malformed arc {token!r}", lineno)
                arcs.append((m.group(1), m.group(2), lineno))
    if vertices is None:
        raise GraphError("missing 'vertices:' line")

    declared = set(vertices)
    seen: dict[tuple[str, str], int] = {}
    for u, v, lineno in arcs:
        for end in (u, v):
            if end not in declared:
                raise GraphError(f"arc {u}->{v} uses undeclared vertex {end!r}"
                                 f" (vertices declared on line {vertex_line})", lineno)
        if u == v:
            raise GraphError(f"self-loop {u}->{v}", lineno)
        if (u, v) in seen:
            raise GraphError(f"duplicate arc {u}->{v} (first on line {seen[u, v]})", lineno)
        if (v, u) in seen:
            raise GraphError(f"2-cycle {u}->{v} with {v}->{u} on line {seen[v, u]}", lineno)
        seen[u, v] = lineno
    return OrientedGraph(tuple(vertices), frozenset(seen))


# ---------------------------------------------------------------------------
# cycles and the finiteness criterion


@dataclass(frozen=True, order=True)
class SimpleCycle:
    """A directed simple cycle, rotated so the least vertex name comes first."""

    vertices: tuple[str, ...]

    @classmethod
    def canonical(cls, seq: Iterable[str]) -> SimpleCycle:
        seq = tuple(seq)
        start = seq.index(min(seq))
        return cls(seq[start:] + seq[:start])

    def __len__(self):
        return len(self.vertices)

    def arcs(self) -> list[tuple[str, str]]:
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]


def simple_cycles(g: OrientedGraph, budget: int = DEFAULT_CYCLE_BUDGET) -> list[SimpleCycle]:
    """All simple cycles of ``g`` in canonical rotation and canonical order.

    Raises :class:`BudgetExceeded` rather than truncating when more than
    ``budget`` cycles exist.
    """
    found = list(itertools.islice(nx.simple_cycles(g.to_nx()), budget + 1))
    if len(found) > budget:
        raise BudgetExceeded(f"more than {budget} simple cycles")
    return sorted(SimpleCycle.canonical(c) for c in found)


@dataclass(frozen=True)
class InfiniteWitness:
    """Two distinct simple cycles and an oriented path from the first to the second.

    A one-vertex path means the cycles share that vertex.
    """

    first: SimpleCycle
    second: SimpleCycle
    path: tuple[str, ...]

    def to_dict(self) -> dict:
        return {"cycles": [list(self.first.vertices), list(self.second.vertices)],
                "path": list(self.path)}

    @classmethod
    def from_dict(cls, d: Mapping) -> InfiniteWitness:
        a, b = d["cycles"]
        return cls(SimpleCycle(tuple(a)), SimpleCycle(tuple(b)), tuple(d["path"]))


@dataclass(frozen=True)
class Finiteness:
    finite: bool
    witness: InfiniteWitness | None = None

    def __bool__(self):
        return self.finite


def _bfs_path(g: OrientedGraph, sources: Iterable[str], targets: set[str],
              allowed: set[str] | None = None) -> tuple[str, ...] | None:
    parent: dict[str, str | None] = {}
    queue = deque()
    for s in sorted(sources, key=g.index.__getitem__):
        parent[s] = None
        queue.append(s)
    while queue:
        u = queue.popleft()
        if u in targets:
            path = [u]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return tuple(reversed(path))
        for v in g.successors(u):
            if v not in parent and (allowed is None or v in allowed):
                parent[v] = u
                queue.append(v)
    return None


def finiteness_check(g: OrientedGraph) -> Finiteness:
    """Decide whether two distinct simple cycles are joined by an oriented path.

    Works on strongly connected components: the graph passes iff every
    non-trivial component is a single simple cycle (as many arcs as
    vertices) and no cyclic component reaches another one.
    """
    G = g.to_nx()
    comps = sorted((frozenset(c) for c in nx.strongly_connected_components(G)),
                   key=lambda c: min(c))
    cyclic: list[frozenset[str]] = []
    for comp in comps:
        if len(comp) < 2:
            continue
        inner = [(u, v) for u, v in g.arcs if u in comp and v in comp]
        if len(inner) == len(comp):
            cyclic.append(comp)
            continue
        # some vertex has two successors inside the component; close both
        # arcs back to it along shortest paths to get two distinct cycles
        for v in sorted(comp):
            outs = [w for w in g.successors(v) if w in comp]
            if len(outs) >= 2:
                cycles = []
                for w in outs[:2]:
                    back = _bfs_path(g, [w], {v}, allowed=set(comp))
                    cycles.append(SimpleCycle.canonical((v,) + back[:-1]))
                a, b = sorted(cycles)
                return Finiteness(False, InfiniteWitness(a, b, (v,)))
        raise AssertionError("strongly connected component with surplus arcs "
                             "but no branching vertex")  # pragma: no cover

    cycle_of = {comp: _component_cycle(g, comp) for comp in cyclic}
    ordered = sorted(cyclic, key=lambda c: cycle_of[c])
    for a in ordered:
        for b in ordered:
            if a is b:
                continue
            path = _bfs_path(g, a, set(b))
            if path is not None:
                # trim to the last vertex of the source cycle
                last = max(i for i, v in enumerate(path) if v in a)
                return Finiteness(False, InfiniteWitness(cycle_of[a], cycle_of[b], path[last:]))
    return Finiteness(True)


def _component_cycle(g: OrientedGraph, comp: frozenset[str]) -> SimpleCycle:
    start = min(comp)
    seq = [start]
    while True:
        nxt = [w for w in g.successors(seq[-1]) if w in comp]
        if nxt[0] == start:
            return SimpleCycle(tuple(seq))
        seq.append(nxt[0])


def _closure(g: OrientedGraph, start: Iterable[str], forward: bool) -> set[str]:
    step = g.successors if forward else g.predecessors
    seen = set(start)
    stack = list(seen)
    while stack:
        for w in step(stack.pop()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def cycle_reachable_subgraph(g: OrientedGraph, cycles: list[SimpleCycle]) -> frozenset[str]:
    """Cycle vertices plus their ancestors and descendants."""
    on_cycle = {v for c in cycles for v in c.vertices}
    return frozenset(_closure(g, on_cycle, True) | _closure(g, on_cycle, False))


class Direction(enum.Enum):
    FROM_CYCLES = "from_cycles"  # some cycle reaches x; k_x counts paths starting at x
    TO_CYCLES = "to_cycles"      # x reaches some cycle; k_x counts paths ending at x


def classify_and_count(g: OrientedGraph, cycles: list[SimpleCycle], theta: frozenset[str]
                       ) -> tuple[dict[str, Direction], dict[str, int]]:
    """Direction class and path count ``k_x`` of every non-cycle vertex of ``theta``."""
    on_cycle = {v for c in cycles for v in c.vertices}
    below = _closure(g, on_cycle, True) - on_cycle
    above = _closure(g, on_cycle, False) - on_cycle
    both = below & above
    if both:
        raise InconsistentDirection(f"vertex {min(both)} lies on a path between cycles")

    direction: dict[str, Direction] = {}
    counts: dict[str, int] = {}
    for region, forward, cls in ((below, True, Direction.FROM_CYCLES),
                                 (above, False, Direction.TO_CYCLES)):
        region &= theta
        sub = g.to_nx().subgraph(region)
        if not nx.is_directed_acyclic_graph(sub):
            raise InconsistentDirection("counted region contains a cycle")
        order = list(nx.lexicographical_topological_sort(sub))
        if forward:
            order.reverse()
        step = g.successors if forward else g.predecessors
        for x in order:
            nbrs = step(x)
            if any(z not in region for z in nbrs):
                raise InconsistentDirection(f"vertex {x} has a neighbour outside its region")
            counts[x] = 1 + sum(counts[z] for z in nbrs)
            direction[x] = cls
    return direction, counts


def adjacency_to_cycles(g: OrientedGraph, cycles: list[SimpleCycle]) -> tuple[frozenset[str], ...]:
    """For each cycle, the non-cycle vertices joined to it by an arc (either way)."""
    on_cycle = {v for c in cycles for v in c.vertices}
    out = []
    for c in cycles:
        members = set(c.vertices)
        out.append(frozenset(v for v in g.vertices if v not in on_cycle
                             and any(g.adjacent(v, x) for x in members)))
    return tuple(out)


@dataclass(frozen=True)
class CycleStructure:
    cycles: tuple[SimpleCycle, ...]
    theta_prime: frozenset[str]
    direction: Mapping[str, Direction]
    path_count: Mapping[str, int]
    adjacency: tuple[frozenset[str], ...]

    @property
    def cycle_vertices(self) -> frozenset[str]:
        return frozenset(v for c in self.cycles for v in c.vertices)

    def non_cycle_theta(self) -> frozenset[str]:
        return self.theta_prime - self.cycle_vertices


def analyze(g: OrientedGraph, cycle_budget: int = DEFAULT_CYCLE_BUDGET) -> CycleStructure:
    """Full cycle analysis; raises :class:`NotFinite` when the criterion fails."""
    verdict = finiteness_check(g)
    if not verdict.finite:
        w = verdict.witness
        raise NotFinite(f"cycles {' '.join(w.first.vertices)} and {' '.join(w.second.vertices)}"
                        f" are joined by the path {'->'.join(w.path)}")
    cycles = simple_cycles(g, cycle_budget)
    theta = cycle_reachable_subgraph(g, cycles)
    direction, counts = classify_and_count(g, cycles, theta)
    return CycleStructure(tuple(cycles), theta, direction, counts, adjacency_to_cycles(g, cycles))


@dataclass(frozen=True)
class VertexOrder:
    """A strict total order on the vertices, stored as ranks (smaller = earlier)."""

    rank: Mapping[str, int]

    def key(self, v: str) -> int:
        return self.rank[v]

    def sorted(self, vs: Iterable[str]) -> list[str]:
        return sorted(vs, key=self.rank.__getitem__)

    def less(self, u: str, v: str) -> bool:
        return self.rank[u] < self.rank[v]

    def as_list(self) -> list[str]:
        return self.sorted(self.rank)


def build_order(g: OrientedGraph, cs: CycleStructure,
                tie_break: Callable[[str], object] | None = None) -> VertexOrder:
    """Generator order used for deg-lex.

    Cycle vertices come first, cycle by cycle, each in its rotation
    order.  Then the non-cycle vertices of the cycle-reachable part by
    decreasing ``k_x``, then everything else.  ``tie_break`` orders
    vertices with equal ``k_x`` and the vertices outside the reachable
    part; it defaults to the vertex name.
    """
    tie = tie_break or (lambda v: v)
    seq = [v for c in cs.cycles for v in c.vertices]
    inner = cs.non_cycle_theta()
    seq += sorted(inner, key=lambda v: (-cs.path_count[v], tie(v)))
    seq += sorted((v for v in g.vertices if v not in cs.theta_prime), key=tie)
    return VertexOrder({v: i for i, v in enumerate(seq)})


# ---------------------------------------------------------------------------
# the dimension itself


@dataclass(frozen=True)
class CycleSummand:
    cycle: int  # 1-based, in canonical cycle order
    attached: tuple[tuple[str, int], ...]  # (vertex, k) for the vertices adjacent to the cycle
    summand: int

    def to_dict(self) -> dict:
        return {"cycle": self.cycle,
                "A": [{"vertex": v, "k": k} for v, k in self.attached],
                "summand": self.summand}

    @classmethod
    def from_dict(cls, d: Mapping) -> CycleSummand:
        return cls(d["cycle"], tuple((a["vertex"], a["k"]) for a in d["A"]), d["summand"])


@dataclass(frozen=True)
class GkReport:
    finite: bool
    gk: int | None
    cycles: tuple[tuple[str, ...], ...]
    per_cycle: tuple[CycleSummand, ...]
    infinite_witness: InfiniteWitness | None = None

    def to_dict(self) -> dict:
        return {
            "finite": self.finite,
            "gk": self.gk,
            "cycles": [list(c) for c in self.cycles],
            "per_cycle": [p.to_dict() for p in self.per_cycle],
            "infinite_witness": None if self.infinite_witness is None
            else self.infinite_witness.to_dict(),
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: Mapping) -> GkReport:
        w = d.get("infinite_witness")
        return cls(d["finite"], d["gk"], tuple(tuple(c) for c in d["cycles"]),
                   tuple(CycleSummand.from_dict(p) for p in d["per_cycle"]),
                   None if w is None else InfiniteWitness.from_dict(w))

    @classmethod
    def from_json(cls, text: str) -> GkReport:
        return cls.from_dict(json.loads(text))


def gk_dimension(g: OrientedGraph, cycle_budget: int = DEFAULT_CYCLE_BUDGET) -> GkReport:
    verdict = finiteness_check(g)
    cycles = simple_cycles(g, cycle_budget)
    names = tuple(c.vertices for c in cycles)
    if not verdict.finite:
        return GkReport(False, None, names, (), verdict.witness)
    if not cycles:
        return GkReport(True, 0, (), ())
    theta = cycle_reachable_subgraph(g, cycles)
    _, counts = classify_and_count(g, cycles, theta)
    per_cycle = []
    for j, attached in enumerate(adjacency_to_cycles(g, cycles), start=1):
        ks = tuple((v, counts[v]) for v in sorted(attached))
        per_cycle.append(CycleSummand(j, ks, sum(k for _, k in ks) + 1))
    return GkReport(True, sum(p.summand for p in per_cycle), names, tuple(per_cycle))
