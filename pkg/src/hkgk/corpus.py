"""Seeded random graphs for property suites.

Graphs are disjoint cycles of length 3-5 with trees (really DAGs, since
extra arcs may merge branches) hanging off them: an *out* vertex only
receives arcs from cycle vertices or older out vertices, an *in* vertex
only sends arcs to cycle vertices or older in vertices.  That keeps
every tree vertex on one side of the cycles, so without extra noise
the result always has finite GK dimension.  *Free* vertices are wired
so that they stay outside the cycle-reachable part.  With
``constraint="any"`` a few uniformly random arcs are added on top,
which may join cycles.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import BudgetExceeded
from .graph import OrientedGraph, finiteness_check


@dataclass(frozen=True)
class CorpusSpec:
    seed: int
    count: int
    vertex_range: tuple[int, int] = (3, 9)
    cycle_count_range: tuple[int, int] = (1, 2)
    attachment_range: tuple[int, int] = (0, 3)
    constraint: str = "finite"  # "finite" or "any"
    merge_probability: float = 0.3
    noise_arcs: tuple[int, int] = (1, 3)  # only used for constraint="any"
    rejection_budget: int = 1000

    def __post_init__(self):
        if self.constraint not in ("finite", "any"):
            raise ValueError(f"unknown constraint {self.constraint!r}")


def _random_graph(rng: random.Random, spec: CorpusSpec) -> OrientedGraph:
    lo, hi = spec.vertex_range
    n_cycles = rng.randint(*spec.cycle_count_range)
    vertices: list[str] = []
    arcs: set[tuple[str, str]] = set()
    kind: dict[str, str] = {}

    for j in range(1, n_cycles + 1):
        length = rng.randint(3, 5)
        if len(vertices) + length > hi:
            break
        names = [f"c{j}_{i}" for i in range(1, length + 1)]
        vertices += names
        arcs.update((names[i], names[(i + 1) % length]) for i in range(length))
        kind.update(dict.fromkeys(names, "cycle"))

    if not vertices:
        # acyclic graphs grow from a root with a random side
        vertices.append("r")
        kind["r"] = rng.choice(["out", "in"])

    def add_tree_vertex(name: str):
        anchors = [v for v in vertices if kind[v] != "free"]
        anchor = rng.choice(anchors)
        side = kind[anchor] if kind[anchor] in ("out", "in") else rng.choice(["out", "in"])
        kind[name] = side
        vertices.append(name)
        _link(name, anchor, side)
        if rng.random() < spec.merge_probability:
            others = [v for v in anchors if v != anchor and kind[v] in ("cycle", side)]
            if others:
                _link(name, rng.choice(others), side)

    def _link(new: str, old: str, side: str):
        arcs.add((old, new) if side == "out" else (new, old))

    attachments = rng.randint(*spec.attachment_range)
    for m in range(1, attachments + 1):
        if len(vertices) >= hi:
            break
        add_tree_vertex(f"y{m}")

    m = 0
    while len(vertices) < lo or (len(vertices) < hi and rng.random() < 0.25):
        m += 1
        z = f"z{m}"
        feeders = [v for v in vertices if kind[v] in ("in", "free")]
        targets = [v for v in vertices if kind[v] == "out"]
        vertices.append(z)
        kind[z] = "free"
        if feeders and rng.random() < 0.5:
            arcs.add((rng.choice(feeders), z))
        if targets and rng.random() < 0.5:
            arcs.add((z, rng.choice(targets)))

    if spec.constraint == "any":
        for _ in range(rng.randint(*spec.noise_arcs)):
            u, v = rng.sample(vertices, 2)
            if (u, v) not in arcs and (v, u) not in arcs:
                arcs.add((u, v))
    return OrientedGraph(tuple(vertices), frozenset(arcs))


def generate_corpus(spec: CorpusSpec) -> list[OrientedGraph]:
    """``spec.count`` graphs, deterministic in ``spec.seed``."""
    rng = random.Random(spec.seed)
    out: list[OrientedGraph] = []
    attempts = 0
    while len(out) < spec.count:
        attempts += 1
        if attempts > spec.rejection_budget + spec.count:
            raise BudgetExceeded(f"gave up after {attempts - 1} attempts")
        g = _random_graph(rng, spec)
        if spec.constraint == "finite" and not finiteness_check(g).finite:
            continue
        out.append(g)
    return out
