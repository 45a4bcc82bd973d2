"""Explicit families of normal words certifying the lower bound on GK dimension.

The construction runs in two passes over a graph of finite GK dimension.

1. Non-cycle vertices of the cycle-reachable part are inserted into a
   word, starting from the ascending product of the terminal ones.  Each
   further vertex ``y`` (largest first) goes to the front and directly
   after every occurrence of a neighbour in its counting direction, so it
   ends up occurring exactly ``k_y`` times.
2. Cycles are processed from the largest down.  The current expression
   is cut after every occurrence of a vertex adjacent to the cycle, and
   around each piece ``v_i`` ending in ``z_i`` the cycle word
   ``c = x_1 .. x_n`` is wrapped as ``c+ (x_1 .. x_{j-1}) v_i (x_j .. x_n)``
   where ``x_j`` is the first cycle vertex adjacent to ``z_i``; a final
   ``c+`` precedes the tail.

The result has one ``( c )+`` block per unit of the dimension formula.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from typing import Sequence

from .errors import HKError, NotFinite
from .graph import (CycleStructure, Direction, OrientedGraph, VertexOrder, analyze,
                    build_order, gk_dimension)
from .words import Rewriter, Word, format_word, parse_word

DEFAULT_GRID = 3
SAMPLE_CAP = 5000


@dataclass(frozen=True)
class StarExpression:
    """``literals[0] (blocks[0])+ literals[1] ... (blocks[s-1])+ literals[s]``."""

    literals: tuple[Word, ...]
    blocks: tuple[Word, ...]

    def __post_init__(self):
        if len(self.literals) != len(self.blocks) + 1:
            raise ValueError("need exactly one more literal than starred blocks")
        if any(not b for b in self.blocks):
            raise ValueError("starred blocks must be non-empty")

    @property
    def star_count(self) -> int:
        return len(self.blocks)

    def to_text(self, g: OrientedGraph) -> str:
        parts = []
        for lit, block in itertools.zip_longest(self.literals, self.blocks):
            if lit:
                parts.append(format_word(g, lit))
            if block is not None:
                parts.append(f"( {format_word(g, block)} )+")
        return " ".join(parts)

    @classmethod
    def parse(cls, g: OrientedGraph, text: str) -> StarExpression:
        literals, blocks = [], []
        pos = 0
        for m in re.finditer(r"\(([^()]*)\)\+", text):
            literals.append(parse_word(g, text[pos:m.start()]))
            blocks.append(parse_word(g, m.group(1)))
            pos = m.end()
        literals.append(parse_word(g, text[pos:]))
        return cls(tuple(literals), tuple(blocks))

    def base_length(self) -> int:
        return sum(len(v) for v in self.literals)


def build_w_prime(g: OrientedGraph, cs: CycleStructure, order: VertexOrder) -> Word:
    """Word on the non-cycle vertices in which every such ``y`` occurs ``k_y`` times."""
    inner = cs.non_cycle_theta()
    k = cs.path_count
    word = order.sorted(v for v in inner if k[v] == 1)
    for y in reversed(order.sorted(v for v in inner if k[v] > 1)):
        if cs.direction[y] is Direction.FROM_CYCLES:
            nbrs = set(g.successors(y))
        else:
            nbrs = set(g.predecessors(y))
        new = [y]
        for z in word:
            new.append(z)
            if z in nbrs:
                new.append(y)
        word = new
    for y in inner:
        if word.count(y) != k[y]:
            raise HKError(f"{y} occurs {word.count(y)} times instead of {k[y]}")
    return tuple(g.index[v] for v in word)


def build_star_expression(g: OrientedGraph, cs: CycleStructure, order: VertexOrder
                          ) -> StarExpression:
    if not cs.cycles:
        raise HKError("graph has no cycles; the witness family is undefined")
    # tokens: a vertex index, or ("c", j) for a starred copy of cycle j
    tokens: list = list(build_w_prime(g, cs, order))
    for j in reversed(range(len(cs.cycles))):
        cyc = [g.index[v] for v in cs.cycles[j].vertices]
        attached = {g.index[v] for v in cs.adjacency[j]}
        star = ("c", j)
        cuts = [i for i, t in enumerate(tokens) if isinstance(t, int) and t in attached]
        new: list = []
        prev = 0
        for cut in cuts:
            z = tokens[cut]
            p = next(i for i, x in enumerate(cyc) if g.adjacent(g.vertices[z], g.vertices[x]))
            new += [star, *cyc[:p], *tokens[prev:cut + 1], *cyc[p:]]
            prev = cut + 1
        tokens = new + [star] + tokens[prev:]

    literals: list[Word] = []
    blocks: list[Word] = []
    current: list[int] = []
    for t in tokens:
        if isinstance(t, int):
            current.append(t)
        else:
            literals.append(tuple(current))
            current = []
            blocks.append(tuple(g.index[v] for v in cs.cycles[t[1]].vertices))
    literals.append(tuple(current))
    return StarExpression(tuple(literals), tuple(blocks))


def instantiate(expr: StarExpression, exponents: Sequence[int]) -> Word:
    """The member of the family with block ``i`` repeated ``exponents[i]`` times."""
    if len(exponents) != expr.star_count:
        raise ValueError(f"expected {expr.star_count} exponents, got {len(exponents)}")
    if any(e < 1 for e in exponents):
        raise ValueError("exponents must be positive")
    out = list(expr.literals[0])
    for block, e, lit in zip(expr.blocks, exponents, expr.literals[1:]):
        out += block * e
        out += lit
    return tuple(out)


@dataclass(frozen=True)
class WitnessReport:
    expression: StarExpression
    star_count: int
    formula_value: int
    samples_checked: int
    all_normal: bool
    all_distinct: bool
    counterexample: Word | None = None

    @property
    def passed(self) -> bool:
        return self.all_normal and self.all_distinct and self.star_count == self.formula_value

    def to_dict(self, g: OrientedGraph) -> dict:
        return {
            "expression": self.expression.to_text(g),
            "star_count": self.star_count,
            "formula": self.formula_value,
            "samples_checked": self.samples_checked,
            "all_normal": self.all_normal,
            "all_distinct": self.all_distinct,
            "counterexample": None if self.counterexample is None
            else format_word(g, self.counterexample),
            "passed": self.passed,
        }


def exponent_grid(star_count: int, grid: int, cap: int = SAMPLE_CAP, seed: int = 0
                  ) -> list[tuple[int, ...]]:
    """All vectors in ``{1..grid}^star_count``, or a seeded sample of ``cap`` of them."""
    total = grid ** star_count
    if total <= cap:
        return list(itertools.product(range(1, grid + 1), repeat=star_count))
    rng = random.Random(seed)
    picked = sorted(rng.sample(range(total), cap))
    out = []
    for code in picked:
        vec = []
        for _ in range(star_count):
            code, r = divmod(code, grid)
            vec.append(r + 1)
        out.append(tuple(vec))
    return out


def verify_witness(g: OrientedGraph, expr: StarExpression, grid: int = DEFAULT_GRID,
                   order: VertexOrder | None = None, cap: int = SAMPLE_CAP, seed: int = 0
                   ) -> WitnessReport:
    """Instantiate the family over an exponent grid and check every member."""
    report = gk_dimension(g)
    if not report.finite:
        raise NotFinite("witness families exist only for finite GK dimension")
    if not report.cycles:
        raise HKError("graph has no cycles; the witness family is undefined")
    if order is None:
        order = build_order(g, analyze(g))
    rw = Rewriter(g, order)
    seen: set[Word] = set()
    checked = 0
    for vec in exponent_grid(expr.star_count, grid, cap, seed):
        w = instantiate(expr, vec)
        checked += 1
        if not rw.is_normal(w):
            return WitnessReport(expr, expr.star_count, report.gk, checked, False, True, w)
        if w in seen:
            return WitnessReport(expr, expr.star_count, report.gk, checked, True, False, w)
        seen.add(w)
    return WitnessReport(expr, expr.star_count, report.gk, checked, True, True)


def witness(g: OrientedGraph, grid: int = DEFAULT_GRID) -> WitnessReport:
    cs = analyze(g)
    order = build_order(g, cs)
    return verify_witness(g, build_star_expression(g, cs, order), grid, order)


def family_size_by_length(expr: StarExpression, max_len: int) -> list[int]:
    """``out[n]`` = number of family members of length exactly ``n``.

    Members are in bijection with exponent vectors, so this counts
    vectors of positive integers with ``base + sum e_i |block_i| = n``.
    """
    ways = [0] * (max_len + 1)
    base = expr.base_length()
    if base > max_len:
        return ways
    ways[base] = 1
    for block in expr.blocks:
        step = len(block)
        nxt = [0] * (max_len + 1)
        # e >= 1 copies of the block: shift by step, then allow any further multiples
        for n in range(step, max_len + 1):
            nxt[n] = ways[n - step] + nxt[n - step]
        ways = nxt
    return ways
