"""Normal forms in Hecke-Kiselman monoids.

Words are tuples of vertex indices (declaration order of the graph).
The rewriting system has three families of rules, all of them
length-non-increasing and deg-lex decreasing:

* kind I    ``t u t -> t u``     when ``t`` is absent from ``u`` and no
  letter of ``u`` has an arc into ``t``;
* kind II   ``t u t -> u t``     when ``t`` is absent from ``u`` and ``t``
  has no arc into a letter of ``u``;
* kind III  ``a u b -> b a u``   when ``a > b`` and ``b`` is neither
  equal nor adjacent to any letter of ``a u``.

The rules form a Groebner basis for every generator order, so the
normal form of a word does not depend on the order in which rules are
applied.  Supports are handled as integer bitmasks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import BudgetExceeded, WordError
from .graph import OrientedGraph, SimpleCycle, VertexOrder

Word = tuple[int, ...]

KIND_I, KIND_II, KIND_III = 1, 2, 3


def parse_word(g: OrientedGraph, text: str) -> Word:
    """Whitespace separated vertex names; the empty string is the identity."""
    try:
        return tuple(g.index[name] for name in text.split())
    except KeyError as exc:
        raise WordError(f"unknown vertex {exc.args[0]!r} in word {text!r}") from None


def format_word(g: OrientedGraph, w: Sequence[int]) -> str:
    return " ".join(g.vertices[i] for i in w)


def support_mask(w: Iterable[int]) -> int:
    m = 0
    for a in w:
        m |= 1 << a
    return m


def _check_letters(g: OrientedGraph, w: Sequence[int], t: int):
    for a in (*w, t):
        if not 0 <= a < g.n:
            raise WordError(f"letter {a} is not a vertex index")


def not_into(g: OrientedGraph, w: Sequence[int], t: int) -> bool:
    """``w -/-> t``: ``t`` does not occur in ``w`` and no letter of ``w`` points at ``t``."""
    _check_letters(g, w, t)
    s = support_mask(w)
    return not (s >> t) & 1 and not s & g.in_mask[t]


def not_from(g: OrientedGraph, t: int, w: Sequence[int]) -> bool:
    """``t -/-> w``: ``t`` does not occur in ``w`` and points at no letter of ``w``."""
    _check_letters(g, w, t)
    s = support_mask(w)
    return not (s >> t) & 1 and not s & g.out_mask[t]


def disconnected(g: OrientedGraph, t: int, w: Sequence[int]) -> bool:
    return not_into(g, w, t) and not_from(g, t, w)


@dataclass(frozen=True)
class ReductionMatch:
    kind: int
    start: int  # factor is word[start:end]
    end: int
    replacement: Word


@dataclass(frozen=True)
class NormalFormResult:
    normal: Word
    steps: int


class Rewriter:
    """The reduction system for one graph under one generator order."""

    def __init__(self, graph: OrientedGraph, order: VertexOrder):
        self.graph = graph
        self.order = order
        n = graph.n
        self.rank = tuple(order.rank[v] for v in graph.vertices)
        self.in_mask = graph.in_mask
        self.out_mask = graph.out_mask
        self.blocked = tuple(graph.in_mask[a] | graph.out_mask[a] | (1 << a) for a in range(n))
        self._transitions: dict[tuple[tuple[int, ...], int], tuple[int, ...] | None] = {}

    @property
    def n(self) -> int:
        return self.graph.n

    def deg_lex_key(self, w: Sequence[int]):
        return (len(w), tuple(self.rank[a] for a in w))

    # -- redexes -----------------------------------------------------------

    def find_redexes(self, w: Sequence[int]) -> list[ReductionMatch]:
        """Every occurrence of a left-hand side in ``w``."""
        w = tuple(w)
        rank, blocked = self.rank, self.blocked
        matches: list[ReductionMatch] = []
        last: dict[int, int] = {}
        for j, b in enumerate(w):
            i = last.get(b)
            if i is not None:
                between = support_mask(w[i + 1:j])
                if not between & self.in_mask[b]:
                    matches.append(ReductionMatch(KIND_I, i, j + 1, w[i:j]))
                if not between & self.out_mask[b]:
                    matches.append(ReductionMatch(KIND_II, i, j + 1, w[i + 1:j + 1]))
            last[b] = j
            for i in range(j - 1, -1, -1):
                a = w[i]
                if (blocked[b] >> a) & 1:
                    break
                if rank[a] > rank[b]:
                    matches.append(ReductionMatch(KIND_III, i, j + 1, (b,) + w[i:j]))
        return matches

    def normal_form(self, w: Sequence[int], strategy: str = "leftmost", seed: int | None = None,
                    budget: int | None = None) -> NormalFormResult:
        """Rewrite until no rule applies.

        ``strategy`` is ``"leftmost"`` (smallest start, then shortest
        factor, then kind I < II < III) or ``"random"`` (uniform choice
        among all matches, seeded).
        """
        w = tuple(w)
        if budget is None:
            budget = 10 * len(w) ** 2 + 100
        rng = random.Random(seed) if strategy == "random" else None
        if strategy not in ("leftmost", "random"):
            raise ValueError(f"unknown strategy {strategy!r}")
        steps = 0
        while True:
            matches = self.find_redexes(w)
            if not matches:
                return NormalFormResult(w, steps)
            if steps >= budget:
                raise BudgetExceeded(f"normal form needed more than {budget} steps")
            if rng is None:
                m = min(matches, key=lambda m: (m.start, m.end - m.start, m.kind))
            else:
                m = rng.choice(matches)
            w = w[:m.start] + m.replacement + w[m.end:]
            steps += 1

    def normalize(self, w: Sequence[int]) -> Word:
        return self.normal_form(w).normal

    # -- incremental normality --------------------------------------------
    #
    # A normal word stays normal after appending b unless some left-hand
    # side ends at the new last position.  Per letter a the scanner keeps
    # four bits, which is all such a check ever needs:
    #   SEEN    a occurs in the word
    #   IN      some in-neighbour of a occurs after the last a
    #   OUT     some out-neighbour of a occurs after the last a
    #   GREATER the longest suffix free of a and its neighbours holds a letter > a

    SEEN, IN, OUT, GREATER = 1, 2, 4, 8

    @cached_property
    def initial_state(self) -> tuple[int, ...]:
        return (0,) * self.n

    def closes_redex(self, state: tuple[int, ...], b: int) -> bool:
        s = state[b]
        if s & self.GREATER:
            return True
        return bool(s & self.SEEN) and (s & (self.IN | self.OUT)) != (self.IN | self.OUT)

    def step(self, state: tuple[int, ...], b: int) -> tuple[int, ...] | None:
        """State after appending ``b``, or None if that creates a redex."""
        key = (state, b)
        try:
            return self._transitions[key]
        except KeyError:
            pass
        if self.closes_redex(state, b):
            nxt = None
        else:
            bit = 1 << b
            rb = self.rank[b]
            out = []
            for a, s in enumerate(state):
                if a == b:
                    out.append(self.SEEN)
                    continue
                if s & self.SEEN:
                    if self.in_mask[a] & bit:
                        s |= self.IN
                    if self.out_mask[a] & bit:
                        s |= self.OUT
                if self.blocked[a] & bit:
                    s &= ~self.GREATER
                elif rb > self.rank[a]:
                    s |= self.GREATER
                out.append(s)
            nxt = tuple(out)
        self._transitions[key] = nxt
        return nxt

    def scan(self, w: Iterable[int]) -> tuple[int, ...] | None:
        state = self.initial_state
        for b in w:
            state = self.step(state, b)
            if state is None:
                return None
        return state

    def is_normal(self, w: Sequence[int]) -> bool:
        """True iff no left-hand side occurs in ``w`` (single left-to-right pass)."""
        return self.scan(w) is not None


# ---------------------------------------------------------------------------
# periodic words on a cycle


def q_word(cycle: SimpleCycle | Sequence, i: int) -> tuple:
    """The period ``x_N (x_1 .. x_i) (x_{N-1} .. x_{i+1})`` on the cycle ``x_1 -> .. -> x_N``.

    Returns the letters as elements of ``cycle`` (names for a
    :class:`SimpleCycle`, whatever the sequence holds otherwise).
    """
    xs = tuple(cycle.vertices if isinstance(cycle, SimpleCycle) else cycle)
    N = len(xs)
    if N < 3:
        raise ValueError("cycles have length at least 3")
    if not 0 <= i <= N - 2:
        raise ValueError(f"index {i} out of range 0..{N - 2}")
    return (xs[N - 1],) + xs[:i] + tuple(reversed(xs[i:N - 1]))


@dataclass(frozen=True)
class PeriodicCheck:
    verdict: str  # "confirmed", "not_periodic_normal" or "violation"
    q_index: int | None = None
    cycle: int | None = None  # position in the cycle list
    failing_power: int | None = None


def _is_factor(small: Sequence, big: Sequence) -> bool:
    k = len(small)
    return any(tuple(big[s:s + k]) == tuple(small) for s in range(len(big) - k + 1))


def periodic_support_check(rw: Rewriter, cycles: Sequence[SimpleCycle], w: Sequence[int],
                           max_power: int) -> PeriodicCheck:
    """Check the finite consequence of "all powers normal => factor of a q-period".

    If some ``w^m`` with ``m <= max_power`` is not normal the word is out
    of scope.  Otherwise ``w`` must use exactly the vertices of one cycle
    and appear as a factor of some ``q_{N,i}`` repeated; anything else is
    reported as a violation.
    """
    w = tuple(w)
    if not w:
        raise ValueError("w must be non-empty")
    for m in range(1, max_power + 1):
        if not rw.is_normal(w * m):
            return PeriodicCheck("not_periodic_normal", failing_power=m)
    g = rw.graph
    supp = support_mask(w)
    for ci, cyc in enumerate(cycles):
        letters = [g.index[v] for v in cyc.vertices]
        if support_mask(letters) != supp:
            continue
        N = len(letters)
        reps = -(-len(w) // N) + 1
        for i in range(N - 1):
            if _is_factor(w, q_word(letters, i) * reps):
                return PeriodicCheck("confirmed", q_index=i, cycle=ci)
    return PeriodicCheck("violation")
