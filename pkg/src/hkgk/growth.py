"""Counting normal words by length and reading off the growth degree.

Normal words are closed under taking factors, so every normal word of
length n+1 is a normal word of length n with one letter appended.  The
enumeration therefore only ever extends normal prefixes, checking the
new last position with :meth:`Rewriter.step`.

Two exact counting methods are offered:

``words``   keeps every normal word of the current length;
``merged``  keeps only how many prefixes share each scanner state.  The
            scanner state decides every future extension, so merged
            counts equal word counts while the work stays proportional
            to the number of distinct states.

Both are length-synchronous, so a series cut short by the word budget
still holds exact counts for every length it reports.
"""

from __future__ import annotations

import math
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import GuardError, HKError, NotFinite
from .graph import GkReport, OrientedGraph, analyze, build_order, gk_dimension
from .words import Rewriter, Word

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class GrowthSeries:
    density: tuple[int, ...]  # density[n] = number of normal words of length n
    truncated: bool = False

    @property
    def max_len(self) -> int:
        return len(self.density) - 1

    @property
    def cumulative(self) -> tuple[int, ...]:
        out, total = [], 0
        for p in self.density:
            total += p
            out.append(total)
        return tuple(out)

    def csv(self) -> str:
        rows = ["n,p,g"]
        rows += [f"{n},{p},{g}" for n, (p, g) in enumerate(zip(self.density, self.cumulative))]
        return "\n".join(rows) + "\n"


def iter_normal_words(rw: Rewriter, max_len: int, alphabet: list[int] | None = None
                      ) -> Iterator[Word]:
    """Depth-first generator of all normal words of length <= ``max_len``, identity first."""
    letters = list(range(rw.n)) if alphabet is None else alphabet
    stack: list[tuple[Word, tuple[int, ...]]] = [((), rw.initial_state)]
    while stack:
        word, state = stack.pop()
        yield word
        if len(word) == max_len:
            continue
        for b in reversed(letters):
            nxt = rw.step(state, b)
            if nxt is not None:
                stack.append((word + (b,), nxt))


def _count_from(rw: Rewriter, start: dict, first_len: int, max_len: int, budget: float,
                merged: bool, prior_total: int = 0) -> tuple[list[int], bool]:
    """Extend ``start`` (prefixes of length ``first_len``) level by level.

    ``start`` maps a key to a (state, multiplicity) pair.  Returns the
    counts for lengths first_len..L and whether the budget stopped it.
    """
    level = start
    counts = [sum(c for _, c in level.values())]
    total = prior_total + counts[0]
    if total > budget:
        return counts, True
    letters = range(rw.n)
    for _ in range(first_len + 1, max_len + 1):
        nxt: dict = {} if not merged else defaultdict(int)
        for key, (state, mult) in level.items():
            for b in letters:
                s = rw.step(state, b)
                if s is None:
                    continue
                if merged:
                    nxt[s] += mult
                else:
                    nxt[key + (b,)] = (s, mult)
        level = {s: (s, c) for s, c in nxt.items()} if merged else nxt
        counts.append(sum(c for _, c in level.values()))
        total += counts[-1]
        if total > budget:
            return counts, True
        if not level:
            counts.extend([0] * (max_len - first_len - len(counts) + 1))
            break
    return counts, False


def _shard_worker(args):
    graph, order, first, max_len, budget, merged = args
    rw = Rewriter(graph, order)
    state = rw.step(rw.initial_state, first)
    start = {state if merged else (first,): (state, 1)}
    return _count_from(rw, start, 1, max_len, budget, merged)


def enumerate_normal_words(rw: Rewriter, max_len: int, budget: float = DEFAULT_BUDGET,
                           method: str = "merged", jobs: int = 1) -> GrowthSeries:
    """Exact density of normal words for lengths 0..``max_len``.

    Stops after the first length at which more than ``budget`` words
    have been counted in total; the returned series is then flagged
    ``truncated`` and ends at that length.  ``jobs > 1`` splits the
    search by first letter over worker processes; the result is the
    same as the sequential run.
    """
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    if method not in ("merged", "words"):
        raise ValueError(f"unknown method {method!r}")
    merged = method == "merged"
    if max_len == 0 or rw.n == 0:
        return GrowthSeries((1,) + (0,) * max_len)
    if jobs <= 1:
        start = {rw.initial_state if merged else (): (rw.initial_state, 1)}
        counts, truncated = _count_from(rw, start, 0, max_len, budget, merged)
        return GrowthSeries(tuple(counts), truncated)

    tasks = [(rw.graph, rw.order, b, max_len, budget, merged) for b in range(rw.n)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        shards = list(pool.map(_shard_worker, tasks))
    # a shard counts no more than the whole, so it never stops before the
    # sequential run would; cut the merged series where that run stops
    reach = min(len(c) for c, _ in shards)
    density = [1]
    total = 1
    truncated = False
    for length in range(1, reach + 1):
        density.append(sum(c[length - 1] for c, _ in shards))
        total += density[-1]
        if total > budget:
            truncated = True
            break
    return GrowthSeries(tuple(density), truncated)


@dataclass(frozen=True)
class DegreeEstimate:
    estimate: float
    rounded: int
    window: tuple[int, int]
    residual: float

    def to_dict(self) -> dict:
        return {"estimate": self.estimate, "rounded": self.rounded,
                "window": list(self.window), "residual": self.residual}


MIN_FIT_LEN = 12


def estimate_degree(series: GrowthSeries) -> DegreeEstimate:
    """Slope of log g(n) against log n over the upper half of the lengths.

    The cumulative count g is fitted rather than the density, which
    may oscillate.  A series whose density has died out is a finite
    monoid and gets degree 0.
    """
    if series.truncated:
        raise HKError("cannot estimate the degree of a truncated series")
    N = series.max_len
    if N < MIN_FIT_LEN:
        raise HKError(f"series too short for a fit (need max_len >= {MIN_FIT_LEN}, got {N})")
    lo = max(N // 2, 1)
    if all(p == 0 for p in series.density[lo:]):
        return DegreeEstimate(0.0, 0, (lo, N), 0.0)
    g = series.cumulative
    xs = np.log(np.arange(lo, N + 1, dtype=float))
    ys = np.log(np.array([float(v) for v in g[lo:N + 1]]))
    slope, intercept = np.polyfit(xs, ys, 1)
    residual = float(np.sqrt(np.mean((ys - (slope * xs + intercept)) ** 2)))
    slope = float(slope)
    return DegreeEstimate(slope, int(math.floor(slope + 0.5)), (lo, N), residual)


@dataclass(frozen=True)
class CrossValidation:
    formula: GkReport
    empirical: DegreeEstimate
    series: GrowthSeries
    agree: bool

    def to_dict(self) -> dict:
        return {"formula": self.formula.to_dict(), "empirical": self.empirical.to_dict(),
                "density": list(self.series.density), "agree": self.agree}


FORMULA_GUARD = 4
AGREEMENT_TOLERANCE = 0.35


def cross_validate(g: OrientedGraph, max_len: int, force: bool = False,
                   budget: float = math.inf, tolerance: float = AGREEMENT_TOLERANCE,
                   jobs: int = 1) -> CrossValidation:
    """Compare the closed formula with the degree fitted to the normal-word counts.

    No word cap by default: the formula guard already bounds the growth
    polynomially and merged counting does not pay per word.
    """
    report = gk_dimension(g)
    if not report.finite:
        raise NotFinite("cross-validation needs a graph of finite GK dimension")
    if report.gk > FORMULA_GUARD and not force:
        raise GuardError(f"formula value {report.gk} exceeds {FORMULA_GUARD}; "
                         "counts grow like n^(d-1), pass force to enumerate anyway")
    cs = analyze(g)
    rw = Rewriter(g, build_order(g, cs))
    series = enumerate_normal_words(rw, max_len, budget=budget, jobs=jobs)
    est = estimate_degree(series)
    agree = abs(est.estimate - report.gk) <= tolerance and est.rounded == report.gk
    return CrossValidation(report, est, series, agree)
