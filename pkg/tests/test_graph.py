import pytest
from hypothesis import given, settings, strategies as st

from conftest import graph
from hkgk.corpus import CorpusSpec, generate_corpus
from hkgk.errors import GraphError, InconsistentDirection, NotFinite
from hkgk.fixtures import EXAMPLE4, cycle_graph
from hkgk.graph import (Direction, GkReport, OrientedGraph, SimpleCycle, adjacency_to_cycles,
                        analyze, build_order, classify_and_count, cycle_reachable_subgraph,
                        finiteness_check, gk_dimension, parse_graph, simple_cycles)
from oracles import all_simple_cycles, count_paths, has_connected_cycle_pair

TRIANGLE = "vertices: a b c\nedges: a->b b->c c->a"
SINK = "vertices: a b c y\nedges: a->b b->c c->a a->y"
CHAIN = "vertices: a b c y1 y2\nedges: a->b b->c c->a a->y1 y1->y2"
TWO_TRIANGLES = "vertices: a b c d e f\nedges: a->b b->c c->a d->e e->f f->d"
JOINED = TWO_TRIANGLES + " c->d"


# -- parsing ------------------------------------------------------------------

def test_parse_minimal():
    g = parse_graph("vertices: a b\nedges: a->b")
    assert g.vertices == ("a", "b")
    assert g.arcs == {("a", "b")}


def test_parse_example4():
    g = parse_graph(EXAMPLE4)
    assert g.n == 12
    assert len(g.arcs) == 13


def test_parse_comments_blank_lines_and_several_edge_lines():
    g = parse_graph("# hi\n\nvertices: a b c\nedges: a->b\n# more\nedges: b->c\n")
    assert g.arcs == {("a", "b"), ("b", "c")}


@pytest.mark.parametrize("text, fragment, line", [
    ("vertices: a\nedges: a->a", "self-loop", 2),
    ("vertices: a b\nedges: a->b b->a", "2-cycle", 2),
    ("vertices: a b\nedges: a->b\nedges: a->b", "duplicate arc", 3),
    ("vertices: a\nedges: a->b", "undeclared", 2),
    ("vertices: a b\nedges: a-b", "malformed arc", 2),
    ("vertices: a b\nstuff: x", "expected", 2),
    ("vertices: a a", "declared twice", 1),
    ("vertices: a-b", "invalid vertex name", 1),
    ("vertices: a\nvertices: b", "second", 2),
])
def test_parse_errors_carry_line_numbers(text, fragment, line):
    with pytest.raises(GraphError) as info:
        parse_graph(text)
    assert fragment in str(info.value)
    assert info.value.line == line


def test_missing_vertices_line():
    with pytest.raises(GraphError, match="missing"):
        parse_graph("edges: a->b")


def test_constructor_enforces_invariants():
    with pytest.raises(GraphError):
        OrientedGraph(("a", "b"), frozenset({("a", "b"), ("b", "a")}))
    with pytest.raises(GraphError):
        OrientedGraph.from_arcs(["a", "b"], [("a", "b"), ("a", "b")])


def test_text_round_trip(finite_corpus, mixed_corpus):
    for g in finite_corpus + mixed_corpus:
        assert parse_graph(g.to_text()) == g


# -- cycles and finiteness ------------------------------------------------------

def test_triangle_has_one_cycle():
    assert simple_cycles(graph(TRIANGLE)) == [SimpleCycle(("a", "b", "c"))]


def test_canonical_rotation():
    g = graph("vertices: c a b\nedges: c->a a->b b->c")
    assert simple_cycles(g) == [SimpleCycle(("a", "b", "c"))]


def test_dag_has_no_cycles(dag_corpus):
    for g in dag_corpus:
        assert simple_cycles(g) == []


def test_example4_cycles(example4):
    cycles = simple_cycles(example4)
    assert [c.vertices for c in cycles] == [("x11", "x21", "x31"), ("x12", "x22", "x32")]


def test_simple_cycles_match_backtracking(mixed_corpus):
    for g in mixed_corpus:
        ours = sorted(c.vertices for c in simple_cycles(g))
        assert ours == sorted(SimpleCycle.canonical(c).vertices for c in all_simple_cycles(g))


def test_finiteness_examples(example4):
    assert finiteness_check(graph(TWO_TRIANGLES)).finite
    assert finiteness_check(example4).finite
    verdict = finiteness_check(graph(JOINED))
    assert not verdict.finite
    w = verdict.witness
    assert (w.first.vertices, w.second.vertices, w.path) == (("a", "b", "c"), ("d", "e", "f"),
                                                            ("c", "d"))


def test_shared_vertex_witness():
    # two triangles through a
    g = graph("vertices: a b c d e\nedges: a->b b->c c->a a->d d->e e->a")
    w = finiteness_check(g).witness
    assert w.first != w.second
    assert len(w.path) == 1 and w.path[0] in set(w.first.vertices) & set(w.second.vertices)


def test_witness_is_genuine(mixed_corpus):
    for g in mixed_corpus:
        verdict = finiteness_check(g)
        if verdict.finite:
            continue
        w = verdict.witness
        for c in (w.first, w.second):
            assert all(a in g.arcs for a in c.arcs())
        assert w.first != w.second
        assert w.path[0] in w.first.vertices and w.path[-1] in w.second.vertices
        assert all((u, v) in g.arcs for u, v in zip(w.path, w.path[1:]))


def test_finiteness_agrees_with_exhaustive_search(mixed_corpus):
    for g in mixed_corpus:
        assert finiteness_check(g).finite == (not has_connected_cycle_pair(g))


def test_cycles_disjoint_when_finite(finite_corpus):
    for g in finite_corpus:
        seen = set()
        for c in simple_cycles(g):
            assert not seen & set(c.vertices)
            seen |= set(c.vertices)


# -- the reachable part, directions and k ----------------------------------------

def test_theta_prime_examples(example4):
    assert cycle_reachable_subgraph(example4, simple_cycles(example4)) == \
        frozenset(example4.vertices) - {"y6"}
    g = graph("vertices: a b c z\nedges: a->b b->c c->a")
    assert cycle_reachable_subgraph(g, simple_cycles(g)) == {"a", "b", "c"}
    g = graph(SINK)
    assert cycle_reachable_subgraph(g, simple_cycles(g)) == {"a", "b", "c", "y"}


def test_k_values_example4(example4):
    cs = analyze(example4)
    assert dict(cs.path_count) == {"y1": 3, "y2": 1, "y3": 1, "y4": 1, "y5": 1}
    assert cs.direction["y1"] is Direction.FROM_CYCLES
    assert cs.direction["y5"] is Direction.TO_CYCLES


def test_k_values_small():
    cs = analyze(graph(SINK))
    assert dict(cs.path_count) == {"y": 1}
    cs = analyze(graph(CHAIN))
    assert dict(cs.path_count) == {"y1": 2, "y2": 1}


def test_k_matches_path_enumeration(finite_corpus):
    for g in finite_corpus:
        cs = analyze(g)
        for x, k in cs.path_count.items():
            forward = cs.direction[x] is Direction.FROM_CYCLES
            assert k == count_paths(g, x, forward)
            nbrs = g.successors(x) if forward else g.predecessors(x)
            assert k == 1 + sum(cs.path_count[z] for z in nbrs)


def test_inconsistent_direction_is_refused():
    g = graph(JOINED.replace("c->d", "c->y y->d").replace("vertices: a b c d e f",
                                                         "vertices: a b c d e f y"))
    cycles = simple_cycles(g)
    with pytest.raises(InconsistentDirection):
        classify_and_count(g, cycles, cycle_reachable_subgraph(g, cycles))
    with pytest.raises(NotFinite):
        analyze(g)


def test_adjacency_examples(example4):
    assert adjacency_to_cycles(example4, simple_cycles(example4)) == (
        frozenset({"y1", "y4"}), frozenset({"y4", "y5"}))
    g = graph(TRIANGLE)
    assert adjacency_to_cycles(g, simple_cycles(g)) == (frozenset(),)
    g = graph(SINK)
    assert adjacency_to_cycles(g, simple_cycles(g)) == (frozenset({"y"}),)


# -- order ------------------------------------------------------------------

def test_order_example4(example4):
    order = build_order(example4, analyze(example4))
    assert order.as_list() == ["x11", "x21", "x31", "x12", "x22", "x32",
                               "y1", "y2", "y3", "y4", "y5", "y6"]


def test_order_lone_cycle():
    g = cycle_graph(3)
    assert build_order(g, analyze(g)).as_list() == ["x1", "x2", "x3"]


def test_outside_vertices_are_largest():
    g = graph("vertices: zz a b c y6\nedges: a->b b->c c->a")
    assert build_order(g, analyze(g)).as_list()[-2:] == ["y6", "zz"]


def test_order_invariants(finite_corpus):
    for g in finite_corpus:
        cs = analyze(g)
        order = build_order(g, cs)
        cyc = [v for c in cs.cycles for v in c.vertices]
        assert order.as_list()[:len(cyc)] == cyc
        inner = cs.non_cycle_theta()
        for x in inner:
            for y in inner:
                if cs.path_count[x] < cs.path_count[y]:
                    assert order.less(y, x)
            for v in set(g.vertices) - cs.theta_prime:
                assert order.less(x, v)


# -- the dimension ----------------------------------------------------------------

def test_gk_example4(example4):
    report = gk_dimension(example4)
    assert report.gk == 8
    assert [p.summand for p in report.per_cycle] == [5, 3]
    assert report.per_cycle[0].attached == (("y1", 3), ("y4", 1))


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_single_cycle_is_one(n):
    assert gk_dimension(cycle_graph(n)).gk == 1


def test_dags_are_zero(dag_corpus):
    for g in dag_corpus:
        assert gk_dimension(g).gk == 0


def test_small_closed_forms():
    assert gk_dimension(graph(SINK)).gk == 2
    assert gk_dimension(graph(CHAIN)).gk == 3


def test_infinite_report():
    report = gk_dimension(graph(JOINED))
    assert not report.finite and report.gk is None
    assert report.infinite_witness is not None


def test_report_json_round_trip(finite_corpus, mixed_corpus):
    for g in finite_corpus + mixed_corpus:
        report = gk_dimension(g)
        assert GkReport.from_json(report.to_json()) == report


def test_verdict_matches_finiteness(mixed_corpus):
    for g in mixed_corpus:
        assert gk_dimension(g).finite == finiteness_check(g).finite


def test_reversal_invariance(mixed_corpus):
    for g in mixed_corpus:
        assert gk_dimension(g).gk == gk_dimension(g.reversed()).gk


def test_tie_break_only_permutes_equal_k(finite_corpus):
    for g in finite_corpus:
        cs = analyze(g)
        a = build_order(g, cs).as_list()
        b = build_order(g, cs, tie_break=lambda v: tuple(-ord(ch) for ch in v)).as_list()
        assert sorted(a) == sorted(b)
        ncyc = len(cs.cycle_vertices)
        assert a[:ncyc] == b[:ncyc]
        key = lambda v: cs.path_count.get(v, -1) if v in cs.theta_prime else -2  # noqa: E731
        assert [key(v) for v in a] == [key(v) for v in b]


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_generated_graphs_property(seed):
    g = generate_corpus(CorpusSpec(seed=seed, count=1, constraint="any"))[0]
    report = gk_dimension(g)
    assert report.finite == (not has_connected_cycle_pair(g))
    if report.finite:
        assert report.gk == gk_dimension(g.reversed()).gk
        assert report.gk == (0 if not report.cycles else
                             sum(1 + sum(k for _, k in p.attached) for p in report.per_cycle))
