import pytest

from hkgk.corpus import CorpusSpec, generate_corpus
from hkgk.errors import BudgetExceeded
from hkgk.graph import analyze, finiteness_check, simple_cycles


def test_finite_only():
    graphs = generate_corpus(CorpusSpec(seed=1, count=5))
    assert len(graphs) == 5
    assert all(finiteness_check(g).finite for g in graphs)


def test_deterministic():
    spec = CorpusSpec(seed=42, count=15, constraint="any")
    assert generate_corpus(spec) == generate_corpus(spec)
    assert generate_corpus(spec) != generate_corpus(CorpusSpec(seed=43, count=15,
                                                               constraint="any"))


def test_any_includes_both_kinds(mixed_corpus):
    verdicts = {finiteness_check(g).finite for g in mixed_corpus}
    assert verdicts == {True, False}


def test_shape(finite_corpus):
    for g in finite_corpus:
        assert 3 <= g.n <= 9
        cycles = simple_cycles(g)
        assert 1 <= len(cycles) <= 2
        assert all(3 <= len(c) <= 5 for c in cycles)
        analyze(g)


def test_acyclic_corpus(dag_corpus):
    assert len(dag_corpus) == 20
    assert all(not simple_cycles(g) for g in dag_corpus)


def test_free_vertices_stay_outside(finite_corpus):
    for g in finite_corpus:
        theta = analyze(g).theta_prime
        assert not {v for v in g.vertices if v.startswith("z")} & theta


def test_bad_constraint():
    with pytest.raises(ValueError):
        CorpusSpec(seed=0, count=1, constraint="sometimes")


def test_rejection_budget(monkeypatch):
    from hkgk import corpus
    from hkgk.graph import Finiteness

    monkeypatch.setattr(corpus, "finiteness_check", lambda g: Finiteness(False, None))
    with pytest.raises(BudgetExceeded):
        generate_corpus(CorpusSpec(seed=0, count=1, rejection_budget=5))
