import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hkgk.corpus import CorpusSpec, generate_corpus  # noqa: E402
from hkgk.fixtures import load_example4  # noqa: E402
from hkgk.graph import analyze, build_order, parse_graph  # noqa: E402
from hkgk.words import Rewriter  # noqa: E402

FINITE_SPEC = CorpusSpec(seed=2024, count=24)
MIXED_SPEC = CorpusSpec(seed=7, count=40, constraint="any")
DAG_SPEC = CorpusSpec(seed=3, count=20, cycle_count_range=(0, 0), vertex_range=(3, 7),
                      attachment_range=(2, 6))
MICRO_SPEC = CorpusSpec(seed=5, count=14, vertex_range=(2, 4), cycle_count_range=(0, 1),
                        attachment_range=(0, 1), constraint="any")


def rewriter_for(g, tie_break=None):
    return Rewriter(g, build_order(g, analyze(g), tie_break))


def graph(text):
    return parse_graph(text)


@pytest.fixture(scope="session")
def example4():
    return load_example4()


@pytest.fixture(scope="session")
def finite_corpus():
    return generate_corpus(FINITE_SPEC)


@pytest.fixture(scope="session")
def mixed_corpus():
    return generate_corpus(MIXED_SPEC)


@pytest.fixture(scope="session")
def dag_corpus():
    return generate_corpus(DAG_SPEC)


@pytest.fixture(scope="session")
def micro_corpus():
    return [g for g in generate_corpus(MICRO_SPEC) if g.n <= 4]


ACCEPTANCE_LINES: list[str] = []


def record_criterion(number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
