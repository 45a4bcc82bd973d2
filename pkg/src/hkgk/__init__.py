"""Gelfand-Kirillov dimension of Hecke-Kiselman algebras of oriented graphs."""

from .errors import (BudgetExceeded, GraphError, GuardError, HKError, InconsistentDirection,
                     NotFinite, WordError)
from .graph import (CycleStructure, Direction, Finiteness, GkReport, OrientedGraph,
                    SimpleCycle, VertexOrder, adjacency_to_cycles, analyze, build_order,
                    classify_and_count, cycle_reachable_subgraph, finiteness_check,
                    gk_dimension, parse_graph, simple_cycles)
from .growth import (CrossValidation, DegreeEstimate, GrowthSeries, cross_validate,
                     enumerate_normal_words, estimate_degree, iter_normal_words)
from .witness import (StarExpression, WitnessReport, build_star_expression, build_w_prime,
                      instantiate, verify_witness)
from .words import (NormalFormResult, ReductionMatch, Rewriter, disconnected, format_word,
                    not_from, not_into, parse_word, periodic_support_check, q_word)

__version__ = "0.1.0"
