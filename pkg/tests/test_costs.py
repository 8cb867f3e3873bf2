from itertools import permutations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import graphs, perms, single
from medgraph import (SUM_ABS, SUM_SQ, CostKind, CostSpec, Permutation,
                      check_metric_axioms, compose, pairwise_cost)
from medgraph.generate import GenConfig, random_weighted_graph


def test_cost_spec_flags():
    assert SUM_ABS.is_metric and not SUM_SQ.is_metric
    assert CostSpec.parse("SUM_SQ") == SUM_SQ
    assert CostSpec.parse("abs").kind is CostKind.SUM_ABS
    with pytest.raises(ValueError):
        CostSpec.parse("l2")


@pytest.mark.parametrize("cost, expected", [(SUM_SQ, 0.16), (SUM_ABS, 0.4)])
def test_single_vertex(cost, expected):
    ident = Permutation.identity(1)
    assert pairwise_cost(single(0.2), ident, single(0.6), ident, cost) == pytest.approx(expected, abs=1e-15)


def test_self_cost_zero():
    g = random_weighted_graph(GenConfig(n=4, m=1, seed=3))
    ident = Permutation.identity(4)
    for cost in (SUM_ABS, SUM_SQ):
        assert pairwise_cost(g, ident, g, ident, cost) == 0.0


def test_edges_counted_once():
    from medgraph import AttributedGraph
    a = AttributedGraph.from_edges([0.0, 0.0], [(0, 1, 1.0)])
    b = AttributedGraph.from_edges([0.0, 0.0])
    ident = Permutation.identity(2)
    assert pairwise_cost(a, ident, b, ident, SUM_ABS) == 1.0


same_size_pairs = st.integers(1, 4).flatmap(lambda n: st.tuples(graphs(n=n), graphs(n=n)))


@given(same_size_pairs, st.data())
def test_matches_loop_oracle(pair, data):
    a, b = pair
    pa, pb = data.draw(perms(a.n)), data.draw(perms(a.n))
    for cost in (SUM_ABS, SUM_SQ):
        assert pairwise_cost(a, pa, b, pb, cost) == pytest.approx(
            oracles.cost(cost.kind.value, a, pa.map, b, pb.map), abs=1e-12)


@given(same_size_pairs, st.data())
def test_symmetric(pair, data):
    a, b = pair
    pa, pb = data.draw(perms(a.n)), data.draw(perms(a.n))
    for cost in (SUM_ABS, SUM_SQ):
        assert pairwise_cost(a, pa, b, pb, cost) == pairwise_cost(b, pb, a, pa, cost)
        assert pairwise_cost(a, pa, b, pb, cost) >= 0.0


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_common_relabelling_invariance_exhaustive(n):
    a = random_weighted_graph(GenConfig(n=n, m=1, seed=10 + n))
    b = random_weighted_graph(GenConfig(n=n, m=1, seed=20 + n))
    pa = Permutation(tuple(reversed(range(n))))
    pb = Permutation.identity(n)
    for cost in (SUM_ABS, SUM_SQ):
        ref = pairwise_cost(a, pa, b, pb, cost)
        for sigma in permutations(range(n)):
            s = Permutation(sigma)
            assert pairwise_cost(a, compose(pa, s), b, compose(pb, s), cost) == pytest.approx(ref, abs=1e-12)


def exhaustive_sample(n, seeds):
    return [(random_weighted_graph(GenConfig(n=n, m=1, edge_density=0.7, seed=s)), Permutation(p))
            for s in seeds for p in permutations(range(n))]


class TestMetricAxioms:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_abs_is_metric_on_exhaustive_sample(self, n):
        rep = check_metric_axioms(SUM_ABS, exhaustive_sample(n, [1, 2, 3]))
        assert rep.all_ok and rep.counterexample is None

    def test_sq_triangle_counterexample(self):
        ident = Permutation.identity(1)
        rep = check_metric_axioms(SUM_SQ, [(single(0.0), ident), (single(1.0), ident), (single(0.5), ident)])
        assert not rep.triangle_ok
        assert rep.identity_ok and rep.positivity_ok and rep.symmetry_ok
        axiom, witness = rep.counterexample
        assert axiom == "triangle"
        ends = sorted(float(g.vertex_weights[0]) for g, _ in (witness[0], witness[2]))
        assert ends == [0.0, 1.0] and float(witness[1][0].vertex_weights[0]) == 0.5

    def test_sq_identity_on_identical_graphs(self):
        g = random_weighted_graph(GenConfig(n=3, m=1, seed=5))
        ident = Permutation.identity(3)
        assert check_metric_axioms(SUM_SQ, [(g, ident)] * 3).identity_ok

    def test_empty_sample_is_vacuous(self):
        assert check_metric_axioms(SUM_ABS, []).all_ok

    def test_identity_detects_zero_cost_between_distinct(self):
        # relabellings that coincide give cost 0, which is consistent with identity
        g = single(0.3)
        ident = Permutation.identity(1)
        assert check_metric_axioms(SUM_ABS, [(g, ident), (single(0.3), ident)]).identity_ok
