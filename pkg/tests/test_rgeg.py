import numpy as np
import pytest

from effgraph import (DirectedGraph, UndirectedGraph, block_model_sample,
                      combinatorial_laplacian, contract, correlation_pairing,
                      disparity_filter, laplacian_pseudoinverse, level_purity,
                      rgeg_flow, rgeg_step, symmetrize)
from effgraph.rgeg import RgParams

from conftest import random_digraph


def undirected(n, pairs):
    return UndirectedGraph(n=n, edges={(u, v): w for u, v, w in pairs})


def two_cliques(size=6):
    rows = []
    for base in (0, size):
        for i in range(size):
            for j in range(size):
                if i != j:
                    rows.append((base + i, base + j, 1.0))
    labels = ["a"] * size + ["b"] * size
    return DirectedGraph.from_edge_list(rows, labels=labels)


def test_disparity_filter_threshold_one_keeps_all():
    g = undirected(5, [(0, i, 1.0) for i in range(1, 5)])
    out = disparity_filter(g, 1.0)
    assert out.edges == g.edges


def test_disparity_filter_dominant_edge_significance():
    # hub with one heavy edge and nine light ones: only the heavy edge is
    # locally significant at threshold 0.05
    pairs = [(0, 1, 10.0)] + [(0, i, 0.1) for i in range(2, 11)]
    g = undirected(11, pairs)
    strength = g.strengths()[0]
    k = g.degrees()[0]
    a_heavy = (1 - 10.0 / strength) ** (k - 1)
    a_light = (1 - 0.1 / strength) ** (k - 1)
    assert a_heavy < 0.05 <= a_light
    out = disparity_filter(g, 0.05)
    assert (0, 1) in out.edges
    # light edges survive only through the degree-1 / forest guards
    assert set(out.edges) == set(g.edges)


def test_disparity_filter_drops_insignificant_interior_edges():
    # clique with one heavy edge: light edges outside the spanning forest drop
    n = 6
    pairs = [(u, v, 0.1) for u in range(n) for v in range(u + 1, n)]
    pairs = [(u, v, 10.0 if (u, v) == (0, 1) else w) for u, v, w in pairs]
    g = undirected(n, pairs)
    out = disparity_filter(g, 0.05)
    assert (0, 1) in out.edges
    assert len(out.edges) < len(g.edges)
    assert set(out.edges) <= set(g.edges)


def test_disparity_filter_preserves_components():
    rng = np.random.default_rng(40)
    for _ in range(10):
        g = symmetrize(random_digraph(rng, n_max=15, weighted=True))
        out = disparity_filter(g, 0.05)
        from effgraph.graphs import undirected_components
        assert undirected_components(out) == undirected_components(g)


def test_laplacian_pseudoinverse_single_edge():
    g = undirected(2, [(0, 1, 1.0)])
    Lp = laplacian_pseudoinverse(g)
    assert np.allclose(Lp, [[0.25, -0.25], [-0.25, 0.25]], atol=1e-12)


def test_laplacian_pseudoinverse_properties():
    rng = np.random.default_rng(41)
    for _ in range(10):
        g = symmetrize(random_digraph(rng, n_max=12, weighted=True))
        L = combinatorial_laplacian(g)
        Lp = laplacian_pseudoinverse(g)
        assert np.max(np.abs(Lp @ np.ones(g.n))) < 1e-8
        assert np.max(np.abs(L @ Lp @ L - L)) < 1e-8
        from effgraph._linalg import pinv_psd
        assert np.max(np.abs(pinv_psd(Lp) - L)) < 1e-8


def test_correlation_pairing_two_heavy_edges():
    g = undirected(4, [(0, 1, 5.0), (2, 3, 5.0)])
    Lp = laplacian_pseudoinverse(g)
    groups = correlation_pairing(Lp, graph=g)
    assert groups == [(0, 1), (2, 3)]


def test_correlation_pairing_odd_count():
    g = undirected(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)])
    Lp = laplacian_pseudoinverse(g)
    groups = correlation_pairing(Lp, graph=g)
    sizes = sorted(len(grp) for grp in groups)
    assert sizes == [1, 2]


def test_correlation_pairing_deterministic():
    rng = np.random.default_rng(42)
    g = symmetrize(random_digraph(rng, n_max=14, weighted=True))
    Lp = laplacian_pseudoinverse(g)
    assert correlation_pairing(Lp, graph=g) == correlation_pairing(Lp, graph=g)


def test_correlation_pairing_never_crosses_components():
    rng = np.random.default_rng(43)
    for _ in range(10):
        a = random_digraph(rng, n_min=3, n_max=7)
        b = random_digraph(rng, n_min=3, n_max=7)
        rows = [(u, v, w) for (u, v), w in a.edges.items()]
        rows += [(a.n + u, a.n + v, w) for (u, v), w in b.edges.items()]
        g = DirectedGraph.from_edge_list(rows, n=a.n + b.n)
        ug = symmetrize(g)
        groups = correlation_pairing(laplacian_pseudoinverse(ug), graph=ug)
        from effgraph.graphs import undirected_components
        comp_of = {}
        for idx, comp in enumerate(undirected_components(ug)):
            for u in comp:
                comp_of[u] = idx
        for grp in groups:
            assert len({comp_of[u] for u in grp}) == 1


def test_contract_fully_connected_blocks():
    rows = [(u, v, 2.0) for u in (0, 1) for v in (2, 3)]
    g = DirectedGraph.from_edge_list(rows)
    coarse, mapping = contract(g, [(0, 1), (2, 3)])
    assert coarse.n == 2
    assert coarse.edges == {(0, 1): 1.0}
    assert mapping == {0: 0, 1: 0, 2: 1, 3: 1}


def test_contract_bidirectional():
    g = DirectedGraph.from_edge_list([(0, 2, 1.0), (3, 1, 1.0)])
    coarse, _ = contract(g, [(0, 1), (2, 3)])
    assert coarse.edges == {(0, 1): 1.0, (1, 0): 1.0}


def test_contract_four_cycle_opposite_pairs():
    g = DirectedGraph.from_edge_list([(0, 1, 1.0), (1, 2, 1.0),
                                      (2, 3, 1.0), (3, 0, 1.0)])
    coarse, _ = contract(g, [(0, 2), (1, 3)])
    assert coarse.edges == {(0, 1): 1.0, (1, 0): 1.0}


def test_contract_accumulate_weights():
    rows = [(u, v, 2.0) for u in (0, 1) for v in (2, 3)]
    g = DirectedGraph.from_edge_list(rows)
    coarse, _ = contract(g, [(0, 1), (2, 3)], accumulate_weights=True)
    assert coarse.edges == {(0, 1): 8.0}


def test_contract_requires_partition():
    g = DirectedGraph.from_edge_list([(0, 1, 1.0)], n=3)
    with pytest.raises(ValueError):
        contract(g, [(0, 1)])
    with pytest.raises(ValueError):
        contract(g, [(0, 1), (1, 2)])


def test_rgeg_step_zero_deformation_effective_is_symmetrized():
    rng = np.random.default_rng(44)
    g = random_digraph(rng, n_max=12, weighted=True)
    params = RgParams(q=0.0, g=0.0, beta=7.0)
    _, eff, _ = rgeg_step(g, params)
    src = symmetrize(g)
    for key, w in src.edges.items():
        assert eff.graph.edges[key] == pytest.approx(w, abs=1e-12)


def test_rgeg_flow_zero_steps_identity():
    g = random_digraph(np.random.default_rng(45), n_max=10)
    state = rgeg_flow(g, RgParams(steps=0))
    assert len(state.graphs) == 1
    assert state.partitions == []
    assert state.compose_partition(0) == {u: u for u in range(g.n)}


def test_rgeg_flow_vertex_counts_halve():
    g = block_model_sample(2, 20, 0.6, 0.4, seed=1)
    state = rgeg_flow(g, RgParams(q=0.1, steps=3))
    for fine, coarse in zip(state.graphs, state.graphs[1:]):
        assert coarse.n == (fine.n + 1) // 2


def test_rgeg_flow_partitions_compose_surjectively():
    g = block_model_sample(2, 16, 0.6, 0.4, seed=2)
    state = rgeg_flow(g, RgParams(q=0.1, steps=3))
    for level in range(len(state.graphs)):
        composed = state.compose_partition(level)
        assert set(composed.keys()) == set(range(g.n))
        assert set(composed.values()) == set(range(state.graphs[level].n))


def test_rgeg_flow_deterministic():
    g = block_model_sample(3, 12, 0.5, 0.7, seed=3)
    p = RgParams(q=0.1, steps=3)
    s1 = rgeg_flow(g, p)
    s2 = rgeg_flow(g, p)
    assert s1.graphs == s2.graphs
    assert s1.partitions == s2.partitions


def test_rgeg_flow_disconnected_cliques_pure():
    g = two_cliques(6)
    state = rgeg_flow(g, RgParams(q=0.1, steps=3))
    assert state.purities is not None
    assert all(p == 1.0 for p in state.purities)


def test_rgeg_flow_two_community_purity():
    hits = 0
    for seed in range(10):
        g = block_model_sample(2, 30, 0.5, 0.05, seed=seed)
        state = rgeg_flow(g, RgParams(q=0.1, steps=1))
        if state.purities[1] >= 0.9:
            hits += 1
    assert hits >= 9


def test_rgeg_flow_stops_at_two_vertices():
    g = block_model_sample(2, 4, 1.0, 1.0, seed=0)
    state = rgeg_flow(g, RgParams(q=0.1, steps=10))
    assert state.graphs[-1].n <= 2
    assert len(state.graphs) < 11


def test_level_purity_requires_labels():
    g = random_digraph(np.random.default_rng(46), n_max=8)
    state = rgeg_flow(g, RgParams(steps=1))
    with pytest.raises(ValueError):
        level_purity(state, 0)
