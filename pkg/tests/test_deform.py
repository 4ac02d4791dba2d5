import numpy as np
import pytest

from effgraph import (DirectedGraph, combinatorial_laplacian, deformed_laplacian,
                      dilation_potential, eigendecompose, generalized_degree,
                      identity_potential, magnetic_laplacian, magnetic_potential,
                      promotion, sign_potential, symmetrize)

from conftest import random_digraph

THREE_CYCLE = [(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)]


def three_cycle():
    return DirectedGraph.from_edge_list(THREE_CYCLE)


def test_magnetic_zero_charge_is_identity():
    g = random_digraph(np.random.default_rng(0), n_max=10)
    T = magnetic_potential(g, 0.0)
    assert np.allclose(T.matrix, 1.0, atol=0)


def test_magnetic_single_edge_quarter_charge():
    # hand evaluation: flux A(1,0) = -1, so T(0,1) = exp(-i pi / 2)
    g = DirectedGraph.from_edge_list([(0, 1, 1.0)])
    T = magnetic_potential(g, 0.25)
    assert T.matrix[0, 1] == pytest.approx(np.exp(-1j * np.pi / 2), abs=1e-15)
    assert T.matrix[1, 0] == pytest.approx(np.exp(1j * np.pi / 2), abs=1e-15)


def test_magnetic_bidirectional_flux_cancels():
    g = DirectedGraph.from_edge_list([(0, 1, 2.0), (1, 0, 2.0)])
    for q in (0.1, 0.37, 0.9):
        assert np.allclose(magnetic_potential(g, q).matrix, 1.0, atol=0)


def test_magnetic_charge_range():
    g = three_cycle()
    for bad in (-0.1, 1.0, 1.5):
        with pytest.raises(ValueError):
            magnetic_potential(g, bad)


def test_inverse_constraint_exact():
    rng = np.random.default_rng(1)
    for _ in range(10):
        g = random_digraph(rng, n_max=12, weighted=True)
        Tm = magnetic_potential(g, 0.31).matrix
        assert np.max(np.abs(Tm * Tm.T - 1.0)) < 1e-12
        Td = dilation_potential(g, 0.2).matrix
        assert np.max(np.abs(Td * Td.T - 1.0)) < 1e-12


def test_dilation_single_edge():
    g = DirectedGraph.from_edge_list([(0, 1, 1.0)])
    T = dilation_potential(g, 0.1)
    assert T.matrix[0, 1] == pytest.approx(np.exp(-0.1), abs=1e-15)
    assert T.matrix[1, 0] == pytest.approx(np.exp(0.1), abs=1e-15)


def test_dilation_small_alpha_limit():
    g = three_cycle()
    T = dilation_potential(g, 1e-12)
    assert np.max(np.abs(T.matrix - 1.0)) < 1e-9


def test_dilation_rejects_nonpositive_alpha():
    g = three_cycle()
    for bad in (0.0, -0.5):
        with pytest.raises(ValueError):
            dilation_potential(g, bad)


def test_sign_potential():
    g = DirectedGraph.from_edge_list([(0, 1, 1.0, 1), (1, 2, 1.0, -1)])
    T = sign_potential(g)
    assert T.matrix[0, 1] == 1.0
    assert T.matrix[1, 2] == -1.0 and T.matrix[2, 1] == -1.0


def test_sign_potential_all_positive_is_identity():
    g = DirectedGraph.from_edge_list([(0, 1, 1.0, 1), (1, 2, 1.0, 1)])
    assert np.allclose(sign_potential(g).matrix, 1.0, atol=0)


def test_sign_potential_requires_signs():
    with pytest.raises(ValueError, match="signs"):
        sign_potential(three_cycle())


def test_balanced_triangle_sign_product():
    # two negative edges: product of potentials around the triangle is +1
    g = DirectedGraph.from_edge_list([(0, 1, 1.0, -1), (1, 2, 1.0, -1),
                                      (2, 0, 1.0, 1)])
    Tm = sign_potential(g).matrix
    assert Tm[0, 1] * Tm[1, 2] * Tm[2, 0] == 1.0


def test_promotion_identity_when_unit_modulus():
    g = three_cycle()
    T = magnetic_potential(g, 0.3)
    for u, v in ((0, 1), (1, 2), (2, 0)):
        assert promotion(T, u, v, v, u) == pytest.approx(1.0, abs=1e-14)


def test_generalized_degree_constant_signal():
    rng = np.random.default_rng(5)
    g = random_digraph(rng, n_max=8)
    T = identity_potential(g)
    H = (symmetrize(g).weight_matrix() > 0).astype(float) + np.eye(g.n)
    f = np.ones(g.n)
    for u in range(g.n):
        assert abs(generalized_degree(g, T, H, f, u)) < 1e-14


def test_generalized_degree_path_interior():
    g = DirectedGraph.from_edge_list([(0, 1, 1.0), (1, 2, 1.0)])
    T = identity_potential(g)
    H = (symmetrize(g).weight_matrix() > 0).astype(float) + np.eye(3)
    f = np.array([0.0, 1.0, 2.0])
    # interior vertex: w(1,0)(f0 - f1) + w(1,2)(f2 - f1) = .5(-1) + .5(1) = 0
    assert abs(generalized_degree(g, T, H, f, 1)) < 1e-14


def test_generalized_degree_cycle_winding():
    # the phase-consistent winding zeroes the aggregation at every vertex;
    # the constant signal does not
    g = three_cycle()
    T = magnetic_potential(g, 1.0 / 3.0)
    H = (symmetrize(g).weight_matrix() > 0).astype(float) + np.eye(3)
    f_consistent = np.exp(1j * 2 * np.pi * (1.0 / 3.0) * np.arange(3))
    worst = max(abs(generalized_degree(g, T, H, f_consistent, u))
                for u in range(3))
    assert worst < 1e-12
    f_flat = np.ones(3)
    assert max(abs(generalized_degree(g, T, H, f_flat, u))
               for u in range(3)) > 0.1


def test_generalized_degree_dimension_mismatch():
    g = three_cycle()
    T = identity_potential(g)
    with pytest.raises(ValueError):
        generalized_degree(g, T, np.eye(2), np.ones(3), 0)
    with pytest.raises(ValueError):
        generalized_degree(g, T, np.eye(3), np.ones(2), 0)


def test_zero_charge_reduces_to_combinatorial():
    rng = np.random.default_rng(2)
    for _ in range(20):
        g = random_digraph(rng, n_max=15, weighted=True)
        L0 = magnetic_laplacian(g, 0.0).matrix
        Lc = combinatorial_laplacian(symmetrize(g))
        assert np.max(np.abs(L0 - Lc)) <= 1e-14


def test_magnetic_hermitian_and_psd():
    rng = np.random.default_rng(4)
    for _ in range(200):
        g = random_digraph(rng, n_max=30)
        q = float(rng.uniform(0.0, 1.0 - 1e-9))
        L = magnetic_laplacian(g, q).matrix
        assert np.max(np.abs(L - L.conj().T)) <= 1e-12
        vals = np.linalg.eigvalsh(L)
        assert vals.min() >= -1e-10


def test_three_cycle_eigenvalues_closed_form():
    # independent oracle: 1 - cos(2 pi (k/3 - q)) for k = 0, 1, 2
    q = 0.37
    g = three_cycle()
    spec = eigendecompose(magnetic_laplacian(g, q))
    expect = np.sort([1 - np.cos(2 * np.pi * (k / 3.0 - q)) for k in range(3)])
    assert np.allclose(spec.eigenvalues, expect, atol=1e-10)


def test_magnetic_reverse_conjugates():
    rng = np.random.default_rng(6)
    for _ in range(10):
        g = random_digraph(rng, n_max=12, weighted=True)
        T = magnetic_potential(g, 0.21).matrix
        Tr = magnetic_potential(g.reverse(), 0.21).matrix
        assert np.max(np.abs(Tr - np.conj(T))) < 1e-14


def test_identity_kind_equals_combinatorial():
    g = random_digraph(np.random.default_rng(8), n_max=10, weighted=True)
    L = deformed_laplacian(g, identity_potential(g)).matrix
    assert np.array_equal(L, combinatorial_laplacian(symmetrize(g)))


def test_balanced_sign_laplacian_gauge_equivalent():
    rng = np.random.default_rng(9)
    for _ in range(10):
        g = random_digraph(rng, n_max=10)
        sigma = rng.choice([-1, 1], size=g.n)
        signs = {(u, v): int(sigma[u] * sigma[v]) for (u, v) in g.edges}
        gs = DirectedGraph(n=g.n, edges=g.edges, signs=signs)
        Ls = deformed_laplacian(gs, sign_potential(gs)).matrix
        Lc = combinatorial_laplacian(symmetrize(g))
        ev_s = np.linalg.eigvalsh(Ls)
        ev_c = np.linalg.eigvalsh(Lc)
        assert np.max(np.abs(ev_s - ev_c)) < 1e-10


def test_combinatorial_laplacian_values():
    g1 = DirectedGraph.from_edge_list([(0, 1, 2.0), (1, 0, 2.0)])
    L1 = combinatorial_laplacian(symmetrize(g1))
    assert np.array_equal(L1, [[2.0, -2.0], [-2.0, 2.0]])
    path = DirectedGraph.from_edge_list([(0, 1, 1.0), (1, 0, 1.0),
                                         (1, 2, 1.0), (2, 1, 1.0)])
    Lp = combinatorial_laplacian(symmetrize(path))
    assert np.array_equal(Lp, [[1, -1, 0], [-1, 2, -1], [0, -1, 1]])


def test_laplacian_annihilates_constants():
    rng = np.random.default_rng(10)
    for _ in range(10):
        g = random_digraph(rng, n_max=12, weighted=True)
        L = combinatorial_laplacian(symmetrize(g))
        assert np.max(np.abs(L @ np.ones(g.n))) < 1e-12


def test_normalized_laplacian_isolated_vertex():
    g = DirectedGraph.from_edge_list([(0, 1, 1.0)], n=3)
    L = magnetic_laplacian(g, 0.2, normalized=True).matrix
    assert L[2, 2] == 0.0
    assert np.all(L[2, :2] == 0) and np.all(L[:2, 2] == 0)
    assert L[0, 0] == 1.0 and L[1, 1] == 1.0
