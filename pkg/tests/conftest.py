"""Shared corpus generators for the test suite."""

import numpy as np

from effgraph import DirectedGraph


def random_digraph(rng, n_min=2, n_max=30, p=None, weighted=False,
                   ensure_edge=True):
    """Erdos-Renyi style directed graph, unit weights unless weighted."""
    n = int(rng.integers(n_min, n_max + 1))
    if p is None:
        p = float(rng.uniform(0.1, 0.5))
    rows = []
    for u in range(n):
        for v in range(n):
            if u != v and rng.random() < p:
                w = float(rng.uniform(0.5, 2.0)) if weighted else 1.0
                rows.append((u, v, w))
    if ensure_edge and not rows:
        rows = [(0, 1, 1.0)]
    return DirectedGraph.from_edge_list(rows, n=n)


def random_dag(rng, n_min=5, n_max=20, p_lo=0.25, p_hi=0.5):
    """Random DAG with edges along the vertex order."""
    n = int(rng.integers(n_min, n_max + 1))
    p = float(rng.uniform(p_lo, p_hi))
    rows = [(u, v, 1.0) for u in range(n) for v in range(u + 1, n)
            if rng.random() < p]
    if not rows:
        rows = [(0, 1, 1.0)]
    return DirectedGraph.from_edge_list(rows, n=n)


def random_unit_signal(rng, n):
    """Random unit-modulus complex vertex signal."""
    return np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, n))
