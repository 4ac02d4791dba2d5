"""Undirected-graph measures used on effective graphs."""

import heapq
from collections import deque

import numpy as np

from .graphs import DirectedGraph, UndirectedGraph


def betweenness(g: UndirectedGraph, weighted: bool = False) -> np.ndarray:
    """Exact shortest-path betweenness over unordered vertex pairs.

    B(v) = sum over pairs {i, j} (i != v != j) of the fraction of shortest
    i-j paths through v. In weighted mode the edge length is 1/w, so a
    larger weight means a closer connection. Brandes accumulation, no
    sampling; disconnected pairs contribute nothing.
    """
    n = g.n
    adj = g.neighbors()
    cb = np.zeros(n)
    for source in range(n):
        if weighted:
            order, sigma, preds = _dijkstra_counts(adj, source, n)
        else:
            order, sigma, preds = _bfs_counts(adj, source, n)
        delta = np.zeros(n)
        while order:
            w = order.pop()
            for v in preds[w]:
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
            if w != source:
                cb[w] += delta[w]
    return cb / 2.0


def _bfs_counts(adj, source, n):
    dist = [-1] * n
    sigma = [0.0] * n
    preds = [[] for _ in range(n)]
    dist[source] = 0
    sigma[source] = 1.0
    order = []
    queue = deque([source])
    while queue:
        v = queue.popleft()
        order.append(v)
        for w, _ in adj[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
            if dist[w] == dist[v] + 1:
                sigma[w] += sigma[v]
                preds[w].append(v)
    return order, sigma, preds


def _dijkstra_counts(adj, source, n):
    dist = [np.inf] * n
    sigma = [0.0] * n
    preds = [[] for _ in range(n)]
    seen = [False] * n
    dist[source] = 0.0
    sigma[source] = 1.0
    order = []
    heap = [(0.0, source)]
    while heap:
        d, v = heapq.heappop(heap)
        if seen[v]:
            continue
        seen[v] = True
        order.append(v)
        for w, wt in adj[v]:
            if wt <= 0:
                continue
            nd = d + 1.0 / wt
            tol = 1e-14 * max(1.0, nd)
            if nd < dist[w] - tol:
                dist[w] = nd
                sigma[w] = sigma[v]
                preds[w] = [v]
                heapq.heappush(heap, (nd, w))
            elif abs(nd - dist[w]) <= tol:
                sigma[w] += sigma[v]
                preds[w].append(v)
    return order, sigma, preds


def ccdf(g: UndirectedGraph):
    """Complementary cumulative degree distribution.

    Returns (degree, fraction of vertices with degree >= that value) for
    each occupied degree, nonincreasing and starting at 1.0. An edgeless
    graph yields the single point (0, 1.0).
    """
    if g.n == 0:
        return [(0, 1.0)]
    deg = g.degrees()
    values = np.sort(np.unique(deg))
    total = float(g.n)
    return [(int(k), float(np.sum(deg >= k)) / total) for k in values]


def knn_degree_correlation(g: UndirectedGraph):
    """Mean neighbor degree per degree class.

    For every occupied degree k, the average over degree-k vertices of the
    mean degree of their neighbors. Vertices of degree zero are skipped.
    """
    deg = g.degrees()
    adj = g.neighbors()
    sums = {}
    counts = {}
    for u in range(g.n):
        k = int(deg[u])
        if k == 0:
            continue
        mean_nb = float(np.mean([deg[v] for v, _ in adj[u]]))
        sums[k] = sums.get(k, 0.0) + mean_nb
        counts[k] = counts.get(k, 0) + 1
    return [(k, sums[k] / counts[k]) for k in sorted(sums)]


def block_density(g: DirectedGraph, partition) -> np.ndarray:
    """Directed edge density between blocks.

    partition maps each vertex to a block id 0..B-1; entry (a, b) is the
    number of realized directed edges from block a to block b divided by
    the number of possible ordered pairs (|a| * |b| off the diagonal,
    |a| * (|a| - 1) on it). Empty denominators give density 0.
    """
    blocks = np.array([partition[u] for u in range(g.n)], dtype=int)
    n_blocks = int(blocks.max()) + 1 if g.n else 0
    sizes = np.bincount(blocks, minlength=n_blocks).astype(float)
    counts = np.zeros((n_blocks, n_blocks))
    for (u, v) in g.edges:
        counts[blocks[u], blocks[v]] += 1.0
    possible = np.outer(sizes, sizes)
    np.fill_diagonal(possible, sizes * (sizes - 1.0))
    with np.errstate(divide="ignore", invalid="ignore"):
        dens = np.where(possible > 0, counts / np.where(possible > 0, possible, 1.0), 0.0)
    return dens
