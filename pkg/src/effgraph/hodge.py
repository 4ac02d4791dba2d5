"""Hodge-Helmholtz decomposition of edge flows and potential-based rankings.

The flow W - W^T of a directed graph splits into a gradient part (the
differential of a vertex potential), a curl part supported on triangle
circulations, and a harmonic remainder. The three parts are mutually
orthogonal under the edge inner product sum_{u<v} X(u,v) Y(u,v), the curl
and harmonic parts are divergence-free, and the gradient and harmonic
parts circulate to zero around every triangle.

Three rankings derive from the same potential solve: HodgeRank (minus the
flow potential of the comparison multigraph), SpringRank (the physical
spring system), and trophic levels (the reverse-flux solve). The first
two coincide and the third is their negation.
"""

from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.linalg import lsqr

from ._linalg import pinv_psd
from .graphs import DirectedGraph, symmetrize

CURL_TOL = 1e-12


@dataclass
class HodgeComponents:
    gradient: np.ndarray
    curl: np.ndarray
    harmonic: np.ndarray
    potential: np.ndarray

    @property
    def total(self):
        return self.gradient + self.curl + self.harmonic


@dataclass
class RankVector:
    score: np.ndarray
    method: str


def divergence(F: np.ndarray) -> np.ndarray:
    """Net outflow per vertex: div(u) = sum_v F(u, v)."""
    return np.asarray(F).sum(axis=1)


def support_edges(g: DirectedGraph):
    """Sorted unordered pairs carrying symmetrized weight."""
    return sorted(symmetrize(g).edges.keys())


def triangles(edges, n):
    """Sorted 3-cliques (a < b < c) of an undirected edge set."""
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    tris = []
    for u, v in edges:
        common = adj[u] & adj[v]
        for w in common:
            if w > v:
                tris.append((u, v, w))
    return sorted(tris)


def _curl_operator(tris, edge_index):
    """Sparse triangle-circulation operator, rows indexed by triangles."""
    rows, cols, vals = [], [], []
    for t, (a, b, c) in enumerate(tris):
        for (u, v, s) in ((a, b, 1.0), (b, c, 1.0), (a, c, -1.0)):
            rows.append(t)
            cols.append(edge_index[(u, v)])
            vals.append(s)
    return coo_matrix((vals, (rows, cols)),
                      shape=(len(tris), len(edge_index))).tocsr()


def hodge_decompose(g: DirectedGraph) -> HodgeComponents:
    """Split the flow W - W^T into gradient, curl and harmonic parts.

    The potential solves the least-squares problem L0 phi = -div F with L0
    the unweighted Laplacian of the symmetrized support (pseudoinverse, so
    disconnected graphs resolve per component). The curl part is the
    least-squares projection of the residual onto triangle circulations;
    whatever remains is harmonic.
    """
    n = g.n
    F = g.weight_matrix()
    F = F - F.T
    edges = support_edges(g)
    m = len(edges)
    grad = np.zeros((n, n))
    curl = np.zeros((n, n))
    if m == 0:
        return HodgeComponents(gradient=grad, curl=curl, harmonic=np.zeros((n, n)),
                               potential=np.zeros(n))
    L0 = np.zeros((n, n))
    for u, v in edges:
        L0[u, u] += 1.0
        L0[v, v] += 1.0
        L0[u, v] -= 1.0
        L0[v, u] -= 1.0
    phi = pinv_psd(L0) @ (-divergence(F))
    for u, v in edges:
        grad[u, v] = phi[v] - phi[u]
        grad[v, u] = -grad[u, v]
    residual = F - grad
    edge_index = {e: i for i, e in enumerate(edges)}
    tris = triangles(edges, n)
    if tris:
        d1 = _curl_operator(tris, edge_index)
        r_vec = np.array([residual[u, v] for u, v in edges])
        z = lsqr(d1.T, r_vec, atol=1e-14, btol=1e-14, conlim=1e12,
                 iter_lim=10 * (len(tris) + m) + 100)[0]
        curl_vec = d1.T @ z
        for (u, v), val in zip(edges, curl_vec):
            curl[u, v] = val
            curl[v, u] = -val
    harmonic = F - grad - curl
    return HodgeComponents(gradient=grad, curl=curl, harmonic=harmonic,
                           potential=phi)


def _ranking_system(g: DirectedGraph, weighted: bool):
    """Comparison-multigraph Laplacian and flux divergence."""
    W = g.weight_matrix()
    if not weighted:
        W = (W > 0).astype(float)
    sym = W + W.T
    L = np.diag(sym.sum(axis=1)) - sym
    div = divergence(W - W.T)
    return L, div


def hodge_rank(g: DirectedGraph, weighted: bool = False) -> RankVector:
    """Potential ranking of the flow: sources of a DAG rank highest.

    Solves the comparison-multigraph potential problem (each directed edge
    counts as one comparison) and returns minus the flow potential, so an
    edge u -> v pulls score(u) above score(v). Mean-zero per component.
    """
    L, div = _ranking_system(g, weighted)
    phi = pinv_psd(L) @ (-div)
    return RankVector(score=-phi, method="hodge")


def spring_rank(g: DirectedGraph, weighted: bool = False) -> RankVector:
    """Least-squares solution of the spring system with unit rest lengths."""
    W = g.weight_matrix()
    if not weighted:
        W = (W > 0).astype(float)
    d_out = W.sum(axis=1)
    d_in = W.sum(axis=0)
    M = np.diag(d_in + d_out) - (W + W.T)
    rhs = d_out - d_in
    s = pinv_psd(M) @ rhs
    return RankVector(score=s, method="spring")


def trophic_levels(g: DirectedGraph, weighted: bool = False) -> RankVector:
    """Reverse-flux potential solve; the negation of spring_rank."""
    W = g.weight_matrix()
    if not weighted:
        W = (W > 0).astype(float)
    d_out = W.sum(axis=1)
    d_in = W.sum(axis=0)
    M = np.diag(d_in + d_out) - (W + W.T)
    rhs = d_in - d_out
    h = pinv_psd(M) @ rhs
    return RankVector(score=h, method="trophic")


def spring_energy(g: DirectedGraph, s) -> float:
    """(1/2) sum over directed edges of w(u,v) (s(u) - s(v) - 1)^2."""
    score = s.score if isinstance(s, RankVector) else np.asarray(s, dtype=float)
    total = 0.0
    for (u, v), w in g.edges.items():
        diff = score[u] - score[v] - 1.0
        total += w * diff * diff
    return 0.5 * total


def component_subgraphs(g: DirectedGraph, components: HodgeComponents = None):
    """Directed graphs carrying each Hodge component.

    An unordered support pair with component value x becomes the directed
    edge u -> v of weight x when x > 0, or v -> u of weight |x| when x < 0.
    Returns {"gradient": ..., "curl": ..., "harmonic": ...}.
    """
    if components is None:
        components = hodge_decompose(g)
    edges = support_edges(g)
    out = {}
    for name in ("gradient", "curl", "harmonic"):
        comp = getattr(components, name)
        scale = float(np.max(np.abs(comp))) if comp.size else 0.0
        tol = CURL_TOL * max(scale, 1.0)
        sub = {}
        for u, v in edges:
            val = comp[u, v]
            if val > tol:
                sub[(u, v)] = float(val)
            elif val < -tol:
                sub[(v, u)] = float(-val)
        out[name] = DirectedGraph(n=g.n, edges=dict(sorted(sub.items())),
                                  labels=g.labels)
    return out
