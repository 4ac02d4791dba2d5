"""Edge group potentials and deformed Laplacian operators.

A group potential assigns to every ordered pair a scalar T(u, v) with
T(u, v) * T(v, u) = 1. Magnetic potentials are unit-modulus phases driven
by the charge q, dilation potentials are positive reals driven by alpha,
sign potentials are +/-1 per edge. Deformed Laplacians combine the
symmetrized weights with the potential: L = D_s - W_s * T (elementwise
product), which is Hermitian and positive semidefinite whenever |T| = 1.
"""

from dataclasses import dataclass

import numpy as np

from .graphs import DirectedGraph, UndirectedGraph, symmetrize, flux

UNIT_MODULUS_KINDS = ("magnetic", "sign", "identity")


@dataclass
class GroupPotential:
    """Per-edge group elements as a dense matrix, identity off edges."""

    kind: str              # magnetic | dilation | sign | identity
    matrix: np.ndarray     # T[u, v], complex for magnetic, real otherwise
    param: float = None    # q for magnetic, alpha for dilation

    @property
    def unit_modulus(self):
        return self.kind in UNIT_MODULUS_KINDS


@dataclass
class DeformedLaplacian:
    matrix: np.ndarray
    kind: str
    normalized: bool

    @property
    def hermitian(self):
        return self.kind in UNIT_MODULUS_KINDS


def magnetic_potential(g: DirectedGraph, q: float) -> GroupPotential:
    """U(1) potential T = exp(i 2 pi q A^T), elementwise, A the flux matrix.

    q is the charge; q = 0 gives the identity potential, and edges whose
    flux cancels (bidirectional equal weights) carry T = 1 for any q.
    """
    if not 0.0 <= q < 1.0:
        raise ValueError(f"charge q must lie in [0, 1), got {q}")
    A = flux(g)
    T = np.exp(1j * 2.0 * np.pi * q * A.T)
    return GroupPotential(kind="magnetic", matrix=T, param=q)


def dilation_potential(g: DirectedGraph, alpha: float) -> GroupPotential:
    """Positive-real potential T = exp(alpha A^T), elementwise."""
    if alpha <= 0:
        raise ValueError(f"dilation parameter must be positive, got {alpha}")
    A = flux(g)
    T = np.exp(alpha * A.T)
    return GroupPotential(kind="dilation", matrix=T, param=alpha)


def sign_potential(g: DirectedGraph) -> GroupPotential:
    """Potential equal to the per-edge sign; self-inverse.

    Bidirectional pairs must carry the same sign in both directions.
    """
    if g.signs is None:
        raise ValueError("sign potential requires a graph with edge signs")
    pair_sign = {}
    for (u, v), s in g.signs.items():
        key = (u, v) if u < v else (v, u)
        if pair_sign.setdefault(key, s) != s:
            raise ValueError(f"inconsistent signs on pair {key}")
    T = np.ones((g.n, g.n))
    for (u, v), s in pair_sign.items():
        T[u, v] = s
        T[v, u] = s
    return GroupPotential(kind="sign", matrix=T)


def identity_potential(g: DirectedGraph) -> GroupPotential:
    return GroupPotential(kind="identity", matrix=np.ones((g.n, g.n)))


def promotion(T: GroupPotential, u, v, t, z):
    """Four-index combination conj(T(v, u)) * T(t, z)."""
    M = T.matrix
    return np.conj(M[v, u]) * M[t, z]


def generalized_degree(g: DirectedGraph, T: GroupPotential, H: np.ndarray,
                       f: np.ndarray, u: int):
    """Promotion-weighted aggregation of a vertex signal around u.

    Returns sum over symmetrized neighbors v of
    w_s(u,v) * (P(v,u;u,v) H[u,v] f[v] - P(u,v;u,v) H[u,u] f[u]).
    With T = 1 and H = A + I this is the plain neighborhood difference
    sum, zero for constant signals.
    """
    H = np.asarray(H)
    f = np.asarray(f)
    if H.shape != (g.n, g.n):
        raise ValueError(f"H must be {g.n}x{g.n}, got {H.shape}")
    if f.shape[0] != g.n:
        raise ValueError(f"signal has {f.shape[0]} entries for {g.n} vertices")
    Ws = symmetrize(g).weight_matrix()
    total = 0.0 + 0.0j
    for v in range(g.n):
        w = Ws[u, v]
        if w == 0.0 or v == u:
            continue
        p_nb = promotion(T, v, u, u, v)
        p_self = promotion(T, u, v, u, v)
        total += w * (p_nb * H[u, v] * f[v] - p_self * H[u, u] * f[u])
    return total


def combinatorial_laplacian(g: UndirectedGraph) -> np.ndarray:
    """L = D - W for an undirected graph; symmetric PSD, zero row sums."""
    W = g.weight_matrix()
    return np.diag(W.sum(axis=1)) - W


def deformed_laplacian(g: DirectedGraph, T: GroupPotential,
                       normalized: bool = False) -> DeformedLaplacian:
    """Deformed Laplacian over the symmetrized weights.

    Unnormalized: L[u,v] = -w_s(u,v) T(u,v) off the diagonal and
    L[u,u] = d_s(u). Normalized: I - D^{-1/2} (W_s * T) D^{-1/2} on
    vertices of positive degree; isolated vertices get diagonal 0.
    """
    Ws = symmetrize(g).weight_matrix()
    H = Ws * T.matrix
    d = Ws.sum(axis=1)
    idx = np.arange(g.n)
    if normalized:
        inv_sqrt = np.where(d > 0, 1.0 / np.sqrt(np.where(d > 0, d, 1.0)), 0.0)
        L = -(inv_sqrt[:, None] * H * inv_sqrt[None, :])
        L[idx, idx] = np.where(d > 0, 1.0, 0.0)
    else:
        L = -H
        L[idx, idx] = d
    return DeformedLaplacian(matrix=L, kind=T.kind, normalized=normalized)


def magnetic_laplacian(g: DirectedGraph, q: float,
                       normalized: bool = False) -> DeformedLaplacian:
    return deformed_laplacian(g, magnetic_potential(g, q), normalized=normalized)


def dilation_laplacian(g: DirectedGraph, alpha: float,
                       normalized: bool = False) -> DeformedLaplacian:
    return deformed_laplacian(g, dilation_potential(g, alpha), normalized=normalized)
