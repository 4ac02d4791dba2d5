"""Edge discrepancy, frustration, and the effective-weight map.

A vertex signal f is transported across the symmetrized edges by a group
potential; the discrepancy xi measures the transport mismatch and the
frustration eta aggregates it. Damping every symmetrized weight by
exp(-beta xi^2) yields an effective undirected graph that retains
directional information the plain symmetrization discards.

For a unit-modulus potential the frustration of a unit-modulus signal
equals the Rayleigh quotient of the deformed Laplacian divided by the
graph volume, and the discrepancy is symmetric in its arguments, so the
effective graph is exactly undirected.
"""

from dataclasses import dataclass

import numpy as np

from .deform import (GroupPotential, magnetic_potential, magnetic_laplacian,
                     dilation_laplacian)
from .graphs import (DirectedGraph, UndirectedGraph, induced_subgraph,
                     symmetrize, undirected_components)
from .spectral import eigendecompose, first_eigenvector


@dataclass
class VertexSignal:
    """Complex signal on the vertices; unit_modulus marks |f| = 1 everywhere."""

    values: np.ndarray
    unit_modulus: bool = None


@dataclass
class EffectiveGraph:
    """Frustration-damped undirected graph.

    graph holds the effective weights w_e, source the symmetrized weights
    they were derived from. provenance records (q, g, strategy) when the
    signal came from the spectral strategy solver.
    """

    graph: UndirectedGraph
    source: UndirectedGraph
    beta: float
    provenance: tuple = None


def _normalize_unit(values):
    values = np.asarray(values, dtype=complex)
    mags = np.abs(values)
    out = values.copy()
    nz = mags > 0
    out[nz] = values[nz] / mags[nz]
    return out


def edge_discrepancy(g: DirectedGraph, T: GroupPotential, f, u: int, v: int) -> float:
    """Transport mismatch |f(v) - T(v, u) f(u)| on a symmetrized edge.

    T(v, u) is the group element carrying the signal from u into v; with
    this orientation the frustration below coincides with the deformed
    Laplacian quadratic form. Symmetric in (u, v) whenever |T| = 1.
    """
    values = f.values if isinstance(f, VertexSignal) else np.asarray(f, dtype=complex)
    key = (u, v) if u < v else (v, u)
    ws = symmetrize(g).edges
    if key not in ws:
        raise ValueError(f"no symmetrized edge between {u} and {v}")
    return float(np.abs(values[v] - T.matrix[v, u] * values[u]))


def _discrepancy_matrix(g, T, values):
    """xi[u, v] for all ordered pairs on the symmetrized support."""
    values = np.asarray(values, dtype=complex)
    diff = values[None, :] - T.matrix.T * values[:, None]
    return np.abs(diff)


def generalized_frustration(g: DirectedGraph, T: GroupPotential, f) -> float:
    """Volume-normalized sum of squared edge discrepancies.

    The signal is first normalized to unit modulus entrywise (zero entries
    stay zero). Returns (1/2) sum over ordered symmetrized pairs of
    w_s xi^2, divided by Vol(G) = sum of symmetrized degrees. Zero exactly
    when the signal is transport-consistent on every edge.
    """
    values = f.values if isinstance(f, VertexSignal) else np.asarray(f, dtype=complex)
    if not np.any(np.abs(values) > 0):
        raise ValueError("frustration of an identically zero signal")
    values = _normalize_unit(values)
    ug = symmetrize(g)
    vol = float(ug.strengths().sum())
    if vol == 0:
        return 0.0
    xi = _discrepancy_matrix(g, T, values)
    Ws = ug.weight_matrix()
    return float(0.5 * np.sum(Ws * xi ** 2) / vol)


def solve_frustration(g: DirectedGraph, q: float, g_param: float,
                      scale_phase_by_q: bool = False) -> VertexSignal:
    """Spectral strategy for the frustration problem.

    Phases theta come from the first eigenvector of the normalized
    magnetic Laplacian at charge q; moduli s from the first eigenvector of
    the dilation Laplacian at g_param (all ones when g_param = 0). The
    returned signal is exp(i theta) * s, which aligns the phases with the
    synchronization optimum. scale_phase_by_q=True instead returns
    exp(i q theta) * s, compressing the phases by the charge.
    """
    if g.n == 0:
        raise ValueError("cannot solve frustration on an empty graph")
    spec = eigendecompose(magnetic_laplacian(g, q, normalized=True))
    theta = np.angle(spec.eigenvectors[:, 0])
    if g_param == 0:
        s = np.ones(g.n)
    else:
        s = np.abs(first_eigenvector(dilation_laplacian(g, g_param)))
    scale = q if scale_phase_by_q else 1.0
    values = np.exp(1j * scale * theta) * s
    return VertexSignal(values=values, unit_modulus=bool(g_param == 0))


def effective_weight(g: DirectedGraph, T: GroupPotential, f,
                     beta: float = 1.0, provenance=None) -> EffectiveGraph:
    """Damp each symmetrized weight by exp(-beta xi^2).

    For unit-modulus potentials the discrepancy is orientation-independent
    and the result is exactly symmetric; otherwise the two directed damping
    factors are averaged. beta = 0 reproduces the symmetrized graph.
    """
    if beta < 0:
        raise ValueError(f"beta must be nonnegative, got {beta}")
    values = f.values if isinstance(f, VertexSignal) else np.asarray(f, dtype=complex)
    source = symmetrize(g)
    Tm = T.matrix
    edges = {}
    for (u, v), w in source.edges.items():
        xi_uv = abs(values[v] - Tm[v, u] * values[u])
        if T.unit_modulus:
            w_e = w * np.exp(-beta * xi_uv ** 2)
        else:
            xi_vu = abs(values[u] - Tm[u, v] * values[v])
            w_e = w * 0.5 * (np.exp(-beta * xi_uv ** 2) + np.exp(-beta * xi_vu ** 2))
        edges[(u, v)] = float(w_e)
    eff = UndirectedGraph(n=g.n, edges=edges, labels=g.labels)
    return EffectiveGraph(graph=eff, source=source, beta=beta, provenance=provenance)


def effective_graph(g: DirectedGraph, q: float, g_param: float = 0.0,
                    beta: float = 1.0, scale_phase_by_q: bool = False) -> EffectiveGraph:
    """Full pipeline: solve the frustration at (q, g_param), damp with beta."""
    f = solve_frustration(g, q, g_param, scale_phase_by_q=scale_phase_by_q)
    T = magnetic_potential(g, q)
    strategy = "spectral-literal" if scale_phase_by_q else "spectral"
    return effective_weight(g, T, f, beta=beta, provenance=(q, g_param, strategy))


def log_potential_frustration(eff: EffectiveGraph) -> float:
    """Recover the frustration from the effective weights.

    eta = -(1 / (beta Vol)) sum over edges of w ln(w_e / w); equals
    generalized_frustration for unit-modulus signals. Returns 0 when
    beta = 0 (the effective weights carry no damping).
    """
    if eff.beta == 0:
        return 0.0
    vol = float(eff.source.strengths().sum())
    if vol == 0:
        return 0.0
    total = 0.0
    for key, w in eff.source.edges.items():
        w_e = eff.graph.edges[key]
        if w_e <= 0:
            raise ValueError(f"non-positive effective weight on edge {key}")
        total += w * np.log(w_e / w)
    return float(-total / (eff.beta * vol))


def dilation_rank(g: DirectedGraph, alpha: float) -> np.ndarray:
    """Hierarchy score from the dilation spectrum.

    Computed per connected component of the symmetrized support: the score
    is -ln(s)/alpha with s the component moduli of the first eigenvector
    of the component's dilation Laplacian, centered to mean zero. For a
    flow that is the gradient of a potential this reproduces the potential
    ranking exactly; for small alpha it approximates it in general.
    """
    if alpha <= 0:
        raise ValueError(f"dilation parameter must be positive, got {alpha}")
    score = np.zeros(g.n)
    for comp in undirected_components(symmetrize(g)):
        if len(comp) == 1:
            continue
        sub, _ = induced_subgraph(g, comp)
        s = np.abs(first_eigenvector(dilation_laplacian(sub, alpha)))
        s = np.maximum(s, s.max() * 1e-15)
        r = -np.log(s) / alpha
        r -= r.mean()
        for local, orig in enumerate(comp):
            score[orig] = r[local]
    return score
