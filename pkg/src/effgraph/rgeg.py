"""Renormalization flow on effective graphs.

One step: solve the frustration problem, damp the symmetrized weights into
an effective undirected graph, sparsify it with the disparity filter (a
maximum-weight spanning forest is always retained so connectivity never
degrades), read vertex correlations off the pseudoinverse of the effective
combinatorial Laplacian, greedily contract the most correlated pairs into
super-vertices, and rebuild a directed graph: a coarse edge exists
wherever at least one fine directed edge crossed between the groups.
"""

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from ._linalg import pinv_psd
from .deform import combinatorial_laplacian, magnetic_potential
from .effective import effective_weight, solve_frustration
from .graphs import DirectedGraph, UndirectedGraph, undirected_components


@dataclass
class RgParams:
    q: float = 0.0
    g: float = 0.0
    beta: float = 1.0
    alpha_disparity: float = 0.25
    steps: int = 1
    accumulate_weights: bool = False
    scale_phase_by_q: bool = False

    def __post_init__(self):
        if not 0.0 <= self.q < 1.0:
            raise ValueError("q must lie in [0, 1)")
        if self.g < 0:
            raise ValueError("g must be nonnegative")
        if self.beta < 0:
            raise ValueError("beta must be nonnegative")
        if not 0.0 < self.alpha_disparity <= 1.0:
            raise ValueError("alpha_disparity must lie in (0, 1]")


@dataclass
class RgFlowState:
    """Record of a renormalization flow.

    graphs[k] is the directed graph at level k; effectives[k] and
    partitions[k] describe the step from level k to level k+1. purities[k]
    is the label purity of the level-k super-vertices with respect to the
    level-0 labels, when labels exist.
    """

    graphs: list = field(default_factory=list)
    effectives: list = field(default_factory=list)
    partitions: list = field(default_factory=list)
    purities: list = None

    @property
    def levels(self):
        out = []
        for k, g in enumerate(self.graphs):
            eff = self.effectives[k] if k < len(self.effectives) else None
            part = self.partitions[k] if k < len(self.partitions) else None
            out.append((g, eff, part))
        return out

    def compose_partition(self, level: int) -> dict:
        """Map from level-0 vertices to their level-k super-vertex."""
        if not 0 <= level < len(self.graphs):
            raise ValueError(f"level {level} out of range")
        mapping = {u: u for u in range(self.graphs[0].n)}
        for k in range(level):
            step = self.partitions[k]
            mapping = {u: step[c] for u, c in mapping.items()}
        return mapping


def disparity_filter(g: UndirectedGraph, alpha_threshold: float) -> UndirectedGraph:
    """Keep locally significant edges plus a maximum-weight spanning forest.

    For a vertex u of degree k > 1 the edge share p = w / strength(u) has
    significance a = (1 - p)^(k - 1); an edge survives when the smaller of
    its two significances is below alpha_threshold. Edges at degree-1
    vertices always survive, and the spanning forest guard preserves the
    component structure of the input.
    """
    if not 0.0 < alpha_threshold <= 1.0:
        raise ValueError("alpha_threshold must lie in (0, 1]")
    strength = g.strengths()
    degree = g.degrees()
    keep = set(_max_weight_forest(g))
    for (u, v), w in g.edges.items():
        if degree[u] == 1 or degree[v] == 1:
            keep.add((u, v))
            continue
        a_u = (1.0 - w / strength[u]) ** (degree[u] - 1)
        a_v = (1.0 - w / strength[v]) ** (degree[v] - 1)
        if min(a_u, a_v) < alpha_threshold:
            keep.add((u, v))
    edges = {e: g.edges[e] for e in sorted(keep)}
    return UndirectedGraph(n=g.n, edges=edges, labels=g.labels)


def _max_weight_forest(g: UndirectedGraph):
    """Kruskal maximum-weight spanning forest; deterministic tie-break."""
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    forest = []
    for (u, v), w in sorted(g.edges.items(), key=lambda kv: (-kv[1], kv[0])):
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            forest.append((u, v))
    return forest


def laplacian_pseudoinverse(g: UndirectedGraph) -> np.ndarray:
    """Moore-Penrose pseudoinverse of the combinatorial Laplacian."""
    return pinv_psd(combinatorial_laplacian(g))


def correlation_pairing(Lp: np.ndarray, graph: UndirectedGraph = None):
    """Greedy matching of the most correlated vertex pairs.

    Off-diagonal pseudoinverse entries are sorted descending (ties by
    lexicographic vertex order) and pairs are accepted greedily while both
    endpoints are free. When a graph is supplied, candidate pairs are
    restricted to its connected components, so vertices in different
    components are never merged. Leftover vertices become singletons.
    Returns groups sorted by their smallest member.
    """
    n = Lp.shape[0]
    if graph is None:
        pools = [list(range(n))]
    else:
        pools = undirected_components(graph)
    matched = [False] * n
    groups = []
    for pool in pools:
        if len(pool) == 1:
            groups.append((pool[0],))
            continue
        candidates = [(u, v) for i, u in enumerate(pool) for v in pool[i + 1:]]
        candidates.sort(key=lambda uv: (-Lp[uv[0], uv[1]], uv[0], uv[1]))
        quota = len(pool) // 2
        taken = 0
        for u, v in candidates:
            if taken >= quota:
                break
            if not matched[u] and not matched[v]:
                matched[u] = matched[v] = True
                groups.append((u, v))
                taken += 1
        for u in pool:
            if not matched[u]:
                groups.append((u,))
    return sorted(groups, key=min)


def contract(g: DirectedGraph, groups, accumulate_weights: bool = False):
    """Merge vertex groups into super-vertices.

    A directed coarse edge X -> Y is created iff at least one fine edge
    u -> v runs from X into Y; its weight is 1, or the sum of the fine
    weights when accumulate_weights is set. Internal edges vanish. Coarse
    labels are the majority fine label (lexicographic tie-break). Returns
    (coarse graph, mapping fine -> coarse).
    """
    groups = sorted((tuple(sorted(grp)) for grp in groups), key=min)
    mapping = {}
    for c, grp in enumerate(groups):
        for u in grp:
            if u in mapping:
                raise ValueError(f"vertex {u} appears in two groups")
            mapping[u] = c
    if len(mapping) != g.n:
        raise ValueError("groups must cover every vertex exactly once")
    edges = {}
    for (u, v), w in g.edges.items():
        cu, cv = mapping[u], mapping[v]
        if cu == cv:
            continue
        key = (cu, cv)
        if accumulate_weights:
            edges[key] = edges.get(key, 0.0) + w
        else:
            edges[key] = 1.0
    labels = None
    if g.labels is not None:
        labels = []
        for grp in groups:
            counts = Counter(g.labels[u] for u in grp)
            top = max(counts.values())
            labels.append(sorted(lab for lab, c in counts.items() if c == top)[0])
    coarse = DirectedGraph(n=len(groups), edges=dict(sorted(edges.items())),
                           labels=labels)
    return coarse, mapping


def rgeg_step(g: DirectedGraph, params: RgParams):
    """One renormalization step; returns (coarse graph, effective, partition)."""
    f = solve_frustration(g, params.q, params.g,
                          scale_phase_by_q=params.scale_phase_by_q)
    T = magnetic_potential(g, params.q)
    eff = effective_weight(g, T, f, beta=params.beta,
                           provenance=(params.q, params.g, "spectral"))
    filtered = disparity_filter(eff.graph, params.alpha_disparity)
    Lp = laplacian_pseudoinverse(filtered)
    groups = correlation_pairing(Lp, graph=filtered)
    coarse, mapping = contract(g, groups,
                               accumulate_weights=params.accumulate_weights)
    return coarse, eff, mapping


def rgeg_flow(g: DirectedGraph, params: RgParams) -> RgFlowState:
    """Iterate rgeg_step params.steps times (or until 2 vertices remain)."""
    state = RgFlowState(graphs=[g], effectives=[], partitions=[])
    current = g
    for _ in range(params.steps):
        if current.n <= 2:
            break
        coarse, eff, mapping = rgeg_step(current, params)
        state.effectives.append(eff)
        state.partitions.append(mapping)
        state.graphs.append(coarse)
        current = coarse
    if g.labels is not None:
        state.purities = [level_purity(state, k) for k in range(len(state.graphs))]
    return state


def level_purity(state: RgFlowState, level: int) -> float:
    """Fraction of level-0 vertices whose super-vertex majority label matches."""
    g0 = state.graphs[0]
    if g0.labels is None:
        raise ValueError("purity requires level-0 vertex labels")
    composed = state.compose_partition(level)
    members = {}
    for u, c in composed.items():
        members.setdefault(c, []).append(u)
    majority_total = 0
    for c, us in members.items():
        counts = Counter(g0.labels[u] for u in us)
        majority_total += max(counts.values())
    return majority_total / g0.n
