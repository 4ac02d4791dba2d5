"""Graph containers, generators and edge-list I/O.

Vertices are dense integers 0..n-1. Directed graphs keep at most one edge
per ordered pair, weights strictly positive, no self-loops. Everything is
dense-matrix convertible (desk scale, |V| up to a few thousand).
"""

import csv
from dataclasses import dataclass, field

import numpy as np


@dataclass
class DirectedGraph:
    """Weighted directed graph.

    edges maps ordered pairs (src, dst) to positive weights. labels is an
    optional per-vertex list of strings; signs is an optional per-edge map
    to +1/-1 covering every edge when present.
    """

    n: int
    edges: dict = field(default_factory=dict)
    labels: list = None
    signs: dict = None

    @classmethod
    def from_edge_list(cls, rows, n=None, labels=None):
        """Build a graph from (src, dst, weight) rows.

        Duplicate ordered pairs are summed. Rows may carry a fourth entry,
        a sign in {+1, -1}; conflicting signs for the same ordered pair are
        rejected. Self-loops and non-positive weights are rejected.
        """
        edges = {}
        signs = {}
        max_idx = -1
        for i, row in enumerate(rows):
            src, dst, w = int(row[0]), int(row[1]), float(row[2])
            sign = int(row[3]) if len(row) > 3 else None
            if src == dst:
                raise ValueError(f"row {i}: self-loop at vertex {src}")
            if src < 0 or dst < 0:
                raise ValueError(f"row {i}: negative vertex index")
            if w <= 0:
                raise ValueError(f"row {i}: non-positive weight {w}")
            if sign is not None and sign not in (1, -1):
                raise ValueError(f"row {i}: sign must be +1 or -1, got {sign}")
            key = (src, dst)
            edges[key] = edges.get(key, 0.0) + w
            if sign is not None:
                if key in signs and signs[key] != sign:
                    raise ValueError(f"row {i}: conflicting sign for edge {key}")
                signs[key] = sign
            max_idx = max(max_idx, src, dst)
        if n is None:
            n = max_idx + 1
        elif max_idx >= n:
            raise ValueError(f"vertex index {max_idx} out of range for n={n}")
        if signs and set(signs) != set(edges):
            raise ValueError("signs, when present, must cover every edge")
        edges = dict(sorted(edges.items()))
        return cls(n=n, edges=edges, labels=labels, signs=signs or None)

    def weight_matrix(self):
        """Dense weight matrix W with W[u, v] = weight of edge u -> v."""
        W = np.zeros((self.n, self.n))
        for (u, v), w in self.edges.items():
            W[u, v] = w
        return W

    def sign_matrix(self):
        """Dense matrix of edge signs (+1/-1 on edges, 0 elsewhere)."""
        if self.signs is None:
            raise ValueError("graph carries no edge signs")
        S = np.zeros((self.n, self.n))
        for (u, v), s in self.signs.items():
            S[u, v] = s
        return S

    def reverse(self):
        """Graph with every edge direction flipped."""
        edges = {(v, u): w for (u, v), w in self.edges.items()}
        signs = None
        if self.signs is not None:
            signs = {(v, u): s for (u, v), s in self.signs.items()}
        return DirectedGraph(n=self.n, edges=dict(sorted(edges.items())),
                             labels=self.labels, signs=signs)

    @property
    def num_edges(self):
        return len(self.edges)


@dataclass
class UndirectedGraph:
    """Weighted undirected graph; edge keys are pairs (u, v) with u < v."""

    n: int
    edges: dict = field(default_factory=dict)
    labels: list = None

    def weight_matrix(self):
        W = np.zeros((self.n, self.n))
        for (u, v), w in self.edges.items():
            W[u, v] = w
            W[v, u] = w
        return W

    def strengths(self):
        """Per-vertex sum of incident edge weights."""
        d = np.zeros(self.n)
        for (u, v), w in self.edges.items():
            d[u] += w
            d[v] += w
        return d

    def degrees(self):
        """Per-vertex number of incident edges."""
        k = np.zeros(self.n, dtype=int)
        for u, v in self.edges:
            k[u] += 1
            k[v] += 1
        return k

    def neighbors(self):
        """Adjacency lists as {vertex: [(neighbor, weight), ...]}."""
        adj = {u: [] for u in range(self.n)}
        for (u, v), w in self.edges.items():
            adj[u].append((v, w))
            adj[v].append((u, w))
        return adj

    @property
    def num_edges(self):
        return len(self.edges)


def symmetrize(g: DirectedGraph) -> UndirectedGraph:
    """Undirected graph with weight (W(u,v) + W(v,u)) / 2 per unordered pair."""
    acc = {}
    for (u, v), w in g.edges.items():
        key = (u, v) if u < v else (v, u)
        acc[key] = acc.get(key, 0.0) + w / 2.0
    return UndirectedGraph(n=g.n, edges=dict(sorted(acc.items())), labels=g.labels)


def flux(g: DirectedGraph) -> np.ndarray:
    """Skew-symmetric flux matrix A = W - W^T."""
    W = g.weight_matrix()
    return W - W.T


def block_model_sample(n_blocks: int, block_size: int, p_c: float, p_d: float,
                       seed: int) -> DirectedGraph:
    """Sample the cyclic directed block model.

    Inside each block, every unordered pair is connected by a bidirectional
    pair of unit-weight edges with probability p_c. From block b to block
    (b+1) mod n_blocks, every ordered pair receives a single directed
    unit-weight edge with probability p_d. Vertex labels record the block.
    """
    if n_blocks < 2:
        raise ValueError("n_blocks must be at least 2")
    for p in (p_c, p_d):
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"probability {p} outside [0, 1]")
    rng = np.random.default_rng(seed)
    n = n_blocks * block_size
    edges = {}
    for b in range(n_blocks):
        lo = b * block_size
        draws = rng.random((block_size, block_size))
        for i in range(block_size):
            for j in range(i + 1, block_size):
                if draws[i, j] < p_c:
                    edges[(lo + i, lo + j)] = 1.0
                    edges[(lo + j, lo + i)] = 1.0
    for b in range(n_blocks):
        lo = b * block_size
        to = ((b + 1) % n_blocks) * block_size
        draws = rng.random((block_size, block_size))
        for i in range(block_size):
            for j in range(block_size):
                if draws[i, j] < p_d:
                    edges[(lo + i, to + j)] = 1.0
    labels = [str(u // block_size) for u in range(n)]
    return DirectedGraph(n=n, edges=dict(sorted(edges.items())), labels=labels)


def save_edge_list(g: DirectedGraph, path, labels_path=None):
    """Write tab-separated rows "src<TAB>dst<TAB>weight".

    Edges with sign -1 are written with a negative weight. When labels_path
    is given and the graph has labels, a CSV with header vertex,label is
    written alongside.
    """
    with open(path, "w") as fh:
        fh.write(f"# directed edge list, {g.n} vertices\n")
        for (u, v), w in sorted(g.edges.items()):
            val = float(w)
            if g.signs is not None and g.signs[(u, v)] == -1:
                val = -val
            fh.write(f"{u}\t{v}\t{val!r}\n")
    if labels_path is not None and g.labels is not None:
        with open(labels_path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["vertex", "label"])
            for u, lab in enumerate(g.labels):
                writer.writerow([u, lab])


def load_edge_list(path, labels_path=None, n=None) -> DirectedGraph:
    """Read a tab-separated edge list.

    Rows are "src<TAB>dst<TAB>weight" with the weight optional (default 1).
    Lines starting with '#' and blank lines are ignored. A negative weight
    marks a sign -1 edge of magnitude |weight|. Non-integer vertex tokens
    are interned to dense indices in order of first appearance and kept as
    labels. Malformed rows raise with their line number.
    """
    rows = []
    tokens_seen = []
    all_int = True
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) == 1:
                parts = line.split()
            if len(parts) not in (2, 3):
                raise ValueError(f"{path}:{lineno}: expected 2 or 3 columns, "
                                 f"got {len(parts)}")
            try:
                w = float(parts[2]) if len(parts) == 3 else 1.0
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: bad weight {parts[2]!r}") from exc
            if w == 0:
                raise ValueError(f"{path}:{lineno}: zero weight")
            for tok in parts[:2]:
                try:
                    iv = int(tok)
                    if iv < 0:
                        all_int = False
                except ValueError:
                    all_int = False
            rows.append((lineno, parts[0], parts[1], w))
            tokens_seen.extend(parts[:2])
    if all_int:
        mapping = None
    else:
        mapping = {}
        for tok in tokens_seen:
            if tok not in mapping:
                mapping[tok] = len(mapping)
    out_rows = []
    for lineno, a, b, w in rows:
        u = int(a) if mapping is None else mapping[a]
        v = int(b) if mapping is None else mapping[b]
        if u == v:
            raise ValueError(f"{path}:{lineno}: self-loop at vertex {a!r}")
        sign = -1 if w < 0 else 1
        out_rows.append((u, v, abs(w), sign))
    signed = any(r[3] == -1 for r in out_rows)
    if not signed:
        out_rows = [r[:3] for r in out_rows]
    labels = None
    if labels_path is not None:
        labels = _read_labels(labels_path)
    elif mapping is not None:
        labels = [None] * len(mapping)
        for tok, idx in mapping.items():
            labels[idx] = tok
    g = DirectedGraph.from_edge_list(out_rows, n=n, labels=labels)
    if labels is not None and len(labels) < g.n:
        raise ValueError(f"{labels_path}: {len(labels)} labels for {g.n} vertices")
    return g


def _read_labels(path):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip().lower() for h in header[:2]] != ["vertex", "label"]:
            raise ValueError(f"{path}: expected header 'vertex,label'")
        pairs = {}
        for row in reader:
            if not row:
                continue
            pairs[int(row[0])] = row[1]
    if not pairs:
        return []
    labels = [""] * (max(pairs) + 1)
    for idx, lab in pairs.items():
        labels[idx] = lab
    return labels


def save_undirected_edge_list(g: UndirectedGraph, path):
    """Write an undirected graph as one row per unordered pair."""
    with open(path, "w") as fh:
        fh.write(f"# undirected edge list, {g.n} vertices\n")
        for (u, v), w in sorted(g.edges.items()):
            fh.write(f"{u}\t{v}\t{float(w)!r}\n")


def induced_subgraph(g: DirectedGraph, vertices):
    """Subgraph on the given vertices, reindexed densely.

    Returns (subgraph, mapping) where mapping[original] = new index.
    """
    vertices = sorted(vertices)
    mapping = {orig: new for new, orig in enumerate(vertices)}
    edges = {}
    signs = {}
    for (u, v), w in g.edges.items():
        if u in mapping and v in mapping:
            key = (mapping[u], mapping[v])
            edges[key] = w
            if g.signs is not None:
                signs[key] = g.signs[(u, v)]
    labels = None
    if g.labels is not None:
        labels = [g.labels[orig] for orig in vertices]
    sub = DirectedGraph(n=len(vertices), edges=dict(sorted(edges.items())),
                        labels=labels, signs=signs or None)
    return sub, mapping


def undirected_components(g: UndirectedGraph):
    """Connected components as a list of sorted vertex lists."""
    adj = g.neighbors()
    seen = [False] * g.n
    comps = []
    for start in range(g.n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        comp = []
        while stack:
            u = stack.pop()
            comp.append(u)
            for v, _ in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    stack.append(v)
        comps.append(sorted(comp))
    return comps
