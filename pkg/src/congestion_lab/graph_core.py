"""Weighted undirected multigraph on dense 0-based vertex indices.

Parallel edges are folded into weights at insertion: a bundle of c parallel
edges of per-edge weight w is stored as a single edge of weight c*w.  Degrees,
cuts, volumes and Laplacians only ever see the summed weight, so folding loses
nothing observable downstream.  Graphs are treated as immutable once built;
``add_edge`` is only meant for the construction phase.
"""

from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np


class EdgeListParseError(ValueError):
    """Malformed edge-list text; carries the offending 1-based line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class Graph:
    """Undirected graph with nonnegative edge weights and no self-loops.

    Vertices are the integers ``0..n-1``.  ``edges`` maps unordered pairs
    (stored as ``(u, v)`` with ``u < v``) to strictly positive weights.
    """

    def __init__(self, n: int, name: str | None = None):
        if n < 1:
            raise ValueError(f"graph needs at least one vertex, got n={n}")
        self.n = int(n)
        self.name = name
        self.edges: dict[tuple[int, int], float] = {}
        self._adj: list[dict[int, float]] = [dict() for _ in range(self.n)]
        self._deg = np.zeros(self.n)
        self._edge_arrays: tuple[np.ndarray, np.ndarray, np.ndarray] | None = None
        self._spectrum_cache: dict = {}

    # -- construction ------------------------------------------------------

    def add_edge(self, u: int, v: int, w: float = 1.0) -> None:
        """Add weight ``w`` to the edge ``{u, v}``, folding parallels."""
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise ValueError(f"self-loop at vertex {u} is not allowed")
        w = float(w)
        if not w > 0.0:
            raise ValueError(f"edge weight must be positive, got {w}")
        key = (u, v) if u < v else (v, u)
        self.edges[key] = self.edges.get(key, 0.0) + w
        self._adj[u][v] = self._adj[u].get(v, 0.0) + w
        self._adj[v][u] = self._adj[v].get(u, 0.0) + w
        self._deg[u] += w
        self._deg[v] += w
        self._edge_arrays = None
        self._spectrum_cache.clear()

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range for graph on {self.n} vertices")

    # -- basic queries -------------------------------------------------------

    @property
    def num_edges(self) -> int:
        """Number of distinct (folded) edges."""
        return len(self.edges)

    @property
    def total_weight(self) -> float:
        """Sum of all edge weights; volume of the full vertex set is twice this."""
        return float(self._deg.sum()) / 2.0

    def degree(self, v: int) -> float:
        self._check_vertex(v)
        return float(self._deg[v])

    @property
    def degrees(self) -> np.ndarray:
        return self._deg.copy()

    def max_degree(self) -> float:
        return float(self._deg.max())

    def min_degree(self) -> float:
        return float(self._deg.min())

    def neighbors(self, v: int) -> dict[int, float]:
        self._check_vertex(v)
        return dict(self._adj[v])

    def edge_items(self) -> Iterator[tuple[tuple[int, int], float]]:
        """Folded edges in sorted (u, v) order."""
        for key in sorted(self.edges):
            yield key, self.edges[key]

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Edge endpoints and weights as parallel arrays (cached)."""
        if self._edge_arrays is None:
            keys = sorted(self.edges)
            us = np.array([k[0] for k in keys], dtype=np.intp)
            vs = np.array([k[1] for k in keys], dtype=np.intp)
            ws = np.array([self.edges[k] for k in keys])
            self._edge_arrays = (us, vs, ws)
        return self._edge_arrays

    # -- cuts and volumes ----------------------------------------------------

    def _membership(self, subset) -> np.ndarray:
        if isinstance(subset, np.ndarray) and subset.dtype == bool:
            if subset.shape != (self.n,):
                raise ValueError("membership mask has wrong length")
            return subset
        mask = np.zeros(self.n, dtype=bool)
        for v in subset:
            self._check_vertex(v)
            mask[v] = True
        return mask

    def cut_weight(self, subset) -> float:
        """Total weight of edges with exactly one endpoint in ``subset``."""
        mask = self._membership(subset)
        us, vs, ws = self.edge_arrays()
        if len(ws) == 0:
            return 0.0
        return float(ws[mask[us] != mask[vs]].sum())

    def volume(self, subset) -> float:
        """Sum of degrees over ``subset``."""
        mask = self._membership(subset)
        return float(self._deg[mask].sum())

    # -- matrices --------------------------------------------------------------

    def laplacian(self) -> "SymMatrix":
        """Degree matrix minus adjacency matrix."""
        a = np.zeros((self.n, self.n))
        for (u, v), w in self.edges.items():
            a[u, v] = -w
            a[v, u] = -w
        a[np.diag_indices(self.n)] = self._deg
        return SymMatrix(a)

    def normalized_laplacian(self) -> "SymMatrix":
        """Identity minus degree-normalized adjacency; needs min degree > 0."""
        if self.n > 0 and self.min_degree() <= 0.0:
            isolated = int(np.argmin(self._deg))
            raise ValueError(
                f"normalized Laplacian undefined: vertex {isolated} is isolated"
            )
        inv_sqrt = 1.0 / np.sqrt(self._deg)
        a = np.zeros((self.n, self.n))
        for (u, v), w in self.edges.items():
            val = -w * inv_sqrt[u] * inv_sqrt[v]
            a[u, v] = val
            a[v, u] = val
        a[np.diag_indices(self.n)] = 1.0
        return SymMatrix(a)

    # -- structure ------------------------------------------------------------

    def connected_components(self) -> list[list[int]]:
        """Components as sorted vertex lists, ordered by smallest member."""
        seen = [False] * self.n
        comps = []
        for start in range(self.n):
            if seen[start]:
                continue
            stack = [start]
            seen[start] = True
            comp = []
            while stack:
                v = stack.pop()
                comp.append(v)
                for u in self._adj[v]:
                    if not seen[u]:
                        seen[u] = True
                        stack.append(u)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.connected_components()) == 1

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Subgraph induced by ``vertices``.

        Returns the subgraph on local indices ``0..k-1`` together with the
        sorted list of global vertices, so ``local i`` is ``globals[i]``.
        """
        globals_ = sorted(set(vertices))
        for v in globals_:
            self._check_vertex(v)
        index = {g: i for i, g in enumerate(globals_)}
        sub = Graph(len(globals_))
        for (u, v), w in self.edges.items():
            if u in index and v in index:
                sub.add_edge(index[u], index[v], w)
        return sub, globals_

    # -- dunder -----------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<Graph{label} n={self.n} edges={self.num_edges}>"


class SymMatrix:
    """Dense symmetric real matrix.

    The lower triangle is authoritative: it is mirrored to the upper triangle
    at construction, so callers may pass a matrix whose upper half is stale.
    """

    def __init__(self, entries):
        a = np.array(entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        lower = np.tril(a)
        self.array = lower + lower.T - np.diag(np.diag(a))

    @property
    def dim(self) -> int:
        return self.array.shape[0]

    def __repr__(self) -> str:
        return f"<SymMatrix dim={self.dim}>"


def cartesian_product(g1: Graph, g2: Graph) -> Graph:
    """Cartesian product; vertex ``(u, v)`` gets index ``u * g2.n + v``."""
    prod = Graph(g1.n * g2.n)
    for (u1, u2), w in g1.edges.items():
        for v in range(g2.n):
            prod.add_edge(u1 * g2.n + v, u2 * g2.n + v, w)
    for (v1, v2), w in g2.edges.items():
        for u in range(g1.n):
            prod.add_edge(u * g2.n + v1, u * g2.n + v2, w)
    return prod


def parse_edge_list(text: str) -> Graph:
    """Parse the plain edge-list format.

    First non-comment line is ``"n m"``; then m lines ``"u v w"`` with
    ``0 <= u, v < n``, ``u != v`` and ``w > 0``.  Lines starting with ``#``
    are ignored.  Repeated pairs fold by summation.
    """
    header: tuple[int, int] | None = None
    edges_seen = 0
    graph: Graph | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if header is None:
            if len(fields) != 2:
                raise EdgeListParseError(lineno, f"expected header 'n m', got {line!r}")
            try:
                n, m = int(fields[0]), int(fields[1])
            except ValueError:
                raise EdgeListParseError(lineno, f"non-integer header {line!r}") from None
            if n < 1:
                raise EdgeListParseError(lineno, f"vertex count must be >= 1, got {n}")
            if m < 0:
                raise EdgeListParseError(lineno, f"edge count must be >= 0, got {m}")
            header = (n, m)
            graph = Graph(n)
            continue
        if len(fields) != 3:
            raise EdgeListParseError(lineno, f"expected 'u v w', got {line!r}")
        try:
            u, v = int(fields[0]), int(fields[1])
            w = float(fields[2])
        except ValueError:
            raise EdgeListParseError(lineno, f"malformed edge line {line!r}") from None
        edges_seen += 1
        if edges_seen > header[1]:
            raise EdgeListParseError(lineno, "more edge lines than the header declared")
        try:
            graph.add_edge(u, v, w)
        except ValueError as exc:
            raise EdgeListParseError(lineno, str(exc)) from None
    if header is None:
        raise EdgeListParseError(1, "empty input: missing 'n m' header")
    if edges_seen != header[1]:
        raise EdgeListParseError(
            1, f"header declared {header[1]} edges but {edges_seen} were given"
        )
    return graph


def serialize_edge_list(g: Graph, comments: Iterable[str] = ()) -> str:
    """Canonical edge-list text: folded edges in sorted order."""
    lines = [f"# {c}" for c in comments]
    lines.append(f"{g.n} {g.num_edges}")
    for (u, v), w in g.edge_items():
        lines.append(f"{u} {v} {w!r}")
    return "\n".join(lines) + "\n"
