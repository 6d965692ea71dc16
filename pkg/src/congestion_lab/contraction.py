"""Contraction trees, congestion evaluation, constructive orderings, oracle.

A contraction tree is a rooted binary tree whose leaves biject to the graph
vertices; each node owns the vertex subset beneath it.  The congestion of a
tree is the largest cut induced by any non-root node's subset, and the graph's
congestion is the minimum over all trees.  Three constructive builders are
provided (hierarchical spectral clustering, sweep-cut plus equipartitioning,
plain recursive equipartitioning) together with an exact subset-DP oracle for
small graphs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clustering import _best_sweep_prefix, spectral_clustering
from .graph_core import Graph

ORACLE_DEFAULT_LIMIT = 14


@dataclass(frozen=True)
class TreeNode:
    subset: frozenset[int]
    parent: int | None
    children: tuple[int, ...]


class ContractionTree:
    """Rooted binary tree over vertex subsets; node ids index ``nodes``."""

    def __init__(self, nodes: list[TreeNode], root: int):
        self.nodes = nodes
        self.root = root
        self.leaf_map = {
            next(iter(node.subset)): i
            for i, node in enumerate(nodes)
            if not node.children
        }

    def __eq__(self, other) -> bool:
        if not isinstance(other, ContractionTree):
            return NotImplemented
        return self.root == other.root and self.nodes == other.nodes

    def __repr__(self) -> str:
        return f"<ContractionTree n={len(self.leaf_map)} nodes={len(self.nodes)}>"


@dataclass(frozen=True)
class CongestionCert:
    """Congestion of one (graph, tree) pair with its witness.

    ``congestion`` is the max of ``per_node_cut`` over non-root nodes;
    ``argmax_node`` is the smallest node id attaining it.
    """

    congestion: float
    argmax_node: int
    per_node_cut: dict[int, float]


class _TreeBuilder:
    """Accumulates nodes in creation (preorder) order."""

    def __init__(self):
        self._subsets: list[frozenset[int]] = []
        self._parents: list[int | None] = []
        self._children: list[list[int]] = []

    def add(self, subset, parent: int | None) -> int:
        node_id = len(self._subsets)
        self._subsets.append(frozenset(subset))
        self._parents.append(parent)
        self._children.append([])
        if parent is not None:
            self._children[parent].append(node_id)
        return node_id

    def build(self) -> ContractionTree:
        nodes = [
            TreeNode(subset=s, parent=p, children=tuple(c))
            for s, p, c in zip(self._subsets, self._parents, self._children)
        ]
        return ContractionTree(nodes, root=0)


def validate_tree(g: Graph, t: ContractionTree) -> list[str]:
    """List every broken tree invariant; empty means the tree is valid."""
    problems = []
    n_nodes = len(t.nodes)
    if not 0 <= t.root < n_nodes:
        return [f"root id {t.root} out of range"]
    if t.nodes[t.root].parent is not None:
        problems.append("root has a parent")
    if t.nodes[t.root].subset != frozenset(range(g.n)):
        problems.append("root subset is not the full vertex set")
    leaves = []
    for i, node in enumerate(t.nodes):
        for c in node.children:
            if not 0 <= c < n_nodes:
                problems.append(f"node {i} has out-of-range child {c}")
            elif t.nodes[c].parent != i:
                problems.append(f"child {c} does not point back to parent {i}")
        if node.children:
            if len(node.children) != 2:
                problems.append(
                    f"internal node {i} has {len(node.children)} children, expected 2"
                )
            else:
                a, b = node.children
                left, right = t.nodes[a].subset, t.nodes[b].subset
                if left & right:
                    problems.append(f"children of node {i} overlap")
                if left | right != node.subset:
                    problems.append(f"children of node {i} do not cover its subset")
        else:
            if len(node.subset) != 1:
                problems.append(f"leaf {i} owns {len(node.subset)} vertices, expected 1")
            leaves.append(node)
    leaf_vertices = set()
    for node in leaves:
        (v,) = tuple(node.subset)
        if v in leaf_vertices:
            problems.append(f"vertex {v} appears in more than one leaf")
        leaf_vertices.add(v)
    if leaf_vertices != set(range(g.n)):
        missing = sorted(set(range(g.n)) - leaf_vertices)
        extra = sorted(leaf_vertices - set(range(g.n)))
        if missing:
            problems.append(f"vertices without a leaf: {missing}")
        if extra:
            problems.append(f"leaves for unknown vertices: {extra}")
    return problems


def congestion(g: Graph, t: ContractionTree) -> CongestionCert:
    """Evaluate the congestion of a tree; the root contributes cut 0."""
    problems = validate_tree(g, t)
    if problems:
        raise ValueError("invalid tree for this graph: " + "; ".join(problems))
    per_node = {i: g.cut_weight(node.subset) for i, node in enumerate(t.nodes)}
    best_id = None
    best = -1.0
    for i in sorted(per_node):
        if i == t.root:
            continue
        if per_node[i] > best:
            best = per_node[i]
            best_id = i
    return CongestionCert(congestion=best, argmax_node=best_id, per_node_cut=per_node)


# -- serialization ------------------------------------------------------------


def serialize_tree(t: ContractionTree) -> str:
    """Nested parenthesized leaf indices, e.g. ``((0 1) ((2 3) (4 5)))``."""

    def render(i: int) -> str:
        node = t.nodes[i]
        if not node.children:
            (v,) = tuple(node.subset)
            return str(v)
        return "(" + " ".join(render(c) for c in node.children) + ")"

    return render(t.root)


def parse_tree(text: str) -> ContractionTree:
    """Parse the nested-parenthesis tree format; whitespace-insensitive.

    Nodes are created in preorder, so the root gets id 0 and internal nodes
    precede the leaves below them.
    """
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    if not tokens:
        raise ValueError("empty tree text")
    builder = _TreeBuilder()
    pos = 0

    def parse_node(parent: int | None) -> tuple[int, frozenset[int]]:
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("unexpected end of tree text")
        tok = tokens[pos]
        if tok == "(":
            pos += 1
            node_id = builder.add(frozenset(), parent)
            child_subsets = []
            while pos < len(tokens) and tokens[pos] != ")":
                _, sub = parse_node(node_id)
                child_subsets.append(sub)
            if pos >= len(tokens):
                raise ValueError("unbalanced parenthesis in tree text")
            pos += 1  # consume ')'
            if len(child_subsets) != 2:
                raise ValueError(
                    f"internal tree node has {len(child_subsets)} children, expected 2"
                )
            subset = frozenset().union(*child_subsets)
            if len(subset) != sum(len(s) for s in child_subsets):
                raise ValueError("tree children overlap")
            builder._subsets[node_id] = subset
            return node_id, subset
        if tok == ")":
            raise ValueError("unexpected ')' in tree text")
        try:
            v = int(tok)
        except ValueError:
            raise ValueError(f"unexpected token {tok!r} in tree text") from None
        if v < 0:
            raise ValueError(f"negative leaf index {v}")
        pos += 1
        node_id = builder.add(frozenset({v}), parent)
        return node_id, frozenset({v})

    parse_node(None)
    if pos != len(tokens):
        raise ValueError("trailing tokens after tree")
    return builder.build()


# -- constructive builders -----------------------------------------------------


def _split_general(g: Graph, vertices: list[int], normalized: bool):
    """Bipartition a vertex subset for tree growth.

    Uses the sweep cut of the induced subgraph when it is connected; when the
    induced subgraph is disconnected, splits off its smallest component
    (fewest vertices, lowest index as tiebreak).
    """
    sub, globals_ = g.induced_subgraph(vertices)
    comps = sub.connected_components()
    if len(comps) > 1:
        comps.sort(key=lambda c: (len(c), c[0]))
        side_a = {globals_[i] for i in comps[0]}
    elif sub.n == 2:
        side_a = {globals_[0]}
    else:
        order, best_t = _best_sweep_prefix(sub, normalized)
        side_a = {globals_[i] for i in order[:best_t]}
    side_b = set(vertices) - side_a
    return _ordered_pair(side_a, side_b)


def _ordered_pair(a: set, b: set) -> tuple[set, set]:
    return (a, b) if min(a) < min(b) else (b, a)


def _grow(g: Graph, builder: _TreeBuilder, node_id: int, vertices: list[int],
          normalized: bool) -> None:
    if len(vertices) == 1:
        return
    side_a, side_b = _split_general(g, vertices, normalized)
    for side in (side_a, side_b):
        child = builder.add(side, node_id)
        _grow(g, builder, child, sorted(side), normalized)


def hsc(g: Graph, seed: int = 0, normalized: bool = False) -> ContractionTree:
    """Hierarchical spectral clustering contraction tree.

    The root is split three ways by spectral clustering; the resulting ternary
    root is binarized by merging the two clusters whose union has the smallest
    cut weight (ties to the lexicographically smaller combined subset).  Every
    deeper subset is split by the 2-way sweep cut of its induced subgraph,
    with a connected-component fallback when the subgraph is disconnected.
    """
    if g.n < 2:
        raise ValueError("contraction tree needs at least 2 vertices")
    builder = _TreeBuilder()
    root = builder.add(range(g.n), None)
    if g.n == 2:
        builder.add({0}, root)
        builder.add({1}, root)
        return builder.build()
    if not g.is_connected():
        side_a, side_b = _split_general(g, list(range(g.n)), normalized)
        for side in (side_a, side_b):
            child = builder.add(side, root)
            _grow(g, builder, child, sorted(side), normalized)
        return builder.build()
    clusters = [set(c) for c in spectral_clustering(g, 3, seed, normalized).clusters()]
    pairs = [(0, 1), (0, 2), (1, 2)]
    merged_key = min(
        pairs,
        key=lambda p: (
            g.cut_weight(clusters[p[0]] | clusters[p[1]]),
            tuple(sorted(clusters[p[0]] | clusters[p[1]])),
        ),
    )
    merged = clusters[merged_key[0]] | clusters[merged_key[1]]
    (remaining,) = [clusters[i] for i in range(3) if i not in merged_key]
    top_a, top_b = _ordered_pair(merged, remaining)
    for side in (top_a, top_b):
        child = builder.add(side, root)
        if side == merged:
            sub_a, sub_b = _ordered_pair(clusters[merged_key[0]], clusters[merged_key[1]])
            for part in (sub_a, sub_b):
                grandchild = builder.add(part, child)
                _grow(g, builder, grandchild, sorted(part), normalized)
        else:
            _grow(g, builder, child, sorted(side), normalized)
    return builder.build()


def _halve_block(builder: _TreeBuilder, node_id: int, order: list[int],
                 lo: int, hi: int) -> None:
    """Recursively split the block order[lo..hi] at its index midpoint."""
    if lo == hi:
        return
    mid = (lo + hi) // 2
    left = builder.add(order[lo : mid + 1], node_id)
    _halve_block(builder, left, order, lo, mid)
    right = builder.add(order[mid + 1 : hi + 1], node_id)
    _halve_block(builder, right, order, mid + 1, hi)


def hybrid_sc_equipartition(g: Graph, normalized: bool = False) -> ContractionTree:
    """Sweep-cut root split followed by midpoint halving in Fiedler order.

    Vertices are reordered by ascending Fiedler value (index tiebreak); the
    root splits at the best sweep prefix, and every deeper block of the order
    is halved at its midpoint.
    """
    if g.n < 2:
        raise ValueError("contraction tree needs at least 2 vertices")
    if not g.is_connected():
        raise ValueError("sweep-cut tree needs a connected graph")
    order, best_t = _best_sweep_prefix(g, normalized)
    builder = _TreeBuilder()
    root = builder.add(range(g.n), None)
    left = builder.add(order[:best_t], root)
    _halve_block(builder, left, order, 0, best_t - 1)
    right = builder.add(order[best_t:], root)
    _halve_block(builder, right, order, best_t, g.n - 1)
    return builder.build()


def recursive_equipartition(g: Graph) -> ContractionTree:
    """Index-order equipartition into near-thirds, then midpoint halving.

    The top level takes contiguous blocks of sizes ceil(n/3),
    ceil((n - ceil(n/3))/2) and the remainder, binarized as (S1, (S2, S3));
    every block is then halved at its midpoint.  Block sizes stay within 1 of
    exact thirds and halves.
    """
    if g.n < 2:
        raise ValueError("contraction tree needs at least 2 vertices")
    n = g.n
    order = list(range(n))
    s1 = -(-n // 3)
    rest = n - s1
    s2 = -(-rest // 2)
    s3 = rest - s2
    builder = _TreeBuilder()
    root = builder.add(range(n), None)
    first = builder.add(order[:s1], root)
    _halve_block(builder, first, order, 0, s1 - 1)
    if s3 == 0:
        second = builder.add(order[s1:], root)
        _halve_block(builder, second, order, s1, n - 1)
        return builder.build()
    merged = builder.add(order[s1:], root)
    second = builder.add(order[s1 : s1 + s2], merged)
    _halve_block(builder, second, order, s1, s1 + s2 - 1)
    third = builder.add(order[s1 + s2 :], merged)
    _halve_block(builder, third, order, s1 + s2, n - 1)
    return builder.build()


# -- exact oracle ---------------------------------------------------------------


def _subset_cuts(g: Graph) -> list[float]:
    """Cut weight of every vertex subset, indexed by bitmask."""
    n = g.n
    deg = [g.degree(v) for v in range(n)]
    nbrs = [list(g.neighbors(v).items()) for v in range(n)]
    cut = [0.0] * (1 << n)
    for mask in range(1, 1 << n):
        v = (mask & -mask).bit_length() - 1
        rest = mask ^ (1 << v)
        inside = 0.0
        for u, w in nbrs[v]:
            if rest >> u & 1:
                inside += w
        cut[mask] = cut[rest] + deg[v] - 2.0 * inside
    return cut


def _oracle_tables(g: Graph, limit: int):
    """Subset-DP tables: best congestion and chosen split per bitmask.

    best(S) is the minimum over bipartitions S = A | B of
    max(cut(A), cut(B), best(A), best(B)); singletons cost 0.  Submask
    enumeration fixes S's lowest vertex inside A, so each unordered
    bipartition is visited once; total work is Theta(3^n).
    """
    n = g.n
    if n > limit:
        raise ValueError(f"oracle limited to {limit} vertices, graph has {n}")
    cut = _subset_cuts(g)
    size = 1 << n
    best = [0.0] * size
    choice = [0] * size
    for mask in range(1, size):
        if mask & (mask - 1) == 0:
            continue
        lowbit = mask & -mask
        rest = mask ^ lowbit
        best_val = float("inf")
        best_sub = 0
        sub = rest
        while True:
            sub = (sub - 1) & rest
            a = sub | lowbit
            b = mask ^ a
            val = max(cut[a], cut[b], best[a], best[b])
            if val < best_val:
                best_val = val
                best_sub = a
            if sub == 0:
                break
        best[mask] = best_val
        choice[mask] = best_sub
    return best, choice, cut


def oracle_min_congestion(g: Graph, limit: int = ORACLE_DEFAULT_LIMIT) -> float:
    """Exact minimum congestion over all contraction trees (small graphs)."""
    if g.n == 1:
        return 0.0
    best, _, _ = _oracle_tables(g, limit)
    return best[(1 << g.n) - 1]


def oracle_tree(g: Graph, limit: int = ORACLE_DEFAULT_LIMIT) -> ContractionTree:
    """An optimal contraction tree reconstructed from the oracle tables."""
    if g.n < 2:
        raise ValueError("contraction tree needs at least 2 vertices")
    _, choice, _ = _oracle_tables(g, limit)
    builder = _TreeBuilder()

    def mask_vertices(mask: int) -> list[int]:
        return [v for v in range(g.n) if mask >> v & 1]

    def grow(node_id: int, mask: int) -> None:
        if mask & (mask - 1) == 0:
            return
        a = choice[mask]
        b = mask ^ a
        first, second = (a, b) if (a & -a) <= (b & -b) else (b, a)
        for part in (first, second):
            child = builder.add(mask_vertices(part), node_id)
            grow(child, part)

    full = (1 << g.n) - 1
    root = builder.add(range(g.n), None)
    grow(root, full)
    return builder.build()
