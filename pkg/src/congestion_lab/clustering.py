"""Spectral clustering, sweep cuts with Cheeger guarantees, and cut balance.

The 2-way canonical cut is the sweep cut over the Fiedler order, not a raw
k-means threshold: the sweep minimizes the certified objective directly and
dominates any threshold clustering of the same 1-D embedding.  k-means remains
the engine for k >= 3.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .graph_core import Graph
from .spectra import fiedler_vector, graph_spectrum

_ZERO_TOL = 1e-9
_KMEANS_MAX_ITER = 100


@dataclass(frozen=True)
class Cut:
    """A vertex bipartition with its cached quality measures.

    ``side[v]`` is True for vertices in the distinguished side S.  ``ratio``
    is cut weight over the smaller side's vertex count, ``conductance`` cut
    weight over the smaller side's volume, ``balance`` the smaller side's
    fraction of all vertices.
    """

    side: tuple[bool, ...]
    cut_weight: float
    ratio: float
    conductance: float
    balance: float

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for v, inside in enumerate(self.side) if inside)


@dataclass(frozen=True)
class Partition:
    """Cluster labels per vertex; labels are in ``range(k)``, no cluster empty."""

    labels: tuple[int, ...]
    k: int

    def clusters(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.k)]
        for v, c in enumerate(self.labels):
            out[c].append(v)
        return out


def make_cut(g: Graph, side) -> Cut:
    """Build a Cut from a membership indicator, computing all cached fields."""
    side = tuple(bool(b) for b in side)
    if len(side) != g.n:
        raise ValueError("side indicator has wrong length")
    size = sum(side)
    if size == 0 or size == g.n:
        raise ValueError("cut sides must both be nonempty")
    mask = np.array(side, dtype=bool)
    w = g.cut_weight(mask)
    vol_s = g.volume(mask)
    vol_rest = g.volume(~mask)
    small = min(size, g.n - size)
    small_vol = min(vol_s, vol_rest)
    conductance = w / small_vol if small_vol > 0 else float("inf")
    return Cut(
        side=side,
        cut_weight=w,
        ratio=w / small,
        conductance=conductance,
        balance=small / g.n,
    )


def kmeans(points, k: int, seed: int) -> Partition:
    """Lloyd's algorithm with farthest-point initialization.

    The seeded RNG picks the first center; the rest are chosen greedily as the
    point farthest from the centers so far (ties to the lowest index).  Empty
    clusters are repaired by stealing the point farthest from its centroid.
    Deterministic for fixed (points, k, seed).
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, np.newaxis]
    n = pts.shape[0]
    if k < 1:
        raise ValueError(f"cluster count must be >= 1, got {k}")
    if n < k:
        raise ValueError(f"need at least {k} points for {k} clusters, got {n}")

    rng = random.Random(seed)
    center_ids = [rng.randrange(n)]
    d2 = ((pts - pts[center_ids[0]]) ** 2).sum(axis=1)
    for _ in range(1, k):
        j = int(np.argmax(d2))
        center_ids.append(j)
        d2 = np.minimum(d2, ((pts - pts[j]) ** 2).sum(axis=1))
    centers = pts[center_ids].copy()

    labels = np.full(n, -1, dtype=int)
    for _ in range(_KMEANS_MAX_ITER):
        dist = ((pts[:, np.newaxis, :] - centers[np.newaxis, :, :]) ** 2).sum(axis=2)
        new_labels = np.argmin(dist, axis=1)
        _repair_empty_clusters(pts, centers, new_labels, k)
        if np.array_equal(new_labels, labels):
            break
        labels = new_labels
        for c in range(k):
            members = pts[labels == c]
            if len(members):
                centers[c] = members.mean(axis=0)
    return Partition(labels=tuple(int(c) for c in labels), k=k)


def _repair_empty_clusters(pts, centers, labels, k) -> None:
    for c in range(k):
        if np.any(labels == c):
            continue
        # Steal the point farthest from its own centroid, among clusters that
        # can spare one; ties go to the lowest point index.
        counts = np.bincount(labels, minlength=k)
        dist_own = ((pts - centers[labels]) ** 2).sum(axis=1)
        eligible = counts[labels] >= 2
        if not np.any(eligible):
            continue
        masked = np.where(eligible, dist_own, -np.inf)
        victim = int(np.argmax(masked))
        labels[victim] = c
        centers[c] = pts[victim]


def spectral_clustering(
    g: Graph, k: int, seed: int, normalized: bool = False
) -> Partition:
    """Partition the vertices into k clusters via the spectral embedding.

    Vertex i is embedded at the i-th entries of the eigenvectors for the k-1
    smallest nonzero (normalized) Laplacian eigenvalues, then k-means groups
    the images.  Labels are renumbered by first occurrence, so identical
    clusterings map to identical label sequences.
    """
    if not g.is_connected():
        raise ValueError("spectral clustering needs a connected graph")
    if not 2 <= k <= g.n:
        raise ValueError(f"cluster count must be in [2, {g.n}], got {k}")
    spec = graph_spectrum(g, normalized=normalized)
    # Quantize at the zero tolerance so numerically equal coordinates compare
    # equal and duplicate embeddings cannot be split by tie-breaking noise.
    embedding = np.round(spec.eigenvectors[:, 1:k], 9)
    part = kmeans(embedding, k, seed)
    return _renumber_by_first_occurrence(part)


def _renumber_by_first_occurrence(part: Partition) -> Partition:
    mapping: dict[int, int] = {}
    labels = []
    for c in part.labels:
        if c not in mapping:
            mapping[c] = len(mapping)
        labels.append(mapping[c])
    return Partition(labels=tuple(labels), k=part.k)


def fiedler_order(g: Graph, normalized: bool = False) -> list[int]:
    """Vertices sorted by ascending Fiedler value, index as tiebreak.

    Values are compared at the zero tolerance so ties between numerically
    equal entries always resolve by vertex index.
    """
    x = np.round(fiedler_vector(g, normalized=normalized), 9)
    return sorted(range(g.n), key=lambda v: (x[v], v))


def sweep_cut_2way(g: Graph, normalized: bool = False) -> Cut:
    """Best prefix cut of the Fiedler order.

    Evaluates all n-1 prefixes and returns the one minimizing the cut-ratio
    (unnormalized) or the conductance (normalized); earlier prefixes win ties.
    The result carries the Cheeger guarantee
    ratio <= sqrt((2*maxdeg - lambda2) * lambda2), resp.
    conductance <= sqrt((2 - mu2) * mu2).
    """
    order, best = _best_sweep_prefix(g, normalized)
    side = np.zeros(g.n, dtype=bool)
    side[order[:best]] = True
    return make_cut(g, side)


def _best_sweep_prefix(g: Graph, normalized: bool) -> tuple[list[int], int]:
    if g.n < 2:
        raise ValueError("sweep cut needs at least 2 vertices")
    order = fiedler_order(g, normalized=normalized)
    total_vol = 2.0 * g.total_weight
    in_s = np.zeros(g.n, dtype=bool)
    cut = 0.0
    vol = 0.0
    best_t = 1
    best_obj = float("inf")
    for t, v in enumerate(order[:-1], start=1):
        to_inside = sum(w for u, w in g.neighbors(v).items() if in_s[u])
        cut += g.degree(v) - 2.0 * to_inside
        vol += g.degree(v)
        in_s[v] = True
        if normalized:
            small_vol = min(vol, total_vol - vol)
            obj = cut / small_vol if small_vol > 0 else float("inf")
        else:
            obj = cut / min(t, g.n - t)
        if obj < best_obj:
            best_obj = obj
            best_t = t
    return order, best_t


def balance_epsilon(g: Graph, normalized: bool = False) -> float:
    """Balance of the Fiedler sign cut: smaller side's fraction of vertices.

    Strict-sign vertices are fixed; entries within the zero tolerance are
    assigned, in ascending vertex order, to whichever side is currently
    smaller (ties to the nonnegative side).
    """
    x = fiedler_vector(g, normalized=normalized)
    pos = int(np.sum(x > _ZERO_TOL))
    neg = int(np.sum(x < -_ZERO_TOL))
    zeros = np.nonzero(np.abs(x) <= _ZERO_TOL)[0]
    for _ in zeros:
        if pos <= neg:
            pos += 1
        else:
            neg += 1
    return min(pos, neg) / g.n
