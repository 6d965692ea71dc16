"""Seeded graph generators for the experiment families plus fixed fixtures.

All generators are deterministic per (params, seed); randomness comes from a
single ``random.Random(seed)`` stream (Mersenne Twister, identified as
``mt19937`` in emitted metadata), so runs are replayable on any platform with
the same implementation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .contraction import ContractionTree, parse_tree
from .graph_core import Graph, cartesian_product

RNG_ID = "mt19937"
RETRY_CAP = 10000


def path(k: int) -> Graph:
    if k < 1:
        raise ValueError(f"path needs at least 1 vertex, got {k}")
    g = Graph(k, name=f"P_{k}")
    for v in range(k - 1):
        g.add_edge(v, v + 1, 1.0)
    return g


def cycle(k: int) -> Graph:
    if k < 3:
        raise ValueError(f"cycle needs at least 3 vertices, got {k}")
    g = Graph(k, name=f"C_{k}")
    for v in range(k):
        g.add_edge(v, (v + 1) % k, 1.0)
    return g


def hypercube(d: int) -> Graph:
    """d-dimensional hypercube; vertex index is the binary coordinate word."""
    if d < 1:
        raise ValueError(f"hypercube dimension must be >= 1, got {d}")
    g = Graph(1 << d, name=f"Q_{d}")
    for v in range(1 << d):
        for i in range(d):
            u = v ^ (1 << i)
            if u > v:
                g.add_edge(v, u, 1.0)
    return g


def grid(m: int, n: int, periodic: bool = False) -> Graph:
    """m-by-n lattice: product of paths, or of cycles when periodic."""
    if m < 2 or n < 2:
        raise ValueError(f"grid needs both sides >= 2, got {m}x{n}")
    if periodic and (m < 3 or n < 3):
        raise ValueError("periodic grid needs both sides >= 3")
    factor_a = cycle(m) if periodic else path(m)
    factor_b = cycle(n) if periodic else path(n)
    g = cartesian_product(factor_a, factor_b)
    g.name = f"{'C' if periodic else 'P'}_{m}x{n}"
    return g


def random_regular(n: int, d: int, seed: int) -> Graph:
    """Configuration-model d-regular graph, rejecting non-simple pairings.

    Any pairing containing a loop or a parallel edge is fully rejected and
    redrawn, which keeps the distribution uniform over simple pairings.
    """
    if n * d % 2 != 0:
        raise ValueError(f"n*d must be even, got n={n}, d={d}")
    if not 1 <= d < n:
        raise ValueError(f"degree must satisfy 1 <= d < n, got d={d}, n={n}")
    rng = random.Random(seed)
    for _ in range(RETRY_CAP):
        stubs = list(range(n)) * d
        rng.shuffle(stubs)
        edges = set()
        ok = True
        for i in range(0, len(stubs), 2):
            u, v = stubs[i], stubs[i + 1]
            if u == v:
                ok = False
                break
            key = (u, v) if u < v else (v, u)
            if key in edges:
                ok = False
                break
            edges.add(key)
        if ok:
            g = Graph(n, name=f"G({n},{d})")
            for u, v in sorted(edges):
                g.add_edge(u, v, 1.0)
            return g
    raise RuntimeError(
        f"no simple {d}-regular pairing found in {RETRY_CAP} attempts (n={n})"
    )


def gnp(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi graph: each pair is an edge independently with probability p."""
    if n < 2:
        raise ValueError(f"gnp needs at least 2 vertices, got {n}")
    if not 0.0 < p < 1.0:
        raise ValueError(f"edge probability must be in (0, 1), got {p}")
    rng = random.Random(seed)
    g = Graph(n, name=f"G({n},{p})")
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                g.add_edge(u, v, 1.0)
    return g


def gnp_min_degree(n: int, p: float, seed: int) -> tuple[Graph, int]:
    """Erdos-Renyi sample conditioned on minimum degree >= 1.

    Redraws from the same seeded stream until no vertex is isolated, so the
    normalized Laplacian is defined for every returned sample.  Returns the
    graph and the number of redraws that were needed.
    """
    rng = random.Random(seed)
    for attempt in range(RETRY_CAP):
        g = Graph(n, name=f"G({n},{p})")
        for u in range(n):
            for v in range(u + 1, n):
                if rng.random() < p:
                    g.add_edge(u, v, 1.0)
        if g.min_degree() > 0:
            return g, attempt
    raise RuntimeError(f"no isolated-vertex-free sample in {RETRY_CAP} attempts")


def rqc(q: int, depth: int, k: int, seed: int, terminals: str = "per-qubit") -> Graph:
    """Tensor-network graph of a random circuit of k-qubit gates.

    Each layer partitions a random subset of the q wires into floor(q/k)
    disjoint k-subsets (the leftover q mod k wires idle that layer); every
    gate is a node, and each wire threads input terminal -> its gates in layer
    order -> output terminal, contributing unit edges between consecutive
    nodes.  Parallel wire segments between the same node pair fold, so every
    gate node has weighted degree exactly 2k.

    ``terminals`` selects the boundary convention: ``per-qubit`` adds one
    degree-1 terminal per wire per side (2q terminals), ``single`` one shared
    state node per side.
    """
    if not 2 <= k <= q:
        raise ValueError(f"gate arity must satisfy 2 <= k <= q, got k={k}, q={q}")
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    if terminals not in ("per-qubit", "single"):
        raise ValueError(f"unknown terminal convention {terminals!r}")
    rng = random.Random(seed)
    gates_per_layer = q // k
    num_gates = depth * gates_per_layer
    if terminals == "per-qubit":
        n = 2 * q + num_gates
        in_node = list(range(q))
        first_gate = q
        out_node = [q + num_gates + w for w in range(q)]
    else:
        n = 2 + num_gates
        in_node = [0] * q
        first_gate = 1
        out_node = [1 + num_gates] * q
    g = Graph(n, name=f"RQC({q},{depth},{k})")
    current = list(in_node)
    gate_id = first_gate
    for _ in range(depth):
        wires = list(range(q))
        rng.shuffle(wires)
        for j in range(gates_per_layer):
            members = wires[j * k : (j + 1) * k]
            for w in members:
                g.add_edge(current[w], gate_id, 1.0)
                current[w] = gate_id
            gate_id += 1
    for w in range(q):
        g.add_edge(current[w], out_node[w], 1.0)
    return g


def fig1_example() -> tuple[Graph, ContractionTree]:
    """The six-vertex worked example and its binarized contraction tree."""
    g = Graph(6, name="fig1")
    for u, v in ((0, 1), (1, 2), (2, 5), (5, 3), (3, 2), (2, 4), (4, 5)):
        g.add_edge(u, v, 1.0)
    tree = parse_tree("((0 1) ((2 3) (4 5)))")
    return g, tree


FAMILIES = ("hypercube", "path", "cycle", "grid", "random_regular", "gnp", "rqc", "fig1")

_FAMILY_ALIASES = {"lattice": "grid", "rrg": "random_regular"}


@dataclass(frozen=True)
class GenSpec:
    """A generator invocation: family name, family-specific params, seed."""

    family: str
    params: dict = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        family = _FAMILY_ALIASES.get(self.family, self.family)
        object.__setattr__(self, "family", family)
        if family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")

    def build(self) -> Graph:
        p = self.params
        if self.family == "hypercube":
            return hypercube(p["d"])
        if self.family == "path":
            return path(p["n"])
        if self.family == "cycle":
            return cycle(p["n"])
        if self.family == "grid":
            return grid(p["m"], p["n"], p.get("periodic", False))
        if self.family == "random_regular":
            return random_regular(p["n"], p["d"], self.seed)
        if self.family == "gnp":
            return gnp(p["n"], p["p"], self.seed)
        if self.family == "rqc":
            return rqc(p["q"], p["depth"], p["k"], self.seed,
                       p.get("terminals", "per-qubit"))
        return fig1_example()[0]

    def metadata(self) -> list[str]:
        parts = [f"family={self.family}"]
        parts += [f"{k}={v}" for k, v in sorted(self.params.items())]
        parts += [f"seed={self.seed}", f"rng={RNG_ID}"]
        return [" ".join(parts)]
