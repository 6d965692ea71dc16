"""Shared fixtures: the fixed property-test corpus and small builders.

The corpus spans every generator family at n <= 12 with frozen seeds.  Two
deliberate exclusions keep the certified cut inequalities applicable:

* no 2- or 3-vertex complete graphs (the sweep-cut guarantee classically
  excludes them), so paths start at 3 vertices and cycles at 4;
* the dense random families use vertex counts divisible by 3, where the
  equipartition bound 2*lambda_n*n/9 is exact rather than subject to
  integer-rounding slack.
"""

from __future__ import annotations

import pytest

from congestion_lab.generators import (
    GenSpec,
    cycle,
    fig1_example,
    gnp_min_degree,
    grid,
    hypercube,
    path,
    random_regular,
)

CORPUS_SPECS: list[tuple] = []
CORPUS_SPECS += [("hypercube", {"d": d}, 0) for d in (2, 3)]
CORPUS_SPECS += [("path", {"n": k}, 0) for k in range(3, 13)]
CORPUS_SPECS += [("cycle", {"n": k}, 0) for k in range(4, 13)]
CORPUS_SPECS += [
    ("grid", {"m": m, "n": n, "periodic": False}, 0)
    for m, n in ((2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 3), (3, 4))
]
CORPUS_SPECS += [
    ("grid", {"m": m, "n": n, "periodic": True}, 0) for m, n in ((3, 3), (3, 4))
]
CORPUS_SPECS += [("fig1", {}, 0)]
CORPUS_SPECS += [
    ("random_regular", {"n": n, "d": d}, seed)
    for n, d in ((6, 3), (6, 4), (6, 5), (9, 4), (12, 3), (12, 4), (12, 5))
    for seed in range(8)
]
CORPUS_SPECS += [
    ("gnp", {"n": n, "p": p}, seed)
    for n in (6, 9, 12)
    for p in (0.3, 0.5)
    for seed in range(8)
]
CORPUS_SPECS += [
    ("rqc", {"q": q, "depth": depth, "k": k}, seed)
    for q, depth, k in (
        (2, 2, 2), (2, 4, 2), (2, 6, 2), (2, 8, 2),
        (3, 3, 2), (3, 6, 2), (3, 3, 3), (3, 6, 3),
        (4, 1, 2), (4, 2, 2), (4, 2, 4), (4, 4, 4),
        (5, 1, 2), (5, 1, 5), (5, 2, 5),
    )
    for seed in range(5)
]


def build_corpus_graph(family: str, params: dict, seed: int):
    if family == "gnp":
        g, _ = gnp_min_degree(params["n"], params["p"], seed)
        return g
    if family == "fig1":
        return fig1_example()[0]
    return GenSpec(family=family, params=params, seed=seed).build()


@pytest.fixture(scope="session")
def corpus():
    graphs = [build_corpus_graph(*spec) for spec in CORPUS_SPECS]
    assert len(graphs) >= 200
    assert all(g.n <= 12 for g in graphs)
    return graphs


@pytest.fixture(scope="session")
def small_named_graphs():
    return {
        "K_2": path(2),
        "P_4": path(4),
        "P_6": path(6),
        "C_4": cycle(4),
        "C_8": cycle(8),
        "Q_3": hypercube(3),
        "Q_4": hypercube(4),
        "grid_3x4": grid(3, 4),
        "fig1": fig1_example()[0],
        "rr_10_3": random_regular(10, 3, 7),
    }
