"""Contraction trees: evaluation, builders, serialization, and the oracle."""

import itertools
import math
import random

import pytest

from congestion_lab.bounds import (
    congestion_lower,
    congestion_upper,
    congestion_upper_equipartition,
    congestion_upper_hybrid,
)
from congestion_lab.clustering import make_cut
from congestion_lab.contraction import (
    _TreeBuilder,
    congestion,
    hsc,
    hybrid_sc_equipartition,
    oracle_min_congestion,
    oracle_tree,
    parse_tree,
    recursive_equipartition,
    serialize_tree,
    validate_tree,
)
from congestion_lab.generators import fig1_example, hypercube, path, rqc
from congestion_lab.graph_core import Graph
from congestion_lab.spectra import lambda2, lambda_n


def tree_from_nested(nested):
    builder = _TreeBuilder()

    def walk(node, parent):
        if isinstance(node, int):
            builder.add({node}, parent)
            return {node}
        node_id = builder.add(set(), parent)
        covered = set()
        for child in node:
            covered |= walk(child, node_id)
        builder._subsets[node_id] = frozenset(covered)
        return covered

    walk(nested, None)
    return builder.build()


def all_rooted_binary_trees(vertices):
    """Every rooted binary tree over the given leaves, as nested tuples."""
    if len(vertices) == 1:
        yield vertices[0]
        return
    pivot, *rest = vertices
    for r in range(len(rest)):
        for combo in itertools.combinations(rest, r):
            left = [pivot, *combo]
            right = [v for v in rest if v not in combo]
            if not right:
                continue
            for lt in all_rooted_binary_trees(left):
                for rt in all_rooted_binary_trees(right):
                    yield (lt, rt)


def random_graph(n, seed, weighted=False):
    rng = random.Random(seed)
    g = Graph(n)
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < 0.55:
                g.add_edge(u, v, rng.choice([1.0, 2.0]) if weighted else 1.0)
    if g.num_edges == 0:
        g.add_edge(0, 1)
    return g


# -- congestion evaluation ----------------------------------------------------


def test_fig1_congestion():
    g, t = fig1_example()
    cert = congestion(g, t)
    assert cert.congestion == 4.0
    assert sorted(t.nodes[cert.argmax_node].subset) == [2, 3]
    assert validate_tree(g, t) == []


def test_congestion_k2_and_p3():
    k2 = path(2)
    cert = congestion(k2, tree_from_nested((0, 1)))
    assert cert.congestion == 1.0
    p3 = path(3)
    cert = congestion(p3, tree_from_nested(((0, 1), 2)))
    assert cert.congestion == 2.0  # the middle vertex's leaf cuts both edges


def test_congestion_matches_fresh_cut_calls():
    g = random_graph(7, 3, weighted=True)
    t = recursive_equipartition(g)
    cert = congestion(g, t)
    for node_id, value in cert.per_node_cut.items():
        assert value == g.cut_weight(t.nodes[node_id].subset)


def test_congestion_rejects_mismatched_tree():
    g, t = fig1_example()
    with pytest.raises(ValueError):
        congestion(path(5), t)


def test_validate_tree_diagnoses():
    g, t = fig1_example()
    assert validate_tree(g, t) == []
    missing_leaf = parse_tree("((0 1) ((2 3) 4))")
    assert any("without a leaf" in p for p in validate_tree(g, missing_leaf))
    builder = _TreeBuilder()
    root = builder.add(range(2), None)
    builder.add({0}, root)
    builder.add({1}, root)
    builder.add({1}, root)  # arity violation
    bad = builder.build()
    assert any("children" in p for p in validate_tree(path(2), bad))


# -- serialization ----------------------------------------------------------------


def test_tree_round_trip():
    _, t = fig1_example()
    text = serialize_tree(t)
    assert text == "((0 1) ((2 3) (4 5)))"
    assert serialize_tree(parse_tree(text)) == text
    assert parse_tree("((0   1)((2 3)(4   5)))") == t


@pytest.mark.parametrize("text", ["", "(0 1", "(0 1 2)", "((0) 1)", "(0 0)", "(x 1)"])
def test_parse_tree_rejects_malformed(text):
    with pytest.raises(ValueError):
        parse_tree(text)


# -- builders -----------------------------------------------------------------------


def test_hsc_shapes():
    k2 = path(2)
    t = hsc(k2, seed=0)
    assert len(t.nodes) == 3
    assert validate_tree(k2, t) == []
    q4 = hypercube(4)
    cert = congestion(q4, hsc(q4, seed=0))
    assert cert.congestion == 8.0
    with pytest.raises(ValueError):
        hsc(Graph(1))


def test_hsc_handles_disconnected_graphs():
    g = Graph(7)
    g.add_edge(0, 1)
    g.add_edge(1, 2)
    for u, v in ((3, 4), (4, 5), (5, 6), (6, 3)):
        g.add_edge(u, v)
    t = hsc(g, seed=1)
    assert validate_tree(g, t) == []
    # top split severs the components, so some node has cut weight 0
    assert congestion(g, t).per_node_cut[1] == 0.0


def test_hsc_rqc_congestion_near_two_q():
    for seed in range(3):
        g = rqc(5, 20, 2, seed=seed)
        cert = congestion(g, hsc(g, seed=seed))
        assert 5.0 <= cert.congestion <= 15.0


def test_hybrid_tree_p4():
    g = path(4)
    t = hybrid_sc_equipartition(g)
    root_children = t.nodes[t.root].children
    subsets = sorted(sorted(t.nodes[c].subset) for c in root_children)
    assert subsets == [[0, 1], [2, 3]]
    assert congestion(g, t).congestion == 2.0
    assert congestion(path(2), hybrid_sc_equipartition(path(2))).congestion == 1.0


def test_hybrid_requires_connected():
    g = Graph(4)
    g.add_edge(0, 1)
    g.add_edge(2, 3)
    with pytest.raises(ValueError):
        hybrid_sc_equipartition(g)


def test_recursive_equipartition_blocks():
    g = path(6)
    t = recursive_equipartition(g)
    level_subsets = {tuple(sorted(t.nodes[c].subset)) for c in t.nodes[t.root].children}
    assert (0, 1) in level_subsets
    merged = next(s for s in level_subsets if s != (0, 1))
    assert merged == (2, 3, 4, 5)
    blocks = {tuple(sorted(t.nodes[n].subset)) for n in range(len(t.nodes))}
    assert (2, 3) in blocks and (4, 5) in blocks
    t2 = recursive_equipartition(path(2))
    assert len(t2.nodes) == 3


def test_equipartition_block_sizes_near_thirds():
    for n in range(2, 13):
        g = path(n)
        t = recursive_equipartition(g)
        root_children = [t.nodes[c] for c in t.nodes[t.root].children]
        first = min(root_children, key=lambda node: min(node.subset))
        assert abs(len(first.subset) - n / 3) <= 1


# -- oracle --------------------------------------------------------------------------


def test_oracle_small_values():
    assert oracle_min_congestion(path(2)) == 1.0
    assert oracle_min_congestion(path(5)) == 2.0
    assert oracle_min_congestion(hypercube(3)) == 4.0


def test_oracle_rejects_large_graphs():
    with pytest.raises(ValueError):
        oracle_min_congestion(path(20))
    with pytest.raises(ValueError):
        oracle_min_congestion(path(15), limit=14)


def test_oracle_matches_exhaustive_enumeration():
    """Independent check: brute force over every rooted binary tree."""
    rng = random.Random(77)
    for trial in range(20):
        n = rng.randint(2, 6)
        g = random_graph(n, seed=1000 + trial, weighted=(trial % 2 == 0))
        brute = min(
            congestion(g, tree_from_nested(t)).congestion
            for t in all_rooted_binary_trees(list(range(n)))
        )
        assert oracle_min_congestion(g) == brute


def test_oracle_tree_is_optimal_and_valid():
    for seed in range(5):
        g = random_graph(7, seed=seed)
        t = oracle_tree(g)
        assert validate_tree(g, t) == []
        assert congestion(g, t).congestion == oracle_min_congestion(g)


# -- certified-bound properties --------------------------------------------------------


def test_bound_sandwich_on_corpus(corpus):
    """Spectral sandwich for every constructed tree on every corpus graph."""
    for g in corpus[::6]:
        lower = congestion_lower(g) - 1e-6
        node_cap = lambda_n(g) * g.n / 4.0 + 1e-6
        trees = [recursive_equipartition(g), hsc(g, seed=0)]
        if g.n <= 12:
            trees.append(oracle_tree(g))
        if g.is_connected():
            trees.append(hybrid_sc_equipartition(g))
        for t in trees:
            cert = congestion(g, t)
            assert cert.congestion >= lower
            assert max(cert.per_node_cut.values()) <= node_cap
        assert congestion(g, recursive_equipartition(g)).congestion <= (
            congestion_upper_equipartition(g) + 1e-6
        )


def test_hybrid_bound_with_actual_root_balance(corpus):
    for g in corpus[::6]:
        if not g.is_connected():
            continue
        t = hybrid_sc_equipartition(g)
        root_subset = t.nodes[t.nodes[t.root].children[0]].subset
        balance = make_cut(g, [v in root_subset for v in range(g.n)]).balance
        assert congestion(g, t).congestion <= congestion_upper_hybrid(g, balance) + 1e-6


def test_oracle_dominated_by_heuristics(corpus):
    for g in corpus[::9]:
        best = oracle_min_congestion(g)
        assert best <= congestion(g, hsc(g, seed=0)).congestion + 1e-9
        assert best <= congestion(g, recursive_equipartition(g)).congestion + 1e-9
        if g.is_connected():
            assert best <= congestion(g, hybrid_sc_equipartition(g)).congestion + 1e-9
        assert best >= congestion_lower(g) - 1e-6
