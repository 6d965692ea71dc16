"""Graph construction, cuts, volumes, matrices, products, and edge-list I/O."""

import random

import numpy as np
import pytest

from congestion_lab.generators import fig1_example, hypercube, path
from congestion_lab.graph_core import (
    EdgeListParseError,
    Graph,
    SymMatrix,
    cartesian_product,
    parse_edge_list,
    serialize_edge_list,
)


def test_new_graph_sizes():
    assert Graph(6).n == 6
    assert Graph(6).num_edges == 0
    assert Graph(1).n == 1
    with pytest.raises(ValueError):
        Graph(0)


def test_add_edge_folds_parallels():
    g = Graph(3)
    g.add_edge(0, 1, 1.0)
    g.add_edge(1, 0, 1.0)
    assert g.edges[(0, 1)] == 2.0
    assert g.degree(0) == 2.0


def test_add_edge_rejects_bad_input():
    g = Graph(3)
    with pytest.raises(ValueError):
        g.add_edge(0, 0, 1.0)
    with pytest.raises(ValueError):
        g.add_edge(0, 1, 0.0)
    with pytest.raises(ValueError):
        g.add_edge(0, 1, -2.0)
    with pytest.raises(ValueError):
        g.add_edge(0, 5, 1.0)


def test_fig1_graph_shape():
    g, _ = fig1_example()
    assert g.n == 6
    assert g.num_edges == 7
    assert [g.degree(v) for v in range(6)] == [1, 2, 4, 2, 2, 3]
    assert g.degree(2) == 4  # the hub
    assert g.cut_weight({2, 3}) == 4
    assert g.volume(range(6)) == 14


def test_degree_edge_cases():
    g = Graph(3)
    g.add_edge(0, 1, 1.0)
    assert g.degree(2) == 0.0
    q4 = hypercube(4)
    assert all(q4.degree(v) == 4 for v in range(16))
    with pytest.raises(ValueError):
        g.degree(3)


def test_cut_weight_symmetry_and_bounds():
    rng = random.Random(5)
    for _ in range(20):
        n = rng.randint(2, 10)
        g = Graph(n)
        for u in range(n):
            for v in range(u + 1, n):
                if rng.random() < 0.5:
                    g.add_edge(u, v, rng.uniform(0.5, 2.0))
        subset = {v for v in range(n) if rng.random() < 0.5}
        complement = set(range(n)) - subset
        assert g.cut_weight(subset) == pytest.approx(g.cut_weight(complement))
        assert g.cut_weight(subset) <= min(g.volume(subset), g.volume(complement)) + 1e-12
    assert Graph(4).cut_weight(set()) == 0.0


def test_cube_coordinate_cut():
    q3 = hypercube(3)
    half = {v for v in range(8) if v & 1 == 0}
    assert q3.cut_weight(half) == 4
    assert q3.volume({0, 1, 2, 3}) == 12


def test_laplacian_entries_and_row_sums():
    g = Graph(2)
    g.add_edge(0, 1, 1.0)
    assert np.allclose(g.laplacian().array, [[1, -1], [-1, 1]])
    fig1, _ = fig1_example()
    lap = fig1.laplacian().array
    assert np.allclose(np.diag(lap), [1, 2, 4, 2, 2, 3])
    assert np.abs(lap.sum(axis=1)).max() < 1e-12
    assert np.trace(lap) == pytest.approx(sum(fig1.degree(v) for v in range(6)))


def test_normalized_laplacian():
    g = Graph(2)
    g.add_edge(0, 1, 1.0)
    assert np.allclose(g.normalized_laplacian().array, [[1, -1], [-1, 1]])
    q3 = hypercube(3)
    assert np.allclose(q3.normalized_laplacian().array, q3.laplacian().array / 3.0, atol=1e-12)
    lonely = Graph(3)
    lonely.add_edge(0, 1, 1.0)
    with pytest.raises(ValueError):
        lonely.normalized_laplacian()


def test_cartesian_product_structure():
    square = cartesian_product(path(2), path(2))
    assert square.n == 4
    assert square.num_edges == 4
    assert all(square.degree(v) == 2 for v in range(4))
    g1, g2 = path(4), hypercube(2)
    prod = cartesian_product(g1, g2)
    assert prod.num_edges == g1.num_edges * g2.n + g1.n * g2.num_edges


def test_edge_list_round_trip():
    assert parse_edge_list("2 1\n0 1 1.0\n").edges == {(0, 1): 1.0}
    fig1, _ = fig1_example()
    text = serialize_edge_list(fig1)
    assert parse_edge_list(text) == fig1
    assert serialize_edge_list(parse_edge_list(text)) == text


def test_edge_list_comments_and_folding():
    g = parse_edge_list("# a comment\n3 2\n0 1 1.5\n1 0 0.5\n")
    assert g.edges == {(0, 1): 2.0}


@pytest.mark.parametrize(
    "text",
    [
        "2 1\n0 0 1.0\n",        # self-loop
        "2 1\n0 1 0.0\n",        # nonpositive weight
        "2 1\n0 3 1.0\n",        # vertex out of range
        "2 2\n0 1 1.0\n",        # fewer edges than declared
        "2 1\n0 1 1.0\n0 1 1\n", # more edges than declared
        "nope\n",
        "",
    ],
)
def test_edge_list_rejects_malformed(text):
    with pytest.raises(EdgeListParseError):
        parse_edge_list(text)


def test_edge_list_error_carries_line_number():
    with pytest.raises(EdgeListParseError) as err:
        parse_edge_list("# header next\n3 1\n0 0 1.0\n")
    assert err.value.lineno == 3


def test_sym_matrix_mirrors_lower_triangle():
    m = SymMatrix([[1.0, 99.0], [2.0, 3.0]])
    assert np.allclose(m.array, [[1, 2], [2, 3]])
    assert m.dim == 2
    with pytest.raises(ValueError):
        SymMatrix(np.zeros((2, 3)))
