"""Graph-spectral congestion bounds and contraction-tree heuristics."""

from .graph_core import (
    EdgeListParseError,
    Graph,
    SymMatrix,
    cartesian_product,
    parse_edge_list,
    serialize_edge_list,
)
from .spectra import (
    SpectrumResult,
    eigen_sym,
    fiedler_vector,
    graph_spectrum,
    lambda2,
    lambda_n,
    mu2,
    mu_n,
)

__all__ = [
    "EdgeListParseError",
    "Graph",
    "SymMatrix",
    "cartesian_product",
    "parse_edge_list",
    "serialize_edge_list",
    "SpectrumResult",
    "eigen_sym",
    "fiedler_vector",
    "graph_spectrum",
    "lambda2",
    "lambda_n",
    "mu2",
    "mu_n",
]
