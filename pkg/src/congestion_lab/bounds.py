"""Closed-form congestion and treewidth bounds from the Laplacian spectrum.

Every bound is reported as a real number; integer-valued comparisons (ceiling
of lower bounds, floor of upper bounds) belong to display code, never to the
stored values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .clustering import balance_epsilon, make_cut
from .contraction import hybrid_sc_equipartition
from .graph_core import Graph
from .spectra import lambda2, lambda_n, mu2, mu_n


def congestion_lower(g: Graph) -> float:
    """Spectral lower bound 2*lambda2*n/9, valid for every contraction tree."""
    return 2.0 * lambda2(g) * g.n / 9.0


def congestion_upper(g: Graph) -> float:
    """Cut-size cap lambda_n*n/4: no tree node can exceed it."""
    return lambda_n(g) * g.n / 4.0


def congestion_upper_equipartition(g: Graph) -> float:
    """Bound 2*lambda_n*n/9 achieved by recursive near-third equipartitioning."""
    return 2.0 * lambda_n(g) * g.n / 9.0


def congestion_upper_hybrid(g: Graph, eps: float) -> float:
    """Bound for the sweep-cut-plus-equipartition tree at root balance eps.

    n * max(eps * sqrt((2*maxdeg - lambda2) * lambda2),
            ((1 - eps^2 + 1/n) / 4) * lambda_n).
    """
    if not 0.0 < eps <= 0.5:
        raise ValueError(f"balance must be in (0, 1/2], got {eps}")
    lam2 = lambda2(g)
    spectral_term = eps * math.sqrt(max(0.0, (2.0 * g.max_degree() - lam2) * lam2))
    halving_term = ((1.0 - eps * eps + 1.0 / g.n) / 4.0) * lambda_n(g)
    return g.n * max(spectral_term, halving_term)


def normalized_congestion_bounds(
    g: Graph, eps_prime: float
) -> tuple[float, float, float, float]:
    """Volume-scaled analogues of the four congestion bounds.

    Returns (lower, upper, upper_equipartition, upper_hybrid), each scaled by
    the total volume 2m instead of the vertex count; ``eps_prime`` plays the
    balance role for the hybrid bound.
    """
    if g.min_degree() <= 0.0:
        raise ValueError("normalized bounds need minimum degree > 0")
    if not 0.0 < eps_prime <= 0.5:
        raise ValueError(f"balance must be in (0, 1/2], got {eps_prime}")
    vol = 2.0 * g.total_weight
    m2 = mu2(g)
    mn = mu_n(g)
    lower = 2.0 * m2 * vol / 9.0
    upper = mn * vol / 4.0
    upper_equi = 2.0 * mn * vol / 9.0
    spectral_term = eps_prime * math.sqrt(max(0.0, (2.0 - m2) * m2))
    halving_term = ((1.0 - eps_prime * eps_prime + 1.0 / vol) / 4.0) * mn
    upper_hybrid = vol * max(spectral_term, halving_term)
    return lower, upper, upper_equi, upper_hybrid


def prior_congestion_lowers(g: Graph) -> tuple[float, float]:
    """Earlier spectral lower bounds, for comparison columns.

    Returns (lambda2*n/(maxdeg+lambda2), lambda2*n/8): the treewidth-based
    bound and the min-cut-ratio/Cheeger bound.  The second is always exactly
    (9/16) of the 2*lambda2*n/9 bound.
    """
    lam2 = lambda2(g)
    denom = g.max_degree() + lam2
    gima = lam2 * g.n / denom if denom > 0 else 0.0
    markov_shi = lam2 * g.n / 8.0
    return gima, markov_shi


def treewidth_upper(g: Graph) -> float:
    """Spectral treewidth upper bound.

    n * min(2*lambda_n/9, max(eps*sqrt((2*maxdeg-lambda2)*lambda2),
    ((1-eps^2+1/n)/4)*lambda_n)) with eps the Fiedler sign-cut balance; for a
    disconnected graph the balance of the smallest-component split is used.
    """
    if g.n < 2:
        raise ValueError("treewidth bound needs at least 2 vertices")
    if g.is_connected():
        eps = balance_epsilon(g)
    else:
        smallest = min(len(c) for c in g.connected_components())
        eps = min(smallest, g.n - smallest) / g.n
    return min(congestion_upper_equipartition(g), congestion_upper_hybrid(g, eps))


def lattice_treewidth_bracket(m: int, n: int, periodic: bool = False) -> tuple[float, float]:
    """Known congestion bracket for lattice products.

    (min(m,n), 4*min(m,n)+4) for the path product and
    (2*min(m,n), 8*min(m,n)+4) for the cycle product.
    """
    if m < 2 or n < 2:
        raise ValueError(f"lattice sides must be >= 2, got {m}x{n}")
    k = min(m, n)
    if periodic:
        return 2.0 * k, 8.0 * k + 4.0
    return float(k), 4.0 * k + 4.0


def _path_lambda_max(k: int) -> float:
    return 4.0 * math.sin((k - 1) * math.pi / (2.0 * k)) ** 2


def _cycle_lambda_max(k: int) -> float:
    if k % 2 == 0:
        return 4.0
    return 4.0 * math.sin((k - 1) * math.pi / (2.0 * k)) ** 2


def lattice_spectrum_closed_form(m: int, n: int, periodic: bool = False) -> tuple[float, float]:
    """Closed-form (lambda2, lambda_max) of the m-by-n lattice.

    The product spectrum is the set of pairwise sums of the factor spectra, so
    lambda2 is the smaller factor lambda2 and lambda_max is the sum of the
    factor maxima.  Path factors have spectrum 4*sin^2(q*pi/(2k)); cycle
    factors 4*sin^2(q*pi/k).
    """
    if m < 2 or n < 2:
        raise ValueError(f"lattice sides must be >= 2, got {m}x{n}")
    if periodic:
        if m < 3 or n < 3:
            raise ValueError("periodic lattice needs both sides >= 3")
        lam2 = 4.0 * min(math.sin(math.pi / m) ** 2, math.sin(math.pi / n) ** 2)
        lam_max = _cycle_lambda_max(m) + _cycle_lambda_max(n)
    else:
        lam2 = 4.0 * min(
            math.sin(math.pi / (2.0 * m)) ** 2, math.sin(math.pi / (2.0 * n)) ** 2
        )
        lam_max = _path_lambda_max(m) + _path_lambda_max(n)
    return lam2, lam_max


def random_regular_band(n: int, d: int, epsilon: float) -> tuple[float, float]:
    """Expected congestion band for random d-regular graphs.

    (2n(d - 2 sqrt(d-1) - epsilon)/9, 2n(d + 2 sqrt(d-1) + epsilon)/9), with
    the lower endpoint clamped at 0 since a negative bound is vacuous.
    """
    if d < 3:
        raise ValueError(f"degree must be >= 3, got {d}")
    if epsilon < 0:
        raise ValueError(f"slack must be >= 0, got {epsilon}")
    spread = 2.0 * math.sqrt(d - 1.0)
    low = 2.0 * n * (d - spread - epsilon) / 9.0
    high = 2.0 * n * (d + spread + epsilon) / 9.0
    return max(0.0, low), high


@dataclass(frozen=True)
class BoundsReport:
    """All bound values for one graph; field names match the CSV schema."""

    n: int
    m: float
    max_degree: float
    lambda2: float
    lambdan: float
    mu2: float
    mun: float
    eps: float
    eps_prime: float
    lower_thm1: float
    upper_trivial: float
    upper_equi: float
    upper_hybrid: float
    lower_thm2: float
    upper_thm2_trivial: float
    upper_thm2_equi: float
    upper_thm2_hybrid: float
    lower_gima: float
    lower_markov_shi: float
    cor2_treewidth_upper: float


def bounds_report(g: Graph, seed: int = 0) -> BoundsReport:
    """Evaluate every bound for a connected graph.

    The balance driving the hybrid upper bounds is the actual root balance of
    the corresponding sweep-cut tree (vertex balance for the plain bound,
    volume balance for the normalized one); the Fiedler sign-cut balances are
    reported separately as eps / eps_prime.  ``seed`` is accepted for
    interface stability; every quantity here is seed-independent.
    """
    del seed
    if not g.is_connected():
        raise ValueError("bounds report needs a connected graph")
    eps = balance_epsilon(g)
    eps_prime = balance_epsilon(g, normalized=True)
    hybrid_tree = hybrid_sc_equipartition(g)
    root_cut = make_cut(g, _root_side(g, hybrid_tree))
    hybrid_tree_norm = hybrid_sc_equipartition(g, normalized=True)
    root_cut_norm = make_cut(g, _root_side(g, hybrid_tree_norm))
    vol = 2.0 * g.total_weight
    vol_balance = min(
        g.volume(root_cut_norm.vertices), vol - g.volume(root_cut_norm.vertices)
    ) / vol
    gima, markov_shi = prior_congestion_lowers(g)
    thm2 = normalized_congestion_bounds(g, vol_balance)
    return BoundsReport(
        n=g.n,
        m=g.total_weight,
        max_degree=g.max_degree(),
        lambda2=lambda2(g),
        lambdan=lambda_n(g),
        mu2=mu2(g),
        mun=mu_n(g),
        eps=eps,
        eps_prime=eps_prime,
        lower_thm1=congestion_lower(g),
        upper_trivial=congestion_upper(g),
        upper_equi=congestion_upper_equipartition(g),
        upper_hybrid=congestion_upper_hybrid(g, root_cut.balance),
        lower_thm2=thm2[0],
        upper_thm2_trivial=thm2[1],
        upper_thm2_equi=thm2[2],
        upper_thm2_hybrid=thm2[3],
        lower_gima=gima,
        lower_markov_shi=markov_shi,
        cor2_treewidth_upper=treewidth_upper(g),
    )


def _root_side(g: Graph, tree) -> list[bool]:
    first_child = tree.nodes[tree.root].children[0]
    subset = tree.nodes[first_child].subset
    return [v in subset for v in range(g.n)]
