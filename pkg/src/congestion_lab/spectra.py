"""Dense symmetric eigendecomposition and named graph-spectral quantities.

The solver is Householder tridiagonalization followed by implicit-shift QL
iteration with eigenvector accumulation, i.e. the classic dense path, with the
inner updates vectorized through numpy.  On top of the raw decomposition two
deterministic post-passes make downstream heuristics reproducible:

* within every numerically degenerate eigenvalue group the basis is rotated to
  minimize the sum of fourth powers of the entries (pairwise Jacobi sweeps);
  for graphs whose degenerate eigenspaces carry product structure (hypercubes,
  grids) this recovers the axis-aligned eigenvectors exactly, which is what
  makes spectral cuts land on coordinate cuts;
* every eigenvector is sign-canonicalized so its first nonzero entry is
  positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph_core import Graph, SymMatrix

_QL_MAX_ITER = 50
_QL_TOL = 1e-14
_DEGENERACY_TOL = 1e-9
_SIGN_TOL = 1e-9


@dataclass(frozen=True)
class SpectrumResult:
    """Full decomposition of a symmetric matrix.

    ``eigenvalues`` is ascending; column ``j`` of ``eigenvectors`` belongs to
    ``eigenvalues[j]``.  ``max_residual`` is max over pairs of the infinity
    norm of ``M x - lambda x``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    max_residual: float


def eigen_sym(m: SymMatrix) -> SpectrumResult:
    """Eigendecompose a symmetric matrix; deterministic for a fixed matrix."""
    a = m.array
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    n = m.dim
    if n == 1:
        return SpectrumResult(np.array([a[0, 0]]), np.ones((1, 1)), 0.0)
    d, e, z = _householder_tridiagonal(a)
    _ql_implicit(d, e, z)
    order = np.argsort(d, kind="stable")
    values = d[order]
    vectors = z[:, order]
    _canonicalize_degenerate_groups(values, vectors)
    _canonicalize_signs(vectors)
    residual = a @ vectors - vectors * values[np.newaxis, :]
    return SpectrumResult(values, vectors, float(np.abs(residual).max()))


def _householder_tridiagonal(a: np.ndarray):
    """Reduce to tridiagonal form; returns (diagonal, subdiagonal, transform)."""
    n = a.shape[0]
    a = a.copy()
    q = np.eye(n)
    for k in range(n - 2):
        x = a[k + 1 :, k]
        norm_x = math.sqrt(float(x @ x))
        if norm_x == 0.0:
            continue
        alpha = -math.copysign(norm_x, x[0] if x[0] != 0.0 else 1.0)
        v = x.copy()
        v[0] -= alpha
        vnorm2 = float(v @ v)
        if vnorm2 == 0.0:
            continue
        beta = 2.0 / vnorm2
        # Symmetric rank-2 update of the trailing block: A <- P A P.
        u = beta * (a[k + 1 :, k + 1 :] @ v)
        w = u - (0.5 * beta * float(u @ v)) * v
        a[k + 1 :, k + 1 :] -= np.outer(v, w) + np.outer(w, v)
        a[k + 1 :, k] = 0.0
        a[k, k + 1 :] = 0.0
        a[k + 1, k] = alpha
        a[k, k + 1] = alpha
        # Accumulate the transform on the right: Q <- Q P.
        q[:, k + 1 :] -= np.outer(q[:, k + 1 :] @ v, beta * v)
    return np.diag(a).copy(), np.diag(a, -1).copy(), q


def _ql_implicit(d: np.ndarray, e: np.ndarray, z: np.ndarray) -> None:
    """Implicit-shift QL on tridiagonal (d, e); rotations accumulate into z.

    ``d`` is overwritten with eigenvalues (unsorted); ``e`` is destroyed.
    Fails hard after the per-eigenvalue iteration cap: non-convergence here
    signals a bug, not an input condition.
    """
    n = d.size
    e = np.append(e, 0.0)
    scale = float(np.abs(d).max(initial=0.0) + np.abs(e).max(initial=0.0))
    if scale == 0.0:
        return
    for l in range(n):
        iterations = 0
        while True:
            for m in range(l, n - 1):
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= _QL_TOL * (dd if dd > 0.0 else scale):
                    break
            else:
                m = n - 1
            if m == l:
                break
            iterations += 1
            if iterations > _QL_MAX_ITER:
                raise RuntimeError(
                    f"QL iteration failed to converge for eigenvalue index {l}"
                )
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                z[:, i : i + 2] = z[:, i : i + 2] @ np.array(((c, s), (-s, c)))
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0


def _degenerate_groups(values: np.ndarray, tol: float):
    """Index ranges of consecutive eigenvalues within ``tol`` of each other."""
    scale = max(1.0, float(np.abs(values).max(initial=0.0)))
    start = 0
    for i in range(1, values.size + 1):
        if i == values.size or values[i] - values[i - 1] > tol * scale:
            if i - start >= 2:
                yield start, i
            start = i


def _canonicalize_degenerate_groups(values: np.ndarray, vectors: np.ndarray) -> None:
    """Rotate each degenerate eigenspace basis to minimize sum(x**4).

    Pairwise Jacobi sweeps with a closed-form optimal angle per pair; a no-op
    on eigenspaces where the quartic is rotation-invariant (e.g. cycle
    sine/cosine pairs).  Columns within a group are then ordered
    lexicographically by their sign-canonicalized entries.
    """
    for start, stop in _degenerate_groups(values, _DEGENERACY_TOL):
        block = vectors[:, start:stop]
        g = stop - start
        for _ in range(100):
            improved = False
            for p in range(g - 1):
                for q in range(p + 1, g):
                    x = block[:, p].copy()
                    y = block[:, q].copy()
                    a = x * x - y * y
                    b = 2.0 * x * y
                    saa = float(a @ a)
                    sbb = float(b @ b)
                    sab = float(a @ b)
                    # Pair objective: sum((A cos2t + B sin2t)^2)
                    #               = (saa+sbb)/2 + (saa-sbb)/2 cos4t + sab sin4t.
                    pcoef = 0.5 * (saa - sbb)
                    amplitude = math.hypot(pcoef, sab)
                    if amplitude <= 1e-13 * (saa + sbb + 1e-300):
                        continue
                    theta = 0.25 * (math.atan2(sab, pcoef) + math.pi)
                    # Fold to the smallest equivalent rotation (period pi/2);
                    # this exact minimizer never increases the quartic, so we
                    # iterate until the angles themselves vanish and degenerate
                    # coordinates agree to full precision.
                    theta = (theta + math.pi / 4.0) % (math.pi / 2.0) - math.pi / 4.0
                    if abs(theta) <= 1e-12:
                        continue
                    c = math.cos(theta)
                    s = math.sin(theta)
                    block[:, p] = c * x + s * y
                    block[:, q] = -s * x + c * y
                    improved = True
            if not improved:
                break
        # Deterministic column order inside the group.
        cols = []
        for j in range(g):
            col = block[:, j].copy()
            _canonicalize_signs(col.reshape(-1, 1))
            cols.append(col)
        order = sorted(range(g), key=lambda j: tuple(np.round(cols[j], 9)))
        vectors[:, start:stop] = np.column_stack([cols[j] for j in order])


def _canonicalize_signs(vectors: np.ndarray) -> None:
    """Flip columns so the first entry larger than the tolerance is positive."""
    for j in range(vectors.shape[1]):
        col = vectors[:, j]
        nz = np.nonzero(np.abs(col) > _SIGN_TOL)[0]
        if nz.size and col[nz[0]] < 0:
            vectors[:, j] = -col


# -- graph-level spectral quantities ----------------------------------------


def graph_spectrum(g: Graph, normalized: bool = False) -> SpectrumResult:
    """Spectrum of the (normalized) Laplacian, cached on the graph."""
    key = "normalized" if normalized else "plain"
    cached = g._spectrum_cache.get(key)
    if cached is None:
        matrix = g.normalized_laplacian() if normalized else g.laplacian()
        cached = eigen_sym(matrix)
        g._spectrum_cache[key] = cached
    return cached


def _require_order(g: Graph) -> None:
    if g.n < 2:
        raise ValueError("spectral quantities need at least 2 vertices")


def lambda2(g: Graph) -> float:
    """Algebraic connectivity: second-smallest Laplacian eigenvalue."""
    _require_order(g)
    return float(graph_spectrum(g).eigenvalues[1])


def lambda_n(g: Graph) -> float:
    """Largest Laplacian eigenvalue."""
    _require_order(g)
    return float(graph_spectrum(g).eigenvalues[-1])


def mu2(g: Graph) -> float:
    """Second-smallest normalized-Laplacian eigenvalue."""
    _require_order(g)
    return float(graph_spectrum(g, normalized=True).eigenvalues[1])


def mu_n(g: Graph) -> float:
    """Largest normalized-Laplacian eigenvalue."""
    _require_order(g)
    return float(graph_spectrum(g, normalized=True).eigenvalues[-1])


def fiedler_vector(g: Graph, normalized: bool = False) -> np.ndarray:
    """Unit eigenvector for the second-smallest (normalized) eigenvalue.

    Requires a connected graph; the sign is canonicalized so the first entry
    above the tolerance is positive.
    """
    _require_order(g)
    if not g.is_connected():
        raise ValueError("Fiedler vector undefined: graph is disconnected")
    spec = graph_spectrum(g, normalized=normalized)
    return spec.eigenvectors[:, 1].copy()
