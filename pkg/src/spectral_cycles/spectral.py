"""Spectral radius by power iteration, plus the bound and threshold checks.

The iteration runs on A + I restricted to each connected component: the shift
makes the dominant eigenvalue strictly larger in modulus than every other one
even on bipartite components, where iterating A itself oscillates between the
two sides and never settles. Residuals are measured against A, so the reported
accuracy is unaffected by the shift.
"""

from __future__ import annotations

import math
import threading
from typing import NamedTuple

import numpy as np

from .families import (
    extremal_graph,
    is_clique_with_tail,
    is_complete,
    is_star,
    is_star_with_tail,
)
from .graphs import Graph, components, delete_vertices, is_connected

DEFAULT_TOL = 1e-10
ITERATION_CAP = 10**6


class ConvergenceError(RuntimeError):
    """Power iteration hit its cap before reaching the requested residual."""

    def __init__(self, iterations: int, residual: float):
        super().__init__(
            f"power iteration did not converge in {iterations} steps "
            f"(best residual {residual:.3e})"
        )
        self.iterations = iterations
        self.residual = residual


class SpectralResult(NamedTuple):
    rho: float
    perron: np.ndarray
    residual: float
    iterations: int


def _iterate(matrix: np.ndarray, tol: float, max_iter: int):
    """Power iteration on matrix+I; returns (rho, unit vector, residual, steps)."""
    n = matrix.shape[0]
    x = np.full(n, 1.0 / math.sqrt(n))
    best = math.inf
    for step in range(1, max_iter + 1):
        z = matrix @ x
        rho = float(x @ z)
        residual = float(np.max(np.abs(z - rho * x)))
        if residual <= tol:
            return rho, x, residual, step
        best = min(best, residual)
        y = z + x
        x = y / np.linalg.norm(y)
    raise ConvergenceError(max_iter, best)


def spectral_radius(
    g: Graph, tol: float = DEFAULT_TOL, max_iter: int = ITERATION_CAP
) -> SpectralResult:
    """Largest adjacency eigenvalue with a witnessing Perron vector.

    The vector is supported on one component attaining the maximum and is
    zero elsewhere; it has unit 2-norm. Edgeless graphs return rho = 0.0
    exactly with zero iterations.
    """
    if g.n < 1:
        raise ValueError("spectral radius needs at least one vertex")
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    comps = [c for c in components(g) if len(c) >= 2]
    best = None
    for comp in comps:
        sub = g.adjacency_matrix()[np.ix_(comp, comp)]
        if not sub.any():
            continue
        rho, vec, residual, steps = _iterate(sub, tol, max_iter)
        if best is None or rho > best[0]:
            best = (rho, comp, vec, residual, steps)
    if best is None:
        perron = np.full(g.n, 1.0 / math.sqrt(g.n))
        perron.flags.writeable = False
        return SpectralResult(0.0, perron, 0.0, 0)
    rho, comp, vec, residual, steps = best
    perron = np.zeros(g.n)
    perron[comp] = np.abs(vec)
    perron /= np.linalg.norm(perron)
    perron.flags.writeable = False
    return SpectralResult(rho, perron, residual, steps)


def rayleigh_quotient(g: Graph, x) -> float:
    """x'Ax / x'x for a nonzero vector x of length n."""
    vec = np.asarray(x, dtype=float)
    if vec.shape != (g.n,):
        raise ValueError(f"vector has shape {vec.shape}, graph has {g.n} vertices")
    den = float(vec @ vec)
    if den == 0.0:
        raise ValueError("Rayleigh quotient needs a nonzero vector")
    num = 2.0 * sum(vec[u] * vec[v] for u, v in g.edges())
    return num / den


class DeletionBound(NamedTuple):
    lhs: float
    rhs: float
    holds: bool


def vertex_deletion_bound(g: Graph, v: int, tol: float = 1e-7) -> DeletionBound:
    """Check rho(G)^2 <= rho(G-v)^2 + 2 d(v) for one vertex."""
    if g.n < 2:
        raise ValueError("vertex deletion bound needs n >= 2")
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    lhs = spectral_radius(g).rho ** 2
    rhs = spectral_radius(delete_vertices(g, [v])[0]).rho ** 2 + 2 * g.degree(v)
    return DeletionBound(lhs, rhs, lhs <= rhs + tol)


_BATCH_CAP = 3000


def deletion_bounds_all(g: Graph, tol: float = 1e-7) -> list[DeletionBound]:
    """vertex_deletion_bound for every vertex, batched over one-vertex deletions.

    All n deleted-vertex matrices iterate together; any row that fails to
    converge inside the batch cap falls back to the scalar per-component path,
    which also covers deletions that disconnect the graph with nearly tied
    component radii.
    """
    n = g.n
    if n < 2:
        raise ValueError("vertex deletion bound needs n >= 2")
    lhs = spectral_radius(g).rho ** 2
    if n <= 9:
        rows = [spectral_radius(delete_vertices(g, [v])[0]).rho for v in range(n)]
    else:
        rows = _batched_deleted_rho(g)
    out = []
    for v in range(n):
        rhs = rows[v] ** 2 + 2 * g.degree(v)
        out.append(DeletionBound(lhs, rhs, lhs <= rhs + tol))
    return out


def _batched_deleted_rho(g: Graph) -> list[float]:
    n = g.n
    a = g.adjacency_matrix()
    keep = [[u for u in range(n) if u != v] for v in range(n)]
    stack = np.stack([a[np.ix_(k, k)] for k in keep])
    m = n - 1
    x = np.full((n, m), 1.0 / math.sqrt(m))
    rho = np.zeros(n)
    done = np.zeros(n, dtype=bool)
    for _ in range(_BATCH_CAP):
        z = np.einsum("nij,nj->ni", stack, x)
        rho = np.einsum("ni,ni->n", x, z)
        residual = np.max(np.abs(z - rho[:, None] * x), axis=1)
        done = residual <= DEFAULT_TOL
        if done.all():
            break
        y = z + x
        x = y / np.linalg.norm(y, axis=1, keepdims=True)
    out = []
    for v in range(n):
        if done[v]:
            out.append(float(rho[v]))
        else:
            out.append(spectral_radius(delete_vertices(g, [v])[0]).rho)
    return out


class HongVerdict(NamedTuple):
    kind: str  # holds | exception | violation
    exception: str | None
    rho: float
    bound: float


def hong_bound_check(g: Graph, tol: float = 1e-8) -> HongVerdict:
    """Check rho <= sqrt(2m - n) for connected graphs on n >= 10 vertices.

    Graphs exceeding the bound are classified against the four families the
    inequality excludes: the star, the star with a tail, the complete graph,
    and the clique with a tail. Anything else over the bound is a violation.
    """
    if g.n < 10:
        raise ValueError(f"bound check applies to n >= 10, got n={g.n}")
    if not is_connected(g):
        raise ValueError("bound check applies to connected graphs")
    rho = spectral_radius(g).rho
    bound = math.sqrt(2 * g.m - g.n)
    if rho <= bound + tol:
        return HongVerdict("holds", None, rho, bound)
    for name, recog in (
        ("star", is_star),
        ("star_with_tail", is_star_with_tail),
        ("complete", is_complete),
        ("clique_with_tail", is_clique_with_tail),
    ):
        if recog(g):
            return HongVerdict("exception", name, rho, bound)
    return HongVerdict("violation", None, rho, bound)


_threshold_cache: dict[tuple[int, float], float] = {}
_threshold_lock = threading.Lock()


def threshold_rho(n: int, tol: float = DEFAULT_TOL) -> float:
    """Spectral radius of the order-n extremal graph, memoized."""
    key = (n, tol)
    with _threshold_lock:
        hit = _threshold_cache.get(key)
    if hit is not None:
        return hit
    value = spectral_radius(extremal_graph(n), tol=tol).rho
    with _threshold_lock:
        _threshold_cache[key] = value
    return value
