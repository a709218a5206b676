"""Lagrangians of 3-graphs: evaluation, maximisation and certified upper bounds.

The Lagrangian polynomial of ``H`` is ``sum over edges ijk of x_i x_j x_k``;
its maximum over the probability simplex is the Lagrangian ``lambda(H)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from .errors import DepthExceeded, DimensionMismatch
from .hypergraph import ThreeGraph

SUM_TOL = 1e-12
SUPPORT_TOL = 1e-10


def _edge_array(h: ThreeGraph) -> np.ndarray:
    return np.array(h.edges, dtype=np.int64).reshape(-1, 3)


def _check(h: ThreeGraph, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (h.n,):
        raise DimensionMismatch(f"weight vector of length {x.shape} for a graph on {h.n} vertices")
    return x


def evaluate(h: ThreeGraph, x) -> float:
    x = _check(h, x)
    e = _edge_array(h)
    if not len(e):
        return 0.0
    return float(math.fsum(x[e[:, 0]] * x[e[:, 1]] * x[e[:, 2]]))


def gradient(h: ThreeGraph, x) -> np.ndarray:
    x = _check(h, x)
    e = _edge_array(h)
    g = np.zeros(h.n)
    if len(e):
        a, b, c = x[e[:, 0]], x[e[:, 1]], x[e[:, 2]]
        np.add.at(g, e[:, 0], b * c)
        np.add.at(g, e[:, 1], a * c)
        np.add.at(g, e[:, 2], a * b)
    return g


def project_simplex(v) -> np.ndarray:
    """Euclidean projection onto the probability simplex (sort-and-threshold)."""
    v = np.asarray(v, dtype=float)
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    idx = np.arange(1, len(v) + 1)
    rho = np.nonzero(u - css / idx > 0)[0][-1]
    theta = css[rho] / (rho + 1)
    return np.maximum(v - theta, 0.0)


@dataclass
class LagrangianResult:
    lower: float
    maximizer: np.ndarray
    certified_upper: Optional[float] = None
    iterations: int = 0
    restarts: int = 0

    def to_json(self) -> dict:
        return {
            "lower": self.lower,
            "maximizer": [float(v) for v in self.maximizer],
            "certified_upper": self.certified_upper,
            "iterations": self.iterations,
            "restarts": self.restarts,
        }


def _ascend(h: ThreeGraph, x: np.ndarray, max_iters: int):
    val = evaluate(h, x)
    it = 0
    for it in range(1, max_iters + 1):
        g = gradient(h, x)
        step = 1.0
        improved = False
        while step > 1e-20:
            y = project_simplex(x + step * g)
            new = evaluate(h, y)
            if new > val:
                improved = True
                break
            step *= 0.5
        if not improved or new - val < 1e-14:
            if improved:
                x, val = y, new
            break
        x, val = y, new
    return x, val, it


def _kkt_polish(h: ThreeGraph, x: np.ndarray) -> np.ndarray:
    """Newton steps on the stationarity system restricted to the support.

    On the support ``S`` a local maximum satisfies ``grad_i = 3*lambda`` for
    all ``i`` in ``S`` and ``sum x = 1``; the step is kept only if it stays
    feasible and does not lower the value.
    """
    support = np.nonzero(x > SUPPORT_TOL)[0]
    k = len(support)
    if k < 2:
        return x
    e = _edge_array(h)
    best, best_val = x, evaluate(h, x)
    y = x.copy()
    for _ in range(30):
        g = gradient(h, y)
        hess = np.zeros((h.n, h.n))
        for a, b, c in e:
            for u, v, w in ((a, b, c), (a, c, b), (b, c, a)):
                hess[u, v] += y[w]
                hess[v, u] += y[w]
        hs = hess[np.ix_(support, support)]
        # unknowns: x_S and the multiplier mu, with grad_S - mu = 0, sum x_S = 1
        jac = np.zeros((k + 1, k + 1))
        jac[:k, :k] = hs
        jac[:k, k] = -1.0
        jac[k, :k] = 1.0
        mu = float(np.mean(g[support]))
        rhs = -np.concatenate([g[support] - mu, [y[support].sum() - 1.0]])
        try:
            delta = np.linalg.solve(jac, rhs)
        except np.linalg.LinAlgError:
            break
        z = y.copy()
        z[support] += delta[:k]
        if np.any(z < 0):
            break
        val = evaluate(h, z)
        if val + 1e-15 < best_val:
            break
        y = z
        if val >= best_val:
            best, best_val = z.copy(), val
        if np.max(np.abs(delta[:k])) < 1e-15:
            break
    return best


def _edge_weight(h: ThreeGraph, x: np.ndarray, v: int) -> float:
    """Sum over edges ``v k k'`` of ``x_k x_k'``."""
    return float(gradient(h, x)[v])


def support_shift(h: ThreeGraph, x: np.ndarray) -> np.ndarray:
    """Move weight between positive vertices not joined by a positive edge.

    For such a pair ``i, j`` the value changes by ``x_j (s_i - s_j)`` when all
    of ``x_j`` moves to ``i``, so moving to the larger incident sum never
    decreases it. Ties move to the lower index. Repeats until every pair of
    positive vertices lies in an edge whose vertices are all positive.
    """
    x = np.where(x > SUPPORT_TOL, x, 0.0)
    x = x / x.sum()
    edges = h.edges
    while True:
        pos = [v for v in range(h.n) if x[v] > 0]
        covered = set()
        for a, b, c in edges:
            if x[a] > 0 and x[b] > 0 and x[c] > 0:
                covered.update(((a, b), (a, c), (b, c)))
        pair = next(((i, j) for k, i in enumerate(pos) for j in pos[k + 1:] if (i, j) not in covered), None)
        if pair is None:
            return x
        i, j = pair
        si, sj = _edge_weight(h, x, i), _edge_weight(h, x, j)
        keep, drop = (i, j) if si >= sj else (j, i)
        x = x.copy()
        x[keep] += x[drop]
        x[drop] = 0.0


def _starts(h: ThreeGraph, restarts: int, rng: np.random.Generator) -> List[np.ndarray]:
    n = h.n
    starts = [np.full(n, 1.0 / n)]
    for e in h.edges:
        x = np.zeros(n)
        x[list(e)] = 1.0 / 3
        starts.append(x)
    while len(starts) < restarts:
        starts.append(rng.dirichlet(np.ones(n)))
    return starts[:max(restarts, 1)]


def maximize(h: ThreeGraph, restarts: int = 200, max_iters: int = 2000, seed: int = 0) -> LagrangianResult:
    """Multi-start projected gradient ascent for ``lambda(H)``.

    Starts: the uniform vector, the centroid of each edge, then Dirichlet
    draws until ``restarts`` starts are used. Each run is followed by the
    support-shifting step and a Newton polish on the support; the best
    point found is returned.
    """
    if restarts < 1:
        raise ValueError("restarts must be at least 1")
    n = h.n
    if n == 0:
        return LagrangianResult(0.0, np.zeros(0), restarts=0)
    rng = np.random.default_rng(seed)
    best_x, best_val, total = None, -1.0, 0
    for x0 in _starts(h, restarts, rng):
        x, val, it = _ascend(h, x0, max_iters)
        total += it
        for _ in range(3):
            shifted = support_shift(h, x)
            y, _, it = _ascend(h, shifted, max_iters)
            total += it
            y = _kkt_polish(h, y)
            if np.allclose(y, x, atol=1e-15):
                x = y
                break
            x = y
        x = support_shift(h, x)
        val = evaluate(h, x)
        if val > best_val + 1e-15:
            best_x, best_val = x, val
    return LagrangianResult(best_val, best_x, iterations=total, restarts=restarts)


# -- certification -------------------------------------------------------------

_DENOM_BITS = 62
_ONE = np.uint64(1) << np.uint64(_DENOM_BITS)
_U = 2.0 ** -53


def _polar_tensor(edges: np.ndarray, verts: np.ndarray) -> np.ndarray:
    """Bernstein coefficients of the Lagrangian on the simplex spanned by ``verts``.

    ``verts`` has one cell vertex per row. Entry ``[j, k, l]`` is the
    symmetric trilinear (polar) form evaluated at vertices ``j, k, l``; over
    the cell the polynomial is bounded by the largest entry.
    """
    a = verts[:, edges[:, 0]]
    b = verts[:, edges[:, 1]]
    c = verts[:, edges[:, 2]]
    t = (np.einsum("je,ke,le->jkl", a, b, c) + np.einsum("je,ke,le->jkl", a, c, b)
         + np.einsum("je,ke,le->jkl", b, a, c) + np.einsum("je,ke,le->jkl", b, c, a)
         + np.einsum("je,ke,le->jkl", c, a, b) + np.einsum("je,ke,le->jkl", c, b, a))
    return t / 6.0


def _cell_bounds(edges: np.ndarray, verts: np.ndarray):
    """Rigorous upper bound over the cell, and the best value seen at a sample point."""
    m = len(edges)
    bern = float(_polar_tensor(edges, verts).max())
    lo, hi = verts.min(axis=0), verts.max(axis=0)
    box = float(np.sum(hi[edges[:, 0]] * hi[edges[:, 1]] * hi[edges[:, 2]]))
    # every term is a non-negative product, so the relative rounding error of
    # each sum is at most (terms + factors + conversion) unit roundoffs
    slack = 1.0 + 4 * (6 * m + 8) * _U
    upper = min(bern, box) * slack
    centroid = verts.mean(axis=0)
    corners = np.einsum("je,je,je->j", verts[:, edges[:, 0]], verts[:, edges[:, 1]], verts[:, edges[:, 2]])
    cval = float(np.sum(centroid[edges[:, 0]] * centroid[edges[:, 1]] * centroid[edges[:, 2]]))
    sample = max(float(corners.max()), cval) / slack
    return upper, sample


@dataclass
class Certificate:
    certified: bool
    cells: int = 0
    max_depth: int = 0
    witness: Optional[List[float]] = field(default=None)


def certify(h: ThreeGraph, bound: float, depth: int = 200, max_cells: int = 2_000_000) -> Certificate:
    """Try to prove ``lambda(H) <= bound`` by subdividing the simplex.

    Cells are simplices bisected at the midpoint of their longest edge, with
    vertex coordinates kept as exact dyadic integers so the cells tile the
    simplex without gaps. On each cell the bound is the smaller of the
    Bernstein (polar form) bound and the box bound ``sum u_i u_j u_k`` over
    coordinate maxima, inflated by an a-priori rounding-error factor.

    Returns ``certified=False`` with a witness point when some sample point
    already exceeds ``bound``; raises :class:`DepthExceeded` when unresolved
    cells remain at ``depth`` or the cell budget runs out.
    """
    if bound < 0:
        raise ValueError("bound must be non-negative")
    n = h.n
    edges = _edge_array(h)
    if not len(edges) or n < 3:
        return Certificate(True, cells=1)
    stack = [(np.eye(n, dtype=np.uint64) * _ONE, 0)]
    cells = 0
    deepest = 0
    scale = float(_ONE)
    while stack:
        ints, d = stack.pop()
        cells += 1
        deepest = max(deepest, d)
        verts = ints.astype(float) / scale
        upper, sample = _cell_bounds(edges, verts)
        if upper <= bound:
            continue
        if sample > bound:
            return Certificate(False, cells, deepest, [float(v) for v in verts.mean(axis=0)])
        if d >= depth or cells >= max_cells:
            raise DepthExceeded(f"could not certify lambda <= {bound} within depth {depth}", unresolved=len(stack) + 1)
        diff = verts[:, None, :] - verts[None, :, :]
        lengths = np.einsum("ijk,ijk->ij", diff, diff)
        i, j = np.unravel_index(int(np.argmax(lengths)), lengths.shape)
        total = ints[i] + ints[j]
        if np.any(total & np.uint64(1)):
            raise DepthExceeded("cell vertices reached the dyadic resolution limit", unresolved=len(stack) + 1)
        mid = total >> np.uint64(1)
        left, right = ints.copy(), ints.copy()
        left[j] = mid
        right[i] = mid
        stack.append((right, d + 1))
        stack.append((left, d + 1))
    return Certificate(True, cells, deepest)


def certify_upper_bound(h: ThreeGraph, bound: float, depth: int = 200) -> bool:
    return certify(h, bound, depth).certified
