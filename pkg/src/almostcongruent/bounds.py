"""Lower-bound constructions, exact upper bounds on h(n, T), and blow-ups."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .configurations import regular_polygon
from .errors import DivisibilityViolation, RadiusTooLarge, TypeMismatch
from .geometry import (
    TOL, PointConfig, ToleranceParams, Triangle, TriangleType, classify_triangle,
    congruence_hypergraph, decide_congruent, dist, registration_error,
)

KINDS = ("a", "b", "c", "d", "e", "equilateral")

# cluster weights and divisibility per construction kind
_WEIGHTS: Dict[str, Tuple[Fraction, ...]] = {
    "a": (Fraction(1, 4),) * 4,
    "b": (Fraction(2, 9),) * 3 + (Fraction(1, 3),),
    "c": (Fraction(1, 7),) * 7,
    "d": (Fraction(1, 5),) * 5,
    "e": (Fraction(1, 3),) * 3,
    "equilateral": (Fraction(1, 3),) * 3,
}
_DIVISOR = {"a": 4, "b": 9, "c": 7, "d": 5, "e": 3, "equilateral": 1}

_GOLDEN = (TriangleType.GOLDEN_108, TriangleType.GOLDEN_72)


@dataclass(frozen=True)
class Citation:
    constant: str
    value: Fraction
    density: Fraction
    reference: str

    def to_json(self) -> dict:
        return {"constant": self.constant, "value": str(self.value), "density": str(self.density),
                "reference": self.reference}


_FR_VAUGHAN = ("V. Falgas-Ravry and E. R. Vaughan, Applications of the semi-definite method to the "
               "Turan density problem for 3-graphs, Combinatorics, Probability and Computing 22 (2013), "
               "no. 1, 21-54; flag algebra computation")

# Turan densities consumed as constants; density = pi / 6
CITATIONS = {
    "F32_J4": Citation("pi({F32, J4})", Fraction(3, 8), Fraction(1, 16), _FR_VAUGHAN),
    "K4minus_F32_C5": Citation("pi({K4_3minus, F32, C5})", Fraction(12, 49), Fraction(2, 49), _FR_VAUGHAN),
}


def s_of_n(n: int) -> int:
    if n < 0:
        raise ValueError("n must be non-negative")
    return (n // 3) * ((n + 1) // 3) * ((n + 2) // 3)


# -- constructions -------------------------------------------------------------

@dataclass(frozen=True)
class ClusterConstruction:
    kind: str
    triangle: Triangle
    centers: PointConfig
    sizes: Tuple[int, ...]
    radius: float
    eps: float = 1e-3

    @property
    def n(self) -> int:
        return sum(self.sizes)

    def to_json(self) -> dict:
        return {"kind": self.kind, "triangle": self.triangle.to_json(), "centers": self.centers.to_json()["points"],
                "sizes": list(self.sizes), "radius": self.radius, "eps": self.eps, "n": self.n}


def _expected_kind(tt: TriangleType) -> set:
    kinds = {"e"}
    if tt.is_right:
        kinds.add("a")
    if tt is TriangleType.T120_30_30:
        kinds.add("b")
    if tt is TriangleType.HEPTAGONAL:
        kinds.add("c")
    if tt in _GOLDEN:
        kinds.add("d")
    if tt is TriangleType.EQUILATERAL:
        kinds.add("equilateral")
    return kinds


def construction_centers(kind: str, triangle: Triangle) -> PointConfig:
    a, b, c = triangle.sides
    if kind == "a":
        return PointConfig(((0.0, 0.0), (a, 0.0), (0.0, b), (a, b)))
    if kind == "b":
        h = c * math.sqrt(3) / 2
        return PointConfig(((0.0, 0.0), (c, 0.0), (c / 2, h), (c / 2, h / 3)))
    if kind == "c":
        return regular_polygon(7, a)
    if kind == "d":
        return regular_polygon(5, a)
    if kind in ("e", "equilateral"):
        return PointConfig(triangle.vertices())
    raise ValueError(f"unknown construction kind {kind!r}")


def _triple_count(sizes: Sequence[int], triples: Sequence[Tuple[int, int, int]]) -> int:
    return sum(sizes[i] * sizes[j] * sizes[k] for i, j, k in triples)


def congruent_center_triples(centers: PointConfig, triangle: Triangle, tol: float = TOL) -> List[Tuple[int, int, int]]:
    pts = centers.points
    return [t for t in itertools.combinations(range(len(pts)), 3)
            if decide_congruent(*(pts[i] for i in t), triangle, tol)]


def distribute(kind: str, n: int, triples: Sequence[Tuple[int, int, int]]) -> Tuple[int, ...]:
    """Cluster sizes for ``n`` points: proportional floors, then the leftover
    points one at a time to the cluster raising the count most (ties: the
    smaller cluster, then the lower index)."""
    sizes = [math.floor(w * n) for w in _WEIGHTS[kind]]
    for _ in range(n - sum(sizes)):
        def score(i):
            trial = sizes.copy()
            trial[i] += 1
            return (_triple_count(trial, triples), -sizes[i], -i)
        sizes[max(range(len(sizes)), key=score)] += 1
    return tuple(sizes)


def _margin(centers: PointConfig, triangle: Triangle, congruent: Sequence[Tuple[int, int, int]]) -> float:
    """Smallest registration error over the center triples not congruent to the triangle."""
    pts = centers.points
    good = set(congruent)
    return min((registration_error(*(pts[i] for i in t), triangle)
                for t in itertools.combinations(range(len(pts)), 3) if t not in good), default=math.inf)


@lru_cache(maxsize=256)
def _geometry(kind: str, triangle: Triangle):
    centers = construction_centers(kind, triangle)
    triples = tuple(congruent_center_triples(centers, triangle))
    return centers, triples, _margin(centers, triangle, triples)


def build_construction(kind: str, triangle: Triangle, n: int, eps: float = 1e-3,
                       strict: bool = True) -> ClusterConstruction:
    """Cluster construction of the given kind with ``n`` points in total.

    With ``strict`` the divisibility condition of the kind is enforced;
    otherwise leftover points are spread greedily (a heuristic lower bound).
    The radius is ``min(eps'/4, margin/8)``, where ``margin`` is the smallest
    registration error among non-congruent center triples.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown construction kind {kind!r}")
    if n < 0:
        raise ValueError("n must be non-negative")
    tt = classify_triangle(triangle.sides)
    if kind not in _expected_kind(tt):
        raise TypeMismatch(f"construction ({kind}) does not apply to a {tt.value} triangle")
    if strict and n % _DIVISOR[kind]:
        raise DivisibilityViolation(f"construction ({kind}) needs n divisible by {_DIVISOR[kind]}, got {n}")
    centers, triples, margin = _geometry(kind, triangle)
    sizes = distribute(kind, n, triples)
    eps_p = ToleranceParams(eps).eps_prime(triangle)
    radius = min(eps_p / 4, margin / 8)
    if not margin > 2 * (eps_p + radius) or not 2 * radius + 2 * eps_p < triangle.a:
        raise ValueError(f"eps={eps} is too large for construction ({kind})")
    return ClusterConstruction(kind, triangle, centers, sizes, radius, eps)


def count_construction(c: ClusterConstruction, triangle: Optional[Triangle] = None) -> int:
    """Exact number of eps-congruent triples: sum over congruent center triples of the size products."""
    triangle = triangle or c.triangle
    return _triple_count(c.sizes, congruent_center_triples(c.centers, triangle))


def _disk_samples(rng: np.random.Generator, center, radius: float, k: int):
    r = radius * np.sqrt(rng.random(k))
    t = 2 * math.pi * rng.random(k)
    return [(center[0] + float(x), center[1] + float(y)) for x, y in zip(r * np.cos(t), r * np.sin(t))]


def instantiate(c: ClusterConstruction, seed: int = 0) -> PointConfig:
    rng = np.random.default_rng(seed)
    pts = []
    for center, k in zip(c.centers.points, c.sizes):
        pts.extend(_disk_samples(rng, center, c.radius, k))
    return PointConfig(tuple(pts))


def sample_and_recount(c: ClusterConstruction, triangle: Optional[Triangle] = None, eps: Optional[float] = None,
                       seed: int = 0) -> int:
    """Place random points in each cluster disk and count eps-congruent triples geometrically."""
    triangle = triangle or c.triangle
    eps = c.eps if eps is None else eps
    if eps < c.eps:
        # smaller eps shrinks eps' below the radius safety factor
        raise ValueError("eps must be at least the construction's eps")
    h = congruence_hypergraph(instantiate(c, seed), triangle, ToleranceParams(eps), mode="eps")
    return h.num_edges


def blow_up(points: PointConfig, counts_per_point: int, radius: float, seed: int = 0) -> PointConfig:
    """Replace every point by ``counts_per_point`` points in a disk of ``radius`` around it."""
    if counts_per_point < 1:
        raise ValueError("counts_per_point must be positive")
    pts = points.points
    if len(pts) >= 2:
        dmin = min(dist(p, q) for p, q in itertools.combinations(pts, 2))
        if not radius < dmin / 4:
            raise RadiusTooLarge(f"radius {radius} is not below a quarter of the minimum distance {dmin}")
    if radius <= 0:
        raise RadiusTooLarge("radius must be positive")
    rng = np.random.default_rng(seed)
    out = []
    for p in pts:
        out.extend(_disk_samples(rng, p, radius, counts_per_point))
    return PointConfig(tuple(out))


# -- upper bounds --------------------------------------------------------------

@dataclass
class BoundReport:
    triangle_type: TriangleType
    n: int
    lower: int
    upper: int
    density: Fraction
    provenance: str
    citation: Optional[Citation] = None
    construction: Optional[str] = None
    evidence: dict = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    def to_json(self) -> dict:
        out = {"triangle_type": self.triangle_type.value, "n": self.n, "lower": self.lower, "upper": self.upper,
               "density": str(self.density), "upper_provenance": self.provenance, "construction": self.construction,
               "exact": self.exact, "evidence": self.evidence}
        if self.citation is not None:
            out["citation"] = self.citation.to_json()
        return out


# densities proved by hand for each self-contained type; the computation must reproduce them
_CLAIMED = {
    TriangleType.RIGHT_30_60_90: Fraction(1, 16),
    TriangleType.T120_30_30: Fraction(4, 81),
    TriangleType.GOLDEN_108: Fraction(1, 25),
    TriangleType.GOLDEN_72: Fraction(1, 25),
    TriangleType.GENERIC: Fraction(1, 27),
}

CERT_SLACK = 1e-6
MAX_POINTS = 7


def lagrangian_density(triangle: Triangle, max_size: int = MAX_POINTS, restarts: int = 50, seed: int = 0) -> dict:
    """Maximum Lagrangian over the congruence graphs of all complete-shadow
    point sets of at most ``max_size`` points, with a certified upper bound.

    Returns ``{"lambda": best value, "certified": bound proved, "sets": per-set
    details}``; the certified bound is the best value plus ``CERT_SLACK``.
    """
    from .lagrangian import certify, maximize
    from .realizability import realizable_point_sets

    sets = realizable_point_sets(triangle, max_size)
    graphs = [congruence_hypergraph(cfg, triangle) for cfg in sets]
    values = [maximize(h, restarts=restarts, seed=seed).lower for h in graphs]
    best = max(values)
    bound = best + CERT_SLACK
    details = []
    for cfg, h, v in zip(sets, graphs, values):
        cert = certify(h, bound)
        if not cert.certified:
            raise RuntimeError(f"certification of {bound} failed on a {len(cfg)}-point set")
        details.append({"size": len(cfg), "edges": h.num_edges, "lambda": v, "cells": cert.cells})
    return {"lambda": best, "certified": bound, "sets": details}


def _best_construction(triangle: Triangle, tt: TriangleType, n: int) -> Tuple[str, int]:
    best = None
    kinds = _expected_kind(tt)
    if "equilateral" in kinds:
        kinds.discard("e")
    for kind in sorted(kinds):
        cnt = count_construction(build_construction(kind, triangle, n, strict=False))
        if best is None or cnt > best[1]:
            best = (kind, cnt)
    return best


def upper_bound(triangle: Triangle, n: int, max_size: int = MAX_POINTS, density_cache: Optional[dict] = None) -> BoundReport:
    """Lower and upper bounds on ``h(n, T)``.

    The upper bound is an integer: ``h`` counts triangles, so any real bound
    ``d * n^3`` gives ``floor(d * n^3)``. Self-contained routes use the
    certified Lagrangian density over the realisable point sets; the others
    use a cited Turan density.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    tt = classify_triangle(triangle.sides)
    kind, lower = _best_construction(triangle, tt, n)
    citation = None
    evidence: dict = {}
    if tt is TriangleType.EQUILATERAL:
        # F5 and K4_3minus are both forbidden, so the congruence graph is
        # cancellative and the cancellative extremal number applies
        density = Fraction(1, 27)
        upper = s_of_n(n)
        provenance = "SelfContained"
        evidence["rule"] = "s(n)"
    elif tt is TriangleType.HEPTAGONAL or (tt.is_right and tt is not TriangleType.RIGHT_30_60_90):
        citation = CITATIONS["K4minus_F32_C5" if tt is TriangleType.HEPTAGONAL else "F32_J4"]
        density = citation.density
        upper = math.floor(density * n ** 3)
        provenance = "ExternalCitation"
    else:
        info = density_cache.get(triangle.sides) if density_cache is not None else None
        if info is None:
            info = lagrangian_density(triangle, max_size)
            if density_cache is not None:
                density_cache[triangle.sides] = info
        claimed = _CLAIMED[tt]
        if abs(info["lambda"] - float(claimed)) > 1e-9:
            raise RuntimeError(f"computed density {info['lambda']} differs from {claimed}")
        density = claimed
        # rigorous: h <= certified * n^3, and certified is a float, so exact as a Fraction
        upper = math.floor(Fraction(info["certified"]) * n ** 3)
        provenance = "SelfContained"
        evidence = {"lambda": info["lambda"], "certified_lambda": info["certified"], "point_sets": len(info["sets"])}
    return BoundReport(tt, n, lower, upper, density, provenance, citation, kind, evidence)
