"""Exact realisability of dense 3-graphs by congruent copies of a triangle.

A dense graph can be placed vertex by vertex: the first point sits at the
origin, the second on the positive x-axis at one of the side lengths, and
every later vertex lies in an edge with two earlier ones, so it can only sit
at one of the (at most four) points completing that pair to a congruent
triangle. The search is therefore finite, and it decides exact
forbiddenness.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import AmbiguousDecision, NotDense
from .geometry import (
    TOL, Point, PointConfig, Triangle, TriangleType, candidate_positions, classify_triangle,
    congruence_hypergraph, congruence_residual, decide_congruent, dist, is_congruent,
)
from .hypergraph import TABLE_GRAPHS, ThreeGraph, is_dense, named, shadow_graph

AMBIGUITY_FACTOR = 1e3


@dataclass(frozen=True)
class Realization:
    """A placement of the vertices of ``graph`` making every edge congruent to ``triangle``."""

    graph: ThreeGraph
    triangle: Triangle
    points: Tuple[Point, ...]

    @property
    def config(self) -> PointConfig:
        return PointConfig(self.points, allow_coincident=True)

    @property
    def assignment(self) -> Dict[int, Point]:
        return dict(enumerate(self.points))

    def is_distinct(self, tol: float = TOL) -> bool:
        return all(dist(p, q) > tol for p, q in itertools.combinations(self.points, 2))

    def max_residual(self) -> float:
        return max((congruence_residual(*(self.points[v] for v in e), self.triangle) for e in self.graph.edges),
                   default=0.0)

    def recheck(self, tol: float = 10 * TOL) -> bool:
        """Independent check that every edge is congruent within ``tol``."""
        return all(is_congruent(*(self.points[v] for v in e), self.triangle, tol) for e in self.graph.edges)

    def to_json(self) -> dict:
        return {"points": [list(p) for p in self.points]}


@dataclass
class ForbiddenCatalog:
    triangle: Triangle
    triangle_type: TriangleType
    verdicts: Dict[str, Optional[Realization]] = field(default_factory=dict)

    def is_forbidden(self, name: str) -> bool:
        return self.verdicts[name] is None

    def to_json(self) -> dict:
        out = {}
        for name, wit in self.verdicts.items():
            out[name] = "forbidden" if wit is None else {"realizable": wit.to_json()}
        return {"triangle": {**self.triangle.to_json(), "type": self.triangle_type.value}, "verdicts": out}


def _normalise(points: Sequence[Point], tol: float) -> Tuple[Point, ...]:
    # p1 at the origin and p2 on the positive x-axis are fixed by the search,
    # leaving only the reflection in the x-axis
    for x, y in points:
        if abs(y) > tol:
            if y < 0:
                return tuple((px, -py) for px, py in points)
            break
    return tuple(points)


def _same_points(p: Sequence[Point], q: Sequence[Point], tol: float) -> bool:
    return all(dist(a, b) <= tol for a, b in zip(p, q))


def _completions(p: Point, q: Point, triangle: Triangle, tol: float, coarse: float) -> List[Point]:
    """Points ``r`` with ``pqr`` congruent to the triangle."""
    if dist(p, q) <= tol:
        return []
    out = []
    for r in candidate_positions(p, q, triangle.sides, tol):
        if decide_congruent(p, q, r, triangle, tol, coarse):
            out.append(r)
    return out


def find_realizations(h: ThreeGraph, triangle: Triangle, tol: float = TOL,
                      coarse: Optional[float] = None) -> List[Realization]:
    """Every realisation of ``h`` (coincident points allowed), up to isometry.

    Raises :class:`NotDense` if ``h`` has no dense ordering and
    :class:`~almostcongruent.errors.AmbiguousDecision` if a congruence test
    lands in the guard band ``(tol, coarse]``.
    """
    order = is_dense(h)
    if order is None or (h.n >= 3 and h.num_edges == 0):
        raise NotDense(f"{h!r} has no dense vertex ordering")
    coarse = AMBIGUITY_FACTOR * tol if coarse is None else coarse
    edges = h.edges
    pos = {v: i for i, v in enumerate(order)}
    # edges checked when the vertex at position i is placed
    closing: List[List[Tuple[int, int, int]]] = [[] for _ in order]
    for e in edges:
        closing[max(pos[v] for v in e)].append(e)
    cover: List[Optional[Tuple[int, int]]] = [None] * len(order)
    for i in range(2, len(order)):
        v = order[i]
        e = closing[i][0]
        cover[i] = tuple(u for u in e if u != v)

    found: List[Tuple[Point, ...]] = []
    placed: Dict[int, Point] = {}

    def consistent(i):
        for e in closing[i]:
            if not decide_congruent(*(placed[u] for u in e), triangle, tol, coarse):
                return False
        return True

    def place(i):
        if i == len(order):
            pts = _normalise([placed[v] for v in range(h.n)], tol)
            if not any(_same_points(pts, f, AMBIGUITY_FACTOR * tol) for f in found):
                found.append(pts)
            return
        v = order[i]
        if i == 0:
            options = [(0.0, 0.0)]
        elif i == 1:
            options = [(s, 0.0) for s in triangle.distinct_sides(tol)]
        else:
            x, y = cover[i]
            options = _completions(placed[x], placed[y], triangle, tol, coarse)
        for p in options:
            placed[v] = p
            if consistent(i):
                place(i + 1)
            del placed[v]

    if h.n == 0:
        return [Realization(h, triangle, ())]
    place(0)
    return [Realization(h, triangle, pts) for pts in found]


def is_exactly_forbidden(h: ThreeGraph, triangle: Triangle, tol: float = TOL) -> bool:
    return not find_realizations(h, triangle, tol)


def pick_witness(realizations: Sequence[Realization]) -> Optional[Realization]:
    """Prefer a realisation with pairwise distinct points."""
    for r in realizations:
        if r.is_distinct():
            return r
    return realizations[0] if realizations else None


def build_forbidden_catalog(triangle: Triangle, names: Sequence[str] = TABLE_GRAPHS,
                            tol: float = TOL) -> ForbiddenCatalog:
    cat = ForbiddenCatalog(triangle, classify_triangle(triangle.sides))
    for name in names:
        cat.verdicts[name] = pick_witness(find_realizations(named(name), triangle, tol))
    return cat


# -- complete-shadow point sets -----------------------------------------------

def _congruent_sets(p: Sequence[Point], q: Sequence[Point], tol: float) -> bool:
    """Whether two equal-size point sets are related by an isometry."""
    if len(p) != len(q):
        return False
    if len(p) <= 1:
        return True
    dp = sorted(dist(a, b) for a, b in itertools.combinations(p, 2))
    dq = sorted(dist(a, b) for a, b in itertools.combinations(q, 2))
    if any(abs(x - y) > tol for x, y in zip(dp, dq)):
        return False
    a0, a1 = p[0], p[1]
    d01 = dist(a0, a1)
    ux, uy = (a1[0] - a0[0]) / d01, (a1[1] - a0[1]) / d01
    local = [((x - a0[0]) * ux + (y - a0[1]) * uy, -(x - a0[0]) * uy + (y - a0[1]) * ux) for x, y in p]
    for i, j in itertools.permutations(range(len(q)), 2):
        b0, b1 = q[i], q[j]
        if abs(dist(b0, b1) - d01) > tol:
            continue
        vx, vy = (b1[0] - b0[0]) / d01, (b1[1] - b0[1]) / d01
        for sign in (1.0, -1.0):
            img = [(b0[0] + lx * vx - sign * ly * vy, b0[1] + lx * vy + sign * ly * vx) for lx, ly in local]
            if all(any(dist(m, t) <= tol for t in q) for m in img):
                return True
    return False


def distance_compatible(points: Sequence[Point], sides: Sequence[float], tol: float = TOL) -> bool:
    return all(any(abs(dist(p, q) - s) <= tol for s in sides) for p, q in itertools.combinations(points, 2))


def realizable_point_sets(triangle: Triangle, max_size: int = 7, tol: float = TOL) -> List[PointConfig]:
    """All point sets of size at most ``max_size`` whose congruence graph has
    complete shadow, up to isometry, ordered by size.

    Every such set of three or more points contains a congruent copy of the
    triangle, which an isometry moves onto the canonical placement. Every
    further point is then at a side-length distance from the first two base
    vertices, so it is one of their ``candidate_positions``; the sets are the
    cliques of the "distance in {a, b, c}" relation on those candidates,
    grown one point at a time. The complete-shadow test runs on the final
    sets only.
    """
    if max_size > 8:
        raise ValueError("max_size is limited to 8")
    if max_size < 3:
        return []
    coarse = AMBIGUITY_FACTOR * tol
    sides = triangle.sides
    base = triangle.vertices()
    cands = [r for r in candidate_positions(base[0], base[1], sides, tol)
             if all(dist(r, b) > tol for b in base)
             and distance_compatible(list(base) + [r], sides, tol)]
    compat = {(i, j) for i, j in itertools.combinations(range(len(cands)), 2)
              if any(abs(dist(cands[i], cands[j]) - s) <= tol for s in sides)}
    for i, j in itertools.combinations(range(len(cands)), 2):
        d = dist(cands[i], cands[j])
        if (i, j) not in compat and any(tol < abs(d - s) <= coarse for s in sides):
            raise AmbiguousDecision(f"candidate distance {d!r} is borderline", residual=d)

    results: List[PointConfig] = []
    level = [()]
    for size in range(3, max_size + 1):
        for extra in level:
            pts = list(base) + [cands[k] for k in extra]
            cfg = PointConfig(tuple(pts))
            h = congruence_hypergraph(cfg, triangle, mode="exact", coarse=coarse)
            if shadow_graph(h).is_complete and not any(
                    len(r) == len(cfg) and _congruent_sets(r.points, cfg.points, coarse) for r in results):
                results.append(cfg)
        nxt = []
        for extra in level:
            start = extra[-1] + 1 if extra else 0
            for k in range(start, len(cands)):
                if all((j, k) in compat for j in extra):
                    nxt.append(extra + (k,))
        level = nxt
        if not level:
            break
    return results
