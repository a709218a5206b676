"""Planar primitives with an explicit tolerance scheme.

Everything here works in double precision. Distances are compared with an
absolute tolerance ``tol`` (default 1e-9); a second, coarser threshold marks
the band in which a decision is reported as ambiguous instead of being
silently resolved one way or the other.
"""
from __future__ import annotations

import enum
import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Tuple

from .errors import AmbiguousDecision, CoincidentPoints, ConcentricCircles, DegenerateTriangle

Point = Tuple[float, float]

TOL = 1e-9
COARSE_TOL = 1e-5
ANGLE_TOL = 1e-5  # degrees


def dist(p: Point, q: Point) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def cross(o: Point, a: Point, b: Point) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


class TriangleType(str, enum.Enum):
    EQUILATERAL = "equilateral"
    RIGHT = "right"
    RIGHT_30_60_90 = "right_30_60_90"
    T120_30_30 = "obtuse_120_30_30"
    HEPTAGONAL = "heptagonal"
    GOLDEN_108 = "golden_108_36_36"
    GOLDEN_72 = "golden_72_72_36"
    GENERIC = "generic"

    @property
    def is_right(self) -> bool:
        return self in (TriangleType.RIGHT, TriangleType.RIGHT_30_60_90)


# angle signatures, sorted descending, in degrees
_SPECIAL_ANGLES = [
    (TriangleType.RIGHT_30_60_90, (90.0, 60.0, 30.0)),
    (TriangleType.T120_30_30, (120.0, 30.0, 30.0)),
    (TriangleType.HEPTAGONAL, (4 * 180 / 7, 2 * 180 / 7, 180 / 7)),
    (TriangleType.GOLDEN_108, (108.0, 36.0, 36.0)),
    (TriangleType.GOLDEN_72, (72.0, 72.0, 36.0)),
]


def _angles_from_sides(a: float, b: float, c: float) -> Tuple[float, float, float]:
    def opposite(x, y, z):
        cos = (y * y + z * z - x * x) / (2 * y * z)
        return math.degrees(math.acos(max(-1.0, min(1.0, cos))))

    return opposite(c, a, b), opposite(b, a, c), opposite(a, b, c)


@dataclass(frozen=True)
class Triangle:
    """A triangle given by its side lengths, stored ascending."""

    sides: Tuple[float, float, float]

    def __post_init__(self):
        s = tuple(sorted(float(x) for x in self.sides))
        if len(s) != 3 or s[0] <= 0 or not all(math.isfinite(x) for x in s):
            raise DegenerateTriangle(f"side lengths must be three positive numbers, got {self.sides}")
        if s[0] + s[1] <= s[2] * (1 + 1e-12):
            raise DegenerateTriangle(f"sides {s} violate the strict triangle inequality")
        object.__setattr__(self, "sides", s)

    @classmethod
    def from_angles(cls, alpha: float, beta: float, gamma: float, longest: float = 1.0) -> "Triangle":
        """Build a triangle from its interior angles (degrees); the longest side is ``longest``."""
        sines = sorted(math.sin(math.radians(t)) for t in (alpha, beta, gamma))
        k = longest / sines[2]
        return cls(tuple(k * s for s in sines))

    @property
    def a(self) -> float:
        return self.sides[0]

    @property
    def b(self) -> float:
        return self.sides[1]

    @property
    def c(self) -> float:
        return self.sides[2]

    @property
    def angles(self) -> Tuple[float, float, float]:
        """Interior angles in degrees, descending; the first is opposite the longest side."""
        return _angles_from_sides(*self.sides)

    def scaled(self, k: float) -> "Triangle":
        return Triangle(tuple(k * s for s in self.sides))

    def distinct_sides(self, tol: float = TOL) -> Tuple[float, ...]:
        out = []
        for s in self.sides:
            if not out or abs(s - out[-1]) > tol:
                out.append(s)
        return tuple(out)

    def vertices(self, mirrored: bool = False) -> Tuple[Point, Point, Point]:
        """A canonical placement: longest side on the positive x-axis from the origin.

        The vertex at the origin is opposite side ``a``, the second opposite
        ``b`` and the third (off the axis) opposite ``c``.
        """
        a, b, c = self.sides
        x = (c * c + b * b - a * a) / (2 * c)
        y = math.sqrt(max(0.0, b * b - x * x))
        return (0.0, 0.0), (c, 0.0), (x, -y if mirrored else y)

    def to_json(self) -> dict:
        return {"sides": list(self.sides)}

    @classmethod
    def from_json(cls, data: dict) -> "Triangle":
        return cls(tuple(data["sides"]))


@dataclass(frozen=True)
class ToleranceParams:
    eps: float = 1e-3
    tol: float = TOL

    def eps_prime(self, triangle: Triangle) -> float:
        return self.eps * min(triangle.sides)


@dataclass(frozen=True)
class PointConfig:
    points: Tuple[Point, ...]
    allow_coincident: bool = False
    tol: float = field(default=TOL, compare=False)

    def __post_init__(self):
        pts = tuple((float(x), float(y)) for x, y in self.points)
        for x, y in pts:
            if not (math.isfinite(x) and math.isfinite(y)):
                raise ValueError(f"non-finite coordinate in {(x, y)}")
        object.__setattr__(self, "points", pts)
        if not self.allow_coincident:
            for i, j in itertools.combinations(range(len(pts)), 2):
                if dist(pts[i], pts[j]) <= self.tol:
                    raise CoincidentPoints(f"points {i} and {j} coincide within tol={self.tol}")

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def scaled(self, k: float) -> "PointConfig":
        return PointConfig(tuple((k * x, k * y) for x, y in self.points), self.allow_coincident, self.tol)

    def to_json(self) -> dict:
        return {"points": [list(p) for p in self.points]}

    @classmethod
    def from_json(cls, data: dict, allow_coincident: bool = False) -> "PointConfig":
        return cls(tuple(tuple(p) for p in data["points"]), allow_coincident)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


@dataclass(frozen=True)
class DistanceProfile:
    values: Tuple[float, ...]
    multiplicity: Tuple[int, ...]

    @property
    def s(self) -> int:
        return len(self.values)


def classify_triangle(sides: Sequence[float], tol: float = TOL, angle_tol: float = ANGLE_TOL) -> TriangleType:
    """Name the angle type of a triangle.

    Special types are matched by comparing the sorted angles against the
    target signature within ``angle_tol`` degrees. A (90, 60, 30) triangle is
    reported as ``RIGHT_30_60_90`` rather than plain ``RIGHT``.
    """
    a, b, c = sorted(float(s) for s in sides)
    if a <= 0 or a + b <= c + tol:
        raise DegenerateTriangle(f"sides {(a, b, c)} do not form a triangle")
    angles = _angles_from_sides(a, b, c)

    def close(target):
        return all(abs(x - y) <= angle_tol for x, y in zip(angles, target))

    if close((60.0, 60.0, 60.0)):
        return TriangleType.EQUILATERAL
    for kind, target in _SPECIAL_ANGLES:
        if close(target):
            return kind
    if abs(angles[0] - 90.0) <= angle_tol:
        return TriangleType.RIGHT
    return TriangleType.GENERIC


def circle_intersections(c1: Point, r1: float, c2: Point, r2: float, tol: float = TOL) -> list:
    """Intersection points of two circles, in closed form.

    Tangency within ``tol`` yields exactly one point.
    """
    d = dist(c1, c2)
    if d <= tol:
        raise ConcentricCircles(f"centres {c1} and {c2} coincide")
    if d > r1 + r2 + tol or d < abs(r1 - r2) - tol:
        return []
    ux, uy = (c2[0] - c1[0]) / d, (c2[1] - c1[1]) / d
    along = (r1 * r1 - r2 * r2 + d * d) / (2 * d)
    if abs(d - (r1 + r2)) <= tol or abs(d - abs(r1 - r2)) <= tol:
        return [(c1[0] + along * ux, c1[1] + along * uy)]
    h = math.sqrt(max(0.0, r1 * r1 - along * along))
    mx, my = c1[0] + along * ux, c1[1] + along * uy
    return [(mx - h * uy, my + h * ux), (mx + h * uy, my - h * ux)]


def dedupe_points(points: Iterable[Point], tol: float = TOL) -> list:
    out: list = []
    for p in points:
        if all(dist(p, q) > tol for q in out):
            out.append(p)
    return out


def candidate_positions(p: Point, q: Point, dists: Iterable[float], tol: float = TOL) -> list:
    """All points whose distances to both ``p`` and ``q`` lie in ``dists``.

    At most two points per ordered radius pair, so at most 2*|dists|**2 in total.
    """
    radii = sorted(set(dists))
    found = []
    for r1 in radii:
        for r2 in radii:
            found.extend(circle_intersections(p, r1, q, r2, tol))
    return dedupe_points(found, tol)


def side_lengths(p: Point, q: Point, r: Point) -> Tuple[float, float, float]:
    return tuple(sorted((dist(p, q), dist(q, r), dist(p, r))))


def congruence_residual(p: Point, q: Point, r: Point, triangle: Triangle) -> float:
    """Largest deviation between the sorted sides of ``pqr`` and those of the triangle."""
    return max(abs(x - y) for x, y in zip(side_lengths(p, q, r), triangle.sides))


def _collinear(p: Point, q: Point, r: Point, tol: float) -> bool:
    scale = max(dist(p, q), dist(q, r), dist(p, r))
    if scale <= tol:
        return True
    return abs(cross(p, q, r)) <= tol * scale


def is_congruent(p: Point, q: Point, r: Point, triangle: Triangle, tol: float = TOL) -> bool:
    """Whether ``pqr`` is congruent to the triangle; mirror images count."""
    if _collinear(p, q, r, tol):
        return False
    return congruence_residual(p, q, r, triangle) <= tol


def decide_congruent(p: Point, q: Point, r: Point, triangle: Triangle, tol: float = TOL,
                     coarse: float = COARSE_TOL) -> bool:
    """Like :func:`is_congruent`, but raise :class:`AmbiguousDecision` inside the guard band."""
    if _collinear(p, q, r, tol):
        return False
    res = congruence_residual(p, q, r, triangle)
    if res <= tol:
        return True
    if res <= coarse:
        raise AmbiguousDecision(
            f"congruence residual {res:.3e} lies in the guard band ({tol:g}, {coarse:g}]",
            residual=res, evidence={"points": [list(p), list(q), list(r)], "sides": list(triangle.sides)})
    return False


# -- epsilon congruence -------------------------------------------------------

_GRID = 64
_ANGLE_RESOLUTION = 1e-12
_INVPHI = (math.sqrt(5) - 1) / 2


def _enclosing_radius(pts) -> float:
    """Radius of the smallest disk containing (at most) three points."""
    (ax, ay), (bx, by), (cx, cy) = pts
    best = math.inf
    for (px, py), (qx, qy), (ox, oy) in (((ax, ay), (bx, by), (cx, cy)),
                                         ((bx, by), (cx, cy), (ax, ay)),
                                         ((ax, ay), (cx, cy), (bx, by))):
        mx, my = (px + qx) / 2, (py + qy) / 2
        rad = math.hypot(px - qx, py - qy) / 2
        if math.hypot(ox - mx, oy - my) <= rad * (1 + 1e-14) + 1e-300:
            best = min(best, rad)
    if best < math.inf:
        return best
    d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    a2, b2, c2 = ax * ax + ay * ay, bx * bx + by * by, cx * cx + cy * cy
    ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d
    uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d
    return math.hypot(ax - ux, ay - uy)


def _registration_error(src, dst, theta: float) -> float:
    """Minimax error over translations for a fixed rotation of ``dst``."""
    ct, st = math.cos(theta), math.sin(theta)
    resid = [(s[0] - (ct * d[0] - st * d[1]), s[1] - (st * d[0] + ct * d[1])) for s, d in zip(src, dst)]
    return _enclosing_radius(resid)


def _golden_min(f, lo: float, hi: float, tol: float):
    x1 = hi - _INVPHI * (hi - lo)
    x2 = lo + _INVPHI * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > tol:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INVPHI * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INVPHI * (hi - lo)
            f2 = f(x2)
    return min((f1, x1), (f2, x2))


def _least_squares_angle(src, dst) -> float:
    sx = sum(p[0] for p in src) / 3
    sy = sum(p[1] for p in src) / 3
    dx = sum(p[0] for p in dst) / 3
    dy = sum(p[1] for p in dst) / 3
    num = den = 0.0
    for (px, py), (qx, qy) in zip(src, dst):
        ax, ay, bx, by = qx - dx, qy - dy, px - sx, py - sy
        den += ax * bx + ay * by
        num += ax * by - ay * bx
    return math.atan2(num, den)


def _correspondences(triangle: Triangle):
    for mirrored in (False, True):
        verts = triangle.vertices(mirrored)
        for perm in itertools.permutations(range(3)):
            yield tuple(verts[i] for i in perm)


def registration_error(p: Point, q: Point, r: Point, triangle: Triangle, stop_below: float = -1.0) -> float:
    """Smallest max-displacement needed to move ``p, q, r`` onto a congruent copy.

    Minimises over the twelve labelled correspondences (six vertex orders,
    two orientations). For each, the translation is solved exactly as the
    smallest enclosing circle of the residual vectors, and the rotation by a
    64-point scan refined with golden-section search. Returns early once a
    value not exceeding ``stop_below`` is seen.
    """
    src = (p, q, r)
    best = math.inf
    for dst in _correspondences(triangle):
        err = _registration_error(src, dst, _least_squares_angle(src, dst))
        best = min(best, err)
        if best <= stop_below:
            return best
    for dst in _correspondences(triangle):
        f = lambda t, dst=dst: _registration_error(src, dst, t)
        step = 2 * math.pi / _GRID
        vals = [f(k * step) for k in range(_GRID)]
        for k in range(_GRID):
            if vals[k] <= vals[k - 1] and vals[k] <= vals[(k + 1) % _GRID]:
                val, _ = _golden_min(f, (k - 1) * step, (k + 1) * step, _ANGLE_RESOLUTION)
                best = min(best, val, vals[k])
                if best <= stop_below:
                    return best
    return best


def is_eps_congruent(p: Point, q: Point, r: Point, triangle: Triangle, params: ToleranceParams) -> bool:
    """Whether ``pqr`` is eps-congruent to the triangle.

    A cheap necessary test runs first: every sorted side must be within
    ``2*eps'`` of the matching side of the triangle.
    """
    eps_p = params.eps_prime(triangle)
    if any(abs(x - y) > 2 * eps_p for x, y in zip(side_lengths(p, q, r), triangle.sides)):
        return False
    return registration_error(p, q, r, triangle, stop_below=eps_p) <= eps_p


def congruence_hypergraph(config: PointConfig, triangle: Triangle, params: Optional[ToleranceParams] = None,
                          mode: str = "exact", coarse: Optional[float] = COARSE_TOL):
    """The 3-graph on ``config`` whose edges are the triples congruent
    (``mode="exact"``) or eps-congruent (``mode="eps"``) to the triangle."""
    from .hypergraph import ThreeGraph

    params = params or ToleranceParams()
    pts = config.points
    for i, j in itertools.combinations(range(len(pts)), 2):
        if dist(pts[i], pts[j]) <= params.tol:
            raise CoincidentPoints(f"points {i} and {j} coincide")
    edges = []
    for i, j, k in itertools.combinations(range(len(pts)), 3):
        if mode == "exact":
            if coarse is None:
                ok = is_congruent(pts[i], pts[j], pts[k], triangle, params.tol)
            else:
                ok = decide_congruent(pts[i], pts[j], pts[k], triangle, params.tol, coarse)
        elif mode == "eps":
            ok = is_eps_congruent(pts[i], pts[j], pts[k], triangle, params)
        else:
            raise ValueError(f"unknown mode {mode!r}")
        if ok:
            edges.append((i, j, k))
    return ThreeGraph(len(pts), edges)


def distance_profile(config: PointConfig, tol: float = TOL) -> DistanceProfile:
    """Distinct pairwise distances after merging values closer than ``2*tol``."""
    ds = sorted(dist(p, q) for p, q in itertools.combinations(config.points, 2))
    clusters: list = []
    for d in ds:
        if clusters and d - clusters[-1][-1] <= 2 * tol:
            clusters[-1].append(d)
        else:
            clusters.append([d])
    return DistanceProfile(tuple(math.fsum(c) / len(c) for c in clusters), tuple(len(c) for c in clusters))


def diameter_min_ratio(config: PointConfig) -> float:
    ds = [dist(p, q) for p, q in itertools.combinations(config.points, 2)]
    if not ds:
        raise ValueError("need at least two points")
    return max(ds) / min(ds)
