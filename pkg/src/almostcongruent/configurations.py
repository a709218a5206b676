"""Named point configurations used by the constructions and checks.

The six maximal 6-point 3-distance sets are stored as coordinates, scaled so
that the smallest distance is 1. Their classification is taken as given;
the toolkit only checks that each really is a 3-distance set with the
listed distance ratios.
"""
from __future__ import annotations

import math

from .geometry import PointConfig

SQRT3 = math.sqrt(3)
GOLDEN = (1 + math.sqrt(5)) / 2
GAMMA = math.sqrt(2 + SQRT3)


def regular_polygon(k: int, side: float = 1.0, start_angle: float = -math.pi / 2) -> PointConfig:
    """Vertices of a regular ``k``-gon, counter-clockwise, first vertex at ``start_angle``."""
    radius = side / (2 * math.sin(math.pi / k))
    return PointConfig(tuple(
        (radius * math.cos(start_angle + 2 * math.pi * i / k), radius * math.sin(start_angle + 2 * math.pi * i / k))
        for i in range(k)))


def labelled_hexagon() -> PointConfig:
    """Unit regular hexagon labelled 1..6 counter-clockwise from the bottom vertex.

    With this labelling the opposite pairs are 14, 25 and 36.
    """
    return regular_polygon(6, 1.0)


def hexagon_with_center(side: float = 1.0) -> PointConfig:
    return PointConfig(regular_polygon(6, side).points + ((0.0, 0.0),))


def pentagon_with_center(side: float = 1.0) -> PointConfig:
    return PointConfig(regular_polygon(5, side).points + ((0.0, 0.0),))


def rectangle(w: float, h: float) -> PointConfig:
    return PointConfig(((0.0, 0.0), (w, 0.0), (0.0, h), (w, h)))


def equilateral_with_center(side: float) -> PointConfig:
    h = side * SQRT3 / 2
    return PointConfig(((0.0, 0.0), (side, 0.0), (side / 2, h), (side / 2, h / 3)))


def _scaled_to_unit_min(points) -> PointConfig:
    cfg = PointConfig(points)
    d = min(math.dist(p, q) for i, p in enumerate(cfg.points) for q in cfg.points[i + 1:])
    return cfg.scaled(1 / d)


def maximal_six_point_sets() -> dict:
    """The maximal 6-point 3-distance sets, keyed by figure letter.

    Values are ``(config, (b, c))`` with distances ``{1, b, c}``.
    """
    r3 = SQRT3
    s5 = 2 * math.sin(math.pi / 5)
    tri_mid = ((-1.0, 0.0), (1.0, 0.0), (0.0, 0.0), (0.0, r3), (0.5, r3 / 2), (-0.5, r3 / 2))
    pent_c = pentagon_with_center().points
    spike_out = ((-0.5, 0.0), (0.5, 0.0), (0.0, r3 / 2), (0.0, r3 / 2 + 1),
                 (-0.5 - r3 / 2, -0.5), (0.5 + r3 / 2, -0.5))
    spike_flip = ((-0.5, 0.0), (0.5, 0.0), (0.0, r3 / 2), (0.0, -1 - r3 / 2),
                  (-0.5 - r3 / 2, -0.5), (0.5 + r3 / 2, -0.5))
    kite_low = ((-1.0, 0.0), (1.0, 0.0), (0.0, r3), (0.0, r3 - 2), (1 - r3, 1.0), (r3 - 1, 1.0))
    kite_high = ((-1.0, 0.0), (1.0, 0.0), (0.0, r3), (0.0, 2 - r3), (1 - r3, 1.0), (r3 - 1, 1.0))
    return {
        "a": (_scaled_to_unit_min(tri_mid), (r3, 2.0)),
        "b": (_scaled_to_unit_min(pent_c), (s5, GOLDEN * s5)),
        "c": (_scaled_to_unit_min(spike_out), (GAMMA, math.sqrt(2) * GAMMA)),
        "d": (_scaled_to_unit_min(spike_flip), (GAMMA, math.sqrt(2) * GAMMA)),
        "e": (_scaled_to_unit_min(kite_low), (math.sqrt(2), GAMMA)),
        "f": (_scaled_to_unit_min(kite_high), (math.sqrt(2), GAMMA)),
    }
