"""Sample triangles of every classified type and the forbiddenness claims checked against them."""
from __future__ import annotations

import math
from typing import Dict, Optional

from .geometry import Triangle, TriangleType

SQRT3 = math.sqrt(3)


def sample_triangles() -> Dict[str, Triangle]:
    return {
        "equilateral": Triangle((1.0, 1.0, 1.0)),
        "right_30_60_90": Triangle((1.0, SQRT3, 2.0)),
        "right": Triangle((1.0, 2.0, math.sqrt(5))),
        "obtuse_120_30_30": Triangle((1.0, 1.0, SQRT3)),
        "heptagonal": Triangle.from_angles(4 * 180 / 7, 2 * 180 / 7, 180 / 7),
        "golden_108_36_36": Triangle.from_angles(108, 36, 36),
        "golden_72_72_36": Triangle.from_angles(72, 72, 36),
        "generic": Triangle((1.0, 1.1, 1.25)),
    }


def claimed_forbidden(name: str, tt: TriangleType) -> Optional[bool]:
    """What the hand proofs assert about graph ``name`` for triangles of type ``tt``.

    ``True``: proved forbidden; ``False``: a realisation is exhibited;
    ``None``: no claim either way.
    """
    right = tt.is_right
    if name == "J4":
        return True
    if name == "F32":
        return tt is not TriangleType.RIGHT_30_60_90
    if name == "K4_3":
        return not right
    if name == "K4_3minus":
        if right or tt is TriangleType.T120_30_30:
            return False
        return True
    if name == "C5":
        if tt in (TriangleType.GOLDEN_108, TriangleType.GOLDEN_72):
            return False
        return None if tt is TriangleType.T120_30_30 else True
    if name == "F5":
        return True if tt is TriangleType.EQUILATERAL else None
    return None
