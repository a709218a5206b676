"""Tools for counting almost congruent triangles in planar point sets.

Modules: ``geometry`` (congruence tests), ``hypergraph`` (3-graphs),
``realizability`` (exact forbiddenness), ``lagrangian``, ``bounds``
(constructions and bounds on h(n, T)), ``turan`` and ``cli``.
"""
from __future__ import annotations

__version__ = "0.1.0"

from .geometry import PointConfig, ToleranceParams, Triangle, TriangleType, classify_triangle
from .hypergraph import ThreeGraph, named

__all__ = ["PointConfig", "ToleranceParams", "Triangle", "TriangleType", "ThreeGraph", "classify_triangle",
           "named", "__version__"]
