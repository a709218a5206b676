"""Exact Turan numbers ex(n, F) for small n by branch and bound."""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import OutOfSupportedRange
from .hypergraph import NAMED_GRAPHS, ThreeGraph, canonical_form, triple_index, triples

MAX_N = 7
SLOW_N = 7


@dataclass
class TuranResult:
    n: int
    family: Tuple[str, ...]
    value: int
    witnesses: List[ThreeGraph] = field(default_factory=list)
    nodes: int = 0

    def to_json(self) -> dict:
        return {"n": self.n, "family": list(self.family), "value": self.value,
                "witnesses": [w.to_json() for w in self.witnesses], "nodes": self.nodes}


def _name(g: ThreeGraph) -> str:
    for name, h in NAMED_GRAPHS.items():
        if h == g:
            return name
    return repr(g)


def copy_masks(n: int, pattern: ThreeGraph) -> List[int]:
    """Edge masks (over the lexicographic triples of ``n``) of every copy of ``pattern`` in the complete 3-graph."""
    if pattern.n > n:
        return []
    idx = triple_index(n)
    out = set()
    for image in itertools.permutations(range(n), pattern.n):
        m = 0
        for e in pattern.edges:
            m |= 1 << idx[tuple(sorted(image[v] for v in e))]
        out.add(m)
    return sorted(out)


def _copies_by_last(n: int, family: Iterable[ThreeGraph]) -> List[List[int]]:
    by_last: List[List[int]] = [[] for _ in triples(n)]
    for pattern in family:
        for m in copy_masks(n, pattern):
            if m:
                by_last[m.bit_length() - 1].append(m)
    return by_last


def balanced_3partite(n: int) -> ThreeGraph:
    if n < 3:
        raise ValueError("n must be at least 3")
    sizes = (n // 3, (n + 1) // 3, (n + 2) // 3)
    parts, start = [], 0
    for s in sizes:
        parts.append(range(start, start + s))
        start += s
    return ThreeGraph(n, itertools.product(*parts))


def turan_number(n: int, family: Sequence[ThreeGraph], witnesses: bool = False,
                 allow_slow: bool = False, time_limit: Optional[float] = None) -> TuranResult:
    """Maximum number of edges of an ``n``-vertex 3-graph with no copy of any
    graph in ``family``.

    Depth-first search over the triples in lexicographic order, branching on
    include/exclude. A branch is cut when its edges plus the undecided triples
    cannot reach the best value, and when including a triple completes a copy
    of a forbidden graph. Any non-empty graph is isomorphic to one containing
    ``{0, 1, 2}``, so that triple is always included.

    With ``witnesses`` every extremal graph is collected up to isomorphism;
    otherwise a single canonical witness is returned.
    """
    if n > MAX_N or (n >= SLOW_N and not allow_slow):
        raise OutOfSupportedRange(f"n={n} is not supported" + ("" if n > MAX_N else " without allow_slow"))
    if n < 0:
        raise ValueError("n must be non-negative")
    family = list(family)
    names = tuple(_name(g) for g in family)
    trips = triples(n)
    m = len(trips)
    by_last = _copies_by_last(n, family)
    if m == 0:
        return TuranResult(n, names, 0, [ThreeGraph(n)])
    if any(c == 1 for c in by_last[0]):
        # a single edge is forbidden
        return TuranResult(n, names, 0, [ThreeGraph(n)])

    best = [0]
    found: Dict[int, ThreeGraph] = {}
    nodes = [0]
    deadline = None if time_limit is None else time.monotonic() + time_limit

    def record(mask, count):
        if count > best[0]:
            best[0] = count
            found.clear()
        if witnesses or not found:
            canon = canonical_form(ThreeGraph(n, mask=mask))
            found.setdefault(canon.mask, canon)

    def search(i, mask, count):
        nodes[0] += 1
        if deadline is not None and nodes[0] % 4096 == 0 and time.monotonic() > deadline:
            raise TimeoutError(f"turan search for n={n} exceeded {time_limit} s")
        if i == m:
            if count >= best[0]:
                record(mask, count)
            return
        remaining = m - i
        if count + remaining < best[0] or (not witnesses and count + remaining == best[0] and found):
            return
        bit = 1 << i
        new = mask | bit
        if not any(new & c == c for c in by_last[i]):
            search(i + 1, new, count + 1)
        if i > 0:
            search(i + 1, mask, count)

    search(0, 0, 0)
    wit = sorted(found.values(), key=lambda g: g.mask)
    return TuranResult(n, names, best[0], wit, nodes[0])


def turan_exhaustive(n: int, family: Sequence[ThreeGraph]) -> int:
    """ex(n, F) by checking all ``2^C(n,3)`` edge sets; feasible for ``n <= 5``."""
    if n > 5:
        raise OutOfSupportedRange("the exhaustive sweep is limited to n <= 5")
    m = len(triples(n))
    masks = np.arange(1 << m, dtype=np.int64)
    free = np.ones(len(masks), dtype=bool)
    for pattern in family:
        for c in copy_masks(n, pattern):
            free &= (masks & c) != c
    counts = np.array([bin(x).count("1") for x in range(1 << m)])
    return int(counts[free].max())
