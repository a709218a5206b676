"""3-uniform hypergraphs on few vertices.

A :class:`ThreeGraph` keeps its edge set as an integer bitset: bit ``i`` is
set when the ``i``-th triple of ``itertools.combinations(range(n), 3)`` is an
edge. Vertices are 0-indexed internally; JSON and the ``label`` helpers
use 1-indexed labels.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

MAX_VERTICES = 24
MAX_CANONICAL_VERTICES = 8

Triple = Tuple[int, int, int]


@lru_cache(maxsize=None)
def triples(n: int) -> Tuple[Triple, ...]:
    return tuple(itertools.combinations(range(n), 3))


@lru_cache(maxsize=None)
def triple_index(n: int) -> Dict[Triple, int]:
    return {t: i for i, t in enumerate(triples(n))}


class ThreeGraph:
    """Immutable 3-graph on vertices ``0..n-1``."""

    __slots__ = ("n", "mask")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = (), mask: Optional[int] = None):
        if not 0 <= n <= MAX_VERTICES:
            raise ValueError(f"vertex count must be in [0, {MAX_VERTICES}], got {n}")
        if mask is None:
            index = triple_index(n)
            mask = 0
            for e in edges:
                t = tuple(sorted(int(v) for v in e))
                if len(t) != 3 or len(set(t)) != 3 or t[0] < 0 or t[2] >= n:
                    raise ValueError(f"invalid edge {tuple(e)} for n={n}")
                mask |= 1 << index[t]
        elif mask >> len(triples(n)):
            raise ValueError("mask has bits beyond the triple range")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "mask", mask)

    def __setattr__(self, key, value):
        raise AttributeError("ThreeGraph is immutable")

    def __eq__(self, other):
        return isinstance(other, ThreeGraph) and self.n == other.n and self.mask == other.mask

    def __hash__(self):
        return hash((self.n, self.mask))

    def __repr__(self):
        return f"ThreeGraph(n={self.n}, edges={self.label_edges()})"

    @property
    def edges(self) -> Tuple[Triple, ...]:
        ts = triples(self.n)
        m, i, out = self.mask, 0, []
        while m:
            if m & 1:
                out.append(ts[i])
            m >>= 1
            i += 1
        return tuple(out)

    @property
    def edge_set(self) -> FrozenSet[Triple]:
        return frozenset(self.edges)

    @property
    def num_edges(self) -> int:
        return bin(self.mask).count("1")

    def has_edge(self, e: Sequence[int]) -> bool:
        t = tuple(sorted(e))
        idx = triple_index(self.n).get(t)
        return idx is not None and bool(self.mask >> idx & 1)

    def with_edges(self, extra: Iterable[Sequence[int]]) -> "ThreeGraph":
        return ThreeGraph(self.n, self.edges + tuple(tuple(e) for e in extra))

    def degrees(self) -> List[int]:
        deg = [0] * self.n
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return deg

    def relabel(self, perm: Sequence[int]) -> "ThreeGraph":
        """Image under the vertex map ``v -> perm[v]``."""
        return ThreeGraph(self.n, ((perm[a], perm[b], perm[c]) for a, b, c in self.edges))

    def induced(self, vertices: Sequence[int]) -> "ThreeGraph":
        pos = {v: i for i, v in enumerate(vertices)}
        return ThreeGraph(len(vertices), (tuple(pos[v] for v in e) for e in self.edges if all(v in pos for v in e)))

    def label_edges(self) -> List[str]:
        """Edges as 1-indexed strings such as ``"123"`` (comma-separated above 9 vertices)."""
        sep = "" if self.n <= 9 else ","
        return [sep.join(str(v + 1) for v in e) for e in self.edges]

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [[v + 1 for v in e] for e in self.edges]}

    @classmethod
    def from_json(cls, data: dict) -> "ThreeGraph":
        return cls(int(data["n"]), ([v - 1 for v in e] for e in data["edges"]))


def from_labels(n: int, labels: Iterable) -> ThreeGraph:
    """Build a graph from 1-indexed edge labels such as ``"142"`` or ``(1, 4, 2)``."""
    edges = []
    for lab in labels:
        vs = [int(ch) for ch in lab] if isinstance(lab, str) else list(lab)
        edges.append([v - 1 for v in vs])
    return ThreeGraph(n, edges)


NAMED_GRAPHS: Dict[str, ThreeGraph] = {
    "K4_3": from_labels(4, ["123", "124", "134", "234"]),
    "K4_3minus": from_labels(4, ["123", "124", "134"]),
    "F32": from_labels(5, ["123", "145", "245", "345"]),
    "J4": from_labels(5, ["123", "124", "125", "134", "135", "145"]),
    "F5": from_labels(5, ["123", "124", "345"]),
    "C5": from_labels(5, ["123", "234", "345", "451", "512"]),
    "C5minus": from_labels(5, ["123", "234", "345", "451"]),
    "H1": from_labels(5, ["123", "124", "135", "145"]),
    "H2": from_labels(5, ["123", "124", "135"]),
    "H3": from_labels(5, ["123", "124", "125"]),
    "H4": from_labels(5, ["123", "234", "134", "124", "514", "523"]),
    "H5": from_labels(6, ["142", "143", "145", "146", "251", "253", "254", "256", "361", "362", "364", "365"]),
}

# the forbidden-graph table
TABLE_GRAPHS = ("K4_3", "K4_3minus", "F32", "J4", "F5", "C5")


def named(name: str) -> ThreeGraph:
    try:
        return NAMED_GRAPHS[name]
    except KeyError:
        raise KeyError(f"unknown graph {name!r}; known: {', '.join(NAMED_GRAPHS)}") from None


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on ``0..n-1``."""

    n: int
    edges: FrozenSet[Tuple[int, int]]

    @property
    def is_complete(self) -> bool:
        return len(self.edges) == self.n * (self.n - 1) // 2

    def degree(self, v: int) -> int:
        return sum(v in e for e in self.edges)

    def label_edges(self) -> List[str]:
        return sorted(f"{a + 1}{b + 1}" for a, b in self.edges)


def shadow_graph(h: ThreeGraph) -> Graph:
    pairs = set()
    for a, b, c in h.edges:
        pairs.update(((a, b), (a, c), (b, c)))
    return Graph(h.n, frozenset(pairs))


def link_graph(h: ThreeGraph, v: int) -> Graph:
    """Pairs ``ab`` with ``abv`` an edge; vertex labels are kept, ``v`` stays isolated."""
    if not 0 <= v < h.n:
        raise ValueError(f"vertex {v} not in graph on {h.n} vertices")
    pairs = set()
    for e in h.edges:
        if v in e:
            a, b = (u for u in e if u != v)
            pairs.add((a, b))
    return Graph(h.n, frozenset(pairs))


def is_dense_ordering(h: ThreeGraph, order: Sequence[int]) -> bool:
    if sorted(order) != list(range(h.n)):
        return False
    edges = h.edge_set
    for i in range(2, len(order)):
        v, prefix = order[i], order[:i]
        if not any(tuple(sorted((x, y, v))) in edges for x, y in itertools.combinations(prefix, 2)):
            return False
    return True


def is_dense(h: ThreeGraph) -> Optional[Tuple[int, ...]]:
    """Lexicographically least vertex ordering in which every vertex from the
    third on lies in an edge inside its prefix, or ``None``."""
    edges = h.edge_set
    n = h.n
    if n <= 2:
        return tuple(range(n))

    def covered(v, prefix):
        return any(tuple(sorted((x, y, v))) in edges for x, y in itertools.combinations(prefix, 2))

    def extend(prefix, remaining):
        if not remaining:
            return tuple(prefix)
        for v in sorted(remaining):
            if len(prefix) < 2 or covered(v, prefix):
                found = extend(prefix + [v], remaining - {v})
                if found is not None:
                    return found
        return None

    return extend([], frozenset(range(n)))


# -- isomorphism and containment ----------------------------------------------

def _adjacency(h: ThreeGraph) -> List[List[Tuple[int, int]]]:
    adj: List[List[Tuple[int, int]]] = [[] for _ in range(h.n)]
    for a, b, c in h.edges:
        adj[a].append((b, c))
        adj[b].append((a, c))
        adj[c].append((a, b))
    return adj


def find_embedding(host: ThreeGraph, pattern: ThreeGraph, fixed: Optional[Dict[int, int]] = None) -> Optional[Dict[int, int]]:
    """An injective map from pattern vertices to host vertices carrying every
    pattern edge onto a host edge (not necessarily induced), or ``None``."""
    if pattern.n > host.n or pattern.num_edges > host.num_edges:
        return None
    host_edges = host.edge_set
    p_adj = _adjacency(pattern)
    p_deg = [len(x) for x in p_adj]
    h_deg = host.degrees()
    # assign high-degree, well-connected vertices first
    order: List[int] = []
    rest = set(range(pattern.n))
    for v in (fixed or {}):
        order.append(v)
        rest.discard(v)
    while rest:
        placed = set(order)
        v = max(rest, key=lambda u: (sum(1 for x, y in p_adj[u] if x in placed or y in placed), p_deg[u], -u))
        order.append(v)
        rest.discard(v)
    checks: List[List[Tuple[int, int]]] = []
    for i, v in enumerate(order):
        before = set(order[:i])
        checks.append([(x, y) for x, y in p_adj[v] if x in before and y in before])
    mapping: Dict[int, int] = {}
    used = set()

    def ok(i, w):
        for x, y in checks[i]:
            if tuple(sorted((w, mapping[x], mapping[y]))) not in host_edges:
                return False
        return True

    def search(i):
        if i == len(order):
            return True
        v = order[i]
        if fixed and v in fixed:
            cands = [fixed[v]] if fixed[v] not in used else []
        else:
            cands = [w for w in range(host.n) if w not in used and h_deg[w] >= p_deg[v]]
        for w in cands:
            if h_deg[w] < p_deg[v]:
                continue
            mapping[v] = w
            if ok(i, w):
                used.add(w)
                if search(i + 1):
                    return True
                used.discard(w)
            del mapping[v]
        return False

    return dict(mapping) if search(0) else None


def contains_subgraph(host: ThreeGraph, pattern: ThreeGraph) -> bool:
    return find_embedding(host, pattern) is not None


def is_family_free(h: ThreeGraph, family: Iterable[ThreeGraph]) -> bool:
    return not any(contains_subgraph(h, f) for f in family)


def is_isomorphic(h1: ThreeGraph, h2: ThreeGraph) -> Optional[Tuple[int, ...]]:
    """A permutation ``perm`` with ``h1.relabel(perm) == h2``, or ``None``."""
    if h1.n != h2.n or h1.num_edges != h2.num_edges:
        return None
    if sorted(h1.degrees()) != sorted(h2.degrees()):
        return None
    emb = find_embedding(h2, h1)
    # with equal vertex and edge counts an embedding is an isomorphism
    if emb is None:
        return None
    return tuple(emb[v] for v in range(h1.n))


def is_cancellative(h: ThreeGraph) -> bool:
    """No symmetric difference of two edges lies inside a third edge."""
    edges = [frozenset(e) for e in h.edges]
    for e1, e2 in itertools.combinations(edges, 2):
        sym = e1 ^ e2
        if any(sym <= e3 for e3 in edges if e3 is not e1 and e3 is not e2):
            return False
    return True


# -- canonical forms and enumeration ------------------------------------------

@lru_cache(maxsize=None)
def _perm_table(n: int) -> np.ndarray:
    """Row ``p`` maps triple index ``i`` to the index of its image under permutation ``p``."""
    index = triple_index(n)
    ts = triples(n)
    rows = []
    for perm in itertools.permutations(range(n)):
        rows.append([index[tuple(sorted((perm[a], perm[b], perm[c])))] for a, b, c in ts])
    return np.array(rows, dtype=np.int64).reshape(-1, len(ts))


def _orbit_masks(n: int, mask: int) -> np.ndarray:
    table = _perm_table(n)
    bits = [i for i in range(table.shape[1]) if mask >> i & 1]
    if not bits:
        return np.zeros(table.shape[0], dtype=np.int64)
    return np.left_shift(np.int64(1), table[:, bits]).sum(axis=1)


def canonical_form(h: ThreeGraph) -> ThreeGraph:
    """The relabelling of ``h`` with the smallest edge bitset."""
    if h.n > MAX_CANONICAL_VERTICES:
        raise ValueError(f"canonical form supports at most {MAX_CANONICAL_VERTICES} vertices")
    return ThreeGraph(h.n, mask=int(_orbit_masks(h.n, h.mask).min()))


def enumerate_classes(n: int, predicate: Optional[Callable[[ThreeGraph], bool]] = None) -> List[ThreeGraph]:
    """One canonical representative per isomorphism class on ``n`` vertices.

    Every one of the ``2**C(n,3)`` edge subsets is visited; each unvisited
    subset contributes its whole orbit, whose minimum is the canonical form.
    ``predicate`` is applied to representatives and must be invariant under
    relabelling.
    """
    if n > 6:
        raise ValueError("exhaustive enumeration is limited to n <= 6")
    m = len(triples(n))
    seen = np.zeros(1 << m, dtype=bool)
    reps = []
    for mask in range(1 << m):
        if seen[mask]:
            continue
        orbit = _orbit_masks(n, mask)
        seen[orbit] = True
        rep = ThreeGraph(n, mask=int(orbit.min()))
        if predicate is None or predicate(rep):
            reps.append(rep)
    reps.sort(key=lambda g: (g.num_edges, g.mask))
    return reps


def identify(h: ThreeGraph, names: Iterable[str] = tuple(NAMED_GRAPHS)) -> Optional[str]:
    """Name of a catalogue graph isomorphic to ``h``, if any."""
    for name in names:
        if is_isomorphic(h, NAMED_GRAPHS[name]) is not None:
            return name
    return None
