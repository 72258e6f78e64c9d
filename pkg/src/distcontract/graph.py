"""Weighted simple graphs with exact rational lengths, distances and contraction."""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

Length = Fraction
#: A distance is a Fraction, or ``math.inf`` for unreachable pairs.
Distance = Union[Fraction, float]

INF = math.inf


def as_fraction(value: object) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction (floats are refused)."""
    if isinstance(value, bool):
        raise TypeError("booleans are not lengths")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    length: Fraction

    def other(self, x: int) -> int:
        return self.v if x == self.u else self.u


@dataclass(frozen=True)
class Graph:
    """An immutable simple undirected graph on vertices ``0..n-1``.

    Edge ids are positions in :attr:`edges`.  Every length is a positive
    Fraction; loops and parallel edges are rejected at construction time.
    """

    n: int
    edges: tuple[Edge, ...]
    _adj: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        adj: list[list[int]] = [[] for _ in range(self.n)]
        index: dict[tuple[int, int], int] = {}
        for eid, e in enumerate(self.edges):
            if not (0 <= e.u < self.n and 0 <= e.v < self.n):
                raise ValueError(f"edge {eid} has an endpoint outside [0, {self.n})")
            if e.u == e.v:
                raise ValueError(f"edge {eid} is a loop at vertex {e.u}")
            if not isinstance(e.length, Fraction) or e.length <= 0:
                raise ValueError(f"edge {eid} must have a positive rational length")
            key = (min(e.u, e.v), max(e.u, e.v))
            if key in index:
                raise ValueError(f"edge {eid} duplicates edge {index[key]} between {key[0]} and {key[1]}")
            index[key] = eid
            adj[e.u].append(eid)
            adj[e.v].append(eid)
        object.__setattr__(self, "_adj", tuple(tuple(a) for a in adj))
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[object]]) -> Graph:
        """Build from ``(u, v)`` or ``(u, v, length)`` tuples; missing lengths are 1."""
        built = []
        for item in edges:
            if len(item) == 2:
                u, v = item
                length = Fraction(1)
            else:
                u, v, length = item
                length = as_fraction(length)
            built.append(Edge(int(u), int(v), length))
        return cls(n, tuple(built))

    @property
    def m(self) -> int:
        return len(self.edges)

    def incident(self, v: int) -> tuple[int, ...]:
        """Ids of the edges incident to ``v``, in increasing order."""
        return self._adj[v]

    def neighbors(self, v: int) -> list[int]:
        return [self.edges[e].other(v) for e in self._adj[v]]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def edge_id(self, u: int, v: int) -> int:
        """Id of the edge joining ``u`` and ``v``; raises KeyError if absent."""
        return self._index[(min(u, v), max(u, v))]

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._index

    def is_unit(self) -> bool:
        return all(e.length == 1 for e in self.edges)

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in self.neighbors(x):
                    if not seen[y]:
                        seen[y] = True
                        comp.append(y)
                        queue.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def is_tree(self) -> bool:
        return self.n >= 1 and self.m == self.n - 1 and self.is_connected()

    def is_bipartite(self) -> bool:
        color = [-1] * self.n
        for s in range(self.n):
            if color[s] >= 0:
                continue
            color[s] = 0
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in self.neighbors(x):
                    if color[y] < 0:
                        color[y] = 1 - color[x]
                        queue.append(y)
                    elif color[y] == color[x]:
                        return False
        return True

    def girth(self) -> float:
        """Length (edge count) of a shortest cycle, ``inf`` for forests.

        Runs a breadth-first search from every vertex, O(nm).
        """
        best: float = INF
        for s in range(self.n):
            dist = [-1] * self.n
            parent_edge = [-1] * self.n
            dist[s] = 0
            queue = deque([s])
            while queue:
                x = queue.popleft()
                if 2 * dist[x] + 1 >= best:
                    break
                for eid in self._adj[x]:
                    if eid == parent_edge[x]:
                        continue
                    y = self.edges[eid].other(x)
                    if dist[y] < 0:
                        dist[y] = dist[x] + 1
                        parent_edge[y] = eid
                        queue.append(y)
                    else:
                        best = min(best, dist[x] + dist[y] + 1)
        return best

    def with_lengths(self, lengths: Sequence[object]) -> Graph:
        if len(lengths) != self.m:
            raise ValueError("need one length per edge")
        return Graph(self.n, tuple(Edge(e.u, e.v, as_fraction(x)) for e, x in zip(self.edges, lengths)))


def validate_edge_set(g: Graph, edge_set: Iterable[int]) -> frozenset[int]:
    chosen = frozenset(int(e) for e in edge_set)
    for e in chosen:
        if not 0 <= e < g.m:
            raise ValueError(f"edge id {e} is not in [0, {g.m})")
    return chosen


# ---------------------------------------------------------------------------
# distances


def length_scale(lengths: Iterable[Fraction]) -> int:
    """Least common multiple of the denominators, so that lengths become integers."""
    return reduce(math.lcm, (x.denominator for x in lengths), 1)


def _int_sssp(adj: Sequence[Sequence[tuple[int, int]]], source: int, unit: int | None) -> list[float]:
    """Single-source distances on an integer-weighted adjacency list.

    ``unit`` is the common edge weight when all weights agree, which lets a
    plain breadth-first search replace Dijkstra.
    """
    n = len(adj)
    dist: list[float] = [INF] * n
    dist[source] = 0
    if unit is not None:
        queue = deque([source])
        while queue:
            x = queue.popleft()
            dx = dist[x] + unit
            for y, _ in adj[x]:
                if dist[y] == INF:
                    dist[y] = dx
                    queue.append(y)
        return dist
    heap = [(0, source)]
    while heap:
        d, x = heapq.heappop(heap)
        if d > dist[x]:
            continue
        for y, w in adj[x]:
            nd = d + w
            if nd < dist[y]:
                dist[y] = nd
                heapq.heappush(heap, (nd, y))
    return dist


def _common_weight(weights: Iterable[int]) -> int | None:
    seen = set(weights)
    if len(seen) == 1:
        return next(iter(seen))
    return 0 if not seen else None


def int_distance_rows(
    n: int, arcs: Iterable[tuple[int, int, int]], sources: Iterable[int] | None = None
) -> dict[int, list[float]]:
    """Distances from each source on an integer-weighted multigraph."""
    arcs = list(arcs)
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for a, b, w in arcs:
        adj[a].append((b, w))
        adj[b].append((a, w))
    unit = _common_weight(w for _, _, w in arcs)
    srcs = range(n) if sources is None else sources
    return {s: _int_sssp(adj, s, unit) for s in srcs}


def shortest_distances(
    g: Graph, zeroed: Iterable[int] = (), sources: Iterable[int] | None = None
) -> list[list[Distance]]:
    """All-pairs distances under the lengths with every edge of ``zeroed`` set to 0.

    Row ``u`` holds ``dist(u, .)``; unreachable vertices get ``math.inf``.
    When ``sources`` is given only those rows are computed (other rows are
    empty lists).
    """
    zero = validate_edge_set(g, zeroed)
    scale = length_scale(e.length for e in g.edges)
    arcs = [
        (e.u, e.v, 0 if eid in zero else int(e.length * scale)) for eid, e in enumerate(g.edges)
    ]
    rows = int_distance_rows(g.n, arcs, sources)
    out: list[list[Distance]] = [[] for _ in range(g.n)]
    for s, row in rows.items():
        out[s] = [d if d == INF else Fraction(d, scale) for d in row]
    return out


# ---------------------------------------------------------------------------
# contraction


class DisjointSets:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def contraction_classes(n: int, pairs: Iterable[tuple[int, int]]) -> tuple[list[int], int]:
    """Label vertices by the component of ``(V, pairs)`` they fall in.

    Labels are assigned in increasing order of each component's smallest
    vertex, so the labelling is canonical.  Returns ``(labels, count)``.
    """
    ds = DisjointSets(n)
    for a, b in pairs:
        ds.union(a, b)
    labels = [-1] * n
    count = 0
    root_label: dict[int, int] = {}
    for v in range(n):
        r = ds.find(v)
        if r not in root_label:
            root_label[r] = count
            count += 1
        labels[v] = root_label[r]
    return labels, count


@dataclass(frozen=True)
class ContractionResult:
    """Outcome of contracting an edge set.

    ``vertex_map[v]`` is the super-vertex holding ``v``; ``edge_origin[f]`` is
    the original edge id that survives as quotient edge ``f``.
    """

    contracted: frozenset[int]
    delta: int
    quotient: Graph
    vertex_map: tuple[int, ...]
    edge_origin: tuple[int, ...]

    @property
    def phi(self) -> int:
        return len(self.contracted) + self.delta

    def lift(self, quotient_edges: Iterable[int]) -> frozenset[int]:
        """Map quotient edge ids back to the original edges they represent."""
        return frozenset(self.edge_origin[f] for f in validate_edge_set(self.quotient, quotient_edges))


def apply_contraction(g: Graph, edge_set: Iterable[int]) -> ContractionResult:
    """Contract ``edge_set``, drop loops, and keep the shortest of parallel edges.

    Ties between equally short parallel edges go to the smaller original id.
    Quotient edges are ordered by their super-vertex pair.
    """
    chosen = validate_edge_set(g, edge_set)
    labels, count = contraction_classes(g.n, ((g.edges[e].u, g.edges[e].v) for e in chosen))
    best: dict[tuple[int, int], int] = {}
    delta = 0
    for eid, e in enumerate(g.edges):
        if eid in chosen:
            continue
        a, b = labels[e.u], labels[e.v]
        if a == b:
            delta += 1
            continue
        key = (min(a, b), max(a, b))
        held = best.get(key)
        if held is None:
            best[key] = eid
            continue
        delta += 1
        if e.length < g.edges[held].length:
            best[key] = eid
    keys = sorted(best)
    quotient = Graph(count, tuple(Edge(a, b, g.edges[best[(a, b)]].length) for a, b in keys))
    return ContractionResult(chosen, delta, quotient, tuple(labels), tuple(best[k] for k in keys))


def phi_value(g: Graph, edge_set: Iterable[int]) -> int:
    """Number of edges saved by contracting ``edge_set``: ``m(G) - m(G/C)``."""
    return apply_contraction(g, edge_set).phi


def spans_connected(g: Graph, edge_set: Iterable[int]) -> bool:
    """True when ``(V, edge_set)`` is connected, i.e. contraction leaves one vertex."""
    _, count = contraction_classes(g.n, ((g.edges[e].u, g.edges[e].v) for e in edge_set))
    return count <= 1
