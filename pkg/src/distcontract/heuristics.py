"""Fast contractions with guarantees but no optimality: clustering and degree rules.

All routines expect connected graphs with unit lengths.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .feasibility import Violation, check_contraction
from .graph import Graph, apply_contraction
from .tolerance import AffineTolerance

#: ``r`` for :func:`r_partition`: a rational, or ``"log2n"`` for growth factor 2.
Radius = Union[Fraction, int, str]
LOG2N = "log2n"


def _require_unit_connected(g: Graph) -> None:
    if not g.is_unit():
        raise ValueError("expected unit edge lengths")
    if not g.is_connected():
        raise ValueError("expected a connected graph")


@dataclass(frozen=True)
class Cluster:
    center: int
    members: frozenset[int]
    #: vertex counts of the accepted breadth-first layers, layer 0 being the center
    layers: tuple[int, ...]

    @property
    def radius(self) -> int:
        return len(self.layers) - 1


@dataclass(frozen=True)
class RPartition:
    clusters: tuple[Cluster, ...]
    r: Radius
    density: int


def _grows_enough(layer: int, total: int, n: int, r: Radius) -> bool:
    """Exact test of ``layer >= n^(1/r) * total``."""
    if r == LOG2N:
        return layer >= 2 * total
    q = Fraction(r)
    # n^(1/r) = n^(den/num); raise both sides to the power num
    return layer ** q.numerator >= n ** q.denominator * total ** q.numerator


def cluster_density(g: Graph, cluster_of: list[int]) -> int:
    return len({tuple(sorted((cluster_of[e.u], cluster_of[e.v]))) for e in g.edges if cluster_of[e.u] != cluster_of[e.v]})


def r_partition(g: Graph, r: Radius) -> RPartition:
    """Grow clusters from the lowest remaining vertex, layer by layer.

    A breadth-first layer (within the not-yet-clustered vertices) is
    accepted while it holds at least ``n^(1/r)`` times as many vertices as
    all accepted layers together; the first layer failing the test stops the
    cluster.  The number of adjacent cluster pairs is at most ``n^(1+1/r)``.
    """
    _require_unit_connected(g)
    if r != LOG2N and Fraction(r) < 1:
        raise ValueError("r must be at least 1")
    n = g.n
    cluster_of = [-1] * n
    clusters: list[Cluster] = []
    for center in range(n):
        if cluster_of[center] >= 0:
            continue
        cid = len(clusters)
        cluster_of[center] = cid
        members = [center]
        frontier = [center]
        layers = [1]
        while True:
            seen: set[int] = set()
            nxt = []
            for x in frontier:
                for y in g.neighbors(x):
                    if cluster_of[y] < 0 and y not in seen:
                        seen.add(y)
                        nxt.append(y)
            if not nxt or not _grows_enough(len(nxt), len(members), n, r):
                break
            for y in nxt:
                cluster_of[y] = cid
            members.extend(nxt)
            layers.append(len(nxt))
            frontier = nxt
        clusters.append(Cluster(center, frozenset(members), tuple(layers)))
    return RPartition(tuple(clusters), r, cluster_density(g, cluster_of))


def intra_cluster_edges(g: Graph, clusters: tuple[Cluster, ...] | list[frozenset[int]]) -> frozenset[int]:
    cluster_of = [-1] * g.n
    for cid, c in enumerate(clusters):
        for v in c.members if isinstance(c, Cluster) else c:
            cluster_of[v] = cid
    return frozenset(eid for eid, e in enumerate(g.edges) if cluster_of[e.u] == cluster_of[e.v])


def multiplicative_contraction(g: Graph, k: Radius) -> frozenset[int]:
    """Contract every cluster of a ``k``-partition.

    The quotient has at most ``n^(1+1/k)`` edges and the set is meant as a
    ``(2k-1, 1)``-contraction; pass ``"log2n"`` for ``k = log2 n``, where
    the quotient has at most ``2n`` edges.
    """
    return intra_cluster_edges(g, r_partition(g, k).clusters)


def top_degree_vertices(g: Graph, count: int) -> list[int]:
    return sorted(range(g.n), key=lambda v: (-g.degree(v), v))[:count]


def additive_topdegree(g: Graph, k: int) -> frozenset[int]:
    """Edges touching the ``k/2`` highest-degree vertices (ties to lower ids).

    A ``(1, k)``-contraction with Phi at least ``k m / (2n)``.
    """
    _require_unit_connected(g)
    if k < 0 or k % 2 or k > g.n:
        raise ValueError("k must be an even integer in [0, n]")
    hubs = set(top_degree_vertices(g, k // 2))
    return frozenset(eid for eid, e in enumerate(g.edges) if e.u in hubs or e.v in hubs)


class VerificationError(RuntimeError):
    """A heuristic produced a set that failed its feasibility check."""

    def __init__(self, violation: Violation, edges: frozenset[int]) -> None:
        super().__init__(f"set of {len(edges)} edges fails at pair ({violation.u}, {violation.v})")
        self.violation = violation
        self.edges = edges


def additive_highdegree(g: Graph, k: object) -> frozenset[int]:
    """Edges whose two endpoints both have degree at least ``n/k``, verified as a ``(1, k)``-contraction.

    Raises :class:`VerificationError` carrying the violation if the check fails.
    """
    _require_unit_connected(g)
    k = Fraction(k)
    if not 0 < k <= g.n:
        raise ValueError("k must lie in (0, n]")
    high = {v for v in range(g.n) if g.degree(v) * k >= g.n}
    chosen = frozenset(eid for eid, e in enumerate(g.edges) if e.u in high and e.v in high)
    bad = check_contraction(g, AffineTolerance(1, k), chosen)
    if bad is not None:
        raise VerificationError(bad, chosen)
    return chosen


def min_degree_clusters(g: Graph, d: int) -> list[frozenset[int]]:
    """Stars around centers of residual degree at least ``d``, leftovers attached to a neighbouring star."""
    _require_unit_connected(g)
    if d < 1:
        raise ValueError("D must be positive")
    if any(g.degree(v) < d for v in range(g.n)):
        raise ValueError(f"minimum degree is below {d}")
    cluster_of = [-1] * g.n
    residual = [g.degree(v) for v in range(g.n)]
    clusters: list[list[int]] = []

    def take(v: int, cid: int) -> None:
        cluster_of[v] = cid
        for y in g.neighbors(v):
            residual[y] -= 1

    # residual degrees only drop, so one pass in id order picks the lowest eligible center each time
    for v in range(g.n):
        if cluster_of[v] >= 0 or residual[v] < d:
            continue
        cid = len(clusters)
        star = [v] + [y for y in g.neighbors(v) if cluster_of[y] < 0]
        for y in star:
            take(y, cid)
        clusters.append(star)
    stars = list(cluster_of)
    for v in range(g.n):
        if stars[v] < 0:
            cid = min(stars[y] for y in g.neighbors(v) if stars[y] >= 0)
            cluster_of[v] = cid
            clusters[cid].append(v)
    return [frozenset(c) for c in clusters]


def min_degree_clustering(g: Graph, d: int) -> frozenset[int]:
    """A ``(5, 1)``-contraction leaving at most ``n/d`` super-vertices."""
    return intra_cluster_edges(g, min_degree_clusters(g, d))


def quotient_size(g: Graph, chosen: frozenset[int]) -> tuple[int, int]:
    """``(n(G/C), m(G/C))``."""
    q = apply_contraction(g, chosen).quotient
    return q.n, q.m
