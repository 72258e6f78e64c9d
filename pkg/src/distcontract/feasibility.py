"""Deciding whether an edge set is a (weak) distance-preserving contraction.

A set ``C`` is feasible for a tolerance ``phi`` when every pair keeps
``dist_C(u, v) >= phi(dist(u, v))`` after the edges of ``C`` get length 0.
The weak variant exempts pairs merged to distance 0 but forbids ``C`` from
connecting all of ``V``.

Besides the general check, three specialised criteria are provided that
only look at local structure.  They are cross-validated against the general
check in the test-suite.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Protocol, Union

from .graph import (
    INF,
    Distance,
    Graph,
    contraction_classes,
    int_distance_rows,
    length_scale,
    shortest_distances,
    validate_edge_set,
)
from .tolerance import AffineTolerance


class Tolerance(Protocol):
    def __call__(self, x: Distance) -> Distance: ...


ToleranceLike = Union[AffineTolerance, Tolerance, Callable[[Distance], Distance]]


class AllContractedError(ValueError):
    """Raised when a weak contraction would merge the whole graph into one vertex."""


@dataclass(frozen=True)
class Violation:
    """A pair whose contracted distance fell below the tolerance."""

    u: int
    v: int
    original: Distance
    contracted: Distance
    required: Distance

    def as_tuple(self) -> tuple:
        return (self.u, self.v, self.original, self.contracted, self.required)


def _admits(tol: ToleranceLike, original: Distance, contracted: Distance) -> bool:
    admits = getattr(tol, "admits", None)
    if admits is not None:
        return admits(original, contracted)
    return contracted >= tol(original)


class ContractionChecker:
    """Reusable checker for one graph and tolerance.

    Original distances are computed once, so checking many candidate sets
    (as the exhaustive oracle does) only pays for the contracted distances.
    Lengths are scaled to integers by the common denominator; for affine
    tolerances each pair gets a precomputed integer threshold, which keeps
    every comparison exact.
    """

    def __init__(self, g: Graph, tolerance: ToleranceLike, weak: bool = False) -> None:
        self.g = g
        self.tolerance = tolerance
        self.weak = weak
        self.scale = length_scale(e.length for e in g.edges)
        self.weights = [int(e.length * self.scale) for e in g.edges]
        arcs = [(e.u, e.v, w) for e, w in zip(g.edges, self.weights)]
        rows = int_distance_rows(g.n, arcs)
        self.original = [rows[s] for s in range(g.n)]
        self.threshold: list[list[float]] | None = None
        if isinstance(tolerance, AffineTolerance):
            slack = tolerance.beta * self.scale
            by_distance: dict[float, float] = {INF: -INF}
            for row in self.original:
                for d in row:
                    if d not in by_distance:
                        by_distance[d] = math.ceil(Fraction(d) / tolerance.alpha - slack)
            self.threshold = [[by_distance[d] for d in row] for row in self.original]

    def contracted_rows(self, edge_set: frozenset[int]) -> tuple[list[int], int, dict[int, list[float]], int]:
        """Quotient labels, super-vertex count, quotient distance rows and Phi."""
        g = self.g
        labels, count = contraction_classes(g.n, ((g.edges[e].u, g.edges[e].v) for e in edge_set))
        best: dict[tuple[int, int], int] = {}
        for eid, e in enumerate(g.edges):
            a, b = labels[e.u], labels[e.v]
            if a == b:
                continue
            key = (a, b) if a < b else (b, a)
            w = self.weights[eid]
            if key not in best or w < best[key]:
                best[key] = w
        rows = int_distance_rows(count, ((a, b, w) for (a, b), w in best.items()))
        return labels, count, rows, g.m - len(best)

    def _scan(self, labels: list[int], rows: dict[int, list[float]]) -> Violation | None:
        n = self.g.n
        weak = self.weak
        thr = self.threshold
        # general tolerances are pure, and scaled distances repeat a lot
        verdicts: dict[tuple[float, float], bool] = {}
        for u in range(n):
            qrow = rows[labels[u]]
            orow = self.original[u]
            for v in range(u + 1, n):
                dc = qrow[labels[v]]
                if weak and dc == 0:
                    continue
                if thr is not None:
                    ok = dc >= thr[u][v]
                else:
                    key = (orow[v], dc)
                    ok = verdicts.get(key)
                    if ok is None:
                        ok = _admits(self.tolerance, self._unscale(orow[v]), self._unscale(dc))
                        verdicts[key] = ok
                if not ok:
                    return self._violation(u, v, orow[v], dc)
        return None

    def _unscale(self, d: float) -> Distance:
        return d if d == INF else Fraction(d, self.scale)

    def _violation(self, u: int, v: int, d: float, dc: float) -> Violation:
        original = self._unscale(d)
        return Violation(u, v, original, self._unscale(dc), self.tolerance(original))

    def check(self, edge_set: Iterable[int]) -> Violation | None:
        """The lexicographically smallest violating pair, or None when feasible.

        Raises :class:`AllContractedError` in weak mode when ``(V, C)`` is connected.
        """
        chosen = validate_edge_set(self.g, edge_set)
        labels, count, rows, _ = self.contracted_rows(chosen)
        if self.weak and count <= 1:
            raise AllContractedError("the contraction set connects every vertex")
        return self._scan(labels, rows)

    def evaluate(self, edge_set: frozenset[int]) -> tuple[bool, int]:
        """``(feasible, Phi)``; weak sets connecting ``V`` count as infeasible here."""
        labels, count, rows, phi = self.contracted_rows(edge_set)
        if self.weak and count <= 1:
            return False, phi
        return self._scan(labels, rows) is None, phi


def check_contraction(g: Graph, t: ToleranceLike, edge_set: Iterable[int]) -> Violation | None:
    """Return None when ``edge_set`` is a ``t``-contraction, else the smallest violating pair."""
    return ContractionChecker(g, t).check(edge_set)


def check_weak_contraction(g: Graph, t: ToleranceLike, edge_set: Iterable[int]) -> Violation | None:
    """Weak variant of :func:`check_contraction`; raises AllContractedError if ``(V, C)`` is connected."""
    return ContractionChecker(g, t, weak=True).check(edge_set)


def _endpoint_set(g: Graph, chosen: Iterable[int]) -> list[int]:
    return sorted({x for e in chosen for x in (g.edges[e].u, g.edges[e].v)})


def _first_violation(
    g: Graph,
    t: ToleranceLike,
    chosen: frozenset[int],
    pairs: Iterable[tuple[int, int]],
    weak: bool = False,
) -> Violation | None:
    """Evaluate candidate pairs exactly and return the smallest one that violates."""
    pairs = sorted({(min(a, b), max(a, b)) for a, b in pairs if a != b})
    sources = sorted({a for a, _ in pairs})
    before = shortest_distances(g, (), sources)
    after = shortest_distances(g, chosen, sources)
    for a, b in pairs:
        d, dc = before[a][b], after[a][b]
        if weak and dc == 0:
            continue
        if not _admits(t, d, dc):
            return Violation(a, b, d, dc, t(d))
    return None


def check_additive_endpoint_restricted(g: Graph, beta: object, edge_set: Iterable[int]) -> Violation | None:
    """Check ``(1, beta)`` feasibility using only pairs of endpoints of contracted edges.

    For a purely additive tolerance a worst pair can always be moved onto
    such endpoints, so this agrees with the full check while running one
    shortest-path search per endpoint instead of one per vertex.
    """
    t = AffineTolerance(1, beta)
    chosen = validate_edge_set(g, edge_set)
    ends = _endpoint_set(g, chosen)
    return _first_violation(g, t, chosen, combinations(ends, 2))


def _require_unit(g: Graph) -> None:
    if not g.is_unit():
        raise ValueError("this criterion needs unit edge lengths")


def check_bipartite_unit_11(g: Graph, edge_set: Iterable[int]) -> Violation | None:
    """Decide ``(1, 1)`` feasibility on a bipartite unit graph from pairwise edge conditions.

    The set must be a matching, and for every two matched edges ``{u1, u2}``
    and ``{v1, v2}`` the crossing distances must balance:
    ``d(u1, v1) = d(u2, v2)`` and ``d(u1, v2) = d(u2, v1)``.
    """
    _require_unit(g)
    if not g.is_bipartite():
        raise ValueError("this criterion needs a bipartite graph")
    t = AffineTolerance(1, 1)
    chosen = validate_edge_set(g, edge_set)
    for w in range(g.n):
        hits = [e for e in g.incident(w) if e in chosen]
        if len(hits) >= 2:
            a, b = g.edges[hits[0]].other(w), g.edges[hits[1]].other(w)
            return _confirmed(g, t, chosen, [(a, b)], weak=False)
    ordered = sorted(chosen)
    dist = shortest_distances(g, (), _endpoint_set(g, chosen))
    for e, f in combinations(ordered, 2):
        u1, u2 = g.edges[e].u, g.edges[e].v
        v1, v2 = g.edges[f].u, g.edges[f].v
        candidates = []
        for (a1, b1), (a2, b2) in (((u1, v1), (u2, v2)), ((u1, v2), (u2, v1))):
            if dist[a1][b1] < dist[a2][b2]:
                candidates.append((a2, b2))
            elif dist[a1][b1] > dist[a2][b2]:
                candidates.append((a1, b1))
        if candidates:
            return _confirmed(g, t, chosen, candidates, weak=False)
    return None


def _confirmed(
    g: Graph, t: ToleranceLike, chosen: frozenset[int], pairs: list[tuple[int, int]], weak: bool
) -> Violation:
    """A concrete violation for a set a structural criterion rejected.

    Tries the witness pairs suggested by the criterion first and falls back
    to the general checker.  If neither finds a violating pair, the criterion
    and the distance definition disagree, which is reported loudly.
    """
    found = _first_violation(g, t, chosen, pairs, weak=weak)
    if found is None:
        found = ContractionChecker(g, t, weak=weak).check(chosen)
    if found is None:
        raise RuntimeError("structural criterion rejected a set the distance check accepts")
    return found


def _min_free_edges(g: Graph, chosen: frozenset[int], start: int, goal: int, banned: set[int]) -> float:
    """Fewest non-contracted edges on a path ``start -> goal`` avoiding ``banned`` vertices (0-1 BFS)."""
    dist = [INF] * g.n
    dist[start] = 0
    queue = deque([start])
    while queue:
        x = queue.popleft()
        if x == goal:
            return dist[x]
        for eid in g.incident(x):
            y = g.edges[eid].other(x)
            if y in banned:
                continue
            cost = 0 if eid in chosen else 1
            if dist[x] + cost < dist[y]:
                dist[y] = dist[x] + cost
                if cost == 0:
                    queue.appendleft(y)
                else:
                    queue.append(y)
    return dist[goal]


def check_girth6_weak_20(g: Graph, edge_set: Iterable[int]) -> Violation | None:
    """Decide weak ``(2, 0)`` feasibility on a unit graph of girth at least 6.

    Every two contracted edges must either share a vertex while both carry a
    degree-1 vertex, or be separated by at least two non-contracted edges on
    every path through both of them.
    """
    _require_unit(g)
    if g.girth() < 6:
        raise ValueError("this criterion needs girth at least 6")
    t = AffineTolerance(2, 0)
    chosen = validate_edge_set(g, edge_set)
    _, count = contraction_classes(g.n, ((g.edges[e].u, g.edges[e].v) for e in chosen))
    if count <= 1:
        raise AllContractedError("the contraction set connects every vertex")
    for e, f in combinations(sorted(chosen), 2):
        ee, fe = g.edges[e], g.edges[f]
        shared = {ee.u, ee.v} & {fe.u, fe.v}
        if shared:
            c = shared.pop()
            a, b = ee.other(c), fe.other(c)
            if g.degree(a) == 1 and g.degree(b) == 1:
                continue
            pairs = [(x, b) for x in g.neighbors(a) if x != c] + [(a, y) for y in g.neighbors(b) if y != c]
            return _confirmed(g, t, chosen, pairs, weak=True)
        for x in (ee.u, ee.v):
            for y in (fe.u, fe.v):
                outer_x, outer_y = ee.other(x), fe.other(y)
                if _min_free_edges(g, chosen, x, y, {outer_x, outer_y}) < 2:
                    return _confirmed(g, t, chosen, [(outer_x, outer_y)], weak=True)
    return None
