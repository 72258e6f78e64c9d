"""Linear-time exact contractions of unit paths, unit cycles, and unit trees (additive case).

Path and cycle routines depend only on the number of vertices, so they take
``n`` and return 1-based edge indices ``i`` (edge ``e_i``).  The adapters
:func:`path_order` and :func:`cycle_order` map those indices onto the edge
ids of a concrete graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .graph import Graph
from .tolerance import AffineTolerance


def greedy_path(n: int, t: AffineTolerance) -> frozenset[int]:
    """Optimal contraction of the unit path on ``n`` vertices; needs ``beta >= 1``.

    Edge ``e_i`` is taken whenever the count so far stays within
    ``(1 - 1/alpha) i + beta``.
    """
    if t.beta < 1:
        raise ValueError("the path greedy needs beta >= 1; use the tree dynamic program instead")
    if n < 1:
        raise ValueError("a path needs at least one vertex")
    slope = 1 - 1 / t.alpha
    chosen: list[int] = []
    for i in range(1, n):
        if len(chosen) + 1 <= slope * i + t.beta:
            chosen.append(i)
    return frozenset(chosen)


def path_size_formula(n: int, t: AffineTolerance) -> int:
    """Closed form ``floor((1 - 1/alpha)(n - 1) + beta)`` of the path optimum (for ``beta >= 1``).

    Capped at ``n - 1``: a large ``beta`` would otherwise count more edges
    than the path has.
    """
    return min(n - 1, math.floor((1 - 1 / t.alpha) * (n - 1) + t.beta))


@dataclass(frozen=True)
class CycleLambda:
    """Largest uniform fraction of cycle edges that may be contracted.

    ``lambda_prime`` minimises ``floor(d - min(d, n-d)/alpha + beta) / d``
    over window lengths ``d``; ``argmin_d`` is the smallest minimiser.
    """

    lambda_prime: Fraction
    lam: Fraction
    argmin_d: int


def window_budget(n: int, d: int, t: AffineTolerance) -> int:
    """Most contracted edges a window of ``d`` consecutive cycle edges can hold."""
    return math.floor(d - Fraction(min(d, n - d)) / t.alpha + t.beta)


def cycle_lambda(n: int, t: AffineTolerance) -> CycleLambda:
    if n < 3:
        raise ValueError("a cycle needs at least three vertices")
    best: Fraction | None = None
    arg = 0
    for d in range(1, n):
        value = Fraction(window_budget(n, d, t), d)
        if best is None or value < best:
            best, arg = value, d
    assert best is not None
    return CycleLambda(best, min(Fraction(1), best), arg)


def greedy_cycle(n: int, t: AffineTolerance) -> frozenset[int]:
    """Optimal contraction of the unit cycle on ``n`` vertices.

    Edge ``e_i`` is taken exactly when ``floor(lambda i)`` steps up, which
    spreads ``floor(lambda n)`` contracted edges evenly around the cycle.
    """
    lam = cycle_lambda(n, t).lam
    return frozenset(i for i in range(1, n + 1) if math.floor(lam * i) - math.floor(lam * (i - 1)) == 1)


def _walk(g: Graph, start: int) -> list[int]:
    order: list[int] = []
    prev_edge = -1
    x = start
    while True:
        nxt = [e for e in g.incident(x) if e != prev_edge]
        if not nxt:
            return order
        e = nxt[0]
        if order and e == order[0]:
            return order
        order.append(e)
        prev_edge = e
        x = g.edges[e].other(x)


def path_order(g: Graph) -> list[int]:
    """Edge ids of a unit path graph listed from the lower-id endpoint.

    ``path_order(g)[i - 1]`` is the edge id playing the role of ``e_i``.
    """
    if not g.is_tree() or any(g.degree(v) > 2 for v in range(g.n)):
        raise ValueError("graph is not a path")
    if not g.is_unit():
        raise ValueError("the path greedy needs unit lengths")
    if g.n == 1:
        return []
    ends = [v for v in range(g.n) if g.degree(v) == 1]
    return _walk(g, ends[0])


def cycle_order(g: Graph) -> list[int]:
    """Edge ids of a unit cycle starting at vertex 0 and heading to its smaller neighbour."""
    if g.n < 3 or g.m != g.n or not g.is_connected() or any(g.degree(v) != 2 for v in range(g.n)):
        raise ValueError("graph is not a cycle")
    if not g.is_unit():
        raise ValueError("the cycle greedy needs unit lengths")
    first = min(g.incident(0), key=lambda e: g.edges[e].other(0))
    rest = [e for e in g.incident(0) if e != first]
    order = [first]
    prev, x = first, g.edges[first].other(0)
    while x != 0:
        e = next(f for f in g.incident(x) if f != prev)
        order.append(e)
        prev, x = e, g.edges[e].other(x)
    assert order[-1] == rest[0]
    return order


def solve_path_graph(g: Graph, t: AffineTolerance) -> frozenset[int]:
    order = path_order(g)
    return frozenset(order[i - 1] for i in greedy_path(g.n, t))


def solve_cycle_graph(g: Graph, t: AffineTolerance) -> frozenset[int]:
    order = cycle_order(g)
    return frozenset(order[i - 1] for i in greedy_cycle(g.n, t))


def _require_tree(tree: Graph) -> None:
    if not tree.is_tree():
        raise ValueError("graph is not a tree")


def leaf_layers(tree: Graph, d: int) -> frozenset[int]:
    """Edges removed by ``d`` rounds of deleting every current leaf.

    Equivalently the edges with an endpoint from which every path avoiding
    the edge has fewer than ``d`` edges.  Runs in linear time.
    """
    _require_tree(tree)
    if d < 0:
        raise ValueError("d must be non-negative")
    degree = [tree.degree(v) for v in range(tree.n)]
    removed_edge = [False] * tree.m
    removed_vertex = [False] * tree.n
    layer = [v for v in range(tree.n) if degree[v] == 1]
    taken: set[int] = set()
    for _ in range(d):
        if not layer:
            break
        nxt: list[int] = []
        for v in layer:
            if removed_vertex[v]:
                continue
            removed_vertex[v] = True
            for e in tree.incident(v):
                if removed_edge[e]:
                    continue
                removed_edge[e] = True
                taken.add(e)
                w = tree.edges[e].other(v)
                degree[w] -= 1
                if degree[w] == 1:
                    nxt.append(w)
        # a lone vertex left with no edges needs no further rounds
        layer = [w for w in nxt if not removed_vertex[w]]
    return frozenset(taken)


def unit_tree_additive(tree: Graph, beta: int) -> frozenset[int]:
    """Optimal ``(1, beta)``-contraction of a unit tree for integer ``beta``.

    Takes the ``floor(beta/2)`` outer leaf layers; for odd ``beta`` adds the
    smallest-id edge not yet taken, if one remains.
    """
    _require_tree(tree)
    if not tree.is_unit():
        raise ValueError("unit_tree_additive needs unit lengths")
    if beta < 0 or int(beta) != beta:
        raise ValueError("beta must be a non-negative integer")
    beta = int(beta)
    chosen = set(leaf_layers(tree, beta // 2))
    if beta % 2 == 1:
        spare = [e for e in range(tree.m) if e not in chosen]
        if spare:
            chosen.add(spare[0])
    return frozenset(chosen)
