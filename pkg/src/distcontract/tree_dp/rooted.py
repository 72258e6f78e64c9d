"""Ordered rooted trees and the load quantities the tree programs are built on."""

from __future__ import annotations

import math
from collections import deque
from fractions import Fraction
from typing import Iterable

from ..graph import Distance, Graph


class RootedOrderedTree:
    """A tree rooted at ``root`` with children ordered by vertex id.

    Naming follows the usual subtree decomposition: ``T_v`` is the subtree
    of ``v``; ``T_{v,i}`` is ``v`` plus the subtree of its ``i``-th child
    (1-based); ``T+_{v,i}`` is ``v`` plus the subtrees of its first ``i``
    children, so ``T+_{v,0} = {v}`` and ``T+_{v,c(v)} = T_v``.
    """

    def __init__(self, graph: Graph, root: int = 0) -> None:
        if not graph.is_tree():
            raise ValueError("graph is not a tree")
        if not 0 <= root < graph.n:
            raise ValueError("root outside the vertex range")
        self.graph = graph
        self.root = root
        n = graph.n
        self.parent = [-1] * n
        self.parent_edge = [-1] * n
        kids: list[list[int]] = [[] for _ in range(n)]
        order = [root]
        seen = [False] * n
        seen[root] = True
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for e in graph.incident(x):
                y = graph.edges[e].other(x)
                if not seen[y]:
                    seen[y] = True
                    self.parent[y] = x
                    self.parent_edge[y] = e
                    kids[x].append(y)
                    order.append(y)
                    queue.append(y)
        self._children = tuple(tuple(sorted(k)) for k in kids)
        #: vertices with every child listed before its parent
        self.postorder = tuple(reversed(order))
        self._subtree_size = [1] * n
        for v in self.postorder:
            if self.parent[v] >= 0:
                self._subtree_size[self.parent[v]] += self._subtree_size[v]

    def children(self, v: int) -> tuple[int, ...]:
        return self._children[v]

    def child_count(self, v: int) -> int:
        return len(self._children[v])

    def subtree_edge_count(self, v: int) -> int:
        return self._subtree_size[v] - 1

    def subtree(self, v: int) -> list[int]:
        """Vertices of ``T_v`` in breadth-first order."""
        out = [v]
        for x in out:
            out.extend(self._children[x])
        return out

    def prefix(self, v: int, i: int) -> list[int]:
        """Vertices of ``T+_{v,i}``."""
        out = [v]
        for u in self._children[v][:i]:
            out.extend(self.subtree(u))
        return out

    def branch(self, v: int, i: int) -> list[int]:
        """Vertices of ``T_{v,i}``."""
        return [v, *self.subtree(self._children[v][i - 1])]

    def edges_within(self, vertices: Iterable[int]) -> frozenset[int]:
        inside = set(vertices)
        return frozenset(
            e for e, edge in enumerate(self.graph.edges) if edge.u in inside and edge.v in inside
        )

    def distances_from(
        self, v: int, edge_set: Iterable[int] = (), within: Iterable[int] | None = None
    ) -> dict[int, tuple[Fraction, Fraction]]:
        """``u -> (dist(v,u), dist_C(v,u))`` for ``u`` in ``within`` (a connected vertex set containing ``v``)."""
        g = self.graph
        zero = frozenset(edge_set)
        allowed = set(range(g.n)) if within is None else set(within)
        if v not in allowed:
            raise ValueError("the vertex set must contain v")
        out = {v: (Fraction(0), Fraction(0))}
        queue = deque([v])
        while queue:
            x = queue.popleft()
            dx, cx = out[x]
            for e in g.incident(x):
                y = g.edges[e].other(x)
                if y in allowed and y not in out:
                    ell = g.edges[e].length
                    out[y] = (dx + ell, cx + (0 if e in zero else ell))
                    queue.append(y)
        return out

    def load_values(self, v: int, within: Iterable[int] | None = None) -> list[Fraction]:
        """``Lambda``: the sorted distinct values ``dist(u,v)`` over the vertex set (divide by alpha for loads)."""
        return sorted({d for d, _ in self.distances_from(v, (), within).values()})


def load_at(
    tree: RootedOrderedTree,
    edge_set: Iterable[int],
    alpha: object,
    v: int,
    within: Iterable[int] | None = None,
) -> Fraction:
    """``max_u dist(u,v)/alpha - dist_C(u,v)`` over ``within`` (default: the whole tree)."""
    alpha = Fraction(alpha)
    return max(d / alpha - c for d, c in tree.distances_from(v, edge_set, within).values())


def weak_load_at(
    tree: RootedOrderedTree,
    edge_set: Iterable[int],
    alpha: object,
    v: int,
    within: Iterable[int] | None = None,
) -> Distance:
    """Like :func:`load_at` but only over vertices at positive contracted distance; ``-inf`` if none."""
    alpha = Fraction(alpha)
    values = [d / alpha - c for d, c in tree.distances_from(v, edge_set, within).values() if c > 0]
    return max(values) if values else -math.inf


def lambda_set(tree: RootedOrderedTree, alpha: object, v: int, within: Iterable[int] | None = None) -> list[Fraction]:
    """Sorted candidate loads ``dist(u,v)/alpha`` of a subtree at ``v``."""
    alpha = Fraction(alpha)
    return [d / alpha for d in tree.load_values(v, within)]
