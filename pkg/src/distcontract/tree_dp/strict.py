"""Cubic-time exact program for maximum-size contractions of weighted trees.

``L(v,i,s)`` is the least load at ``v`` of a feasible size-``s`` set inside
``T_{v,i}``; ``Lp(v,i,s)`` the same for ``T+_{v,i}``.  A table entry of
``inf`` means no feasible set of that size exists.  A set on a tree is
feasible exactly when its parts are feasible and the loads of the two sides
of every split add up to at most ``beta``, which is what the join enforces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..feasibility import check_contraction
from ..graph import INF, Distance, Graph
from ..textio import format_rational
from ..tolerance import AffineTolerance
from .rooted import RootedOrderedTree


def _fmt(x: Distance) -> str:
    if x == INF:
        return "inf"
    if x == -INF:
        return "-inf"
    return format_rational(x)


@dataclass
class LoadTables:
    """Rows of the strict program keyed by ``(v, i)``; index ``s`` is the set size."""

    branch: dict[tuple[int, int], list[Distance]] = field(default_factory=dict)
    prefix: dict[tuple[int, int], list[Distance]] = field(default_factory=dict)

    def format(self) -> str:
        """One line per row: ``L v i : x0 x1 ...`` and ``L+ v i : ...``."""
        lines = []
        for (v, i), row in sorted(self.branch.items()):
            lines.append(f"L {v} {i} : " + " ".join(_fmt(x) for x in row))
        for (v, i), row in sorted(self.prefix.items()):
            lines.append(f"L+ {v} {i} : " + " ".join(_fmt(x) for x in row))
        return "\n".join(lines) + "\n"


class StrictTreeDP:
    """Runs the program once and keeps the tables for inspection or dumping."""

    def __init__(self, graph: Graph, t: AffineTolerance, root: int = 0) -> None:
        self.tree = RootedOrderedTree(graph, root)
        self.t = t
        self.tables = LoadTables()
        # how each entry was reached: ("add"|"omit") for branch rows, split t for prefix rows
        self._branch_choice: dict[tuple[int, int], list[str | None]] = {}
        self._prefix_choice: dict[tuple[int, int], list[int]] = {}
        self._run()

    def _run(self) -> None:
        tree, alpha, beta = self.tree, self.t.alpha, self.t.beta
        keep = 1 - 1 / alpha
        g = tree.graph
        for v in tree.postorder:
            prev: list[Distance] = [Fraction(0)]
            self.tables.prefix[(v, 0)] = prev
            self._prefix_choice[(v, 0)] = [0]
            for i, u in enumerate(tree.children(v), start=1):
                ell = g.edges[tree.parent_edge[u]].length
                below = self.tables.prefix[(u, tree.child_count(u))]
                row: list[Distance] = [INF] * (len(below) + 1)
                how: list[str | None] = [None] * len(row)
                for s in range(len(row)):
                    best, kind = INF, None
                    if s < len(below) and below[s] != INF:
                        best, kind = max(below[s] - keep * ell, Fraction(0)), "omit"
                    if s >= 1 and below[s - 1] != INF:
                        added = below[s - 1] + ell / alpha
                        if added < best:
                            best, kind = added, "add"
                    if best <= beta:
                        row[s], how[s] = best, kind
                self.tables.branch[(v, i)] = row
                self._branch_choice[(v, i)] = how
                joined: list[Distance] = [INF] * (len(prev) + len(row) - 1)
                split = [-1] * len(joined)
                for s in range(len(joined)):
                    for t in range(max(0, s - len(row) + 1), min(s, len(prev) - 1) + 1):
                        a, b = prev[t], row[s - t]
                        if a == INF or b == INF or a + b > beta:
                            continue
                        value = max(a, b)
                        if value < joined[s]:
                            joined[s], split[s] = value, t
                self.tables.prefix[(v, i)] = joined
                self._prefix_choice[(v, i)] = split
                prev = joined

    @property
    def root_row(self) -> list[Distance]:
        r = self.tree.root
        return self.tables.prefix[(r, self.tree.child_count(r))]

    @property
    def optimum(self) -> int:
        return max(s for s, x in enumerate(self.root_row) if x != INF)

    def reconstruct(self, size: int | None = None) -> frozenset[int]:
        """An optimal set (or one of the given feasible size) following the recorded choices."""
        tree = self.tree
        s0 = self.optimum if size is None else size
        if not 0 <= s0 < len(self.root_row) or self.root_row[s0] == INF:
            raise ValueError(f"no feasible set of size {s0}")
        chosen: list[int] = []
        stack: list[tuple[str, int, int, int]] = [("prefix", tree.root, tree.child_count(tree.root), s0)]
        while stack:
            kind, v, i, s = stack.pop()
            if kind == "prefix":
                if i == 0:
                    continue
                t = self._prefix_choice[(v, i)][s]
                stack.append(("prefix", v, i - 1, t))
                stack.append(("branch", v, i, s - t))
            else:
                u = tree.children(v)[i - 1]
                how = self._branch_choice[(v, i)][s]
                if how == "add":
                    chosen.append(tree.parent_edge[u])
                    s -= 1
                stack.append(("prefix", u, tree.child_count(u), s))
        return frozenset(chosen)


def solve_tree_contraction(
    tree: Graph, t: AffineTolerance, root: int = 0, verify: bool = False
) -> frozenset[int]:
    """A maximum-size ``t``-contraction of a weighted tree.

    With ``verify`` the result is re-checked by the general checker and a
    RuntimeError is raised on disagreement.
    """
    dp = StrictTreeDP(tree, t, root)
    chosen = dp.reconstruct()
    if verify:
        bad = check_contraction(tree, t, chosen)
        if bad is not None:
            raise RuntimeError(f"tree program produced an infeasible set: {bad}")
    return chosen
