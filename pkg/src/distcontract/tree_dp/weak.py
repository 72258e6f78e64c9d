"""Exact program for maximum-size weak contractions of weighted trees.

For weak contractions a single load per table entry is not enough: pairs
merged to distance 0 are exempt, so the weak load (the maximum over
vertices still at positive contracted distance) matters too.  Each
``(v, i, s)`` therefore stores the Pareto front of ``(load, wload)`` pairs
over feasible size-``s`` sets in ``T+_{v,i}``.  A subtree contracted onto
its root is kept as a partial solution (weak load ``-inf``) even though it
is not weakly feasible on its own.

Fronts are combined one cap at a time: for every candidate load value
``lambda`` the merge finds the least weak load reachable with load at most
``lambda``, and a last uncapped merge finds the least load overall.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..feasibility import check_weak_contraction
from ..graph import Distance, Graph
from ..textio import format_rational
from ..tolerance import AffineTolerance
from .pareto import ParetoEntry, pareto_filter, pareto_merge
from .rooted import RootedOrderedTree, lambda_set

INF = math.inf
Front = list[ParetoEntry]
Fronts = dict[int, Front]


def _fmt(x: Distance) -> str:
    if x == INF:
        return "inf"
    if x == -INF:
        return "-inf"
    return format_rational(x)


@dataclass(frozen=True)
class JoinRow:
    """One merged value of the prefix join: the cap used and the resulting pair."""

    v: int
    i: int
    s: int
    cap: Distance | None
    load: Distance
    wload: Distance


class WeakTreeDP:
    def __init__(self, graph: Graph, t: AffineTolerance, root: int = 0) -> None:
        self.tree = RootedOrderedTree(graph, root)
        self.t = t
        #: fronts of ``T+_{v,i}`` keyed by ``(v, i)``, then by size
        self.prefix: dict[tuple[int, int], Fronts] = {}
        #: fronts of ``T_{v,i}``
        self.branch: dict[tuple[int, int], Fronts] = {}
        self.join_rows: list[JoinRow] = []
        self._run()

    def _extend(self, below: Fronts, ell: Fraction, edge: int) -> Fronts:
        alpha, beta = self.t.alpha, self.t.beta
        keep = (1 - 1 / alpha) * ell
        grown: dict[int, list[ParetoEntry]] = {}
        for s, front in below.items():
            for e in front:
                # leave the edge: everything below moves to positive contracted distance
                wl = e.load - keep
                if wl <= beta:
                    grown.setdefault(s, []).append(ParetoEntry(max(wl, Fraction(0)), wl, ("omit", edge, e)))
                wl = e.wload + ell / alpha
                if wl <= beta:
                    grown.setdefault(s + 1, []).append(ParetoEntry(e.load + ell / alpha, wl, ("add", edge, e)))
        return {s: pareto_filter(entries) for s, entries in sorted(grown.items())}

    def _join(self, v: int, i: int, left: Fronts, right: Fronts) -> Fronts:
        beta = self.t.beta
        caps = lambda_set(self.tree, self.t.alpha, v, self.tree.prefix(v, i))
        out: Fronts = {}
        for s in range(max(left) + max(right) + 1):
            splits = [t for t in range(s + 1) if t in left and s - t in right]
            if not splits:
                continue
            points: list[ParetoEntry] = []
            for cap in [*caps, None]:
                best = None
                for t in splits:
                    r = pareto_merge(left[t], right[s - t], beta, cap)
                    if r.load == INF:
                        continue
                    key = (r.wload, r.load) if cap is not None else (r.load, r.wload)
                    if best is None or key < best[0]:
                        best = (key, t, r)
                if best is None:
                    continue
                _, t, r = best
                self.join_rows.append(JoinRow(v, i, s, cap, r.load, r.wload))
                points.append(ParetoEntry(r.load, r.wload, ("join", left[t][r.left], right[s - t][r.right])))
            if points:
                out[s] = pareto_filter(points)
        return out

    def _run(self) -> None:
        tree = self.tree
        g = tree.graph
        for v in tree.postorder:
            acc: Fronts = {0: [ParetoEntry(Fraction(0), -INF, ("leaf", v))]}
            self.prefix[(v, 0)] = acc
            for i, u in enumerate(tree.children(v), start=1):
                edge = tree.parent_edge[u]
                below = self.prefix[(u, tree.child_count(u))]
                branch = self._extend(below, g.edges[edge].length, edge)
                self.branch[(v, i)] = branch
                acc = self._join(v, i, acc, branch)
                self.prefix[(v, i)] = acc

    def front(self, v: int, s: int) -> Front:
        """Pareto front of ``T_v`` at size ``s`` (empty if no feasible set exists)."""
        return self.prefix[(v, self.tree.child_count(v))].get(s, [])

    def lambda_star(self, v: int, s: int) -> Distance:
        """Least load of a feasible size-``s`` partial solution in ``T_v``."""
        f = self.front(v, s)
        return f[0].load if f else INF

    @property
    def optimum(self) -> int:
        root_fronts = self.prefix[(self.tree.root, self.tree.child_count(self.tree.root))]
        sizes = [s for s, f in root_fronts.items() if any(e.wload != -INF for e in f)]
        if not sizes:
            raise ValueError("no weak contraction exists: the tree has a single vertex")
        return max(sizes)

    def reconstruct(self, size: int | None = None) -> frozenset[int]:
        s = self.optimum if size is None else size
        candidates = [e for e in self.front(self.tree.root, s) if e.wload != -INF]
        if not candidates:
            raise ValueError(f"no weak contraction of size {s}")
        chosen: list[int] = []
        stack = [candidates[0]]
        while stack:
            back = stack.pop().back
            if back[0] == "join":
                stack.extend(back[1:])
            elif back[0] == "add":
                chosen.append(back[1])
                stack.append(back[2])
            elif back[0] == "omit":
                stack.append(back[2])
        return frozenset(chosen)

    def format_tables(self) -> str:
        """Text dump: ``F v i s : load,wload ...`` per front and ``W+ v i s cap : load wload`` per join value."""
        lines = []
        for (v, i), fronts in sorted(self.prefix.items()):
            for s, front in sorted(fronts.items()):
                pts = " ".join(f"{_fmt(e.load)},{_fmt(e.wload)}" for e in front)
                lines.append(f"F {v} {i} {s} : {pts}")
        for row in self.join_rows:
            cap = "*" if row.cap is None else _fmt(row.cap)
            lines.append(f"W+ {row.v} {row.i} {row.s} {cap} : {_fmt(row.load)} {_fmt(row.wload)}")
        return "\n".join(lines) + "\n"


def solve_tree_weak_contraction(
    tree: Graph, t: AffineTolerance, root: int = 0, verify: bool = False
) -> frozenset[int]:
    """A maximum-size weak ``t``-contraction of a weighted tree with at least two vertices."""
    dp = WeakTreeDP(tree, t, root)
    chosen = dp.reconstruct()
    if verify:
        bad = check_weak_contraction(tree, t, chosen)
        if bad is not None:
            raise RuntimeError(f"weak tree program produced an infeasible set: {bad}")
    return chosen
