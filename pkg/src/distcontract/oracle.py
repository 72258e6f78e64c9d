"""Exhaustive optimum for small instances, used to validate every solver.

Strict feasibility is closed under taking subsets, so a depth-first search
that only extends feasible sets (in increasing edge-id order) visits every
feasible set exactly once.

Weak feasibility is not subset-closed, but an edge set and its closure
(all edges inside the super-vertices it creates) give the same contracted
distances and the same Phi, and the closure is at least as large.  The weak
search therefore enumerates partitions of ``V`` into connected blocks, i.e.
closed sets, which is far fewer than all subsets.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterator, Literal

from .feasibility import ContractionChecker, ToleranceLike
from .graph import Graph

CAP_ENV = "DISTCONTRACT_ORACLE_CAP"
DEFAULT_CAP = 20
MAX_WITNESSES = 64

Objective = Literal["phi", "cardinality"]


class OracleCapError(ValueError):
    """The instance has more edges than the exhaustive search is allowed to handle."""


def oracle_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    return DEFAULT_CAP if raw is None else int(raw)


@dataclass
class OracleResult:
    """Best values over all feasible sets.

    ``best_phi`` and ``best_size`` are maximised independently; ``witnesses``
    holds up to ``MAX_WITNESSES`` sets optimal for the requested objective,
    in the order they were found.  ``explored`` counts the candidate sets
    that passed the checker.
    """

    best_phi: int
    best_size: int
    objective: Objective
    witnesses: list[frozenset[int]] = field(default_factory=list)
    explored: int = 0


class _Collector:
    def __init__(self, objective: Objective, max_witnesses: int) -> None:
        self.result = OracleResult(-1, -1, objective)
        self.max_witnesses = max_witnesses
        self._score = -1

    def offer(self, edges: frozenset[int], phi: int) -> None:
        res = self.result
        res.explored += 1
        res.best_phi = max(res.best_phi, phi)
        res.best_size = max(res.best_size, len(edges))
        score = phi if res.objective == "phi" else len(edges)
        current = self._score
        if score > current:
            res.witnesses = [edges]
            self._score = score
        elif score == current and len(res.witnesses) < self.max_witnesses:
            res.witnesses.append(edges)


def _connected_blocks(g: Graph, seed: int, allowed: set[int]) -> Iterator[frozenset[int]]:
    """All vertex sets containing ``seed`` that induce a connected subgraph within ``allowed``.

    Each set is produced once: the next frontier vertex is either included
    or excluded for good.
    """
    adj = [g.neighbors(v) for v in range(g.n)]

    def grow(block: frozenset[int], frontier: frozenset[int], excluded: frozenset[int]) -> Iterator[frozenset[int]]:
        if not frontier:
            yield block
            return
        w = min(frontier)
        rest = frontier - {w}
        yield from grow(block, rest, excluded | {w})
        bigger = block | {w}
        fresh = {x for x in adj[w] if x in allowed and x not in bigger and x not in excluded}
        yield from grow(bigger, rest | fresh, excluded)

    start = frozenset({seed})
    yield from grow(start, frozenset(x for x in adj[seed] if x in allowed), frozenset())


def connected_partitions(g: Graph) -> Iterator[list[frozenset[int]]]:
    """Every partition of ``V`` whose blocks induce connected subgraphs."""

    def rec(remaining: frozenset[int]) -> Iterator[list[frozenset[int]]]:
        if not remaining:
            yield []
            return
        seed = min(remaining)
        for block in _connected_blocks(g, seed, set(remaining)):
            for rest in rec(remaining - block):
                yield [block, *rest]

    yield from rec(frozenset(range(g.n)))


def brute_force_optimum(
    g: Graph,
    t: ToleranceLike,
    weak: bool = False,
    objective: Objective = "phi",
    cap: int | None = None,
    max_witnesses: int = MAX_WITNESSES,
) -> OracleResult:
    """Exact maximum of Phi and of ``|C|`` over all (weak) ``t``-contractions of ``g``.

    Raises :class:`OracleCapError` when ``g`` has more than ``cap`` edges
    (default 20, overridable through the ``DISTCONTRACT_ORACLE_CAP``
    environment variable).  For weak instances every witness is closed; a
    graph whose only weak candidate would be the whole vertex set gets
    ``best_phi == best_size == -1``.
    """
    limit = oracle_cap() if cap is None else cap
    if g.m > limit:
        raise OracleCapError(f"{g.m} edges exceed the oracle cap of {limit}")
    if objective not in ("phi", "cardinality"):
        raise ValueError(f"unknown objective {objective!r}")
    checker = ContractionChecker(g, t, weak=weak)
    out = _Collector(objective, max_witnesses)
    if weak:
        for blocks in connected_partitions(g):
            if len(blocks) == 1:
                continue
            where = [0] * g.n
            for i, block in enumerate(blocks):
                for v in block:
                    where[v] = i
            edges = frozenset(eid for eid, e in enumerate(g.edges) if where[e.u] == where[e.v])
            feasible, phi = checker.evaluate(edges)
            if feasible:
                out.offer(edges, phi)
        return out.result

    def dfs(start: int, current: tuple[int, ...], phi: int) -> None:
        out.offer(frozenset(current), phi)
        for e in range(start, g.m):
            bigger = frozenset((*current, e))
            feasible, next_phi = checker.evaluate(bigger)
            if feasible:
                dfs(e + 1, (*current, e), next_phi)

    dfs(0, (), 0)
    return out.result
