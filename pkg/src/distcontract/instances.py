"""Instance generators: standard families and reduction gadgets used as test beds.

Reduction generators return an :class:`Instance` so the graph always travels
with the tolerance (and weak flag) it was built for.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple, Sequence

from .graph import Edge, Graph
from .tolerance import AffineTolerance

FAMILIES = ("path", "cycle", "star", "complete", "random_tree", "gnp")


class Instance(NamedTuple):
    graph: Graph
    tolerance: AffineTolerance
    weak: bool = False


def _unit(n: int, pairs: Sequence[tuple[int, int]]) -> Graph:
    return Graph.from_edges(n, pairs)


def path_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError("a path needs at least one vertex")
    return _unit(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least three vertices")
    return _unit(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(n: int) -> Graph:
    """Center 0 joined to leaves ``1..n-1``."""
    if n < 2:
        raise ValueError("a star needs at least two vertices")
    return _unit(n, [(0, i) for i in range(1, n)])


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError("need at least one vertex")
    return _unit(n, list(combinations(range(n), 2)))


#: lengths drawn for weighted random trees
LENGTH_POOL = tuple(Fraction(p, q) for p in range(1, 9) for q in (1, 2, 3))


def random_tree(n: int, seed: int, weighted: bool = False) -> Graph:
    """A random recursive tree with shuffled labels; lengths from :data:`LENGTH_POOL` if weighted."""
    if n < 1:
        raise ValueError("a tree needs at least one vertex")
    rng = random.Random(seed)
    labels = list(range(n))
    rng.shuffle(labels)
    edges = []
    for i in range(1, n):
        j = rng.randrange(i)
        length = rng.choice(LENGTH_POOL) if weighted else Fraction(1)
        edges.append(Edge(labels[i], labels[j], length))
    return Graph(n, tuple(edges))


def gnp(n: int, p: object, seed: int, max_tries: int = 1000) -> Graph:
    """Erdos-Renyi ``G(n, p)``, redrawn until connected (draws continue from the same seed)."""
    p = Fraction(p)
    if n < 1 or not 0 <= p <= 1:
        raise ValueError("need n >= 1 and 0 <= p <= 1")
    rng = random.Random(seed)
    for _ in range(max_tries):
        # an integer comparison keeps the draw exact for rational p
        pairs = [
            (u, v) for u, v in combinations(range(n), 2) if rng.randrange(p.denominator) < p.numerator
        ]
        g = _unit(n, pairs)
        if g.is_connected():
            return g
    raise ValueError(f"no connected G({n}, {p}) found in {max_tries} draws")


def gen_basic(
    family: str, n: int, *, seed: int = 0, p: object = Fraction(1, 2), weighted: bool = False
) -> Graph:
    """Dispatch to the standard families listed in :data:`FAMILIES`."""
    if family == "path":
        return path_graph(n)
    if family == "cycle":
        return cycle_graph(n)
    if family == "star":
        return star_graph(n)
    if family == "complete":
        return complete_graph(n)
    if family == "random_tree":
        return random_tree(n, seed, weighted)
    if family == "gnp":
        return gnp(n, p, seed)
    raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")


def gen_layered(n: int, d: int) -> Graph:
    """``n/d`` layers of ``d`` vertices, consecutive layers joined completely."""
    if d < 1 or n % d:
        raise ValueError("D must be positive and divide n")
    if n == d:
        raise ValueError("a single layer has no edges")
    layers = [range(i, i + d) for i in range(0, n, d)]
    pairs = [(u, v) for a, b in zip(layers, layers[1:]) for u in a for v in b]
    return _unit(n, pairs)


@dataclass(frozen=True)
class CloseToOnePartitionInstance:
    """Positive rationals summing to ``n`` whose total deviation from 1 is below 1/5."""

    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        vals = tuple(Fraction(a) for a in self.values)
        object.__setattr__(self, "values", vals)
        if not vals:
            raise ValueError("need at least one value")
        if any(a <= 0 for a in vals):
            raise ValueError("values must be positive")
        if sum(vals) != len(vals):
            raise ValueError("values must sum to their count")
        if self.epsilon >= Fraction(1, 5):
            raise ValueError(f"deviation {self.epsilon} is not below 1/5")

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def epsilon(self) -> Fraction:
        return sum((abs(a - 1) for a in self.values), Fraction(0))

    @property
    def beta(self) -> Fraction:
        return Fraction(self.n, 2) + 2 * self.epsilon

    @property
    def beta_prime(self) -> Fraction:
        return self.beta + 1


def has_equal_partition(values: Sequence[Fraction]) -> bool:
    """Exhaustive check for a subset of size ``n/2`` carrying exactly half the sum."""
    n = len(values)
    if n % 2:
        return False
    half = sum(values, Fraction(0)) / 2
    return any(sum(c, Fraction(0)) == half for c in combinations(values, n // 2))


def random_close_to_one(n: int, seed: int, pairs: int = 2, max_step: Fraction = Fraction(1, 25)) -> CloseToOnePartitionInstance:
    """Perturb the all-ones vector by ``pairs`` opposite moves of random rational size."""
    rng = random.Random(seed)
    values = [Fraction(1)] * n
    budget = Fraction(1, 5)
    for _ in range(pairs):
        i, j = rng.sample(range(n), 2)
        step = Fraction(rng.randint(1, 10), 10) * max_step
        if 2 * step >= budget:
            break
        values[i] += step
        values[j] -= step
        budget -= 2 * step
    return CloseToOnePartitionInstance(tuple(values))


def random_free_deviations(n: int, seed: int, grain: int = 250, spread: int = 8) -> CloseToOnePartitionInstance:
    """Independent deviations ``k/grain`` with ``|k| <= spread`` on all but the last value, which restores the sum.

    Unlike :func:`random_close_to_one` the result is usually unbalanced, so
    both answers of the partition question show up.  Draws that overshoot
    the 1/5 deviation budget are retried.
    """
    if n < 2:
        raise ValueError("need at least two values")
    rng = random.Random(seed)
    while True:
        devs = [Fraction(rng.randint(-spread, spread), grain) for _ in range(n - 1)]
        devs.append(-sum(devs, Fraction(0)))
        if sum(abs(d) for d in devs) < Fraction(1, 5) and any(devs):
            return CloseToOnePartitionInstance(tuple(1 + d for d in devs))


def gen_partition_cycle(inst: CloseToOnePartitionInstance) -> Instance:
    """The cycle on ``2n+4`` vertices whose optimum reveals a balanced partition.

    Vertices ``u_0..u_n`` are ``0..n``, then ``v_1 = n+1``, ``v_2 = n+2`` and
    ``w_0..w_n`` are ``n+3..2n+3``.  Edges run around the cycle in that
    order: ``u_{i-1}u_i`` has length ``a_i`` (values sorted descending),
    ``u_n v_1`` and ``v_2 w_0`` length ``eps``, ``v_1 v_2`` length
    ``beta'``, ``w_{i-1} w_i`` length ``2 - a_i``, and the closing edge
    ``w_n u_0`` length ``beta' + 2 eps``.  Tolerance ``(1, beta)``.
    """
    a = sorted(inst.values, reverse=True)
    n, eps = inst.n, inst.epsilon
    if eps == 0:
        raise ValueError("all-ones input would create zero-length edges")
    if any(x >= 2 for x in a):
        raise ValueError("values must stay below 2")
    v1, v2, w0 = n + 1, n + 2, n + 3
    edges = [(i - 1, i, a[i - 1]) for i in range(1, n + 1)]
    edges += [(n, v1, eps), (v1, v2, inst.beta_prime), (v2, w0, eps)]
    edges += [(w0 + i - 1, w0 + i, 2 - a[i - 1]) for i in range(1, n + 1)]
    edges.append((w0 + n, 0, inst.beta_prime + 2 * eps))
    return Instance(Graph.from_edges(2 * n + 4, edges), AffineTolerance(1, inst.beta))


def gen_clique_lollipop(g: Graph, beta: object) -> Instance:
    """Gadget whose optimal ``(1, beta)`` value is the clique number of ``g``.

    Vertex ``(v,1)`` is ``v``, ``(v,2)`` is ``n+v`` and the hub ``s`` is
    ``2n``.  Edges: the edges of ``g`` at length ``2 beta + 2``, then the
    matching ``(v,1)(v,2)`` at ``beta``, then spokes ``s(v,2)`` at ``beta + 1``.
    """
    beta = Fraction(beta)
    if beta <= 0:
        raise ValueError("beta must be positive")
    n = g.n
    edges = [(e.u, e.v, 2 * beta + 2) for e in g.edges]
    edges += [(v, n + v, beta) for v in range(n)]
    edges += [(2 * n, n + v, beta + 1) for v in range(n)]
    return Instance(Graph.from_edges(2 * n + 1, edges), AffineTolerance(1, beta))


def clique_lollipop_set(g: Graph, vertices: Sequence[int]) -> frozenset[int]:
    """The matching edges of the chosen vertices in :func:`gen_clique_lollipop`'s output."""
    return frozenset(g.m + v for v in vertices)


def gen_bipartite_lollipop(g: Graph) -> Instance:
    """Unit bipartite gadget: cliques of ``g`` give ``(1, 1)``-contractions of equal value.

    Vertex ``(v,1)`` is ``v``, ``(v,2)`` is ``n+v``, ``x_e`` is ``2n+e`` and
    the hub ``s`` is ``2n+m``.  Edges: matching ``(v,1)(v,2)`` (ids
    ``0..n-1``), then ``x_e (u,1)`` and ``x_e (v,1)`` per edge, then spokes
    ``s (v,2)`` and ``s x_e``.
    """
    n, m = g.n, g.m
    hub = 2 * n + m
    pairs = [(v, n + v) for v in range(n)]
    for eid, e in enumerate(g.edges):
        pairs += [(2 * n + eid, e.u), (2 * n + eid, e.v)]
    pairs += [(hub, n + v) for v in range(n)]
    pairs += [(hub, 2 * n + eid) for eid in range(m)]
    return Instance(_unit(2 * n + m + 1, pairs), AffineTolerance(1, 1))


def gen_indset_reduction(g: Graph) -> Instance:
    """Gadget whose optimal weak ``(3/2, 0)`` value is the independence number of ``g``.

    The edges of ``g`` get length 2 (same ids), then every vertex ``v`` gets
    a pendant ``(v,1) = n+v`` at length 1 and ``(v,2) = 2n+v`` at length 2.
    """
    if not g.is_connected():
        raise ValueError("the reduction needs a connected graph")
    n = g.n
    edges = [(e.u, e.v, 2) for e in g.edges]
    edges += [(v, n + v, 1) for v in range(n)]
    edges += [(v, 2 * n + v, 2) for v in range(n)]
    return Instance(Graph.from_edges(3 * n, edges), AffineTolerance(Fraction(3, 2), 0), weak=True)


def indset_set(g: Graph, vertices: Sequence[int]) -> frozenset[int]:
    """The length-1 pendants of the chosen vertices in :func:`gen_indset_reduction`'s output."""
    return frozenset(g.m + v for v in vertices)
