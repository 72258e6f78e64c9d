"""End-to-end acceptance checks, one test per criterion.

Every test records a PASS/FAIL line through ``record_criterion``; the lines
are printed together at the end of the session (see ``conftest.py``) and
also echoed to stdout as each test finishes.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

import networkx as nx
import pytest

from distcontract.feasibility import (
    AllContractedError,
    check_additive_endpoint_restricted,
    check_bipartite_unit_11,
    check_contraction,
    check_girth6_weak_20,
    check_weak_contraction,
)
from distcontract.graph import Graph, apply_contraction
from distcontract.greedy import (
    cycle_lambda,
    greedy_cycle,
    greedy_path,
    path_size_formula,
    solve_cycle_graph,
    solve_path_graph,
    window_budget,
)
from distcontract.heuristics import (
    LOG2N,
    additive_topdegree,
    min_degree_clustering,
    multiplicative_contraction,
    quotient_size,
)
from distcontract.instances import (
    clique_lollipop_set,
    cycle_graph,
    gen_clique_lollipop,
    gen_indset_reduction,
    gen_layered,
    gen_partition_cycle,
    gnp,
    has_equal_partition,
    path_graph,
    random_free_deviations,
    star_graph,
)
from distcontract.oracle import brute_force_optimum
from distcontract.tolerance import AffineTolerance, LogStretchTolerance, compose
from distcontract.tree_dp import (
    RootedOrderedTree,
    WeakTreeDP,
    lambda_set,
    load_at,
    solve_tree_contraction,
    solve_tree_weak_contraction,
    weak_load_at,
)

from . import figures
from .strategies import random_bipartite, random_connected, random_edge_subset, random_girth6, random_matching, random_tree_graph

pytestmark = pytest.mark.slow

#: 20 tolerance pairs shared by the path and cycle checks
GRID = [
    AffineTolerance(a, b)
    for a in (1, Fraction(5, 4), Fraction(3, 2), 2, 3)
    for b in (Fraction(1, 2), 1, Fraction(3, 2), Fraction(5, 2))
]


def finish(record, number: int, failures: list[str], detail: str) -> None:
    passed = not failures
    text = detail if passed else f"{detail}; first failures: {failures[:3]}"
    record(number, passed, text)
    print(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {text}")
    assert passed, text


def random_tolerance(rng: random.Random, max_alpha: int = 3, max_beta: int = 5) -> AffineTolerance:
    alpha = Fraction(rng.randint(4, 4 * max_alpha), 4)
    beta = Fraction(rng.randint(0, 4 * max_beta), rng.choice((1, 2, 4)))
    return AffineTolerance(alpha, min(beta, Fraction(max_beta)))


def heuristic_pool():
    """50 connected unit graphs, 10 to 300 vertices, edge density a small multiple of ln(n)/n."""
    rng = random.Random(2024)
    for i in range(50):
        n = rng.randint(10, 300)
        c = Fraction(rng.randint(3, 8), 2)
        p = min(Fraction(1), (c * Fraction(math.log(n)) / n).limit_denominator(1000))
        yield f"gnp{i}", gnp(n, p, seed=i)


def at_most_power(count: int, n: int, k) -> bool:
    """``count <= n^(1 + 1/k)`` by exact integer powering."""
    if k == LOG2N:
        return count <= 2 * n
    q = Fraction(k)
    return count ** q.numerator <= n ** (q.numerator + q.denominator)


def test_criterion_1_paths_and_cycles_match_oracle(record_criterion):
    failures = []
    checked = 0
    for t in GRID:
        for n in range(2, 13):
            if t.beta >= 1:
                g = path_graph(n)
                got = len(solve_path_graph(g, t))
                want = brute_force_optimum(g, t, objective="cardinality").best_size
                checked += 1
                if got != want:
                    failures.append(("path", n, str(t), got, want))
            if n >= 3:
                g = cycle_graph(n)
                got = len(solve_cycle_graph(g, t))
                want = brute_force_optimum(g, t, objective="cardinality").best_size
                checked += 1
                if got != want:
                    failures.append(("cycle", n, str(t), got, want))
    finish(record_criterion, 1, failures, f"{checked} path/cycle instances over {len(GRID)} tolerances")


def test_criterion_2_tree_programs_match_oracle(record_criterion):
    rng = random.Random(77)
    failures = []
    for i in range(200):
        g = random_tree_graph(rng, rng.randint(1, 10), weighted=True)
        t = random_tolerance(rng)
        got = len(solve_tree_contraction(g, t, verify=True))
        want = brute_force_optimum(g, t).best_phi
        if got != want:
            failures.append(("strict", i, got, want))
    for i in range(100):
        g = random_tree_graph(rng, rng.randint(2, 9), weighted=True)
        t = random_tolerance(rng)
        got = len(solve_tree_weak_contraction(g, t, verify=True))
        want = brute_force_optimum(g, t, weak=True).best_phi
        if got != want:
            failures.append(("weak", i, got, want))
    finish(record_criterion, 2, failures, "200 strict trees (n<=10), 100 weak trees (n<=9)")


def test_criterion_3_figure_values(record_criterion):
    failures = []

    def expect(label, got, want):
        if got != want:
            failures.append((label, got, want))

    tree = RootedOrderedTree(figures.LOAD_TREE, 0)
    a = figures.LOAD_TOLERANCE.alpha
    expect("load T+_{v,2}", load_at(tree, figures.LOAD_SET, a, 0, tree.prefix(0, 2)), Fraction(3, 2))
    expect("load T_{v,3}", load_at(tree, figures.LOAD_SET, a, 0, tree.branch(0, 3)), Fraction(5, 2))
    expect("load set feasible", check_contraction(figures.LOAD_TREE, figures.LOAD_TOLERANCE, figures.LOAD_SET), None)

    tree = RootedOrderedTree(figures.WLOAD_TREE, 0)
    a = figures.WLOAD_ALPHA
    expect("wload C", weak_load_at(tree, figures.WLOAD_SET_C, a, 0), Fraction(1, 2))
    expect("load C", load_at(tree, figures.WLOAD_SET_C, a, 0), Fraction(1, 2))
    expect("wload C'", weak_load_at(tree, figures.WLOAD_SET_C_PRIME, a, 0), Fraction(-1, 2))
    expect("load C'", load_at(tree, figures.WLOAD_SET_C_PRIME, a, 0), Fraction(7, 2))

    dp = WeakTreeDP(figures.PARETO_TREE, figures.PARETO_TOLERANCE, 0)
    expect("Lambda", lambda_set(dp.tree, figures.PARETO_TOLERANCE.alpha, 0), [Fraction(x) for x in ("0", "1/2", "3/2", "2", "3", "7/2", "4")])
    expect("lambda*", dp.lambda_star(0, figures.PARETO_SIZE), Fraction(1))
    finish(record_criterion, 3, failures, "load 3/2, 5/2; wload 1/2, -1/2 with load 7/2; Lambda and lambda* = 1")


def test_criterion_4_path_size_formula(record_criterion):
    failures = []
    checked = capped = 0
    alphas = [Fraction(p, q) for p in range(1, 13) for q in (1, 2, 3, 4) if Fraction(p, q) >= 1]
    betas = [Fraction(p, q) for p in range(1, 25) for q in (1, 2, 3) if Fraction(p, q) >= 1]
    for n in range(2, 41, 3):
        for alpha in sorted(set(alphas)):
            for beta in sorted(set(betas))[::4]:
                t = AffineTolerance(alpha, beta)
                size = len(greedy_path(n, t))
                raw = math.floor((1 - 1 / alpha) * (n - 1) + beta)
                checked += 1
                if raw > n - 1:
                    # the closed form counts more edges than the path has; the greedy takes them all
                    capped += 1
                    if size != n - 1:
                        failures.append((n, str(t), size, "expected every edge"))
                elif size != raw:
                    failures.append((n, str(t), size, raw))
                if size != path_size_formula(n, t):
                    failures.append((n, str(t), size, "path_size_formula"))
    finish(record_criterion, 4, failures, f"{checked} (n,alpha,beta) points, {checked - capped} below the edge count and {capped} capped at n-1")


def test_criterion_5_cycle_windows(record_criterion):
    failures = []
    checked = 0
    alphas = (1, Fraction(4, 3), Fraction(3, 2), 2, Fraction(5, 2), 4)
    betas = (0, Fraction(1, 3), Fraction(1, 2), 1, Fraction(3, 2), 2, 3, 5)
    for n in range(3, 25):
        for alpha in alphas:
            for beta in betas:
                t = AffineTolerance(alpha, beta)
                chosen = greedy_cycle(n, t)
                lam = cycle_lambda(n, t).lam
                checked += 1
                if len(chosen) != math.floor(lam * n):
                    failures.append(("size", n, str(t)))
                for d in range(1, n):
                    budget = window_budget(n, d, t)
                    for start in range(1, n + 1):
                        inside = sum(1 for j in range(d) if (start - 1 + j) % n + 1 in chosen)
                        if inside > budget:
                            failures.append(("window", n, str(t), d, start))
                if n <= 12 and check_contraction(cycle_graph(n), t, solve_cycle_graph(cycle_graph(n), t)) is not None:
                    failures.append(("infeasible", n, str(t)))
    finish(record_criterion, 5, failures, f"{checked} cycles (n<=24), every window length and start")


def test_criterion_6_clustering_bounds(record_criterion):
    failures = []
    for name, g in heuristic_pool():
        for k in (1, 2, 3, LOG2N):
            chosen = multiplicative_contraction(g, k)
            m_q = quotient_size(g, chosen)[1]
            if not at_most_power(m_q, g.n, k):
                failures.append((name, k, "density", m_q))
            if k == LOG2N:
                tol = LogStretchTolerance(g.n)
            else:
                tol = AffineTolerance(2 * k - 1, 1)
            if check_contraction(g, tol, chosen) is not None:
                failures.append((name, k, "infeasible"))
    finish(record_criterion, 6, failures, "50 graphs (n<=300), k in {1,2,3,log2 n}")


def test_criterion_7_additive_and_min_degree(record_criterion):
    failures = []
    for name, g in heuristic_pool():
        for k in (2, 4, 8):
            chosen = additive_topdegree(g, k)
            if apply_contraction(g, chosen).phi * 2 * g.n < k * g.m:
                failures.append((name, k, "phi bound"))
            if check_contraction(g, AffineTolerance(1, k), chosen) is not None:
                failures.append((name, k, "infeasible"))
    for d in (2, 5, 10):
        for layers in (2, 3, 5, 8):
            g = gen_layered(d * layers, d)
            chosen = min_degree_clustering(g, d)
            if quotient_size(g, chosen)[0] * d > g.n:
                failures.append(("layered", d, layers, "vertex bound"))
            if check_contraction(g, AffineTolerance(5, 1), chosen) is not None:
                failures.append(("layered", d, layers, "infeasible"))
    finish(record_criterion, 7, failures, "topdeg k in {2,4,8} on 50 graphs; mindeg on layered D in {2,5,10}")


def test_criterion_8_reductions(record_criterion):
    failures = []
    yes = 0
    for seed in range(20):
        part = random_free_deviations(6, seed)
        g, t, _ = gen_partition_cycle(part)
        answer = has_equal_partition(part.values)
        yes += answer
        if (brute_force_optimum(g, t).best_phi == part.n + 2) != answer:
            failures.append(("partition", seed))
    atlas = [h for h in nx.graph_atlas_g() if 1 <= h.number_of_nodes() <= 5]
    connected = 0
    for idx, h in enumerate(atlas):
        base = Graph.from_edges(h.number_of_nodes(), list(h.edges()))
        g, t, _ = gen_clique_lollipop(base, 1)
        omega = max(len(c) for c in nx.find_cliques(h))
        if brute_force_optimum(g, t).best_phi != omega:
            failures.append(("clique", idx))
        if check_contraction(g, t, clique_lollipop_set(base, next(nx.find_cliques(h)))) is not None:
            failures.append(("clique set", idx))
        if not nx.is_connected(h):
            continue
        connected += 1
        g, t, weak = gen_indset_reduction(base)
        res = brute_force_optimum(g, t, weak=weak)
        alpha = max(len(c) for c in nx.find_cliques(nx.complement(h)))
        if res.best_phi != alpha:
            failures.append(("indset", idx, res.best_phi, alpha))
        if any(g.edges[e].length != 1 for c in res.witnesses for e in c):
            failures.append(("indset length-2 edge", idx))
    detail = (
        f"20 partition cycles ({yes} yes), clique gadget on all {len(atlas)} graphs with 1-5 vertices, "
        f"independent-set gadget on the {connected} connected ones"
    )
    finish(record_criterion, 8, failures, detail)


def test_criterion_9_specialised_checkers(record_criterion):
    rng = random.Random(99)
    failures = []
    outcomes = {"additive-fast": set(), "bip11": set(), "girth6": set()}
    for i in range(500):
        g = random_connected(rng, rng.randint(2, 8), rng.randint(0, 6), weighted=True)
        while g.m > 12:
            g = random_connected(rng, rng.randint(2, 8), rng.randint(0, 6), weighted=True)
        beta = Fraction(rng.randint(0, 30), rng.randint(1, 5))
        chosen = random_edge_subset(rng, g)
        fast = check_additive_endpoint_restricted(g, beta, chosen) is None
        outcomes["additive-fast"].add(fast)
        if fast != (check_contraction(g, AffineTolerance(1, beta), chosen) is None):
            failures.append(("additive-fast", i))
    for i in range(500):
        g = random_bipartite(rng, rng.randint(2, 10), rng.randint(0, 10))
        chosen = random_matching(rng, g) if rng.random() < 0.6 else random_edge_subset(rng, g, 4)
        fast = check_bipartite_unit_11(g, chosen) is None
        outcomes["bip11"].add(fast)
        if fast != (check_contraction(g, AffineTolerance(1, 1), chosen) is None):
            failures.append(("bip11", i))
    done = 0
    while done < 500:
        g = random_girth6(rng, rng.randint(2, 14))
        chosen = random_edge_subset(rng, g, 5)
        try:
            general = check_weak_contraction(g, AffineTolerance(2, 0), chosen) is None
        except AllContractedError:
            continue  # outside the criterion's precondition
        done += 1
        fast = check_girth6_weak_20(g, chosen) is None
        outcomes["girth6"].add(fast)
        if fast != general:
            failures.append(("girth6", done))
    for name, seen in outcomes.items():
        if seen != {True, False}:
            failures.append((name, "only one outcome sampled"))
    finish(record_criterion, 9, failures, "500 samples per specialised checker, both verdicts present")


def random_feasible(rng: random.Random, g: Graph, t: AffineTolerance, weak: bool) -> frozenset[int]:
    """Grow a feasible set by trying edges in random order and keeping those that stay feasible."""
    chosen: frozenset[int] = frozenset()
    for e in rng.sample(range(g.m), g.m):
        if rng.random() < 0.3:
            continue
        bigger = chosen | {e}
        try:
            ok = (check_weak_contraction if weak else check_contraction)(g, t, bigger) is None
        except AllContractedError:
            ok = False
        if ok:
            chosen = bigger
    return chosen


def test_criterion_10_composition(record_criterion):
    rng = random.Random(10)
    failures = []
    nonempty = 0
    for i in range(100):
        weak = i % 2 == 1
        g = random_connected(rng, rng.randint(3, 9), rng.randint(0, 8), weighted=rng.random() < 0.5)
        phi, psi = random_tolerance(rng, 2, 3), random_tolerance(rng, 2, 3)
        first = random_feasible(rng, g, phi, weak)
        res = apply_contraction(g, first)
        if res.quotient.n < 2:
            second = frozenset()
        else:
            second = random_feasible(rng, res.quotient, psi, weak)
        union = first | res.lift(second)
        nonempty += bool(first) and bool(second)
        total = compose(psi, phi)
        try:
            bad = (check_weak_contraction if weak else check_contraction)(g, total, union)
        except AllContractedError:
            bad = "all contracted"
        if bad is not None:
            failures.append((i, weak, bad))
    star_failures = []
    for k in range(4, 8):
        star = star_graph(k + 1)
        one = AffineTolerance(1, 1)
        best_total = brute_force_optimum(star, compose(one, one)).best_phi
        first = brute_force_optimum(star, one)
        res = apply_contraction(star, first.witnesses[0])
        second = brute_force_optimum(res.quotient, one)
        phased = apply_contraction(star, first.witnesses[0] | res.lift(second.witnesses[0])).phi
        if (best_total, first.best_phi, second.best_phi, phased) != (k, 1, 1, 2):
            star_failures.append((k, best_total, phased))
    failures += star_failures
    finish(
        record_criterion, 10, failures,
        f"100 two-phase chains (50 weak, {nonempty} with both phases non-empty); stars k=4..7 give k vs 2",
    )
