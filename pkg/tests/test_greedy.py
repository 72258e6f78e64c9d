from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from distcontract.feasibility import check_contraction
from distcontract.graph import Graph, apply_contraction
from distcontract.greedy import (
    cycle_lambda,
    cycle_order,
    greedy_cycle,
    greedy_path,
    leaf_layers,
    path_order,
    path_size_formula,
    solve_cycle_graph,
    solve_path_graph,
    unit_tree_additive,
)
from distcontract.instances import cycle_graph, path_graph, star_graph
from distcontract.oracle import brute_force_optimum
from distcontract.tolerance import AffineTolerance

from .strategies import random_tree_graph, trees

alphas = st.builds(Fraction, st.integers(4, 16), st.just(4))
betas_from_one = st.builds(Fraction, st.integers(4, 24), st.just(4))


def longest_path_from(tree: Graph, v: int, banned_edge: int) -> int:
    best = 0
    stack = [(v, -1, 0)]
    while stack:
        x, came, depth = stack.pop()
        best = max(best, depth)
        for eid in tree.incident(x):
            if eid != came and eid != banned_edge:
                stack.append((tree.edges[eid].other(x), eid, depth + 1))
    return best


def leaf_layers_by_definition(tree: Graph, d: int) -> frozenset[int]:
    return frozenset(
        eid
        for eid, e in enumerate(tree.edges)
        if any(longest_path_from(tree, end, eid) <= d - 1 for end in (e.u, e.v))
    )


class TestPath:
    def test_example(self):
        assert greedy_path(6, AffineTolerance(2, 1)) == {1, 2, 4}

    def test_purely_additive_takes_a_prefix(self):
        assert greedy_path(9, AffineTolerance(1, Fraction(7, 2))) == {1, 2, 3}

    @pytest.mark.parametrize("n", [2, 5, 11])
    def test_unit_budget(self, n):
        assert len(greedy_path(n, AffineTolerance(1, 1))) == 1

    def test_rejects_small_beta(self):
        with pytest.raises(ValueError):
            greedy_path(5, AffineTolerance(2, Fraction(1, 2)))

    @settings(deadline=None, max_examples=150)
    @given(st.integers(1, 30), alphas, betas_from_one)
    def test_size_and_windows(self, n, alpha, beta):
        t = AffineTolerance(alpha, beta)
        chosen = greedy_path(n, t)
        assert len(chosen) == path_size_formula(n, t)
        for i in range(1, n):
            for j in range(i, n):
                inside = sum(1 for k in range(i, j + 1) if k in chosen)
                assert inside <= (1 - 1 / alpha) * (j - i + 1) + beta

    @settings(deadline=None, max_examples=40)
    @given(st.integers(2, 9), alphas, betas_from_one)
    def test_feasible_on_a_shuffled_path(self, n, alpha, beta):
        labels = random.Random(n).sample(range(n), n)
        g = Graph.from_edges(n, [(labels[i], labels[i + 1]) for i in range(n - 1)])
        t = AffineTolerance(alpha, beta)
        chosen = solve_path_graph(g, t)
        assert check_contraction(g, t, chosen) is None
        assert len(chosen) == path_size_formula(n, t)

    def test_path_order(self):
        g = Graph.from_edges(4, [(2, 3), (0, 2), (1, 3)])
        assert path_order(g) == [1, 0, 2]
        with pytest.raises(ValueError):
            path_order(star_graph(4))


class TestCycle:
    def test_lambda_example(self):
        lam = cycle_lambda(6, AffineTolerance(2, 1))
        assert (lam.lam, lam.argmin_d) == (Fraction(2, 3), 3)

    def test_greedy_example(self):
        assert greedy_cycle(6, AffineTolerance(2, 1)) == {2, 3, 5, 6}

    def test_purely_multiplicative(self):
        assert cycle_lambda(9, AffineTolerance(3, 0)).lam == 0
        assert greedy_cycle(9, AffineTolerance(3, 0)) == frozenset()

    def test_large_additive_budget(self):
        assert cycle_lambda(8, AffineTolerance(1, 4)).lam == 1
        assert greedy_cycle(8, AffineTolerance(1, 4)) == frozenset(range(1, 9))

    def test_cycle_order(self):
        g = cycle_graph(5)
        assert cycle_order(g) == [0, 1, 2, 3, 4]
        with pytest.raises(ValueError):
            cycle_order(path_graph(4))

    @settings(deadline=None, max_examples=60)
    @given(st.integers(3, 12), alphas, st.builds(Fraction, st.integers(0, 24), st.just(4)))
    def test_feasible_with_floor_size(self, n, alpha, beta):
        t = AffineTolerance(alpha, beta)
        chosen = solve_cycle_graph(cycle_graph(n), t)
        assert len(chosen) == int(cycle_lambda(n, t).lam * n)
        assert check_contraction(cycle_graph(n), t, chosen) is None

    @pytest.mark.parametrize("n", [5, 6, 7, 8])
    def test_size_to_phi_mapping(self, n):
        g = cycle_graph(n)
        for size in range(n + 1):
            chosen = frozenset(range(size))
            expected = {n - 2: n - 1, n - 1: n, n: n}.get(size, size)
            assert apply_contraction(g, chosen).phi == expected


class TestLeafLayers:
    def test_small_values(self):
        g = star_graph(5)
        assert leaf_layers(g, 0) == frozenset()
        assert leaf_layers(g, 1) == frozenset(range(4))
        path = path_graph(7)
        assert leaf_layers(path, 1) == {0, 5}
        assert leaf_layers(path, 2) == {0, 1, 4, 5}

    @settings(deadline=None, max_examples=80)
    @given(trees(min_n=1, max_n=14, weighted=False), st.integers(0, 7))
    def test_matches_definition_and_is_monotone(self, tree, d):
        layers = leaf_layers(tree, d)
        assert layers == leaf_layers_by_definition(tree, d)
        assert layers <= leaf_layers(tree, d + 1)

    def test_rejects_non_trees(self):
        with pytest.raises(ValueError):
            leaf_layers(cycle_graph(4), 1)


class TestUnitTreeAdditive:
    def test_small_values(self):
        g = path_graph(6)
        assert unit_tree_additive(g, 0) == frozenset()
        assert len(unit_tree_additive(g, 1)) == 1
        assert unit_tree_additive(g, 6) == leaf_layers(g, 3)

    def test_odd_beta_adds_smallest_spare_edge(self):
        g = path_graph(6)
        assert unit_tree_additive(g, 3) == leaf_layers(g, 1) | {1}

    def test_matches_oracle(self):
        rng = random.Random(3)
        for _ in range(60):
            tree = random_tree_graph(rng, rng.randint(1, 10), weighted=False)
            beta = rng.randint(0, 8)
            t = AffineTolerance(1, beta)
            chosen = unit_tree_additive(tree, beta)
            assert check_contraction(tree, t, chosen) is None
            assert len(chosen) == brute_force_optimum(tree, t).best_size
