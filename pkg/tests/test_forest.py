import itertools

import numpy as np
import pytest

from conftest import random_connected_graph
from sptree.forest import (
    DUAL_TOL,
    CutFunction,
    CutFunctionError,
    InfeasibleInstanceError,
    approximation_factor,
    components,
    gw_solve,
    steiner_cut_fn,
)
from sptree.graph import WeightedGraph
from sptree.oracle import exact_forest


def all_subsets(n):
    for r in range(1, n):
        yield from (frozenset(c) for c in itertools.combinations(range(n), r))


def test_single_edge_instance():
    g = WeightedGraph(2, [(0, 1, 1.0)])
    sol = gw_solve(g, steiner_cut_fn({0, 1}, 2))
    # eps = (1 - 0 - 0) / 2 and both clusters grow
    assert sol.edge_pairs() == {(0, 1)}
    assert sol.dual_bound == pytest.approx(1.0)
    assert sol.total_cost == pytest.approx(1.0)


def test_zero_requirement_buys_nothing():
    g = WeightedGraph(3, [(0, 1, 1.0), (1, 2, 2.0)])
    sol = gw_solve(g, CutFunction(lambda S: 0, 3))
    assert sol.edges == () and sol.dual_bound == 0.0 and sol.total_cost == 0.0


def test_steiner_cut_function_values():
    f = steiner_cut_fn({0, 1}, 4)
    assert f({0}) == 1
    assert f(range(4)) == 0
    assert f({2, 3}) == 0
    rng = np.random.default_rng(0)
    for _ in range(100):
        S = set(np.nonzero(rng.random(4) < 0.5)[0].tolist())
        assert f(S) == f(set(range(4)) - S)
    f.validate()
    steiner_cut_fn({0, 3, 5}, 14).validate(rng=rng)
    with pytest.raises(ValueError):
        steiner_cut_fn(set(), 3)


def test_validate_rejects_bad_functions():
    # singletons only: breaks symmetry
    with pytest.raises(CutFunctionError):
        CutFunction(lambda S: len(S) == 1, 4).validate()
    with pytest.raises(CutFunctionError):
        CutFunction(lambda S: True, 3).validate()
    # |S| == 2 on four vertices is symmetric, yet {0} and {1} merge into a required set
    with pytest.raises(CutFunctionError):
        CutFunction(lambda S: len(S) == 2, 4).validate()


def test_odd_cardinality_function_gives_even_components():
    rng = np.random.default_rng(5)
    for _ in range(20):
        g = random_connected_graph(rng, 6, p=0.7)
        f = CutFunction(lambda S: len(S) % 2 == 1, 6)
        f.validate()
        sol = gw_solve(g, f)
        for comp in components(6, sol.edge_pairs()):
            assert len(comp) % 2 == 0


def test_infeasible_instance_raises():
    g = WeightedGraph(4, [(0, 1, 1.0), (2, 3, 1.0)])
    with pytest.raises(InfeasibleInstanceError):
        gw_solve(g, steiner_cut_fn({0, 2}, 4))


def test_tie_breaks_on_lowest_edge():
    g = WeightedGraph(3, [(1, 2, 1.0), (0, 1, 1.0), (0, 2, 1.0)])
    first = []
    gw_solve(g, steiner_cut_fn({0, 1, 2}, 3), callback=lambda s: first.append(s.comp[:]))
    assert first[0][0] == first[0][1]


def _random_steiner(rng, n_max=8):
    n = int(rng.integers(3, n_max + 1))
    g = random_connected_graph(rng, n, p=0.5, max_edges=14)
    t = int(rng.integers(2, min(4, n) + 1))
    terms = rng.choice(n, size=t, replace=False).tolist()
    return g, steiner_cut_fn(terms, n)


def test_cut_coverage_and_inactive_components():
    rng = np.random.default_rng(11)
    for _ in range(60):
        g, f = _random_steiner(rng)
        n = g.n_vertices
        sol = gw_solve(g, f, validate=True)
        pairs = sol.edge_pairs()
        for S in all_subsets(n):
            if f(S):
                assert any((u in S) != (v in S) for u, v in pairs)
        for comp in components(n, pairs):
            assert f(comp) == 0


def test_dual_feasible_after_every_merge():
    rng = np.random.default_rng(12)
    worst = []
    for _ in range(60):
        g, f = _random_steiner(rng)
        gw_solve(g, f, callback=lambda s, g=g: worst.append(s.max_edge_violation(g)))
    assert max(worst) <= DUAL_TOL


def test_tight_edges_are_bought():
    rng = np.random.default_rng(13)
    g, f = _random_steiner(rng)
    states = []
    sol = gw_solve(g, f, callback=states.append)
    last = states[-1]
    loads = last.edge_loads(g)
    for (u, v, c), load in zip(g.edges, loads):
        if (u, v) in sol.edge_pairs():
            assert load == pytest.approx(c, abs=1e-9)


def test_approximation_against_oracle_and_dual():
    rng = np.random.default_rng(14)
    for _ in range(80):
        g, f = _random_steiner(rng)
        sol = gw_solve(g, f)
        opt = exact_forest(g, f).total_cost
        alpha = approximation_factor(f)
        assert sol.total_cost <= alpha * sol.dual_bound + 1e-9
        assert sol.total_cost <= alpha * opt + 1e-9
        assert sol.dual_bound <= opt + 1e-9
