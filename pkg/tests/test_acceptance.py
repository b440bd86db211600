"""Acceptance checks, one per criterion.

Each test records a ``PASS``/``FAIL`` line; ``conftest.py`` prints them all
in the terminal summary so the verdicts show up even without ``-s``.
"""
import itertools
import subprocess
import sys
import time

import numpy as np
import pytest

from conftest import random_connected_graph, random_pcst_instance
from sptree.bench import DEFAULT_ALPHAS, ExperimentConfig, binomial_slack, generate_instance, run_experiment
from sptree.forest import DUAL_TOL, components, gw_solve, steiner_cut_fn
from sptree.oracle import exact_forest, exact_pcst, exact_superposition
from sptree.pcst import pcst_solve
from sptree.reconstruct import Algorithm, prims_reconstruct

K = 1000
N_GRAPHS = 250
# z for a two-sided 99% normal interval
Z99 = 2.576

VERDICTS: list[str] = []


def verdict(number, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    VERDICTS.append(line)
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def sweep():
    cfg = ExperimentConfig(k_trials=K, noise_levels=DEFAULT_ALPHAS, seed=0)
    return run_experiment(cfg)


@pytest.fixture(scope="module")
def gw_runs():
    """GW runs on random graphs with 2-4 terminals, with dual loads sampled per merge."""
    rng = np.random.default_rng(2024)
    runs = []
    start = time.perf_counter()
    for _ in range(N_GRAPHS):
        n = int(rng.integers(4, 9))
        g = random_connected_graph(rng, n, p=0.5, max_edges=16)
        terms = rng.choice(n, size=int(rng.integers(2, min(4, n) + 1)), replace=False).tolist()
        f = steiner_cut_fn(terms, n)
        worst = []
        sol = gw_solve(g, f, callback=lambda s, g=g: worst.append(s.max_edge_violation(g)))
        runs.append((g, f, terms, sol, max(worst, default=-np.inf)))
    return runs, time.perf_counter() - start


@pytest.fixture(scope="module")
def pcst_runs():
    rng = np.random.default_rng(2025)
    runs = []
    start = time.perf_counter()
    for _ in range(N_GRAPHS):
        n = int(rng.integers(3, 9))
        inst = random_pcst_instance(rng, n)
        prizes = np.array(inst.prizes)
        prizes[inst.root] = 0.0
        stats = {"edge": -np.inf, "prize": -np.inf}

        def check(state, inst=inst, prizes=prizes, stats=stats):
            stats["edge"] = max(stats["edge"], state.max_edge_violation(inst))
            for cid, vs in state.members().items():
                stats["prize"] = max(stats["prize"], state.w.get(cid, 0.0) - prizes[vs].sum())

        sol = pcst_solve(inst, callback=check)
        runs.append((inst, sol, exact_pcst(inst), stats))
    return runs, time.perf_counter() - start


def test_criterion_1_prims_anchor():
    start = time.perf_counter()
    cfg = ExperimentConfig(k_trials=K, noise_levels=(0.50,), algorithms=(Algorithm.PRIMS,), seed=0)
    rate = run_experiment(cfg).rate("prims", 0.50)
    elapsed = time.perf_counter() - start
    ok = abs(rate - 1.0) <= 0.02 and elapsed < 30
    verdict(1, ok, f"prims rate at alpha 0.50 = {rate:.4f} (target 1.00 +/- 0.02), {elapsed:.1f} s (< 30 s)")


def test_criterion_2_ordering(sweep):
    bad = []
    for alpha in DEFAULT_ALPHAS:
        p, b, d = (sweep.rate(a, alpha) for a in ("prims", "bfs", "dfs"))
        for hi, lo, name in ((p, b, "prims>=bfs"), (b, d, "bfs>=dfs")):
            slack = binomial_slack(hi, K) + binomial_slack(lo, K)
            if hi + slack < lo:
                bad.append(f"{name}@{alpha:g}")
    verdict(2, not bad, "prims >= bfs >= dfs within 3-sigma slack at every alpha"
            + (f"; violated: {', '.join(bad)}" if bad else ""))


def test_criterion_3_monotone(sweep):
    bad = []
    for algo in Algorithm:
        rates = [sweep.rate(algo, a) for a in DEFAULT_ALPHAS]
        for (a0, r0), (a1, r1) in itertools.pairwise(zip(DEFAULT_ALPHAS, rates)):
            slack = binomial_slack(r0, K, Z99) + binomial_slack(r1, K, Z99)
            if r1 > r0 + slack:
                bad.append(f"{algo.value}@{a0:g}->{a1:g}")
    verdict(3, not bad, "every rate non-increasing in alpha within 99% binomial slack"
            + (f"; violated: {', '.join(bad)}" if bad else ""))


def test_criterion_4_gw_bound(gw_runs):
    runs, elapsed = gw_runs
    start = time.perf_counter()
    vs_opt = vs_dual = 0
    for g, f, terms, sol, _ in runs:
        bound = 2 - 2 / len(terms)
        opt = exact_forest(g, f).total_cost
        vs_opt += sol.total_cost <= bound * opt + 1e-9
        vs_dual += sol.total_cost <= bound * sol.dual_bound + 1e-9
    elapsed += time.perf_counter() - start
    ok = vs_opt == vs_dual == len(runs) and elapsed < 60
    verdict(4, ok, f"GW cost <= (2 - 2/|A|) OPT in {vs_opt}/{len(runs)}, "
            f"<= (2 - 2/|A|) Z_DRLP in {vs_dual}/{len(runs)}, {elapsed:.1f} s (< 60 s)")


def test_criterion_5_pcst_bound(pcst_runs):
    runs, elapsed = pcst_runs
    stated = proven = 0
    for inst, sol, opt, _ in runs:
        n = inst.n_vertices
        stated += sol.objective <= (2 - 2 / (n - 1)) * opt.objective + 1e-9
        proven += sol.objective <= (2 - 1 / (n - 1)) * opt.objective + 1e-9
    ok = stated == len(runs) and elapsed < 60
    verdict(5, ok, f"PCST objective <= (2 - 2/(n-1)) OPT in {stated}/{len(runs)} "
            f"(with 2 - 1/(n-1): {proven}/{len(runs)}), {elapsed:.1f} s (< 60 s)")


def test_criterion_6_forest_properties(gw_runs):
    runs, _ = gw_runs
    violations = 0
    for g, f, _, sol, _ in runs:
        n = g.n_vertices
        pairs = sol.edge_pairs()
        for mask in range(1, (1 << n) - 1):
            S = {v for v in range(n) if mask >> v & 1}
            if f(S) and not any((u in S) != (v in S) for u, v in pairs):
                violations += 1
        violations += sum(f(c) for c in components(n, pairs))
    verdict(6, violations == 0, f"{violations} uncovered required cuts or required components "
            f"over {len(runs)} GW runs")


def test_criterion_7_zero_noise_oracle():
    rng = np.random.default_rng(7)
    cfg = ExperimentConfig()
    hits = 0
    for _ in range(200):
        m, a, truth = generate_instance(cfg, rng)
        hits += prims_reconstruct(m, a) == exact_superposition(m, a) == truth
    verdict(7, hits == 200, f"prims == exact == truth on {hits}/200 noiseless instances")


def test_criterion_8_dual_feasibility(gw_runs, pcst_runs):
    gw_worst = max(w for *_, w in gw_runs[0])
    pc_edge = max(s["edge"] for *_, s in pcst_runs[0])
    pc_prize = max(s["prize"] for *_, s in pcst_runs[0])
    ok = max(gw_worst, pc_edge, pc_prize) <= DUAL_TOL
    verdict(8, ok, f"max edge overload GW {gw_worst:.2e}, PCST {pc_edge:.2e}; "
            f"max cluster w(C) - prizes {pc_prize:.2e} (tol {DUAL_TOL:g})")


def test_criterion_9_determinism():
    argv = [sys.executable, "-m", "sptree", "bench", "--seed", "11", "--trials", "200"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run([*argv, "--workers", "2"], capture_output=True, check=True).stdout
    ok = first == second and first.count(b"\n") == 1 + 7 * len(DEFAULT_ALPHAS)
    verdict(9, ok, f"two bench runs with seed 11 {'are' if ok else 'are not'} byte-identical "
            f"({len(first)} bytes)")
