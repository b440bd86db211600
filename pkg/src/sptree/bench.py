"""Noise-robustness benchmark: random superpositions, uniform noise, exact-match rates."""
from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .graph import AritySpec, SuperpositionMatrix, SuperpositionTree, check_feasible, normalize, tree_equal
from .reconstruct import Algorithm, reconstruct

DEFAULT_ALPHAS = (0.50, 0.52, 0.54, 0.56, 0.58)
ALGORITHMS = tuple(Algorithm)


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    k_trials: int = 1000
    noise_levels: tuple[float, ...] = DEFAULT_ALPHAS
    n_min: int = 4
    n_max: int = 8
    binom_m: int = 2
    binom_p: float = 0.3
    seed: int = 0
    algorithms: tuple[Algorithm, ...] = ALGORITHMS
    max_retries: int = 1000

    def __post_init__(self):
        if self.k_trials < 1:
            raise ConfigError("k_trials must be >= 1")
        if any(a < 0 for a in self.noise_levels):
            raise ConfigError("noise levels must be >= 0")
        if not 1 <= self.n_min <= self.n_max:
            raise ConfigError("need 1 <= n_min <= n_max")
        if self.binom_m < 0 or not 0.0 <= self.binom_p <= 1.0:
            raise ConfigError("invalid binomial parameters")
        object.__setattr__(self, "noise_levels", tuple(float(a) for a in self.noise_levels))
        object.__setattr__(self, "algorithms", tuple(Algorithm(a) for a in self.algorithms))


@dataclass
class QualityReport:
    """Exact-match counts per (algorithm, alpha)."""

    k_trials: int
    seed: int
    matches: dict[tuple[Algorithm, float], int] = field(default_factory=dict)

    def rate(self, algorithm, alpha: float) -> float:
        return self.matches[(Algorithm(algorithm), float(alpha))] / self.k_trials

    def rates(self) -> dict[tuple[Algorithm, float], float]:
        return {key: m / self.k_trials for key, m in self.matches.items()}

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["algorithm", "alpha", "rate", "k_trials", "seed"])
        for (algo, alpha), m in self.matches.items():
            wr.writerow([algo.value, f"{alpha:g}", f"{m / self.k_trials:.4f}", self.k_trials, self.seed])
        return buf.getvalue()

    def to_plot_csv(self) -> str:
        """Rates pivoted to one row per algorithm and one column per alpha."""
        algos = list(dict.fromkeys(a for a, _ in self.matches))
        alphas = list(dict.fromkeys(al for _, al in self.matches))
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["algorithm", *(f"{a:g}" for a in alphas)])
        for algo in algos:
            wr.writerow([algo.value, *(f"{self.rate(algo, a):.4f}" for a in alphas)])
        return buf.getvalue()


def _random_tree(arity: AritySpec, rng: np.random.Generator) -> dict[int, list[int]]:
    """Attach vertices 1..n-1 in random order to random open slots; fill the rest with x."""
    n = len(arity)
    children: dict[int, list[int]] = {v: [] for v in range(n)}
    slots = [0] * arity[0]
    for v in rng.permutation(np.arange(1, n)).tolist():
        p = slots.pop(int(rng.integers(len(slots))))
        children[p].append(v)
        slots.extend([v] * arity[v])
    for p in slots:
        children[p].append(n)
    return children


def sample_arities(config: ExperimentConfig, n: int, rng: np.random.Generator) -> AritySpec:
    """Root arity 1, every other vertex ``1 + Binomial(m, p)``."""
    bonus = rng.binomial(config.binom_m, config.binom_p, size=n - 1)
    return AritySpec.from_functions((1 + bonus).tolist())


def generate_instance(config: ExperimentConfig, rng: np.random.Generator):
    """Sample a ground-truth superposition.

    Returns ``(matrix, arity, tree)`` with a binary matrix (1 on tree edges).
    Every internal vertex is used exactly once and each primitive takes the
    variable as at most one of its arguments; draws violating that are
    resampled, which thins out large arities among accepted instances.
    """
    for _ in range(config.max_retries):
        n = int(rng.integers(config.n_min, config.n_max + 1))
        arity = sample_arities(config, n, rng)
        for _ in range(10):
            children = _random_tree(arity, rng)
            if all(cs.count(n) <= 1 for cs in children.values()):
                tree = SuperpositionTree((p, c) for p, cs in children.items() for c in cs)
                return SuperpositionMatrix(tree.to_matrix(n)), arity, tree
    raise ConfigError(f"no admissible tree after {config.max_retries} draws; reduce the arity spread")


def add_noise(matrix: SuperpositionMatrix, alpha: float, rng: np.random.Generator) -> SuperpositionMatrix:
    """Add i.i.d. U(-alpha, alpha) to every entry, then normalize onto [0, 1]."""
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    noise = rng.uniform(-alpha, alpha, size=matrix.shape) if alpha > 0 else 0.0
    return normalize(SuperpositionMatrix(matrix.weights + noise))


def _trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng([seed, trial])


def run_trials(config: ExperimentConfig, trials) -> dict[tuple[Algorithm, float], int]:
    counts = {(a, al): 0 for a in config.algorithms for al in config.noise_levels}
    for t in trials:
        rng = _trial_rng(config.seed, t)
        matrix, arity, truth = generate_instance(config, rng)
        assert check_feasible(truth, arity)
        for alpha in config.noise_levels:
            noisy = add_noise(matrix, alpha, rng)
            for algo in config.algorithms:
                if tree_equal(reconstruct(noisy, arity, algo), truth):
                    counts[(algo, alpha)] += 1
    return counts


def run_experiment(config: ExperimentConfig, workers: int = 1) -> QualityReport:
    """Exact-match rate of every algorithm at every noise level.

    Trial ``t`` draws from an RNG seeded by ``(seed, t)``, so the report is
    identical for any ``workers`` count.
    """
    report = QualityReport(k_trials=config.k_trials, seed=config.seed,
                           matches={(a, al): 0 for a in config.algorithms for al in config.noise_levels})
    if workers <= 1:
        report.matches.update(run_trials(config, range(config.k_trials)))
        return report
    chunks = [range(i, config.k_trials, workers) for i in range(workers)]
    with ProcessPoolExecutor(workers) as pool:
        for counts in pool.map(run_trials, [config] * workers, chunks):
            for key, m in counts.items():
                report.matches[key] += m
    return report


def binomial_slack(rate: float, k: int, z: float = 3.0) -> float:
    """``z * sqrt(q (1 - q) / K)`` half-width used when comparing rates."""
    return z * np.sqrt(max(rate * (1 - rate), 0.0) / k)
