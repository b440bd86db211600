"""How much noise each reconstruction strategy tolerates.

Random models are drawn, turned into clean 0/1 matrices, then perturbed by
uniform noise of growing amplitude and renormalized. A strategy scores a hit
when it returns exactly the original tree. Use more trials for tighter
estimates; the command-line `sptree bench` runs the same experiment.
"""
from sptree import ExperimentConfig, run_experiment

config = ExperimentConfig(k_trials=200, noise_levels=(0.0, 0.45, 0.50, 0.55, 0.60), seed=1)
report = run_experiment(config, workers=2)
print(report.to_plot_csv())
