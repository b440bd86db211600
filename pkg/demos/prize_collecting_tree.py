"""Deciding which customers are worth connecting.

Vertex 0 is a depot. Every other vertex pays a prize if it is connected,
and the tree costs the sum of its edges. Leaving a vertex out forfeits its
prize. The primal-dual solver is compared with brute force over all
connected vertex sets.
"""
import numpy as np

from sptree import WeightedGraph, pcst_solve
from sptree.oracle import exact_pcst

rng = np.random.default_rng(42)
n = 7
costs = rng.uniform(0.1, 1.0, size=(n, n))
graph = WeightedGraph.from_cost_matrix(np.triu(costs) + np.triu(costs, 1).T, root=0,
                                       prizes=[0.0, *rng.uniform(0.0, 1.0, n - 1)])

approx = pcst_solve(graph)
exact = exact_pcst(graph)
print("prizes:", np.round(graph.prizes, 2).tolist())
print(f"primal-dual: vertices {sorted(approx.vertices)}, objective {approx.objective:.3f}")
print(f"enumeration: vertices {sorted(exact.vertices)}, objective {exact.objective:.3f}")
print(f"ratio {approx.objective / exact.objective:.3f}, dual bound {approx.dual_bound:.3f}")
