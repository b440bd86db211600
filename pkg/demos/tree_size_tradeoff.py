"""Trading tree size against cost with a uniform prize.

Giving every vertex the same prize turns the prize-collecting problem into a
relaxation of the minimum tree spanning k vertices. A small prize keeps only
the root; a large one buys everything. Sweeping it traces the trade-off.
"""
import numpy as np

from sptree import WeightedGraph, kmst_via_pcst

rng = np.random.default_rng(3)
pts = rng.random((9, 2))
dist = np.linalg.norm(pts[:, None] - pts[None], axis=-1)
graph = WeightedGraph.from_cost_matrix(dist)

print(" prize  vertices  edge cost  k=5 objective")
for lam in np.round(np.arange(0.0, 0.31, 0.025), 3):
    sol = kmst_via_pcst(graph, k=5, lam=lam, root=0)
    print(f"{lam:6.3f}  {len(sol.vertices):8d}  {sol.edge_cost:9.3f}  {sol.kmst_objective:13.3f}")
