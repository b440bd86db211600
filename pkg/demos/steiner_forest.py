"""Connecting terminal pairs cheaply with primal-dual growth.

Two pairs of cities want to be connected, {0, 5} and {2, 4}. A single
cut function encodes both requirements: a vertex set needs a crossing edge
whenever it separates one of the pairs. The solver grows dual moats around
the unsatisfied clusters, buys an edge whenever two moats touch, and drops
redundant edges at the end.
"""
import itertools

from sptree import CutFunction, WeightedGraph, approximation_factor, gw_solve
from sptree.forest import components
from sptree.oracle import exact_forest

pairs = [(0, 5), (2, 4)]
graph = WeightedGraph(6, [
    (0, 1, 1.0), (1, 5, 1.0), (0, 5, 2.5),
    (2, 3, 0.5), (3, 4, 0.5), (1, 3, 2.0), (4, 5, 3.0),
])


def separates_a_pair(S):
    return int(any((u in S) != (v in S) for u, v in pairs))


f = CutFunction(separates_a_pair, graph.n_vertices)
f.validate()  # symmetric, f(V) = 0, disjoint-union property

trace = []
sol = gw_solve(graph, f, callback=lambda state: trace.append(sum(state.active.values())))
print("bought edges:", [(u, v) for u, v, _ in sol.edges])
print(f"cost {sol.total_cost:.2f}, dual lower bound {sol.dual_bound:.2f}")
print("active clusters after each merge:", trace)
print(f"guaranteed within a factor {approximation_factor(f):.2f} of the optimum")
print("optimum by enumeration:", exact_forest(graph, f).total_cost)

# every required cut is crossed, and no final component is itself required
for r in range(1, graph.n_vertices):
    for S in itertools.combinations(range(graph.n_vertices), r):
        if f(S):
            assert any((u in S) != (v in S) for u, v in sol.edge_pairs())
assert not any(f(c) for c in components(graph.n_vertices, sol.edge_pairs()))
