"""Recovering a small regression model from edge probabilities.

The model is built from six primitives, the root included, plus the input
variable. Every entry of the matrix says how likely it is that one primitive
feeds its output into another. We run each reconstruction strategy on it and
compare with the intended tree.
"""
from sptree import Algorithm, check_feasible, reconstruct, worked_example, tree_equal

matrix, arity, truth = worked_example()
print("arities, root first:", list(arity))
print("intended edges:", truth.edges)
print()

# The matrix has a genuine 0.5/0.5 tie in one row. Strategies that commit to
# children vertex by vertex can follow the wrong branch there, while Prim's
# algorithm defers the choice until a heavier edge elsewhere settles it.
for algo in Algorithm:
    tree = reconstruct(matrix, arity, algo)
    status = "exact" if tree_equal(tree, truth) else "differs"
    feasible = "feasible" if check_feasible(tree, arity) else "infeasible"
    print(f"{algo.value:>10}: {status:7s} {feasible:10s} {len(tree.edges)} edges")
