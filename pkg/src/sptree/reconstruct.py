"""Superposition tree reconstruction from a (noisy) probability matrix.

Seven strategies are provided: greedy depth-first and breadth-first
traversal, the arity-constrained Prim's algorithm, the k-MST tree obtained
through prize-collecting Steiner trees, and three hybrids that use the PCST
tree as a prior before running one of the first three.
"""
from __future__ import annotations

from collections import deque
from enum import Enum

import numpy as np

from .graph import AritySpec, SuperpositionMatrix, SuperpositionTree, WeightedGraph
from .pcst import pcst_solve

PCST_PRIZE = 0.5


class Algorithm(str, Enum):
    DFS = "dfs"
    BFS = "bfs"
    PRIMS = "prims"
    KMST = "kmst"
    KMST_DFS = "kmst-dfs"
    KMST_BFS = "kmst-bfs"
    KMST_PRIMS = "kmst-prims"

    def __str__(self):
        return self.value


def _check(matrix: SuperpositionMatrix, arity: AritySpec) -> None:
    if len(arity) != matrix.n_internal:
        raise ValueError(f"{len(arity)} arities for {matrix.n_internal} matrix rows")


def greedy_traverse(matrix: SuperpositionMatrix, arity: AritySpec, order: str = "bfs") -> SuperpositionTree:
    """Expand vertices from the root, each taking its top-``arity`` columns.

    Columns already placed in the tree are skipped; the variable column is
    always available but, as a column, is chosen at most once per vertex.
    ``order`` selects a stack ("dfs") or a queue ("bfs") for the frontier.
    """
    if order not in ("dfs", "bfs"):
        raise ValueError(f"unknown traversal order {order!r}")
    _check(matrix, arity)
    w = matrix.weights
    n = matrix.n_internal
    x = n
    used = {0}
    frontier = deque([0])
    edges = []
    complete = True
    while frontier:
        p = frontier.pop() if order == "dfs" else frontier.popleft()
        cand = [j for j in range(1, n) if j not in used]
        cand.append(x)
        cand.sort(key=lambda j: (-w[p, j], j))
        take = cand[:arity[p]]
        if len(take) < arity[p]:
            complete = False
        new = []
        for j in take:
            edges.append((p, j))
            if j != x:
                used.add(j)
                new.append(j)
        # highest-weight child is expanded first in either order
        frontier.extend(reversed(new) if order == "dfs" else new)
    return SuperpositionTree(edges, complete=complete and len(used) == n)


def prims_reconstruct(matrix: SuperpositionMatrix, arity: AritySpec) -> SuperpositionTree:
    """Grow the tree by always accepting the heaviest admissible edge.

    Candidates run from every placed vertex with spare arity to every
    unplaced internal column and to the variable. Placing a column removes
    all other edges into it. A vertex offers the variable edge once; it is
    offered again only after every internal vertex is placed. Ties go to the
    lowest column, then the lowest parent.
    """
    _check(matrix, arity)
    w = matrix.weights
    n = matrix.n_internal
    x = n
    budget = np.array(arity.arities)
    placed = np.zeros(n, dtype=bool)
    placed[0] = True
    var_taken = np.zeros(n, dtype=bool)
    edges = []
    while True:
        parents = placed & (budget > 0)
        if not parents.any():
            break
        mask = np.zeros((n, n + 1), dtype=bool)
        free = ~placed
        mask[np.ix_(parents, np.r_[free, False])] = True
        mask[:, x] = parents & (~var_taken | ~free.any())
        if not mask.any():
            break
        # column-major flattening makes argmax prefer the lowest column, then row
        scores = np.where(mask, w, -np.inf).T.ravel()
        flat = int(np.argmax(scores))
        j, p = divmod(flat, n)
        edges.append((p, j))
        budget[p] -= 1
        if j == x:
            var_taken[p] = True
        else:
            placed[j] = True
    complete = bool(placed.all() and (budget[placed] == 0).all())
    return SuperpositionTree(edges, complete=complete)


def pcst_prior(matrix: SuperpositionMatrix, prize: float = PCST_PRIZE) -> np.ndarray:
    """Symmetric 0/1 indicator of the PCST tree on the undirected internal block.

    The internal ``n x n`` block ``M'`` becomes the cost matrix
    ``1 - (M' + M'^T) / 2`` of a complete graph rooted at vertex 0 with every
    vertex carrying ``prize``.
    """
    n = matrix.n_internal
    block = matrix.weights[:, :n]
    costs = np.clip(1.0 - 0.5 * (block + block.T), 0.0, None)
    graph = WeightedGraph.from_cost_matrix(costs, root=0, prizes=[prize] * n)
    sol = pcst_solve(graph)
    ind = np.zeros((n, n))
    for u, v, _ in sol.edges:
        ind[u, v] = ind[v, u] = 1.0
    return ind


def _orient_pcst(ind: np.ndarray, arity: AritySpec) -> SuperpositionTree:
    """Root the PCST tree at 0 and fill leftover arity slots with the variable."""
    n = ind.shape[0]
    x = n
    seen = {0}
    queue = deque([0])
    edges = []
    complete = True
    while queue:
        p = queue.popleft()
        kids = [j for j in np.nonzero(ind[p])[0].tolist() if j not in seen]
        if len(kids) > arity[p]:
            complete = False
        for j in kids:
            seen.add(j)
            queue.append(j)
            edges.append((p, j))
        edges.extend([(p, x)] * max(arity[p] - len(kids), 0))
    return SuperpositionTree(edges, complete=complete and len(seen) == n)


def kmst_reconstruct(matrix: SuperpositionMatrix, arity: AritySpec, traverse: str | None = None,
                     prize: float = PCST_PRIZE) -> SuperpositionTree:
    """Reconstruct through the PCST tree of the undirected internal block.

    With ``traverse=None`` the PCST tree itself is oriented from the root.
    Otherwise the indicator, padded with a zero variable column, is averaged
    into the matrix and "dfs", "bfs" or "prims" runs on the result.
    """
    _check(matrix, arity)
    ind = pcst_prior(matrix, prize)
    if traverse is None:
        return _orient_pcst(ind, arity)
    n = matrix.n_internal
    prior = np.hstack([ind, np.zeros((n, 1))])
    updated = SuperpositionMatrix(0.5 * (prior + matrix.weights))
    if traverse == "prims":
        return prims_reconstruct(updated, arity)
    return greedy_traverse(updated, arity, traverse)


def reconstruct(matrix: SuperpositionMatrix, arity: AritySpec, algorithm) -> SuperpositionTree:
    algo = Algorithm(algorithm)
    if algo is Algorithm.DFS:
        return greedy_traverse(matrix, arity, "dfs")
    if algo is Algorithm.BFS:
        return greedy_traverse(matrix, arity, "bfs")
    if algo is Algorithm.PRIMS:
        return prims_reconstruct(matrix, arity)
    if algo is Algorithm.KMST:
        return kmst_reconstruct(matrix, arity, None)
    return kmst_reconstruct(matrix, arity, algo.value.split("-", 1)[1])
