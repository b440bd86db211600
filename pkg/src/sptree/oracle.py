"""Exact solvers by exhaustive enumeration, for small instances only."""
from __future__ import annotations

from itertools import combinations

import numpy as np
from scipy.cluster.hierarchy import DisjointSet

from .forest import CutFunction, ForestSolution
from .graph import AritySpec, SuperpositionMatrix, SuperpositionTree, WeightedGraph, check_feasible
from .pcst import PcstInstance, PcstSolution, _check_instance, pcst_objective

MAX_FOREST_EDGES = 20
MAX_PCST_VERTICES = 9
MAX_ARITY_MASS = 22


class SizeBoundError(ValueError):
    """Instance too large for exhaustive enumeration."""


def _required_cut_masks(graph: WeightedGraph, f: CutFunction) -> list[int]:
    """Edge bitmask ``delta(S)`` for every proper S with f(S) = 1."""
    n = graph.n_vertices
    masks = []
    for s in range(1, (1 << n) - 1):
        S = [v for v in range(n) if s >> v & 1]
        if not f(S):
            continue
        m = 0
        for i, (u, v, _) in enumerate(graph.edges):
            if (s >> u & 1) != (s >> v & 1):
                m |= 1 << i
        masks.append(m)
    return masks


def exact_forest(graph: WeightedGraph, f: CutFunction) -> ForestSolution:
    """Cheapest edge subset crossing every cut S with f(S) = 1.

    ``dual_bound`` of the result is the optimum itself.
    """
    m = len(graph.edges)
    if m > MAX_FOREST_EDGES:
        raise SizeBoundError(f"{m} edges exceeds the enumeration bound {MAX_FOREST_EDGES}")
    cuts = _required_cut_masks(graph, f)
    if any(c == 0 for c in cuts):
        raise ValueError("some required cut has no crossing edge; instance infeasible")
    subsets = np.arange(1 << m, dtype=np.int64)
    ok = np.ones(subsets.shape, dtype=bool)
    for c in set(cuts):
        ok &= (subsets & c) != 0
    costs = np.array([c for _, _, c in graph.edges])
    bits = ((subsets[:, None] >> np.arange(m)) & 1).astype(float) if m else np.zeros((1, 0))
    totals = np.where(ok, bits @ costs, np.inf)
    best = int(np.argmin(totals))
    chosen = tuple(sorted(graph.edges[i] for i in range(m) if best >> i & 1))
    total = float(sum(c for _, _, c in chosen))
    return ForestSolution(edges=chosen, dual_bound=total, total_cost=total)


def _mst(vertices, edges):
    """Kruskal spanning tree of ``vertices``; None when they are disconnected."""
    ds = DisjointSet(vertices)
    picked = []
    for e in sorted(edges, key=lambda e: (e[2], e[0], e[1])):
        if not ds.connected(e[0], e[1]):
            ds.merge(e[0], e[1])
            picked.append(e)
    if len(picked) != len(vertices) - 1:
        return None
    return picked


def exact_pcst(instance: PcstInstance) -> PcstSolution:
    """Optimal rooted PCST: best MST over every connected vertex set holding the root."""
    r, _ = _check_instance(instance)
    n = instance.n_vertices
    if n > MAX_PCST_VERTICES:
        raise SizeBoundError(f"{n} vertices exceeds the enumeration bound {MAX_PCST_VERTICES}")
    others = [v for v in range(n) if v != r]
    best_obj, best = pcst_objective(instance, {r}, ()), (frozenset({r}), ())
    for size in range(1, len(others) + 1):
        for chosen in combinations(others, size):
            vs = frozenset((r, *chosen))
            induced = [e for e in instance.edges if e[0] in vs and e[1] in vs]
            tree = _mst(sorted(vs), induced)
            if tree is None:
                continue
            obj = pcst_objective(instance, vs, tree)
            if obj < best_obj:
                best_obj, best = obj, (vs, tuple(sorted(tree)))
    return PcstSolution(root=r, edges=best[1], vertices=best[0], objective=float(best_obj))


def exact_superposition(matrix: SuperpositionMatrix, arity: AritySpec) -> SuperpositionTree:
    """Maximum-weight arity-complete tree that places every internal vertex.

    Every tree with this vertex count has exactly ``arity.mass`` edges, so
    maximising total weight is the same as minimising the ``1 - w`` cost.
    The variable may fill any number of slots, including several of one parent.
    """
    n = matrix.n_internal
    if len(arity) != n:
        raise ValueError("arity list and matrix disagree on the vertex count")
    if arity.mass > MAX_ARITY_MASS:
        raise SizeBoundError(f"arity mass {arity.mass} exceeds the enumeration bound {MAX_ARITY_MASS}")
    w = matrix.weights
    x = n
    n_var = arity.mass - (n - 1)
    top = float(w[:, 1:].max()) if n > 1 or w.size else 0.0

    best_weight = -np.inf
    best_edges: list[tuple[int, int]] | None = None
    edges: list[tuple[int, int]] = []
    # open slots are (parent, lowest admissible child) in creation order; a
    # parent's children are enumerated in non-decreasing column order so each
    # multiset is visited once
    slots: list[int] = []

    def rec(pos, used, vars_left, weight, last_child):
        nonlocal best_weight, best_edges
        if weight + (arity.mass - pos) * top <= best_weight:
            return
        if pos == len(slots):
            if weight > best_weight and vars_left == 0 and len(used) == n:
                best_weight, best_edges = weight, list(edges)
            return
        p = slots[pos]
        lo = last_child[p]
        for c in range(max(lo, 1), n):
            if c in used:
                continue
            used.add(c)
            edges.append((p, c))
            slots.extend([c] * arity[c])
            prev = last_child[p]
            last_child[p] = c
            rec(pos + 1, used, vars_left, weight + w[p, c], last_child)
            last_child[p] = prev
            del slots[len(slots) - arity[c]:]
            edges.pop()
            used.discard(c)
        if vars_left > 0:
            edges.append((p, x))
            prev = last_child[p]
            last_child[p] = x
            rec(pos + 1, used, vars_left - 1, weight + w[p, x], last_child)
            last_child[p] = prev
            edges.pop()

    slots.extend([0] * arity[0])
    rec(0, {0}, n_var, 0.0, [0] * n)
    if best_edges is None:
        raise ValueError("no arity-complete tree exists for this arity list")
    tree = SuperpositionTree(best_edges)
    assert check_feasible(tree, arity)
    return tree
