"""Rooted prize-collecting Steiner tree by primal-dual growth, and the k-MST wrapper.

Clusters not holding the root grow until either an edge goes tight (merge)
or the cluster has paid for all of its prizes (deactivate and mark its
vertices). Pruning then keeps the smallest subtree that reaches every
unmarked vertex and treats each mark group as all-or-nothing.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .forest import DUAL_TOL, ClusterState, DualInfeasibleError, _TIE_TOL
from .graph import WeightedGraph

PcstInstance = WeightedGraph


@dataclass(frozen=True)
class PcstSolution:
    root: int
    edges: tuple[tuple[int, int, float], ...]
    vertices: frozenset[int]
    objective: float
    dual_bound: float = 0.0
    kmst_objective: float | None = None

    @property
    def edge_cost(self) -> float:
        return float(sum(c for _, _, c in self.edges))


def _check_instance(graph: WeightedGraph) -> tuple[int, np.ndarray]:
    if graph.root is None:
        raise ValueError("PCST instance needs a root")
    if graph.prizes is None:
        raise ValueError("PCST instance needs vertex prizes")
    prizes = np.array(graph.prizes, dtype=float)
    prizes[graph.root] = 0.0
    return graph.root, prizes


def pcst_objective(graph: WeightedGraph, vertices, edges) -> float:
    """Edge cost plus the prizes of every non-root vertex left out."""
    root, prizes = _check_instance(graph)
    cost = sum(c for _, _, c in edges)
    return float(cost + sum(prizes[v] for v in range(graph.n_vertices) if v not in vertices))


def pcst_solve(instance: PcstInstance, callback=None) -> PcstSolution:
    """Approximate rooted PCST on ``instance`` (a WeightedGraph with root and prizes).

    ``callback(state)`` receives a ClusterState (with ``w`` and ``marks``
    populated) after every merge or deactivation.
    """
    r, prizes = _check_instance(instance)
    n = instance.n_vertices
    edges = instance.edges
    order = sorted(range(len(edges)), key=lambda i: (edges[i][0], edges[i][1], i))

    comp = list(range(n))
    members = {v: [v] for v in range(n)}
    lam = {v: 0 if v == r else 1 for v in range(n)}
    w = {v: 0.0 for v in range(n)}
    prize_sum = {v: float(prizes[v]) for v in range(n)}
    marks: list[int | None] = [None] * n
    d = np.zeros(n)
    load = np.zeros(len(edges))
    frozen = np.zeros(len(edges), dtype=bool)
    z_dual = 0.0
    bought: list[int] = []
    n_labels = 0

    while any(lam.values()):
        e_star, eps1 = -1, np.inf
        for i in order:
            u, v, c = edges[i]
            cu, cv = comp[u], comp[v]
            if cu == cv:
                continue
            den = lam[cu] + lam[cv]
            if den == 0:
                continue
            eps = (c - d[u] - d[v]) / den
            if eps < eps1 - _TIE_TOL:
                e_star, eps1 = i, eps
        c_star, eps2 = -1, np.inf
        for cid in sorted(members):
            if lam[cid]:
                slack = prize_sum[cid] - w[cid]
                if slack < eps2 - _TIE_TOL:
                    c_star, eps2 = cid, slack
        eps = min(eps1, eps2)
        if eps < -DUAL_TOL:
            raise DualInfeasibleError(f"negative growth step {eps}")
        eps = max(eps, 0.0)

        n_active = 0
        for cid, vs in members.items():
            if lam[cid]:
                w[cid] += eps
                d[vs] += eps
                n_active += 1
        z_dual += eps * n_active

        if eps1 > eps2:
            lam[c_star] = 0
            for v in members[c_star]:
                if marks[v] is None:
                    marks[v] = n_labels
            n_labels += 1
        else:
            u, v, _ = edges[e_star]
            bought.append(e_star)
            keep, gone = comp[u], comp[v]
            for x in members[gone]:
                comp[x] = keep
            members[keep].extend(members.pop(gone))
            w[keep] += w.pop(gone)
            prize_sum[keep] += prize_sum.pop(gone)
            del lam[gone]
            lam[keep] = 0 if comp[r] == keep else 1
            for i, (a, b, _) in enumerate(edges):
                if not frozen[i] and comp[a] == comp[b] == keep:
                    frozen[i] = True
                    load[i] = d[a] + d[b]
        if callback is not None:
            callback(ClusterState(comp=list(comp), d=d.copy(), active=dict(lam), load=load.copy(),
                                  w=dict(w), marks=list(marks)))

    keep_vertices, keep_edges = _prune(n, r, [edges[i] for i in bought], marks)
    tree_edges = tuple(sorted(keep_edges))
    return PcstSolution(
        root=r,
        edges=tree_edges,
        vertices=frozenset(keep_vertices),
        objective=pcst_objective(instance, keep_vertices, tree_edges),
        dual_bound=float(z_dual),
    )


def _prune(n, r, forest_edges, marks):
    """Smallest subtree of the root's tree holding all unmarked vertices, closed over mark groups."""
    adj: dict[int, dict[int, tuple]] = {v: {} for v in range(n)}
    for e in forest_edges:
        u, v, _ = e
        adj[u][v] = e
        adj[v][u] = e

    # the root's tree in F
    tree = {r}
    stack = [r]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in tree:
                tree.add(y)
                stack.append(y)

    needed = {r} | {v for v in tree if marks[v] is None}
    while True:
        sub = _steiner_subtree(tree, adj, needed)
        labels = {marks[v] for v in sub if marks[v] is not None}
        extra = {v for v in tree if marks[v] in labels} - sub
        if not extra:
            break
        needed = sub | extra
    kept = {adj[u][v] for u in sub for v in adj[u] if v in sub}
    return sub, kept


def _steiner_subtree(tree, adj, needed):
    """Strip non-needed leaves off ``tree`` until none remain."""
    sub = set(tree)
    deg = {v: sum(1 for y in adj[v] if y in sub) for v in sub}
    leaves = [v for v in sub if deg[v] <= 1 and v not in needed]
    while leaves:
        v = leaves.pop()
        if v not in sub:
            continue
        sub.discard(v)
        for y in adj[v]:
            if y in sub:
                deg[y] -= 1
                if deg[y] <= 1 and y not in needed:
                    leaves.append(y)
    return sub


def kmst_via_pcst(graph: WeightedGraph, k: int, lam: float, root: int | None = None) -> PcstSolution:
    """Lagrangian k-MST: PCST with every vertex carrying prize ``lam``.

    The returned solution carries ``kmst_objective`` = edge cost +
    ``lam * (#excluded - (n - k))``.
    """
    if lam < 0:
        raise ValueError("prize level must be non-negative")
    r = graph.root if root is None else root
    if r is None:
        raise ValueError("k-MST needs a root")
    inst = graph.with_prizes([lam] * graph.n_vertices, root=r)
    sol = pcst_solve(inst)
    n = graph.n_vertices
    excluded = n - len(sol.vertices)
    kmst = sol.edge_cost + lam * (excluded - (n - k))
    return PcstSolution(root=sol.root, edges=sol.edges, vertices=sol.vertices,
                        objective=sol.objective, dual_bound=sol.dual_bound, kmst_objective=float(kmst))
