"""Primal-dual merge-and-prune solver for constrained forest problems.

The requirement function ``f`` maps vertex subsets to {0, 1}; a feasible
forest crosses every cut ``S`` with ``f(S) = 1``. Clusters with ``f = 1``
grow their dual moats at a uniform rate until an edge goes tight, the edge
is bought and the two clusters merge. A reverse pruning pass then drops
every edge whose removal leaves all components inactive.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, FrozenSet, Iterable

import numpy as np

from .graph import WeightedGraph

DUAL_TOL = 1e-9
_TIE_TOL = 1e-12


class CutFunctionError(ValueError):
    """The requirement function violates f(V)=0, symmetry or disjunctivity."""


class InfeasibleInstanceError(RuntimeError):
    """Active clusters remain but no edge can join them."""


class DualInfeasibleError(RuntimeError):
    """An internal invariant of the dual growth was breached."""


class CutFunction:
    """Requirement function ``f: 2^V -> {0, 1}`` on an ``n_vertices`` universe."""

    def __init__(self, fn: Callable[[FrozenSet[int]], int], n_vertices: int):
        self._fn = fn
        self.n_vertices = n_vertices

    def __call__(self, subset: Iterable[int]) -> int:
        return 1 if self._fn(frozenset(subset)) else 0

    def active_vertices(self) -> list[int]:
        """The set ``A`` of vertices whose singleton cut is required."""
        return [v for v in range(self.n_vertices) if self({v})]

    def validate(self, rng: np.random.Generator | None = None, exhaustive_limit: int = 12,
                 n_samples: int = 1000) -> None:
        """Check f(V)=0, symmetry and disjunctivity; raise CutFunctionError on a violation.

        Every subset is examined up to ``exhaustive_limit`` vertices, beyond
        that ``n_samples`` random subsets (and pairs) are drawn.
        """
        n = self.n_vertices
        full = (1 << n) - 1
        if self(range(n)) != 0:
            raise CutFunctionError("f(V) must be 0")
        if n <= exhaustive_limit:
            masks = np.arange(1 << n, dtype=np.int64)
            vals = np.array([self(_bits(m, n)) for m in range(1 << n)], dtype=np.int8)
            bad = np.nonzero(vals != vals[full ^ masks])[0]
            if bad.size:
                raise CutFunctionError(f"symmetry fails at S={sorted(_bits(int(bad[0]), n))}")
            zeros = masks[vals == 0]
            for a in zeros:
                b = zeros[(zeros & a) == 0]
                hit = b[vals[a | b] != 0]
                if hit.size:
                    raise CutFunctionError(
                        f"disjunctivity fails for A={sorted(_bits(int(a), n))}, "
                        f"B={sorted(_bits(int(hit[0]), n))}")
            return
        rng = np.random.default_rng(0) if rng is None else rng
        for _ in range(n_samples):
            s = rng.random(n) < 0.5
            S = set(np.nonzero(s)[0].tolist())
            if self(S) != self(set(range(n)) - S):
                raise CutFunctionError(f"symmetry fails at S={sorted(S)}")
            label = rng.integers(0, 3, size=n)
            A = set(np.nonzero(label == 1)[0].tolist())
            B = set(np.nonzero(label == 2)[0].tolist())
            if A and B and self(A) == 0 and self(B) == 0 and self(A | B) != 0:
                raise CutFunctionError(f"disjunctivity fails for A={sorted(A)}, B={sorted(B)}")


def _bits(mask: int, n: int) -> frozenset[int]:
    return frozenset(i for i in range(n) if mask >> i & 1)


def steiner_cut_fn(terminals: Iterable[int], n_vertices: int) -> CutFunction:
    """f(S) = 1 iff S holds some but not all of ``terminals``."""
    terms = frozenset(int(t) for t in terminals)
    if not terms:
        raise ValueError("terminal set is empty")
    if any(not 0 <= t < n_vertices for t in terms):
        raise ValueError("terminal outside the vertex range")

    def f(S):
        k = len(terms & S)
        return 0 < k < len(terms)

    return CutFunction(f, n_vertices)


@dataclass
class ClusterState:
    """Snapshot of the growth phase, handed to the iteration callback.

    ``comp[v]`` is the cluster id of ``v``; ``active`` maps cluster id to its
    activity flag. ``load[e]`` is the dual load ``sum_{S: e in delta(S)} y_S``
    of edge ``e``: live ``d(u) + d(v)`` while ``e`` crosses clusters, frozen
    once both endpoints share a cluster.
    """

    comp: list[int]
    d: np.ndarray
    active: dict[int, int]
    load: np.ndarray
    w: dict[int, float] = field(default_factory=dict)
    marks: list[int | None] = field(default_factory=list)

    def members(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for v, c in enumerate(self.comp):
            out.setdefault(c, []).append(v)
        return out

    def edge_loads(self, graph: WeightedGraph) -> np.ndarray:
        loads = self.load.copy()
        for i, (u, v, _) in enumerate(graph.edges):
            if self.comp[u] != self.comp[v]:
                loads[i] = self.d[u] + self.d[v]
        return loads

    def max_edge_violation(self, graph: WeightedGraph) -> float:
        """Largest ``load - cost`` over all edges (<= 0 means dual feasible)."""
        if not graph.edges:
            return -np.inf
        costs = np.array([c for _, _, c in graph.edges])
        return float(np.max(self.edge_loads(graph) - costs))


@dataclass(frozen=True)
class ForestSolution:
    edges: tuple[tuple[int, int, float], ...]
    dual_bound: float
    total_cost: float

    def edge_pairs(self) -> set[tuple[int, int]]:
        return {(u, v) for u, v, _ in self.edges}


def approximation_factor(f: CutFunction) -> float:
    """``2 - 2/|A|`` with ``A`` the vertices whose singleton is active."""
    a = len(f.active_vertices())
    return 2.0 - 2.0 / a if a else 0.0


def components(n: int, edges: Iterable[tuple[int, int]]) -> list[frozenset[int]]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
                    comp.append(y)
        out.append(frozenset(comp))
    return out


def gw_solve(graph: WeightedGraph, f: CutFunction, callback=None,
             validate: bool = False) -> ForestSolution:
    """Approximate the min-cost forest crossing every required cut.

    ``callback(state)`` is invoked with a ClusterState after every merge.
    The returned ``dual_bound`` is the accumulated dual objective; the
    forest costs at most ``approximation_factor(f)`` times that bound.
    """
    n = graph.n_vertices
    if f.n_vertices != n:
        raise ValueError("cut function and graph disagree on the vertex count")
    if validate:
        f.validate()

    # tie-break on the lowest (u, v) edge id
    order = sorted(range(len(graph.edges)), key=lambda i: (graph.edges[i][0], graph.edges[i][1], i))
    edges = graph.edges
    comp = list(range(n))
    members = {v: [v] for v in range(n)}
    fval = {v: f({v}) for v in range(n)}
    d = np.zeros(n)
    load = np.zeros(len(edges))
    frozen = np.zeros(len(edges), dtype=bool)
    z_dual = 0.0
    bought: list[int] = []

    while any(fval[c] for c in members):
        best, best_eps = -1, np.inf
        for i in order:
            u, v, c = edges[i]
            cu, cv = comp[u], comp[v]
            if cu == cv:
                continue
            den = fval[cu] + fval[cv]
            if den == 0:
                continue
            eps = (c - d[u] - d[v]) / den
            if eps < best_eps - _TIE_TOL:
                best, best_eps = i, eps
        if best < 0:
            raise InfeasibleInstanceError("active clusters remain but no edge leaves them")
        if best_eps < -DUAL_TOL:
            raise DualInfeasibleError(f"negative growth step {best_eps}")
        eps = max(best_eps, 0.0)

        for cid, vs in members.items():
            if fval[cid]:
                d[vs] += eps
        z_dual += eps * sum(fval.values())

        u, v, _ = edges[best]
        bought.append(best)
        keep, gone = comp[u], comp[v]
        for x in members[gone]:
            comp[x] = keep
        members[keep].extend(members.pop(gone))
        del fval[gone]
        fval[keep] = f(members[keep])
        for i, (a, b, _) in enumerate(edges):
            if not frozen[i] and comp[a] == comp[b] == keep:
                frozen[i] = True
                load[i] = d[a] + d[b]
        if callback is not None:
            callback(ClusterState(comp=list(comp), d=d.copy(), active=dict(fval), load=load.copy()))

    kept = _prune(n, edges, bought, f)
    sol_edges = tuple(sorted(edges[i] for i in kept))
    return ForestSolution(edges=sol_edges, dual_bound=float(z_dual),
                          total_cost=float(sum(c for _, _, c in sol_edges)))


def _prune(n, edges, bought, f: CutFunction) -> list[int]:
    """Drop edges, heaviest first, while every split side stays inactive; repeat to a fixpoint."""
    current = list(bought)
    changed = True
    while changed:
        changed = False
        for i in sorted(current, key=lambda j: (-edges[j][2], edges[j][0], edges[j][1], j)):
            rest = [edges[j][:2] for j in current if j != i]
            u, v, _ = edges[i]
            comps = components(n, rest)
            side_u = next(c for c in comps if u in c)
            side_v = next(c for c in comps if v in c)
            if f(side_u) == 0 and f(side_v) == 0:
                current.remove(i)
                changed = True
    return current
