"""Core types: superposition matrices, arity lists, trees and weighted graphs.

Layout convention used everywhere in the package: a superposition matrix has
``n`` rows (internal vertices, row 0 is the root ``*``) and ``n + 1`` columns.
Column ``j < n`` is internal vertex ``j`` and column ``n`` is the variable
``x``, which may appear as a leaf any number of times.
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


class StructureError(ValueError):
    """Vertex index or shape outside the matrix universe."""


@dataclass(frozen=True)
class PrimitiveSpec:
    name: str
    arity: int

    def __post_init__(self):
        if self.arity < 0:
            raise ValueError(f"arity of {self.name!r} must be >= 0, got {self.arity}")
        if self.name == "*" and self.arity != 1:
            raise ValueError("the root primitive '*' has arity 1")


class SuperpositionMatrix:
    """Read-only ``n x (n+1)`` matrix of edge weights.

    ``weights[i, j]`` is the weight (probability) of the edge from internal
    vertex ``i`` to column ``j``.
    """

    __slots__ = ("_w",)

    def __init__(self, weights):
        w = np.array(weights, dtype=float, copy=True)
        if w.ndim != 2 or w.shape[0] < 1 or w.shape[1] != w.shape[0] + 1:
            raise StructureError(f"expected an n x (n+1) matrix, got shape {w.shape}")
        w.setflags(write=False)
        self._w = w

    @property
    def weights(self) -> np.ndarray:
        return self._w

    @property
    def n_internal(self) -> int:
        return self._w.shape[0]

    @property
    def variable(self) -> int:
        """Column index of the variable vertex."""
        return self._w.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self._w.shape

    def __getitem__(self, idx):
        return self._w[idx]

    def __eq__(self, other):
        if not isinstance(other, SuperpositionMatrix):
            return NotImplemented
        return self._w.shape == other._w.shape and bool(np.array_equal(self._w, other._w))

    def __hash__(self):
        return hash((self._w.shape, self._w.tobytes()))

    def __repr__(self):
        return f"SuperpositionMatrix(n_internal={self.n_internal})"


class AritySpec:
    """Per-row out-degree budgets; ``arities[0]`` is the root and equals 1."""

    __slots__ = ("_a",)

    def __init__(self, arities: Iterable[int]):
        a = tuple(int(t) for t in arities)
        if not a:
            raise ValueError("arity list is empty")
        if a[0] != 1:
            raise ValueError(f"root arity must be 1, got {a[0]}")
        if min(a) < 1:
            raise ValueError("internal vertices need arity >= 1")
        self._a = a

    @classmethod
    def from_functions(cls, arities: Iterable[int]) -> "AritySpec":
        """Build from the ``n - 1`` non-root arities, prepending the root's 1."""
        return cls((1, *arities))

    @property
    def arities(self) -> tuple[int, ...]:
        return self._a

    @property
    def mass(self) -> int:
        """Total number of argument slots, root included."""
        return sum(self._a)

    def __len__(self):
        return len(self._a)

    def __getitem__(self, i):
        return self._a[i]

    def __iter__(self):
        return iter(self._a)

    def __eq__(self, other):
        if not isinstance(other, AritySpec):
            return NotImplemented
        return self._a == other._a

    def __hash__(self):
        return hash(self._a)

    def __repr__(self):
        return f"AritySpec({list(self._a)})"


@dataclass(frozen=True)
class SuperpositionTree:
    """Rooted tree stored as a sorted multiset of ``(parent, child)`` edges.

    ``complete`` is False when the producing algorithm ran out of admissible
    edges or could not place every vertex; such trees never count as a match
    against a complete ground truth because their edge multisets differ.
    """

    edges: tuple[tuple[int, int], ...]
    complete: bool = field(default=True, compare=False)

    def __init__(self, edges: Iterable[tuple[int, int]] = (), complete: bool = True):
        object.__setattr__(self, "edges", tuple(sorted((int(p), int(c)) for p, c in edges)))
        object.__setattr__(self, "complete", bool(complete))

    def __len__(self):
        return len(self.edges)

    def counts(self) -> Counter:
        return Counter(self.edges)

    def children(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for p, c in self.edges:
            out.setdefault(p, []).append(c)
        return out

    def to_matrix(self, n: int) -> np.ndarray:
        """0/1 adjacency matrix of shape ``(n, n+1)``; multiplicity collapses."""
        m = np.zeros((n, n + 1))
        for p, c in self.edges:
            m[p, c] = 1.0
        return m


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected graph with non-negative costs and optional root and prizes."""

    n_vertices: int
    edges: tuple[tuple[int, int, float], ...]
    root: int | None = None
    prizes: tuple[float, ...] | None = None

    def __init__(self, n_vertices, edges, root=None, prizes=None):
        norm = []
        for u, v, c in edges:
            u, v, c = int(u), int(v), float(c)
            if u == v:
                raise StructureError(f"self-loop at vertex {u}")
            if not (0 <= u < n_vertices and 0 <= v < n_vertices):
                raise StructureError(f"edge ({u}, {v}) outside 0..{n_vertices - 1}")
            if c < 0 or not np.isfinite(c):
                raise ValueError(f"edge ({u}, {v}) has invalid cost {c}")
            norm.append((min(u, v), max(u, v), c))
        if root is not None and not 0 <= root < n_vertices:
            raise StructureError(f"root {root} outside 0..{n_vertices - 1}")
        if prizes is not None:
            prizes = tuple(float(p) for p in prizes)
            if len(prizes) != n_vertices:
                raise StructureError("one prize per vertex required")
            if any(p < 0 for p in prizes):
                raise ValueError("prizes must be non-negative")
        object.__setattr__(self, "n_vertices", int(n_vertices))
        object.__setattr__(self, "edges", tuple(norm))
        object.__setattr__(self, "root", None if root is None else int(root))
        object.__setattr__(self, "prizes", prizes)

    @classmethod
    def from_cost_matrix(cls, costs, root=None, prizes=None) -> "WeightedGraph":
        """Complete graph over the upper triangle of a symmetric cost matrix."""
        c = np.asarray(costs, dtype=float)
        n = c.shape[0]
        edges = [(i, j, c[i, j]) for i in range(n) for j in range(i + 1, n)]
        return cls(n, edges, root=root, prizes=prizes)

    def with_prizes(self, prizes, root=None) -> "WeightedGraph":
        return WeightedGraph(self.n_vertices, self.edges,
                             root=self.root if root is None else root, prizes=prizes)

    def adjacency(self) -> list[list[tuple[int, float]]]:
        adj: list[list[tuple[int, float]]] = [[] for _ in range(self.n_vertices)]
        for u, v, c in self.edges:
            adj[u].append((v, c))
            adj[v].append((u, c))
        return adj


def default_k(arity: AritySpec) -> int:
    """Vertex count of a tree that uses every internal vertex and fills every slot."""
    return arity.mass + 1


def check_feasible(tree: SuperpositionTree, arity: AritySpec, k: int | None = None) -> bool:
    """Whether ``tree`` satisfies the superposition-tree constraints.

    Checks reachability from the root, in-degree at most one for internal
    vertices (zero for the root), exact arity for every used internal vertex
    and a covered vertex count of at least ``k``. Variable leaves count once
    per edge. ``k`` defaults to ``arity.mass + 1``.

    Raises StructureError for indices outside the matrix universe.
    """
    n = len(arity)
    for p, c in tree.edges:
        if not 0 <= p < n or not 0 <= c <= n:
            raise StructureError(f"edge ({p}, {c}) outside universe of {n} internal vertices")
    if k is None:
        k = default_k(arity)

    indeg = [0] * n
    outdeg = [0] * n
    kids: dict[int, list[int]] = {}
    n_var = 0
    for p, c in tree.edges:
        outdeg[p] += 1
        if c == n:
            n_var += 1
        else:
            indeg[c] += 1
            kids.setdefault(p, []).append(c)
    if indeg[0] != 0 or any(d > 1 for d in indeg):
        return False

    reached = {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for c in kids.get(v, ()):
            if c not in reached:
                reached.add(c)
                queue.append(c)
    if any(p not in reached for p, _ in tree.edges):
        return False
    if any(outdeg[v] != arity[v] for v in reached):
        return False
    return len(reached) + n_var >= k


def normalize(matrix: SuperpositionMatrix) -> SuperpositionMatrix:
    """Affine rescale onto [0, 1] using the global min and max.

    A constant matrix maps to all zeros.
    """
    w = matrix.weights
    lo, hi = w.min(), w.max()
    if hi == lo:
        return SuperpositionMatrix(np.zeros_like(w))
    out = (w - lo) / (hi - lo)
    # guard the endpoints against rounding so idempotence is exact
    out[w == lo] = 0.0
    out[w == hi] = 1.0
    return SuperpositionMatrix(out)


def tree_equal(a: SuperpositionTree, b: SuperpositionTree) -> bool:
    return a.edges == b.edges


def tree_from_children(children: dict[int, Sequence[int]], complete: bool = True) -> SuperpositionTree:
    return SuperpositionTree(((p, c) for p, cs in children.items() for c in cs), complete=complete)


EXAMPLE_PRIMITIVES = (
    PrimitiveSpec("*", 1),
    PrimitiveSpec("+", 3),
    PrimitiveSpec("ln", 1),
    PrimitiveSpec("sin", 1),
    PrimitiveSpec("*mul", 2),
    PrimitiveSpec("exp", 1),
)

EXAMPLE_WEIGHTS = np.array([
    [0.2, 0.7, 0.5, 0.4, 0.5, 0.3, 0.2],
    [0.3, 0.2, 1.0, 0.8, 0.6, 0.3, 0.7],
    [0.3, 0.2, 0.0, 0.0, 0.1, 0.5, 0.5],
    [0.1, 0.4, 0.0, 0.5, 0.9, 0.2, 0.5],
    [0.3, 0.0, 0.3, 0.5, 0.0, 0.8, 0.6],
    [0.3, 0.3, 0.4, 0.1, 0.5, 0.4, 0.4],
])

# ln(x) + x + sin(x * exp(x)) over rows (*, +, ln, sin, mul, exp); column 6 is x
EXAMPLE_TREE_EDGES = (
    (0, 1), (1, 2), (1, 6), (1, 3), (2, 6), (3, 4), (4, 6), (4, 5), (5, 6),
)


def worked_example() -> tuple[SuperpositionMatrix, AritySpec, SuperpositionTree]:
    """Worked example ``ln(x) + x + sin(x * exp(x))`` with its probability matrix."""
    return (
        SuperpositionMatrix(EXAMPLE_WEIGHTS),
        AritySpec(p.arity for p in EXAMPLE_PRIMITIVES),
        SuperpositionTree(EXAMPLE_TREE_EDGES),
    )
