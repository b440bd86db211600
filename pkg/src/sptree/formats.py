"""Plain-text file formats.

Matrix file::

    n
    a_0 a_1 ... a_{n-1}        # arities, root first
    w_00 ... w_0n              # n rows of n+1 weights
    ...

Tree file: one ``parent child`` pair per line, duplicates allowed.

Graph file (used by the gw, pcst and oracle commands)::

    n
    root r                     # optional
    prizes p_0 ... p_{n-1}     # optional
    u v cost                   # one edge per line

Blank lines and ``#`` comments are ignored everywhere.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .graph import AritySpec, SuperpositionMatrix, SuperpositionTree, WeightedGraph


class ParseError(ValueError):
    pass


def _lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _floats(line: str, lineno_hint: str) -> list[float]:
    try:
        return [float(t) for t in line.split()]
    except ValueError as exc:
        raise ParseError(f"{lineno_hint}: {exc}") from None


def _ints(line: str, lineno_hint: str) -> list[int]:
    try:
        return [int(t) for t in line.split()]
    except ValueError as exc:
        raise ParseError(f"{lineno_hint}: {exc}") from None


def parse_matrix(text: str) -> tuple[SuperpositionMatrix, AritySpec]:
    lines = _lines(text)
    if len(lines) < 2:
        raise ParseError("matrix file needs a size line and an arity line")
    head = _ints(lines[0], "size line")
    if len(head) != 1 or head[0] < 1:
        raise ParseError(f"size line must hold one positive integer, got {lines[0]!r}")
    n = head[0]
    arities = _ints(lines[1], "arity line")
    if len(arities) != n:
        raise ParseError(f"expected {n} arities, got {len(arities)}")
    rows = [_floats(line, f"matrix row {i}") for i, line in enumerate(lines[2:])]
    if len(rows) != n or any(len(r) != n + 1 for r in rows):
        raise ParseError(f"expected {n} rows of {n + 1} weights")
    try:
        return SuperpositionMatrix(np.array(rows)), AritySpec(arities)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_matrix(matrix: SuperpositionMatrix, arity: AritySpec) -> str:
    out = [str(matrix.n_internal), " ".join(str(a) for a in arity)]
    out += [" ".join(repr(float(v)) for v in row) for row in matrix.weights]
    return "\n".join(out) + "\n"


def parse_tree(text: str) -> SuperpositionTree:
    edges = []
    for i, line in enumerate(_lines(text)):
        pair = _ints(line, f"tree line {i}")
        if len(pair) != 2:
            raise ParseError(f"tree line {i}: expected 'parent child', got {line!r}")
        edges.append((pair[0], pair[1]))
    return SuperpositionTree(edges)


def format_tree(tree: SuperpositionTree) -> str:
    return "".join(f"{p} {c}\n" for p, c in tree.edges)


def parse_graph(text: str) -> WeightedGraph:
    lines = _lines(text)
    if not lines:
        raise ParseError("graph file is empty")
    head = _ints(lines[0], "size line")
    if len(head) != 1 or head[0] < 1:
        raise ParseError("size line must hold one positive integer")
    n = head[0]
    root, prizes, edges = None, None, []
    for i, line in enumerate(lines[1:], start=1):
        tok = line.split()
        if tok[0] == "root":
            vals = _ints(" ".join(tok[1:]), f"line {i}")
            if len(vals) != 1:
                raise ParseError(f"line {i}: root takes one vertex")
            root = vals[0]
        elif tok[0] == "prizes":
            prizes = _floats(" ".join(tok[1:]), f"line {i}")
        else:
            if len(tok) != 3:
                raise ParseError(f"line {i}: expected 'u v cost', got {line!r}")
            u, v = _ints(" ".join(tok[:2]), f"line {i}")
            (c,) = _floats(tok[2], f"line {i}")
            edges.append((u, v, c))
    try:
        return WeightedGraph(n, edges, root=root, prizes=prizes)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_graph(graph: WeightedGraph) -> str:
    out = [str(graph.n_vertices)]
    if graph.root is not None:
        out.append(f"root {graph.root}")
    if graph.prizes is not None:
        out.append("prizes " + " ".join(repr(p) for p in graph.prizes))
    out += [f"{u} {v} {c!r}" for u, v, c in graph.edges]
    return "\n".join(out) + "\n"


def read_matrix(path) -> tuple[SuperpositionMatrix, AritySpec]:
    return parse_matrix(Path(path).read_text())


def read_tree(path) -> SuperpositionTree:
    return parse_tree(Path(path).read_text())


def read_graph(path) -> WeightedGraph:
    return parse_graph(Path(path).read_text())
