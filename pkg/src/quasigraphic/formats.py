"""Line-oriented text formats for graphs, matroids, pairs and biased graphs.

Graph block::

    v <label>
    e <label> <u> <w>          # u == w is a loop-edge

Matroid block, selected by its header line::

    explicit <n>               # then optional `ground ...`, then `basis ...` lines
    uniform <r> <n>            # then optional `ground ...`
    graphic                    # then a graph block
    linear p=<p> rows=<r>      # then `col <label> <r values>` lines

A pair file is a graph block followed by a matroid block; a biased-graph
file is a graph block followed by ``balanced <labels...>`` lines.
``#`` starts a comment.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .biased import BiasedGraph
from .graph import GraphError, MultiGraph, format_graph
from .linear import LinearMatroid, PrimeFieldMatrix
from .matroid import ExplicitMatroid, GraphicMatroid, Matroid, UniformMatroid


class FormatError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _lines(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((lineno, line.split()))
    return out


def _graph_from_lines(lines) -> MultiGraph:
    verts: list[str] = []
    edges: dict[str, tuple[str, str]] = {}
    for lineno, parts in lines:
        if parts[0] == "v" and len(parts) == 2:
            verts.append(parts[1])
        elif parts[0] == "e" and len(parts) == 4:
            if parts[1] in edges:
                raise FormatError(lineno, f"duplicate edge label {parts[1]!r}")
            if parts[2] not in verts or parts[3] not in verts:
                raise FormatError(lineno, "edge uses an undeclared vertex")
            edges[parts[1]] = (parts[2], parts[3])
        else:
            raise FormatError(lineno, f"expected a 'v' or 'e' line, got {' '.join(parts)!r}")
    try:
        return MultiGraph(verts, edges)
    except GraphError as exc:
        raise FormatError(lines[-1][0] if lines else 0, str(exc)) from None


def read_graph(text: str) -> MultiGraph:
    return _graph_from_lines(_lines(text))


_HEADERS = ("explicit", "uniform", "graphic", "linear")


def _matroid_from_lines(lines) -> Matroid:
    if not lines:
        raise FormatError(0, "empty matroid block")
    lineno, head = lines[0]
    body = lines[1:]
    kind = head[0]
    if kind == "graphic":
        return GraphicMatroid(_graph_from_lines(body))
    if kind == "explicit":
        if len(head) != 2 or not head[1].isdigit():
            raise FormatError(lineno, "expected 'explicit <n>'")
        n = int(head[1])
        ground = None
        bases = []
        for ln, parts in body:
            if parts[0] == "ground":
                ground = parts[1:]
            elif parts[0] == "basis":
                bases.append(parts[1:])
            else:
                raise FormatError(ln, f"expected 'ground' or 'basis', got {parts[0]!r}")
        if ground is None:
            ground = sorted({x for B in bases for x in B})
        if len(set(ground)) != n:
            raise FormatError(lineno, f"header says {n} elements, found {len(set(ground))}")
        try:
            return ExplicitMatroid(ground, bases)
        except ValueError as exc:
            raise FormatError(lineno, str(exc)) from None
    if kind == "uniform":
        if len(head) != 3 or not (head[1].isdigit() and head[2].isdigit()):
            raise FormatError(lineno, "expected 'uniform <r> <n>'")
        r, n = int(head[1]), int(head[2])
        ground = [f"e{i}" for i in range(n)]
        for ln, parts in body:
            if parts[0] != "ground" or len(parts) != n + 1:
                raise FormatError(ln, f"expected 'ground' with {n} labels")
            ground = parts[1:]
        try:
            return UniformMatroid(r, ground)
        except ValueError as exc:
            raise FormatError(lineno, str(exc)) from None
    if kind == "linear":
        opts = dict(tok.split("=", 1) for tok in head[1:] if "=" in tok)
        try:
            p, nrows = int(opts["p"]), int(opts["rows"])
        except (KeyError, ValueError):
            raise FormatError(lineno, "expected 'linear p=<p> rows=<r>'") from None
        cols, data = [], []
        for ln, parts in body:
            if parts[0] != "col" or len(parts) != nrows + 2:
                raise FormatError(ln, f"expected 'col <label>' and {nrows} values")
            try:
                data.append([int(x) for x in parts[2:]])
            except ValueError:
                raise FormatError(ln, "column entries must be integers") from None
            cols.append(parts[1])
        try:
            A = PrimeFieldMatrix(p, np.array(data, dtype=np.int64).reshape(len(cols), nrows).T, cols)
        except ValueError as exc:
            raise FormatError(lineno, str(exc)) from None
        return LinearMatroid(A)
    raise FormatError(lineno, f"unknown matroid header {kind!r}")


def read_matroid(text: str) -> Matroid:
    return _matroid_from_lines(_lines(text))


def read_matrix(text: str) -> PrimeFieldMatrix:
    M = read_matroid(text)
    if not isinstance(M, LinearMatroid):
        raise FormatError(1, "expected a 'linear' matroid block")
    return M.matrix


def read_pair(text: str) -> tuple[MultiGraph, Matroid]:
    lines = _lines(text)
    for k, (_, parts) in enumerate(lines):
        if parts[0] in _HEADERS:
            return _graph_from_lines(lines[:k]), _matroid_from_lines(lines[k:])
    raise FormatError(lines[-1][0] if lines else 0, "no matroid block found")


def read_biased(text: str) -> BiasedGraph:
    lines = _lines(text)
    graph_lines = [x for x in lines if x[1][0] != "balanced"]
    G = _graph_from_lines(graph_lines)
    B = []
    for ln, parts in lines:
        if parts[0] == "balanced":
            if not set(parts[1:]) <= set(G.edge_labels):
                raise FormatError(ln, "balanced cycle uses unknown edges")
            B.append(frozenset(parts[1:]))
    try:
        return BiasedGraph(G, frozenset(B))
    except ValueError as exc:
        raise FormatError(lines[-1][0], str(exc)) from None


def format_matrix(A: PrimeFieldMatrix) -> str:
    lines = [f"linear p={A.p} rows={A.shape[0]}"]
    if A.rows and not all(r.startswith("r") for r in A.rows):
        lines.append("# rows " + " ".join(A.rows))
    for j, c in enumerate(A.cols):
        lines.append(f"col {c} " + " ".join(str(int(x)) for x in A.data[:, j]))
    return "\n".join(lines) + "\n"


def format_matroid(M: Matroid) -> str:
    if isinstance(M, GraphicMatroid):
        return "graphic\n" + format_graph(M.graph)
    if isinstance(M, LinearMatroid):
        return format_matrix(M.matrix)
    if isinstance(M, UniformMatroid):
        return f"uniform {M.r} {len(M)}\nground {' '.join(M.groundset)}\n"
    # anything else is written out by its bases
    table = M.independence_table()
    r = M.rank_of_matroid
    lines = [f"explicit {len(M)}", "ground " + " ".join(M.groundset)]
    for B in combinations(range(len(M)), r):
        mask = sum(1 << i for i in B)
        if table[mask]:
            lines.append("basis " + " ".join(M.groundset[i] for i in B))
    return "\n".join(lines) + "\n"


def format_pair(G: MultiGraph, M: Matroid) -> str:
    return format_graph(G) + format_matroid(M)


def format_biased(bg: BiasedGraph) -> str:
    lines = [format_graph(bg.graph).rstrip("\n")]
    for C in sorted(bg.balanced, key=lambda c: (len(c), sorted(c))):
        lines.append("balanced " + " ".join(sorted(C)))
    return "\n".join(lines) + "\n"
