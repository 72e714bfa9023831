"""Finite multigraphs with loop-edges.

Edges carry their own labels, so parallel edges and several loops at one
vertex are all distinct.  Labels are opaque strings ordered
lexicographically; every enumeration below is returned in that order so
results are reproducible.

Edge sets are passed around as ``frozenset`` of labels at the public
surface.  For the exhaustive checks there is a bitmask view
(:class:`MaskTables`) indexed by the position of an edge in
``G.edge_labels``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from types import MappingProxyType
from typing import Iterable, Mapping

import numpy as np


class GraphError(ValueError):
    """Raised for malformed graphs or illegal graph operations."""


class MultiGraph:
    """An immutable multigraph.

    ``edges`` maps an edge label to its unordered pair of ends; a pair with
    equal ends is a loop-edge.
    """

    __slots__ = ("_vertices", "_edges", "_edge_labels", "_incidence", "_tables")

    def __init__(self, vertices: Iterable[str] = (), edges: Mapping[str, tuple[str, str]] | None = None):
        verts = set(vertices)
        norm: dict[str, tuple[str, str]] = {}
        for label, (u, w) in sorted((edges or {}).items()):
            if u not in verts or w not in verts:
                raise GraphError(f"edge {label!r} has an undeclared end")
            norm[label] = (u, w) if u <= w else (w, u)
        self._vertices = tuple(sorted(verts))
        self._edges = MappingProxyType(norm)
        self._edge_labels = tuple(norm)
        inc: dict[str, list[str]] = {v: [] for v in self._vertices}
        for label, (u, w) in norm.items():
            inc[u].append(label)
            if w != u:
                inc[w].append(label)
        self._incidence = {v: tuple(ls) for v, ls in inc.items()}
        self._tables = None

    @classmethod
    def from_edges(cls, edges: Mapping[str, tuple[str, str]], vertices: Iterable[str] = ()) -> "MultiGraph":
        """Build a graph whose vertex set is the ends of ``edges`` plus ``vertices``."""
        verts = set(vertices)
        for u, w in edges.values():
            verts.update((u, w))
        return cls(verts, edges)

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def edges(self) -> Mapping[str, tuple[str, str]]:
        return self._edges

    @property
    def edge_labels(self) -> tuple[str, ...]:
        return self._edge_labels

    def ends(self, e: str) -> tuple[str, str]:
        try:
            return self._edges[e]
        except KeyError:
            raise GraphError(f"unknown edge {e!r}") from None

    def is_loop(self, e: str) -> bool:
        u, w = self.ends(e)
        return u == w

    def incident(self, v: str) -> tuple[str, ...]:
        """All edges with ``v`` as an end, loops included."""
        return self._incidence[v]

    def loops_at(self, v: str) -> frozenset[str]:
        return frozenset(e for e in self._incidence[v] if self._edges[e][0] == self._edges[e][1])

    def nonloops_at(self, v: str) -> frozenset[str]:
        return frozenset(e for e in self._incidence[v] if self._edges[e][0] != self._edges[e][1])

    def degree(self, v: str) -> int:
        return sum(2 if self.is_loop(e) else 1 for e in self._incidence[v])

    def loop_edges(self) -> frozenset[str]:
        return frozenset(e for e, (u, w) in self._edges.items() if u == w)

    def delete_edges(self, X: Iterable[str]) -> "MultiGraph":
        X = set(X)
        self._check_edges(X)
        return MultiGraph(self._vertices, {e: p for e, p in self._edges.items() if e not in X})

    def delete_vertices(self, X: Iterable[str]) -> "MultiGraph":
        """``G - X``: drop the vertices and every edge touching them."""
        X = set(X)
        if not X <= set(self._vertices):
            raise GraphError(f"unknown vertices {sorted(X - set(self._vertices))}")
        return MultiGraph(
            [v for v in self._vertices if v not in X],
            {e: (u, w) for e, (u, w) in self._edges.items() if u not in X and w not in X},
        )

    def add_edge(self, e: str, u: str, w: str) -> "MultiGraph":
        if e in self._edges:
            raise GraphError(f"edge label {e!r} already used")
        edges = dict(self._edges)
        edges[e] = (u, w)
        return MultiGraph(set(self._vertices) | {u, w}, edges)

    def vertex_set(self, X: Iterable[str]) -> frozenset[str]:
        """``V(X)``: the vertices touched by the edges in ``X``."""
        out = set()
        for e in X:
            out.update(self.ends(e))
        return frozenset(out)

    def tables(self) -> "MaskTables":
        if self._tables is None:
            self._tables = MaskTables(self)
        return self._tables

    def _check_edges(self, X) -> None:
        unknown = set(X) - set(self._edges)
        if unknown:
            raise GraphError(f"unknown edges {sorted(unknown)}")

    def __eq__(self, other):
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self._vertices == other._vertices and dict(self._edges) == dict(other._edges)

    def __hash__(self):
        return hash((self._vertices, tuple(self._edges.items())))

    def __len__(self):
        return len(self._edge_labels)

    def __repr__(self):
        es = ", ".join(f"{e}:{u}-{w}" for e, (u, w) in self._edges.items())
        return f"MultiGraph(V={list(self._vertices)}, E={{{es}}})"


@dataclass(frozen=True)
class Cycle:
    edges: frozenset
    vertices: frozenset

    def __len__(self):
        return len(self.edges)


@dataclass(frozen=True)
class Theta:
    edges: frozenset
    branch_vertices: tuple
    paths: tuple  # three edge sets, internally disjoint

    def cycles(self) -> tuple[frozenset, frozenset, frozenset]:
        """The three cycles of the theta, as edge sets."""
        return tuple(self.edges - p for p in self.paths)


def _canon_key(X) -> tuple:
    return (len(X), tuple(sorted(X)))


def components(G: MultiGraph) -> list[MultiGraph]:
    """Maximal connected subgraphs; an isolated vertex is its own component."""
    seen: set[str] = set()
    out = []
    for root in G.vertices:
        if root in seen:
            continue
        stack = [root]
        seen.add(root)
        verts = {root}
        while stack:
            v = stack.pop()
            for e in G.incident(v):
                u, w = G.edges[e]
                x = w if u == v else u
                if x not in seen:
                    seen.add(x)
                    verts.add(x)
                    stack.append(x)
        out.append(MultiGraph(verts, {e: G.edges[e] for v in verts for e in G.incident(v)}))
    return out


def is_connected(G: MultiGraph) -> bool:
    # The graph with no vertices counts as connected.
    return len(components(G)) <= 1


def edge_subgraph(G: MultiGraph, X: Iterable[str]) -> MultiGraph:
    """``G[X]``: edge set ``X`` and no isolated vertices."""
    X = set(X)
    G._check_edges(X)
    return MultiGraph.from_edges({e: G.edges[e] for e in X})


def contract_edge(G: MultiGraph, e: str) -> MultiGraph:
    """``G/e`` for a non-loop edge; the merged vertex keeps the smaller label.

    Edges parallel to ``e`` become loop-edges.
    """
    u, w = G.ends(e)
    if u == w:
        raise GraphError(f"{e!r} is a loop-edge; use contract_loop")
    keep, gone = u, w  # ends are stored sorted, so u < w

    def move(x):
        return keep if x == gone else x

    edges = {f: (move(a), move(b)) for f, (a, b) in G.edges.items() if f != e}
    return MultiGraph([v for v in G.vertices if v != gone], edges)


def contract_loop(G: MultiGraph, e: str) -> MultiGraph:
    """``G o e`` for a loop-edge ``e`` at ``v``.

    ``v`` is deleted; each non-loop edge ``vw`` becomes a loop-edge at ``w``
    and every other loop-edge at ``v`` is re-attached as a loop-edge at the
    smallest remaining vertex.
    """
    v, w = G.ends(e)
    if v != w:
        raise GraphError(f"{e!r} is not a loop-edge")
    rest = [x for x in G.vertices if x != v]
    edges = {}
    for f, (a, b) in G.edges.items():
        if f == e:
            continue
        if a != v and b != v:
            edges[f] = (a, b)
        elif a != b:
            other = b if a == v else a
            edges[f] = (other, other)
        else:
            if not rest:
                raise GraphError(f"no vertex left to carry loop-edge {f!r} after removing {v!r}")
            edges[f] = (rest[0], rest[0])
    return MultiGraph(rest, edges)


def enumerate_cycles(G: MultiGraph) -> list[Cycle]:
    """Every cycle of ``G`` (loop-edges and parallel pairs included).

    A non-loop cycle is found once, from its smallest edge ``uw``, as a
    vertex-simple ``u``-``w`` path through strictly larger edges.
    """
    order = {e: i for i, e in enumerate(G.edge_labels)}
    found = []
    for e in G.edge_labels:
        u, w = G.edges[e]
        if u == w:
            found.append(Cycle(frozenset([e]), frozenset([u])))
            continue
        i = order[e]
        # iterative DFS over simple paths from u to w
        stack = [(u, [e], {u})]
        while stack:
            x, path, seen = stack.pop()
            for f in G.incident(x):
                if order[f] <= i:
                    continue
                a, b = G.edges[f]
                if a == b:
                    continue
                y = b if a == x else a
                if y == w:
                    es = frozenset(path + [f])
                    found.append(Cycle(es, frozenset(seen | {w})))
                elif y not in seen:
                    stack.append((y, path + [f], seen | {y}))
    found.sort(key=lambda c: _canon_key(c.edges))
    return found


def is_cycle_edge_set(G: MultiGraph, X: Iterable[str]) -> bool:
    """True when ``G[X]`` is connected and 2-regular (loops count twice)."""
    X = frozenset(X)
    if not X:
        return False
    H = edge_subgraph(G, X)
    return is_connected(H) and all(H.degree(v) == 2 for v in H.vertices)


def enumerate_thetas(G: MultiGraph, cycles: list[Cycle] | None = None) -> list[Theta]:
    """Every theta subgraph: two vertices joined by three internally disjoint paths.

    Two distinct cycles form a theta exactly when they meet in a single
    path, i.e. their common edges make one path and they share no other
    vertex.
    """
    if cycles is None:
        cycles = enumerate_cycles(G)
    nonloop = [c for c in cycles if len(c.edges) > 1 or not G.is_loop(next(iter(c.edges)))]
    seen = set()
    out = []
    for c1, c2 in combinations(nonloop, 2):
        shared = c1.edges & c2.edges
        if not shared:
            continue
        vs = G.vertex_set(shared)
        if len(vs) != len(shared) + 1 or (c1.vertices & c2.vertices) != vs:
            continue
        union = c1.edges | c2.edges
        if union in seen:
            continue
        seen.add(union)
        ends = tuple(sorted(v for v in vs if sum(1 for f in G.incident(v) if f in shared) == 1))
        third = c1.edges ^ c2.edges
        paths = tuple(sorted((shared, c1.edges - shared, c2.edges - shared), key=_canon_key))
        assert union - third == shared
        out.append(Theta(union, ends, paths))
    out.sort(key=lambda t: _canon_key(t.edges))
    return out


def is_k_connected(G: MultiGraph, k: int) -> bool:
    """``G - X`` is connected for every vertex set ``X`` with ``|X| < k``."""
    if k not in (1, 2, 3):
        raise ValueError("k must be 1, 2 or 3")
    for size in range(k):
        for X in combinations(G.vertices, size):
            if not is_connected(G.delete_vertices(X)):
                return False
    return True


def relabel_vertices(G: MultiGraph, mapping: Mapping[str, str]) -> MultiGraph:
    return MultiGraph(
        [mapping[v] for v in G.vertices],
        {e: (mapping[u], mapping[w]) for e, (u, w) in G.edges.items()},
    )


def canonical_vertex_form(G: MultiGraph) -> MultiGraph:
    """Rename vertices ``v0, v1, ...`` by first appearance along the edge order.

    Two graphs on the same edge labels with no isolated vertices are equal
    up to renaming vertices exactly when their canonical forms are equal.
    """
    mapping: dict[str, str] = {}
    for e in G.edge_labels:
        for x in G.edges[e]:
            if x not in mapping:
                mapping[x] = f"v{len(mapping)}"
    for v in G.vertices:
        if v not in mapping:
            mapping[v] = f"v{len(mapping)}"
    return relabel_vertices(G, mapping)


class MaskTables:
    """Per-subset graph statistics, indexed by edge bitmask.

    Bit ``i`` stands for ``G.edge_labels[i]``.  For each of the ``2**m``
    subsets ``X`` we keep ``|V(X)|``, the number of components of ``G[X]``
    and whether every component has at most as many edges as vertices.
    """

    def __init__(self, G: MultiGraph):
        m = len(G.edge_labels)
        if m > 20:
            raise GraphError("mask tables are limited to 20 edges")
        vidx = {v: i for i, v in enumerate(G.vertices)}
        ends = [(vidx[G.edges[e][0]], vidx[G.edges[e][1]]) for e in G.edge_labels]
        self.m = m
        self.ends = ends
        self.label_index = {e: i for i, e in enumerate(G.edge_labels)}
        n = 1 << m
        nverts = np.zeros(n, dtype=np.int16)
        ncomp = np.zeros(n, dtype=np.int16)
        frame_ok = np.zeros(n, dtype=bool)
        for mask in range(n):
            nv, nc, ok = _mask_stats(ends, mask)
            nverts[mask] = nv
            ncomp[mask] = nc
            frame_ok[mask] = ok
        size = np.array([bin(x).count("1") for x in range(n)], dtype=np.int16)
        self.size = size
        self.nverts = nverts
        self.ncomp = ncomp
        # every component H of G[X] has |E(H)| <= |V(H)|
        self.frame_ok = frame_ok
        # |E| - |V| + c: number of independent cycles of G[X]
        self.nullity = size - nverts + ncomp

    def mask(self, X: Iterable[str]) -> int:
        out = 0
        for e in X:
            out |= 1 << self.label_index[e]
        return out


def _mask_stats(ends, mask):
    parent: dict[int, int] = {}
    edges_in: dict[int, int] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    i = 0
    m = mask
    order = []
    while m:
        if m & 1:
            a, b = ends[i]
            parent.setdefault(a, a)
            parent.setdefault(b, b)
            order.append(a)
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        m >>= 1
        i += 1
    verts = {}
    for v in parent:
        r = find(v)
        verts[r] = verts.get(r, 0) + 1
    for a in order:
        r = find(a)
        edges_in[r] = edges_in.get(r, 0) + 1
    ok = all(edges_in[r] <= verts[r] for r in verts)
    return len(parent), len(verts), ok


def parse_graph(text: str) -> MultiGraph:
    """Parse ``v <label>`` / ``e <label> <u> <w>`` lines.

    Blank lines and ``#`` comments are skipped.  Errors name the line.
    """
    verts: list[str] = []
    edges: dict[str, tuple[str, str]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "v" and len(parts) == 2:
            verts.append(parts[1])
        elif parts[0] == "e" and len(parts) == 4:
            if parts[1] in edges:
                raise GraphError(f"line {lineno}: duplicate edge label {parts[1]!r}")
            edges[parts[1]] = (parts[2], parts[3])
        else:
            raise GraphError(f"line {lineno}: cannot parse {raw!r}")
    vs = set(verts)
    for label, (u, w) in edges.items():
        if u not in vs or w not in vs:
            raise GraphError(f"edge {label!r} uses an undeclared vertex")
    return MultiGraph(verts, edges)


def format_graph(G: MultiGraph) -> str:
    lines = [f"v {v}" for v in G.vertices]
    lines += [f"e {e} {u} {w}" for e, (u, w) in G.edges.items()]
    return "\n".join(lines) + "\n"
