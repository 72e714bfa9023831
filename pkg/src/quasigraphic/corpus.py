"""Seeded, exhaustive instance generators for the property suites.

Multigraphs are generated up to isomorphism: a graph on ``n`` vertices is
a vector of multiplicities over the ``n(n+1)/2`` vertex pairs (loops
included), and its canonical form is the largest encoding over all
vertex permutations.  Only graphs without isolated vertices are kept.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import permutations
from pathlib import Path
from string import ascii_lowercase
from typing import Iterator

import numpy as np

from .biased import BiasedGraph, fm_matroid, lm_matroid
from .formats import format_biased
from .graph import MultiGraph, enumerate_cycles, enumerate_thetas, is_connected
from .matroid import Matroid

CORPUS_VERSION = 1


def _slots(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i, n)]


def _multiplicity_vectors(n: int, max_edges: int) -> list[tuple[int, ...]]:
    slots = _slots(n)
    where = {s: k for k, s in enumerate(slots)}
    perms = np.array(
        [[where[tuple(sorted((p[i], p[j])))] for (i, j) in slots] for p in permutations(range(n))],
        dtype=np.int64,
    )
    base = max_edges + 1
    weights = base ** np.arange(len(slots) - 1, -1, -1, dtype=np.int64)

    def canon(vec: np.ndarray) -> tuple[int, ...]:
        # vec[perms] relabels vertices; keep the largest encoding
        images = vec[perms]
        best = int(np.argmax(images @ weights))
        return tuple(int(x) for x in images[best])

    level = {tuple([0] * len(slots))}
    out = []
    for _ in range(max_edges):
        nxt = set()
        for vec in level:
            arr = np.array(vec, dtype=np.int64)
            for k in range(len(slots)):
                arr[k] += 1
                nxt.add(canon(arr))
                arr[k] -= 1
        level = nxt
        out.extend(level)
    # keep graphs that touch every vertex
    keep = []
    for vec in out:
        touched = set()
        for (i, j), mult in zip(slots, vec):
            if mult:
                touched.update((i, j))
        if len(touched) == n:
            keep.append(vec)
    keep.sort(key=lambda v: (sum(v), v))
    return keep


def _edge_labels(m: int) -> list[str]:
    if m <= len(ascii_lowercase):
        return list(ascii_lowercase[:m])
    width = len(str(m - 1))
    return [f"e{i:0{width}d}" for i in range(m)]


def _graph_from_vector(n: int, vec: tuple[int, ...]) -> MultiGraph:
    edges = {}
    pairs = []
    for (i, j), mult in zip(_slots(n), vec):
        pairs.extend([(i, j)] * mult)
    for label, (i, j) in zip(_edge_labels(len(pairs)), pairs):
        edges[label] = (f"v{i}", f"v{j}")
    return MultiGraph([f"v{i}" for i in range(n)], edges)


def multigraphs(max_vertices: int, max_edges: int, *, connected: bool = False, min_edges: int = 1) -> Iterator[MultiGraph]:
    """Multigraphs up to isomorphism, loops and parallel edges allowed.

    Every vertex carries an edge.  Vertices are ``v0..``; edges ``a, b, ...``.
    """
    for n in range(1, max_vertices + 1):
        for vec in _multiplicity_vectors(n, max_edges):
            if sum(vec) < min_edges:
                continue
            G = _graph_from_vector(n, vec)
            if connected and not is_connected(G):
                continue
            yield G


def theta_closure(G: MultiGraph, B: set, thetas=None) -> frozenset:
    """Smallest superset of ``B`` with the theta-property (add the third cycle)."""
    if thetas is None:
        thetas = enumerate_thetas(G)
    B = set(B)
    changed = True
    while changed:
        changed = False
        for T in thetas:
            cs = T.cycles()
            inside = [c in B for c in cs]
            if sum(inside) == 2:
                B.update(cs)
                changed = True
    return frozenset(B)


def balanced_families(G: MultiGraph, rng: random.Random, exhaustive_limit: int = 6, samples: int = 8) -> list[frozenset]:
    """Theta-property sets of cycles of ``G``.

    All of them when ``G`` has at most ``exhaustive_limit`` cycles;
    otherwise the empty set, the full set, and ``samples`` random sets
    closed under the theta rule.
    """
    cycles = [c.edges for c in enumerate_cycles(G)]
    thetas = enumerate_thetas(G)
    out: set[frozenset] = set()
    if len(cycles) <= exhaustive_limit:
        for bits in range(1 << len(cycles)):
            B = frozenset(c for i, c in enumerate(cycles) if bits >> i & 1)
            if all(sum(c in B for c in T.cycles()) != 2 for T in thetas):
                out.add(B)
    else:
        out.add(frozenset())
        out.add(frozenset(cycles))
        for _ in range(samples):
            p = rng.uniform(0.05, 0.5)
            out.add(theta_closure(G, {c for c in cycles if rng.random() < p}, thetas))
    return sorted(out, key=lambda B: (len(B), sorted(sorted(c) for c in B)))


@dataclass(frozen=True)
class CorpusSpec:
    max_vertices: int = 4
    max_edges: int = 7
    seed: int = 0
    exhaustive_limit: int = 6
    samples: int = 8


def biased_graphs(spec: CorpusSpec = CorpusSpec()) -> Iterator[BiasedGraph]:
    rng = random.Random(spec.seed)
    for G in multigraphs(spec.max_vertices, spec.max_edges):
        for B in balanced_families(G, rng, spec.exhaustive_limit, spec.samples):
            yield BiasedGraph(G, B)


@dataclass(frozen=True)
class CorpusPair:
    name: str
    graph: MultiGraph
    matroid: Matroid
    biased: BiasedGraph
    kind: str  # "FM" or "LM"


def framework_pairs(spec: CorpusSpec = CorpusSpec()) -> Iterator[CorpusPair]:
    """``(G, FM(G, B))`` and ``(G, LM(G, B))`` for every corpus biased graph."""
    for i, bg in enumerate(biased_graphs(spec)):
        yield CorpusPair(f"bg{i:05d}-FM", bg.graph, fm_matroid(bg), bg, "FM")
        yield CorpusPair(f"bg{i:05d}-LM", bg.graph, lm_matroid(bg), bg, "LM")


def write_corpus(directory: str | Path, spec: CorpusSpec = CorpusSpec()) -> Path:
    """Write every corpus biased graph to its own file plus a manifest."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    names = []
    for i, bg in enumerate(biased_graphs(spec)):
        name = f"bg{i:05d}.bg"
        (directory / name).write_text(format_biased(bg))
        names.append(name)
    manifest = directory / "MANIFEST"
    header = (
        f"# corpus v{CORPUS_VERSION} seed={spec.seed} max_vertices={spec.max_vertices} "
        f"max_edges={spec.max_edges} exhaustive_limit={spec.exhaustive_limit} samples={spec.samples}"
    )
    manifest.write_text("\n".join([header, *names]) + "\n")
    return manifest


def read_manifest(path: str | Path) -> tuple[dict, list[Path]]:
    path = Path(path)
    lines = path.read_text().splitlines()
    header = {}
    for tok in lines[0].lstrip("# ").split():
        if tok.startswith("v") and tok[1:].isdigit():
            header["version"] = int(tok[1:])
        elif "=" in tok:
            k, v = tok.split("=", 1)
            header[k] = int(v)
    files = [path.parent / name for name in lines[1:] if name.strip()]
    return header, files
