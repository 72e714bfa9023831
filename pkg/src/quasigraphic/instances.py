"""Small named graphs and matrix-represented frame and lift instances."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .framework import FrameworkPair, is_framework, is_strong, strengthen
from .graph import MultiGraph
from .linear import LinearMatroid, PrimeFieldMatrix, incidence_matrix, matrix_rank
from .matroid import is_3_connected


def _graph(pairs, loops=()) -> MultiGraph:
    edges = {}
    for k, (u, w) in enumerate(pairs):
        edges[f"e{k:02d}"] = (f"v{u}", f"v{w}")
    for k, v in enumerate(loops):
        edges[f"l{k:02d}"] = (f"v{v}", f"v{v}")
    return MultiGraph.from_edges(edges)


def complete_graph(n: int) -> MultiGraph:
    return _graph(combinations(range(n), 2))


def wheel(spokes: int) -> MultiGraph:
    rim = [(i, i % spokes + 1) for i in range(1, spokes + 1)]
    return _graph([(0, i) for i in range(1, spokes + 1)] + rim)


def prism() -> MultiGraph:
    return _graph([(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])


def k33() -> MultiGraph:
    return _graph([(a, b) for a in range(3) for b in range(3, 6)])


def k5_minus_edge() -> MultiGraph:
    return _graph([e for e in combinations(range(5), 2) if e != (3, 4)])


def theta_graph() -> MultiGraph:
    """Two vertices joined by three parallel edges."""
    return _graph([(0, 1)] * 3)


def triangle_with_loop() -> MultiGraph:
    return _graph([(0, 1), (1, 2), (0, 2)], loops=[0])


NAMED_GRAPHS = {
    "K4": lambda: complete_graph(4),
    "W4": lambda: wheel(4),
    "K5-e": k5_minus_edge,
    "prism": prism,
    "K33": k33,
    "W5": lambda: wheel(5),
    "K5": lambda: complete_graph(5),
}


@dataclass(frozen=True)
class Instance:
    name: str
    matrix: PrimeFieldMatrix
    graph: MultiGraph  # a strong framework for M(matrix)
    expected: str  # "FRAME" or "LIFT"


def lift_instance(G: MultiGraph, p: int, rng: random.Random) -> PrimeFieldMatrix:
    """Incidence matrix of ``G`` over GF(p) with one seeded random row appended.

    Dropping a dependent incidence row keeps the rank at ``|V| - 1``
    before the extra row raises it by one.
    """
    A = incidence_matrix(G, p)
    data = A.data[1:]
    extra = np.array([rng.randrange(p) for _ in A.cols], dtype=np.int64)
    return PrimeFieldMatrix(p, np.vstack([data, extra]), A.cols)


def frame_instance(G: MultiGraph, p: int, rng: random.Random, loops: int = 0) -> PrimeFieldMatrix:
    """Gain-graph incidence over GF(p) with random non-zero gains.

    Also adds ``loops`` unbalanced loop-edges at random vertices.  The
    matrix is the framed extension (identity columns at each vertex) with
    those identity columns deleted again.
    """
    gains = {e: rng.randrange(1, p) for e in G.edge_labels}
    H = G
    for k in range(loops):
        v = rng.choice(G.vertices)
        H = H.add_edge(f"x{k:02d}", v, v)
    A = incidence_matrix(H, p, gains)
    framed = np.hstack([np.eye(len(H.vertices), dtype=np.int64), A.data])
    cols = [f"@{v}" for v in H.vertices] + list(A.cols)
    full = PrimeFieldMatrix(p, framed, cols, H.vertices)
    return full.select_columns(A.cols), H


def _strong_framework(A: PrimeFieldMatrix, G: MultiGraph) -> MultiGraph | None:
    M = LinearMatroid(A)
    if len(M) < 4 or not is_3_connected(M):
        return None
    if not is_framework(G, M):
        return None
    if is_strong(G, M):
        return G
    return strengthen(FrameworkPair(G, M)).graph


def representable_instances(count: int = 24, seed: int = 0) -> list[Instance]:
    """Seeded LIFT and FRAME instances over GF(2) and GF(3), alternating.

    Candidates are kept only if ``M(A)`` is 3-connected and the building
    graph is a framework; the framework is strengthened when needed.
    LIFT candidates must also have ``rank A = |V|`` and a strong graph.
    """
    rng = random.Random(seed)
    names = list(NAMED_GRAPHS)
    out: list[Instance] = []
    attempts = 0
    while len(out) < count and attempts < 50 * count:
        attempts += 1
        want = "LIFT" if len(out) % 2 == 0 else "FRAME"
        gname = names[(attempts // 2) % len(names)]
        G = NAMED_GRAPHS[gname]()
        p = (2, 3)[attempts % 2]
        if want == "LIFT":
            A = lift_instance(G, p, rng)
            if matrix_rank(A) != len(G.vertices):
                continue
            M = LinearMatroid(A)
            if not (is_3_connected(M) and is_framework(G, M) and is_strong(G, M)):
                continue
            out.append(Instance(f"lift-{gname}-gf{p}-{attempts}", A, G, "LIFT"))
        else:
            A, H = frame_instance(G, p, rng, loops=rng.randrange(0, 3))
            if matrix_rank(A) != len(H.vertices):
                continue
            S = _strong_framework(A, H)
            if S is None:
                continue
            out.append(Instance(f"frame-{gname}-gf{p}-{attempts}", A, S, "FRAME"))
    return out
