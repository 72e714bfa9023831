"""Biased graphs and the frame and lift matroids they define.

A biased graph is a graph with a distinguished set of *balanced* cycles
in which no theta has exactly two balanced cycles.  It carries two
matroids on its edges:

* ``FM(G, B)``: no balanced cycle, and every component of ``G[I]`` has
  at most as many edges as vertices;
* ``LM(G, B)``: no balanced cycle, and ``G[I]`` has at most one cycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

import numpy as np

from .framework import (
    FrameworkPair,
    PreconditionError,
    Verdict,
    _circuit_status,
    _fresh_label,
    balanced_cycles,
    is_framework,
)
from .graph import MultiGraph, _mask_stats, enumerate_cycles, enumerate_thetas, is_cycle_edge_set
from .matroid import (
    GraphicMatroid,
    Matroid,
    MatroidError,
    circuit_masks,
    closure,
    is_3_connected,
    minor,
)
from .oracle import matroids_equal


class ThetaPropertyError(MatroidError):
    pass


class NotACycleError(ValueError):
    pass


def _check_cycles(G: MultiGraph, B) -> frozenset:
    out = frozenset(frozenset(C) for C in B)
    for C in out:
        if not is_cycle_edge_set(G, C):
            raise NotACycleError(f"{sorted(C)} is not a cycle of the graph")
    return out


def has_theta_property(G: MultiGraph, B: Iterable[Iterable[str]]) -> bool:
    """No theta of ``G`` has exactly two of its three cycles in ``B``."""
    B = _check_cycles(G, B)
    if len(B) < 2:
        return True
    for T in enumerate_thetas(G):
        if sum(c in B for c in T.cycles()) == 2:
            return False
    return True


@dataclass(frozen=True)
class BiasedGraph:
    graph: MultiGraph
    balanced: frozenset

    def __post_init__(self):
        object.__setattr__(self, "balanced", _check_cycles(self.graph, self.balanced))

    def require_theta_property(self) -> None:
        if not has_theta_property(self.graph, self.balanced):
            raise ThetaPropertyError("balanced cycles violate the theta-property")

    @classmethod
    def all_balanced(cls, G: MultiGraph) -> "BiasedGraph":
        return cls(G, frozenset(C.edges for C in enumerate_cycles(G)))


class _BiasedMatroid(Matroid):
    def __init__(self, bg: BiasedGraph):
        bg.require_theta_property()
        super().__init__(bg.graph.edge_labels)
        self.biased = bg
        G = bg.graph
        vidx = {v: i for i, v in enumerate(G.vertices)}
        self._ends = [(vidx[G.edges[e][0]], vidx[G.edges[e][1]]) for e in self.groundset]
        self._balanced = [self.mask(C) for C in sorted(bg.balanced, key=sorted)]

    def _has_balanced(self, mask: int) -> bool:
        return any(mask & b == b for b in self._balanced)

    def _balanced_table(self) -> np.ndarray:
        n = len(self.groundset)
        idx = np.arange(1 << n)
        out = np.zeros(1 << n, dtype=bool)
        for b in self._balanced:
            out |= (idx & b) == b
        return out


class FrameMatroid(_BiasedMatroid):
    """``FM(G, B)``."""

    def _indep(self, mask: int) -> bool:
        if self._has_balanced(mask):
            return False
        return _mask_stats(self._ends, mask)[2]

    def _compute_table(self) -> np.ndarray:
        if len(self.groundset) > 20:
            return super()._compute_table()
        return self.biased.graph.tables().frame_ok & ~self._balanced_table()


class LiftMatroid(_BiasedMatroid):
    """``LM(G, B)``."""

    def _indep(self, mask: int) -> bool:
        if self._has_balanced(mask):
            return False
        nv, nc, _ = _mask_stats(self._ends, mask)
        return bin(mask).count("1") - nv + nc <= 1

    def _compute_table(self) -> np.ndarray:
        if len(self.groundset) > 20:
            return super()._compute_table()
        return (self.biased.graph.tables().nullity <= 1) & ~self._balanced_table()


def fm_matroid(bg: BiasedGraph) -> FrameMatroid:
    return FrameMatroid(bg)


def lm_matroid(bg: BiasedGraph) -> LiftMatroid:
    return LiftMatroid(bg)


class SupportGraphError(MatroidError):
    pass


def support_graph(M: Matroid, basis: Iterable[str]) -> MultiGraph:
    """Graph on a frame basis ``V``: each ``e`` joins the members of ``V`` in its fundamental circuit.

    A basis element is a loop-edge at its own vertex; an element spanned by
    a single basis element is a loop-edge there.  Matroid loops and
    elements needing more than two basis elements are rejected.
    """
    V = frozenset(basis)
    vmask = M.mask(V)
    r = M.rank_of_matroid
    if M._rank_mask(vmask) != r or len(V) != r:
        raise SupportGraphError("not a basis")
    edges = {}
    for e in M.groundset:
        if e in V:
            edges[e] = (e, e)
            continue
        bit = M.mask([e])
        if not M._indep(bit):
            raise SupportGraphError(f"{e!r} is a loop of the matroid")
        spans = sorted(b for b in V if M._rank_mask((vmask & ~M.mask([b])) | bit) == r)
        if len(spans) == 1:
            edges[e] = (spans[0], spans[0])
        elif len(spans) == 2:
            edges[e] = (spans[0], spans[1])
        else:
            raise SupportGraphError(f"{e!r} needs {len(spans)} basis elements")
    return MultiGraph(V, edges)


@dataclass(frozen=True)
class FramedWitness:
    matroid: Matroid  # M+ = FM(G+, B)
    basis: frozenset  # the added loop-edges
    vertex_of: dict  # basis element -> vertex of G
    support: MultiGraph | None  # None when M+ has loops


def _spanned_by_two(M: Matroid, e: str, V: frozenset) -> bool:
    bit = M.mask([e])
    if not M._indep(bit):
        return True
    for k in (1, 2):
        for S in combinations(sorted(V), k):
            s = M.mask(S)
            if M._rank_mask(s | bit) == M._rank_mask(s):
                return True
    return False


def framed_extension(bg: BiasedGraph) -> FramedWitness:
    """Add an unbalanced loop-edge at every vertex; those loops form a frame basis."""
    G = bg.graph
    taken = set(G.edge_labels)
    loop_of = {}
    for v in G.vertices:
        lab = _fresh_label(taken, f"@{v}")
        taken.add(lab)
        loop_of[v] = lab
    plus = G
    for v, lab in loop_of.items():
        plus = plus.add_edge(lab, v, v)
    M = fm_matroid(BiasedGraph(plus, bg.balanced))
    V = frozenset(loop_of.values())
    if M._rank_mask(M.mask(V)) != len(V) or M.rank_of_matroid != len(V):
        raise MatroidError("added loop-edges do not form a basis")
    for e in G.edge_labels:
        u, w = G.edges[e]
        if u != w:
            expected = {e, loop_of[u], loop_of[w]}
        elif frozenset([e]) in bg.balanced:
            expected = {e}
        else:
            expected = {e, loop_of[u]}
        if _circuit_status(M, M.mask(expected)) != "circuit":
            raise MatroidError(f"{sorted(expected)} is not a circuit of the framed extension")
    for e in M.groundset:
        if not _spanned_by_two(M, e, V):
            raise MatroidError(f"{e!r} is not spanned by two basis elements")
    try:
        support = support_graph(M, V)
    except SupportGraphError:
        support = None
    return FramedWitness(M, V, {lab: v for v, lab in loop_of.items()}, support)


def lift_extension(bg: BiasedGraph) -> tuple[LiftMatroid, str]:
    """``LM(G+, B)`` where ``G+`` adds one unbalanced loop-edge ``e``.

    Deleting ``e`` gives ``LM(G, B)``; contracting it gives ``M(G)``.
    """
    G = bg.graph
    if not G.vertices:
        raise PreconditionError("lift_extension needs a graph with a vertex")
    e = _fresh_label(G.edge_labels, "@lift")
    plus = G.add_edge(e, G.vertices[0], G.vertices[0])
    return lm_matroid(BiasedGraph(plus, bg.balanced)), e


def _circuit_connected(P: FrameworkPair, cap: int | None) -> bool:
    G, M = P.graph, P.matroid
    t = G.tables()
    for c in circuit_masks(M, cap):
        if t.ncomp[t.mask(M.labels(c))] > 1:
            return False
    return True


def is_fm_of(P: FrameworkPair, cap: int | None = None) -> bool:
    """Does every circuit of ``M`` induce a connected subgraph of ``G``?"""
    return _circuit_connected(P, cap)


def disjoint_cycle_pairs(G: MultiGraph):
    cycles = enumerate_cycles(G)
    for c1, c2 in combinations(cycles, 2):
        if not c1.vertices & c2.vertices:
            yield c1, c2


def is_lm_of(P: FrameworkPair, cap: int | None = None) -> bool:
    """Is the union of every two vertex-disjoint cycles dependent in ``M``?"""
    M = P.matroid
    for c1, c2 in disjoint_cycle_pairs(P.graph):
        if M.is_independent(c1.edges | c2.edges):
            return False
    return True


@dataclass(frozen=True)
class LoopEdgeCase:
    tag: str  # "LIFT" or "FRAME"
    is_fm: bool
    is_lm: bool


def decide_loop_edge_case(P: FrameworkPair, e: str, cap: int | None = None) -> LoopEdgeCase:
    """LIFT when the loop-edge ``e`` at ``v`` lies in ``cl(E(G - v))``, else FRAME."""
    G, M = P.graph, P.matroid
    if not G.is_loop(e):
        raise PreconditionError(f"{e!r} is not a loop-edge")
    if not M.is_independent([e]):
        raise PreconditionError(f"{e!r} is a balanced loop (a loop of M)")
    if len(M) < 4 or not is_3_connected(M, cap):
        raise PreconditionError("needs a 3-connected matroid with at least 4 elements")
    verdict: Verdict = is_framework(G, M, cap)
    if not verdict:
        raise PreconditionError(f"not a framework: {verdict}")
    v = G.ends(e)[0]
    rest = frozenset(G.edge_labels) - frozenset(G.incident(v))
    tag = "LIFT" if e in closure(M, rest) else "FRAME"
    return LoopEdgeCase(tag, is_fm_of(P, cap), is_lm_of(P, cap))


def balanced_set(P: FrameworkPair) -> frozenset:
    """Edge sets of the balanced cycles of a framework pair."""
    return frozenset(C.edges for C in balanced_cycles(P))


def graphic_contraction_matches(M_plus: Matroid, e: str, G: MultiGraph) -> bool:
    return matroids_equal(minor(M_plus, [], [e]), GraphicMatroid(G))
