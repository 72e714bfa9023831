"""The structural lemmas about (weak) frameworks, as checks over a corpus of pairs.

Every check takes a :class:`PairData` and returns ``None`` when the pair is
out of scope, ``""`` when it passes, or a short witness string describing
the first violation.  Most checks read straight off the subset tables of
the graph and the matroid, since both index subsets the same way (bit
``i`` is the ``i``-th label in sorted order).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Iterator

import numpy as np

from .corpus import CorpusSpec, framework_pairs
from .framework import (
    FrameworkError,
    FrameworkPair,
    PreconditionError,
    connectify,
    framework_minor,
    is_framework,
    is_weak_framework,
    loop_component_graph,
    strengthen,
    is_strong,
)
from .graph import (
    GraphError,
    MultiGraph,
    components,
    enumerate_cycles,
    enumerate_thetas,
    is_k_connected,
)
from .matroid import Matroid, circuit_masks, is_3_connected, popcount_table


class GraphData:
    """Per-graph masks shared by every matroid paired with the graph."""

    def __init__(self, G: MultiGraph):
        self.graph = G
        self.t = G.tables()
        mask = self.t.mask
        self.inc = {v: mask(G.incident(v)) for v in G.vertices}
        self.loops = {v: mask(G.loops_at(v)) for v in G.vertices}
        self.nonloops = {v: mask(G.nonloops_at(v)) for v in G.vertices}
        self.comps = [(mask(H.edge_labels), H) for H in components(G)]
        cycles = enumerate_cycles(G)
        self.cycles = np.array([mask(C.edges) for C in cycles], dtype=np.int64)
        where = {C.edges: k for k, C in enumerate(cycles)}
        self.thetas = [tuple(where[c] for c in T.cycles()) for T in enumerate_thetas(G, cycles)]
        self.full = (1 << len(G.edge_labels)) - 1
        self.idx = np.arange(1 << len(G.edge_labels), dtype=np.int64)

    @property
    def connected(self) -> bool:
        return len(self.comps) <= 1

    @cached_property
    def two_connected(self) -> bool:
        return is_k_connected(self.graph, 2)

    def degrees(self, masks: np.ndarray) -> np.ndarray:
        """Degree of every vertex in ``G[X]`` for each mask, as rows."""
        pc = popcount_table(len(self.graph.edge_labels))
        cols = [pc[masks & self.nonloops[v]] + 2 * pc[masks & self.loops[v]] for v in self.graph.vertices]
        return np.stack(cols, axis=1) if cols else np.zeros((len(masks), 0), dtype=np.int64)


@dataclass
class PairData:
    name: str
    graph: MultiGraph
    matroid: Matroid
    g: GraphData

    def __post_init__(self):
        M = self.matroid
        if M.groundset != self.graph.edge_labels:
            raise ValueError("graph and matroid must share their ground set")
        self.indep = M.independence_table()
        self.rank = M.rank_table()
        self.r = int(self.rank[-1])

    @cached_property
    def circuits(self) -> np.ndarray:
        return np.array(circuit_masks(self.matroid), dtype=np.int64)

    @cached_property
    def circuit_set(self) -> frozenset:
        return frozenset(int(c) for c in self.circuits)

    @cached_property
    def balanced(self) -> np.ndarray:
        """Flags over ``g.cycles``: is the cycle a circuit of M?"""
        return np.array([int(c) in self.circuit_set for c in self.g.cycles], dtype=bool)

    @cached_property
    def three_connected(self) -> bool:
        return len(self.matroid) >= 4 and is_3_connected(self.matroid)

    @cached_property
    def weak(self) -> bool:
        return bool(is_weak_framework(self.graph, self.matroid))

    @cached_property
    def framework(self) -> bool:
        return self.weak and bool(is_framework(self.graph, self.matroid))

    def names(self, mask: int) -> str:
        return "{" + ",".join(sorted(self.matroid.labels(int(mask)))) + "}"


# -- the checks -------------------------------------------------------------


def _component(p: PairData):
    if not p.weak:
        return None
    for h, H in p.g.comps:
        if p.rank[h] > len(H.vertices):
            return f"component {p.names(h)} breaks (2)"
        for v in H.vertices:
            rest = h & ~p.g.inc[v]
            f_all = p.g.nonloops[v]
            while f_all:
                f = f_all & -f_all
                if p.rank[rest | f] == p.rank[rest]:
                    return f"component {p.names(h)} breaks (3) at {v}"
                f_all ^= f
    return ""


def _deletevertex(p: PairData):
    if not p.weak:
        return None
    G = p.graph
    for v in G.vertices:
        if not p.g.nonloops[v]:
            continue
        drop = p.r - int(p.rank[p.g.full & ~p.g.inc[v]])
        if drop < 1:
            return f"deleting {v} keeps the rank"
        if G.degree(v) == 1 and drop != 1:
            return f"deleting degree-one {v} drops the rank by {drop}"
    return ""


def _subgraph(p: PairData):
    if not (p.weak and p.g.connected):
        return None
    bound = len(p.graph.vertices) - p.r
    if bound > 1:
        return f"a single vertex has surplus 1 < {bound}"
    slack = p.g.t.nverts[1:].astype(np.int64) - p.rank[1:]
    bad = np.flatnonzero(slack < bound)
    if len(bad):
        return f"{p.names(bad[0] + 1)} has |V|-r below {bound}"
    return ""


def _restriction(p: PairData):
    # G[X] is a weak framework for M|X, for every X
    if not p.weak:
        return None
    t = p.g.t
    bad = np.flatnonzero((t.ncomp == 1) & (p.rank > t.nverts))
    if len(bad):
        return f"G[{p.names(bad[0])}] breaks (2)"
    idx = p.g.idx
    for v in p.graph.vertices:
        inside = idx[(idx & p.g.inc[v]) == 0]
        f_all = p.g.nonloops[v]
        while f_all:
            f = f_all & -f_all
            hit = inside[p.rank[inside | f] == p.rank[inside]]
            if len(hit):
                return f"G[{p.names(int(hit[0]) | f)}] breaks (3) at {v}"
            f_all ^= f
    return ""


def _forest(p: PairData):
    if not p.weak:
        return None
    bad = np.flatnonzero((p.g.t.nullity == 0) & ~p.indep)
    return f"forest {p.names(bad[0])} is dependent" if len(bad) else ""


def _dependentset(p: PairData):
    if not p.weak:
        return None
    t = p.g.t
    bad = np.flatnonzero((t.size > t.nverts) & p.indep)
    return f"{p.names(bad[0])} has more edges than vertices yet is independent" if len(bad) else ""


def _balanced(p: PairData):
    # every cycle is independent or a circuit; all balanced iff M = M(G)
    if not p.weak:
        return None
    for c, b in zip(p.g.cycles, p.balanced):
        if not b and not p.indep[c]:
            return f"cycle {p.names(c)} is dependent but not a circuit"
    graphic = bool(np.array_equal(p.indep, p.g.t.nullity == 0))
    if graphic != bool(p.balanced.all()):
        return f"M = M(G) is {graphic} but all cycles balanced is {not graphic}"
    return ""


def _theta(p: PairData):
    if not p.weak:
        return None
    for T in p.g.thetas:
        if sum(bool(p.balanced[k]) for k in T) == 2:
            return f"theta {p.names(int(p.g.cycles[T[0]] | p.g.cycles[T[1]]))} has two balanced cycles"
    return ""


def _circuit(p: PairData):
    # each circuit is a balanced cycle, a connected set with |C| = |V(C)| + 1
    # and min degree >= 2, or vertex-disjoint unbalanced cycles
    if not p.weak:
        return None
    C = p.circuits
    if not len(C):
        return ""
    t = p.g.t
    deg = p.g.degrees(C)
    size, nv, nc = t.size[C], t.nverts[C], t.ncomp[C]
    cyc = np.isin(C, p.g.cycles[p.balanced]) if len(p.g.cycles) else np.zeros(len(C), dtype=bool)
    bal = p.g.cycles[p.balanced]
    has_bal = np.zeros(len(C), dtype=bool)
    for b in bal:
        has_bal |= (C & b) == b
    theta_like = (nc == 1) & (size == nv + 1) & (np.where(deg > 0, deg, 99).min(axis=1, initial=99) >= 2) & ~has_bal
    cycles = (nc >= 2) & (size == nv) & np.all((deg == 0) | (deg == 2), axis=1) & ~has_bal
    ok = cyc | theta_like | cycles
    bad = np.flatnonzero(~ok)
    return f"circuit {p.names(C[bad[0]])} fits none of the three shapes" if len(bad) else ""


def _conn(p: PairData):
    if not p.weak:
        return None
    for h, _ in p.g.comps:
        lam = int(p.rank[h] + p.rank[p.g.full & ~h]) - p.r
        if lam > 1:
            return f"component {p.names(h)} has lambda {lam}"
    return ""


def _is_loop_component(H: MultiGraph) -> bool:
    return len(H.vertices) == 1 and len(H.edge_labels) == 1


def _conn2(p: PairData):
    if not (p.weak and p.three_connected):
        return None
    comps = [H for _, H in p.g.comps]
    if len(comps) == 1:
        return ""
    loops = sum(_is_loop_component(H) for H in comps)
    if len(comps) == 2 and loops >= 1:
        return ""
    if loops == len(comps):
        return ""
    return f"{len(comps)} components, {loops} of them loop-components"


def _circuit3(p: PairData):
    if not (p.weak and p.g.connected):
        return None
    return "" if p.framework else "connected weak framework breaks (4)"


def _conn4(p: PairData):
    if not (p.weak and p.g.connected and p.three_connected):
        return None
    return "" if p.g.two_connected else "connected weak framework is not 2-connected"


def _strong(p: PairData):
    if not (p.framework and p.three_connected):
        return None
    try:
        S = strengthen(FrameworkPair(p.graph, p.matroid))
    except (FrameworkError, PreconditionError, GraphError) as exc:
        return f"strengthen failed: {exc}"
    if not is_strong(S.graph, S.matroid):
        return "strengthen returned a framework that is not strong"
    return ""


def _strong_graphic(p: PairData):
    if not p.weak or p.r > len(p.graph.vertices) - len(p.g.comps):
        return None
    return "" if np.array_equal(p.indep, p.g.t.nullity == 0) else "rank is small but M != M(G)"


def _xx(p: PairData):
    comps = [H for _, H in p.g.comps]
    if not (p.framework and len(comps) == 2 and any(_is_loop_component(H) for H in comps)):
        return None
    if not p.three_connected:
        return None
    try:
        Q = connectify(FrameworkPair(p.graph, p.matroid))
    except (FrameworkError, PreconditionError) as exc:
        return f"connectify failed: {exc}"
    return "" if len(components(Q.graph)) == 1 else "connectify left the graph disconnected"


def _minor_steps(p: PairData, ops: Iterable[str], weak_only: bool):
    G = p.graph
    for e in G.edge_labels:
        for op in ops:
            if op == "contract" and G.is_loop(e) and not p.indep[1 << G.edge_labels.index(e)]:
                continue
            if op == "contract" and G.is_loop(e) and len(G.vertices) == 1 and len(G.loops_at(G.ends(e)[0])) > 1:
                continue  # G o e undefined: no vertex left for the other loop-edges
            Q = framework_minor(FrameworkPair(G, p.matroid), op, e, verify=False)
            check = is_weak_framework if weak_only else is_framework
            verdict = check(Q.graph, Q.matroid)
            if not verdict:
                yield f"{op} {e}: {verdict}"


def _contract(p: PairData):
    if not p.weak or not any(not p.graph.is_loop(e) for e in p.graph.edge_labels):
        return None
    H = p.graph
    for e in H.edge_labels:
        if H.is_loop(e):
            continue
        Q = framework_minor(FrameworkPair(H, p.matroid), "contract", e, verify=False)
        verdict = is_weak_framework(Q.graph, Q.matroid)
        if not verdict:
            return f"contract {e}: {verdict}"
    return ""


def _contractloop(p: PairData):
    G = p.graph
    loops = [e for e in G.edge_labels if G.is_loop(e) and p.indep[1 << G.edge_labels.index(e)]]
    loops = [e for e in loops if len(G.vertices) > 1 or len(G.loops_at(G.ends(e)[0])) == 1]
    if not p.weak or not loops:
        return None
    for e in loops:
        Q = framework_minor(FrameworkPair(G, p.matroid), "contract", e, verify=False)
        verdict = is_weak_framework(Q.graph, Q.matroid)
        if not verdict:
            return f"contract loop {e}: {verdict}"
    return ""


def _minors(p: PairData):
    if not p.framework:
        return None
    for msg in _minor_steps(p, ("delete", "contract"), weak_only=False):
        return msg
    return ""


@dataclass(frozen=True)
class Lemma:
    name: str
    check: Callable[[PairData], str | None]
    sampled: bool = False  # run on a seeded sample rather than every pair


LEMMAS: tuple[Lemma, ...] = (
    Lemma("component", _component),
    Lemma("deletevertex", _deletevertex),
    Lemma("subgraph", _subgraph),
    Lemma("restriction", _restriction),
    Lemma("forest", _forest),
    Lemma("dependentset", _dependentset),
    Lemma("balanced", _balanced),
    Lemma("theta", _theta),
    Lemma("circuit", _circuit),
    Lemma("conn", _conn),
    Lemma("conn2", _conn2),
    Lemma("circuit3", _circuit3),
    Lemma("conn4", _conn4),
    Lemma("strong", _strong),
    Lemma("strong-graphic", _strong_graphic),
    Lemma("xx", _xx),
    Lemma("contract", _contract, sampled=True),
    Lemma("contractloop", _contractloop, sampled=True),
    Lemma("minors", _minors, sampled=True),
)

CORE_LEMMAS = tuple(L.name for L in LEMMAS[:14])


@dataclass
class LemmaReport:
    name: str
    checked: int = 0
    violations: int = 0
    witnesses: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        text = f"{self.name:<15} {status}  checked={self.checked} violations={self.violations}"
        if self.witnesses:
            text += f"  first: {self.witnesses[0]}"
        return text


def corpus_pairs(spec: CorpusSpec = CorpusSpec(), *, loop_components: bool = True) -> Iterator[PairData]:
    """Framework pairs from the biased-graph corpus.

    With ``loop_components``, each distinct 3-connected matroid also comes
    paired with the graph made of one loop-component per element.
    """
    graphs: dict[MultiGraph, GraphData] = {}
    seen: set = set()
    for cp in framework_pairs(spec):
        g = graphs.get(cp.graph)
        if g is None:
            g = graphs[cp.graph] = GraphData(cp.graph)
        p = PairData(cp.name, cp.graph, cp.matroid, g)
        yield p
        if loop_components and p.three_connected:
            key = (p.matroid.groundset, p.indep.tobytes())
            if key in seen:
                continue
            seen.add(key)
            L = loop_component_graph(p.matroid)
            lg = graphs.get(L)
            if lg is None:
                lg = graphs[L] = GraphData(L)
            yield PairData(cp.name + "-loops", L, p.matroid, lg)


def run_lemmas(
    pairs: Iterable[PairData],
    names: Iterable[str] | None = None,
    *,
    sample: int = 500,
    seed: int = 0,
    max_witnesses: int = 3,
) -> list[LemmaReport]:
    """Run the selected lemmas; sampled ones see ``sample`` seeded pairs."""
    chosen = [L for L in LEMMAS if names is None or L.name in set(names)]
    if names is not None:
        unknown = set(names) - {L.name for L in LEMMAS}
        if unknown:
            raise KeyError(f"unknown lemma(s): {', '.join(sorted(unknown))}")
    pairs = list(pairs)
    rng = random.Random(seed)
    picked = set(rng.sample(range(len(pairs)), min(sample, len(pairs))))
    reports = {L.name: LemmaReport(L.name) for L in chosen}
    for i, p in enumerate(pairs):
        for L in chosen:
            if L.sampled and i not in picked:
                continue
            out = L.check(p)
            if out is None:
                continue
            rep = reports[L.name]
            rep.checked += 1
            if out:
                rep.violations += 1
                if len(rep.witnesses) < max_witnesses:
                    rep.witnesses.append(f"{p.name}: {out}")
    return [reports[L.name] for L in chosen]
