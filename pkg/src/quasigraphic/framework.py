"""Frameworks: graphs that certify a matroid is quasi-graphic.

A graph ``G`` is a *weak framework* for ``M`` when

    (1) ``E(G) = E(M)``;
    (2) ``r(E(H)) <= |V(H)|`` for every component ``H`` of ``G``;
    (3) ``cl(E(G - v)) <= E(G - v) | loops(v)`` for every vertex ``v``;

and a *framework* when also

    (4) ``G[C]`` has at most two components for every circuit ``C``.

Checks return a :class:`Verdict` that names the first failed condition
together with a witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import count
from typing import Iterable

from .graph import (
    MultiGraph,
    canonical_vertex_form,
    components,
    contract_edge,
    contract_loop,
    edge_subgraph,
    enumerate_cycles,
    enumerate_thetas,
    is_connected,
    is_cycle_edge_set,
)
from .matroid import (
    Matroid,
    MatroidError,
    add_coloop,
    check_cap,
    circuit_masks,
    cocircuit_masks,
    is_3_connected,
    is_connected_matroid,
    minor,
)
from .oracle import matroids_equal


class FrameworkError(MatroidError):
    """A pair that was supposed to be a framework is not one."""


class PreconditionError(MatroidError):
    """Inputs do not meet the hypotheses an operation relies on."""


class WeakFrameworkInconsistency(FrameworkError):
    """Observed behaviour that no weak framework can have."""


class NotACircuitError(MatroidError):
    pass


@dataclass(frozen=True)
class Verdict:
    ok: bool
    condition: str | None = None
    witness: object = None

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "OK"
        w = self.witness
        if isinstance(w, (set, frozenset, list, tuple)):
            w = ",".join(sorted(map(str, w)))
        return f"FAIL {self.condition} {w}"


OK = Verdict(True)


@dataclass(frozen=True)
class FrameworkPair:
    graph: MultiGraph
    matroid: Matroid

    def __post_init__(self):
        if set(self.graph.edge_labels) != set(self.matroid.groundset):
            raise FrameworkError("condition (1) fails: graph edges and matroid elements differ")


@dataclass(frozen=True)
class CircuitClass:
    tag: str  # "balanced-cycle", "connected-theta-like" or "disjoint-unbalanced-cycles"
    witness: MultiGraph


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _incidence_masks(G: MultiGraph, M: Matroid) -> dict[str, tuple[int, int]]:
    """Per vertex: (all incident edges, loop-edges) as matroid masks."""
    out = {}
    for v in G.vertices:
        loops = G.loops_at(v)
        out[v] = (M.mask(G.incident(v)), M.mask(loops))
    return out


def is_weak_framework(G: MultiGraph, M: Matroid) -> Verdict:
    if set(G.edge_labels) != set(M.groundset):
        return Verdict(False, "(1)", set(G.edge_labels) ^ set(M.groundset))
    for H in components(G):
        if M._rank_mask(M.mask(H.edge_labels)) > len(H.vertices):
            return Verdict(False, "(2)", H.vertices)
    return _condition3(G, M, "(3)")


def _condition3(G: MultiGraph, M: Matroid, name: str) -> Verdict:
    full = M.full_mask
    for v, (inc, loops) in _incidence_masks(G, M).items():
        rest = full & ~inc
        leak = M._closure_mask(rest) & ~rest & ~loops
        if leak:
            return Verdict(False, name, v)
    return OK


def is_framework(G: MultiGraph, M: Matroid, cap: int | None = None) -> Verdict:
    weak = is_weak_framework(G, M)
    if not weak:
        return weak
    for c in circuit_masks(M, cap):
        if _component_count(G, M.labels(c)) > 2:
            return Verdict(False, "(4)", M.labels(c))
    return OK


def _component_count(G: MultiGraph, X: Iterable[str]) -> int:
    X = list(X)
    if len(G.edge_labels) <= 20:
        t = G.tables()
        return int(t.ncomp[t.mask(X)])
    return len(components(edge_subgraph(G, X)))


def certify_quasi_graphic(G: MultiGraph, M: Matroid, cap: int | None = None) -> Verdict:
    """Check (i) ``E(G)=E(M)``, (ii) connected, (iii) ``r(M) <= |V(G)|``, (iv) = (3).

    For a 3-connected matroid a passing graph certifies that ``M`` is
    quasi-graphic without listing circuits.
    """
    if not is_3_connected(M, cap):
        raise PreconditionError("certification needs a 3-connected matroid")
    if set(G.edge_labels) != set(M.groundset):
        return Verdict(False, "(i)", set(G.edge_labels) ^ set(M.groundset))
    if not is_connected(G):
        return Verdict(False, "(ii)", [H.vertices[0] for H in components(G)])
    if M.rank_of_matroid > len(G.vertices):
        return Verdict(False, "(iii)", M.rank_of_matroid)
    return _condition3(G, M, "(iv)")


def _circuit_status(M: Matroid, mask: int) -> str:
    if M._rank_mask(mask) == _popcount(mask):
        return "independent"
    x = mask
    while x:
        bit = x & -x
        if M._rank_mask(mask ^ bit) != _popcount(mask) - 1:
            return "dependent"
        x ^= bit
    return "circuit"


def balanced_cycles(P: FrameworkPair):
    """Cycles of ``G`` whose edge set is a circuit of ``M``.

    In a weak framework every cycle is independent or a circuit, and no
    theta has exactly two balanced cycles; either failure is raised as a
    :class:`WeakFrameworkInconsistency`.
    """
    G, M = P.graph, P.matroid
    cycles = enumerate_cycles(G)
    balanced = []
    for C in cycles:
        status = _circuit_status(M, M.mask(C.edges))
        if status == "circuit":
            balanced.append(C)
        elif status == "dependent":
            raise WeakFrameworkInconsistency(f"cycle {sorted(C.edges)} is dependent but not a circuit")
    bset = {C.edges for C in balanced}
    for T in enumerate_thetas(G, cycles):
        if sum(c in bset for c in T.cycles()) == 2:
            raise WeakFrameworkInconsistency(f"theta {sorted(T.edges)} has exactly two balanced cycles")
    return balanced


def classify_circuit(P: FrameworkPair, C: Iterable[str]) -> CircuitClass:
    """Which of the three circuit shapes ``G[C]`` takes."""
    G, M = P.graph, P.matroid
    C = frozenset(C)
    if _circuit_status(M, M.mask(C)) != "circuit":
        raise NotACircuitError(f"{sorted(C)} is not a circuit")
    H = edge_subgraph(G, C)
    if is_cycle_edge_set(G, C):
        return CircuitClass("balanced-cycle", H)
    parts = components(H)
    if len(parts) == 1:
        if min(H.degree(v) for v in H.vertices) < 2:
            raise WeakFrameworkInconsistency(f"circuit {sorted(C)} has a vertex of degree < 2")
        if len(C) != len(H.vertices) + 1:
            raise WeakFrameworkInconsistency(f"circuit {sorted(C)} has |C| != |V(C)| + 1")
        for cyc in enumerate_cycles(H):
            if _circuit_status(M, M.mask(cyc.edges)) == "circuit":
                raise WeakFrameworkInconsistency(f"circuit {sorted(C)} contains a balanced cycle")
        return CircuitClass("connected-theta-like", H)
    for part in parts:
        if not is_cycle_edge_set(G, part.edge_labels):
            raise WeakFrameworkInconsistency(f"circuit {sorted(C)} has a component that is not a cycle")
        if _circuit_status(M, M.mask(part.edge_labels)) == "circuit":
            raise WeakFrameworkInconsistency(f"circuit {sorted(C)} has a balanced cycle component")
    return CircuitClass("disjoint-unbalanced-cycles", H)


def is_cycle_matroid(G: MultiGraph, M: Matroid) -> bool:
    """Weak framework with ``r(M) <= |V(G)| - c``; then ``M = M(G)``."""
    if not is_weak_framework(G, M):
        return False
    return M.rank_of_matroid <= len(G.vertices) - len(components(G))


def _fresh_label(taken: Iterable[str], stem: str) -> str:
    taken = set(taken)
    if stem not in taken:
        return stem
    for i in count(1):
        if f"{stem}{i}" not in taken:
            return f"{stem}{i}"


def framework_minor(P: FrameworkPair, op: str, e: str, verify: bool = True, cap: int | None = None) -> FrameworkPair:
    """Delete or contract ``e`` on both sides of a framework pair.

    Contraction of a non-loop edge uses ``G/e``; contraction of a
    loop-edge uses ``G o e`` and is refused when ``e`` is a loop of ``M``.
    """
    G, M = P.graph, P.matroid
    if e not in M._index:
        raise MatroidError(f"unknown element {e!r}")
    if op == "delete":
        H, N = G.delete_edges([e]), minor(M, [e], [])
    elif op == "contract":
        if G.is_loop(e):
            if not M.is_independent([e]):
                raise PreconditionError(f"{e!r} is a loop of M; G o e is not defined for it")
            H = contract_loop(G, e)
        else:
            H = contract_edge(G, e)
        N = minor(M, [], [e])
    else:
        raise ValueError(f"unknown minor operation {op!r}")
    if verify:
        verdict = is_framework(H, N, cap)
        if not verdict:
            raise FrameworkError(f"{op} {e}: result is not a framework: {verdict}")
    return FrameworkPair(H, N)


def connectify(P: FrameworkPair, cap: int | None = None) -> FrameworkPair:
    """A connected framework from one with a single extra loop-component.

    Adds a coloop ``f`` joining the loop-component's vertex to the other
    component, then contracts ``f`` in both the graph and the matroid.
    """
    G, M = P.graph, P.matroid
    parts = components(G)
    if len(parts) <= 1:
        return P
    loop_parts = [H for H in parts if len(H.vertices) == 1 and len(H.edge_labels) == 1]
    if len(parts) != 2 or not loop_parts:
        raise PreconditionError("connectify needs exactly two components, one of them a loop-component")
    if not is_connected_matroid(M, cap):
        raise PreconditionError("connectify needs a connected matroid")
    lc = loop_parts[-1]
    other = parts[1] if parts[0] is lc else parts[0]
    v = lc.vertices[0]
    w = other.vertices[0]
    f = _fresh_label(M.groundset, "@f")
    plus = G.add_edge(f, v, w)
    M_plus = add_coloop(M, f)
    H = contract_edge(plus, f)
    N = minor(M_plus, [], [f])
    if len(M) <= 12 and not matroids_equal(N, M):
        raise FrameworkError("contracting the added coloop did not give back M")
    verdict = is_framework(H, M, cap)
    if not verdict or not is_connected(H):
        raise FrameworkError(f"connectify produced a non-framework: {verdict}")
    return FrameworkPair(H, M)


def is_strong(G: MultiGraph, M: Matroid) -> bool:
    """Connected, and ``r(E(G - v)) = r(M) - 1`` for every vertex."""
    if not is_connected(G):
        return False
    r = M.rank_of_matroid
    for v in G.vertices:
        rest = M.full_mask & ~M.mask(G.incident(v))
        if M._rank_mask(rest) != r - 1:
            return False
    return True


def strengthen(P: FrameworkPair, cap: int | None = None) -> FrameworkPair:
    """Turn a framework for a 3-connected matroid into a strong one.

    While some vertex ``v`` has ``r(E(G - v)) < r(M) - 1``, pick a cocircuit
    avoiding ``E(G - v)`` (one with a loop-edge if possible, then the
    smallest), and move every non-loop edge ``vw`` outside it to a
    loop-edge at ``w``.  Each step adds loop-edges.
    """
    G, M = P.graph, P.matroid
    if len(M) < 4 or not is_3_connected(M, cap):
        raise PreconditionError("strengthen needs a 3-connected matroid with at least 4 elements")
    verdict = is_framework(G, M, cap)
    if not verdict:
        raise FrameworkError(f"not a framework: {verdict}")
    if not is_connected(G):
        G = connectify(P, cap).graph
    r = M.rank_of_matroid
    cocircs = cocircuit_masks(M, cap)
    limit = len(G.edge_labels) * len(G.vertices)
    for _ in range(limit + 1):
        weak_vertices = [
            v for v in G.vertices if M._rank_mask(M.full_mask & ~M.mask(G.incident(v))) < r - 1
        ]
        if not weak_vertices:
            verdict = is_framework(G, M, cap)
            if not verdict:
                raise FrameworkError(f"rerouting lost the framework property: {verdict}")
            return FrameworkPair(G, M)
        v = weak_vertices[0]
        rest = M.full_mask & ~M.mask(G.incident(v))
        loops = M.mask(G.loop_edges())
        options = [c for c in cocircs if not c & rest]
        if not options:
            raise FrameworkError(f"no cocircuit avoids E(G-{v})")
        chosen = min(options, key=lambda c: (not c & loops, _popcount(c), sorted(M.labels(c))))
        moved = sorted(G.nonloops_at(v) - M.labels(chosen))
        if not moved:
            raise FrameworkError(f"rerouting at {v} would move no edge")
        edges = dict(G.edges)
        for f in moved:
            a, b = edges[f]
            w = b if a == v else a
            edges[f] = (w, w)
        G = MultiGraph(G.vertices, edges)
    raise FrameworkError("strengthen did not terminate within |E||V| steps")


# -- search -----------------------------------------------------------------

MAX_SEARCH_VERTICES = 6


def find_frameworks(
    M: Matroid,
    max_vertices: int,
    *,
    connected_weak: bool = False,
    limit: int | None = None,
    cap: int | None = None,
) -> list[MultiGraph]:
    """Every graph on at most ``max_vertices`` vertices that is a framework for ``M``.

    Graphs are listed once per class under renaming vertices, without
    isolated vertices, vertex labels ``v0, v1, ...``.  With
    ``connected_weak`` the target is instead a connected weak framework
    with ``r(M) <= |V(G)|``, i.e. a certificate in the sense of
    :func:`certify_quasi_graphic`.  An empty answer is only a statement
    about graphs of this size.
    """
    if max_vertices > MAX_SEARCH_VERTICES:
        raise ValueError(f"max_vertices is limited to {MAX_SEARCH_VERTICES}")
    n = len(M.groundset)
    check_cap(n, cap)
    rank = M.rank_table(cap).tolist()
    full_rank = rank[M.full_mask]
    if n == 0:
        return [MultiGraph()]
    order = list(range(n))
    position = {el: k for k, el in enumerate(order)}
    # circuits, filed under the element that completes them in the search order
    closing: list[list[int]] = [[] for _ in range(n)]
    if not connected_weak:
        for c in circuit_masks(M, cap):
            last = max(position[i] for i in range(n) if c >> i & 1)
            closing[last].append(c)

    results: list[MultiGraph] = []
    ends: list[tuple[int, int]] = [(-1, -1)] * n

    def closed_out(S: int, f: int) -> bool:
        return rank[S | f] == rank[S]

    def comp_ok(a: int, inc: list[int]) -> bool:
        verts = {a}
        emask = inc[a]
        grew = True
        while grew:
            grew = False
            for u in range(len(inc)):
                if u not in verts and inc[u] & emask:
                    verts.add(u)
                    emask |= inc[u]
                    grew = True
        return rank[emask] <= len(verts)

    def circuit_spread_ok(c: int) -> bool:
        parent: dict[int, int] = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                x = parent[x]
            return x

        i = 0
        m = c
        while m:
            if m & 1:
                a, b = ends[i]
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
            m >>= 1
            i += 1
        return len({find(x) for x in parent}) <= 2

    def emit(nverts: int) -> None:
        if connected_weak and full_rank > nverts:
            return
        edges = {M.groundset[i]: (f"v{ends[i][0]}", f"v{ends[i][1]}") for i in range(n)}
        G = canonical_vertex_form(MultiGraph.from_edges(edges))
        if connected_weak:
            if not is_connected(G):
                return
            verdict = is_weak_framework(G, M)
        else:
            verdict = is_framework(G, M, cap)
        if not verdict:
            raise AssertionError(f"search produced a non-framework {G}: {verdict}")
        results.append(G)

    def rec(k: int, nverts: int, assigned: int, inc: list[int], nonloop: list[int]) -> bool:
        if k == n:
            emit(nverts)
            return limit is not None and len(results) >= limit
        el = order[k]
        bit = 1 << el
        A = assigned | bit
        for a in range(min(nverts + 1, max_vertices)):
            top = nverts + 1 if a == nverts else nverts
            lo = nverts if a == nverts else a
            for b in range(lo, min(top, max_vertices - 1) + 1):
                nv = max(nverts, b + 1)
                inc2 = inc + [0] * (nv - len(inc))
                nl2 = nonloop + [0] * (nv - len(nonloop))
                inc2[a] |= bit
                inc2[b] |= bit
                if a != b:
                    nl2[a] |= bit
                    nl2[b] |= bit
                ok = True
                for v in range(nv):
                    S = A & ~inc2[v]
                    if inc2[v] & bit:
                        if a != b and closed_out(S, bit):
                            ok = False
                            break
                    else:
                        f_all = nl2[v]
                        while f_all:
                            f = f_all & -f_all
                            if closed_out(S, f):
                                ok = False
                                break
                            f_all ^= f
                        if not ok:
                            break
                if not ok or not comp_ok(a, inc2):
                    continue
                ends[el] = (a, b)
                if any(not circuit_spread_ok(c) for c in closing[k]):
                    continue
                if rec(k + 1, nv, A, inc2, nl2):
                    return True
        return False

    rec(0, 0, 0, [], [])
    results.sort(key=lambda g: tuple(g.edges[e] for e in g.edge_labels))
    return results


def find_certificates(M: Matroid, max_vertices: int, *, limit: int | None = None, cap: int | None = None) -> list[MultiGraph]:
    """Graphs meeting conditions (i)-(iv) of :func:`certify_quasi_graphic`."""
    return find_frameworks(M, max_vertices, connected_weak=True, limit=limit, cap=cap)


def loop_component_graph(M: Matroid) -> MultiGraph:
    """Every element as its own loop-component: a weak framework for any ``M``."""
    return MultiGraph([f"v{i}" for i in range(len(M))], {e: (f"v{i}", f"v{i}") for i, e in enumerate(M.groundset)})
