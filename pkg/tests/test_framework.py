from itertools import product

import pytest

from conftest import K4, THETA, TRIANGLE, TWO_TRIANGLES, graph
from quasigraphic.biased import BiasedGraph, fm_matroid, lm_matroid
from quasigraphic.corpus import CorpusSpec, framework_pairs
from quasigraphic.framework import (
    FrameworkPair,
    NotACircuitError,
    PreconditionError,
    WeakFrameworkInconsistency,
    balanced_cycles,
    certify_quasi_graphic,
    classify_circuit,
    connectify,
    find_certificates,
    find_frameworks,
    framework_minor,
    is_cycle_matroid,
    is_framework,
    is_strong,
    is_weak_framework,
    loop_component_graph,
    strengthen,
)
from quasigraphic.graph import MultiGraph, canonical_vertex_form, is_connected
from quasigraphic.matroid import GraphicMatroid, UniformMatroid, is_3_connected, minor, vamos_matroid
from quasigraphic.oracle import matroids_equal


def loops(labels):
    return MultiGraph.from_edges({e: (f"v{i}", f"v{i}") for i, e in enumerate(labels)})


def test_weak_framework_examples():
    G = graph(K4)
    assert is_weak_framework(G, GraphicMatroid(G))
    V = vamos_matroid()
    assert is_weak_framework(loop_component_graph(V), V)
    verdict = is_weak_framework(graph(TRIANGLE), UniformMatroid(1, "abc"))
    assert not verdict and verdict.condition == "(3)"


def test_framework_examples():
    assert is_framework(loops("ab"), UniformMatroid(1, "ab"))
    verdict = is_framework(loops("abc"), UniformMatroid(2, "abc"))
    assert not verdict and verdict.condition == "(4)"
    assert is_weak_framework(loops("abc"), UniformMatroid(2, "abc"))
    G = graph(K4)
    assert is_framework(G, GraphicMatroid(G))
    assert str(is_framework(G, GraphicMatroid(G))) == "OK"


def test_condition_one_and_two():
    v = is_weak_framework(graph("a:u-v"), UniformMatroid(1, "ab"))
    assert v.condition == "(1)"
    # one vertex cannot carry rank 2
    v = is_weak_framework(graph("a:u-u b:u-u"), UniformMatroid(2, "ab"))
    assert v.condition == "(2)"


def test_certify_examples():
    G = graph(K4)
    assert certify_quasi_graphic(G, GraphicMatroid(G))
    V = vamos_matroid()
    W = find_frameworks(V, 4)[0]
    assert certify_quasi_graphic(W, V)
    U = UniformMatroid(3, "abcdef")
    verdict = certify_quasi_graphic(graph(TWO_TRIANGLES), U)
    assert not verdict and verdict.condition == "(ii)"
    P = graph(TRIANGLE + " p:w-z")  # the pendant edge is a coloop
    with pytest.raises(PreconditionError):
        certify_quasi_graphic(P, GraphicMatroid(P))


def test_balanced_cycle_examples():
    G = graph(K4)
    assert len(balanced_cycles(FrameworkPair(G, GraphicMatroid(G)))) == 7
    T = graph(TRIANGLE)
    assert balanced_cycles(FrameworkPair(T, UniformMatroid(3, "abc"))) == []


def test_two_balanced_cycles_in_a_theta_is_flagged():
    # theta: a | b1 b2 | c1 c2 between u and v
    G = graph("a:u-v b1:u-x b2:x-v c1:u-y c2:y-v")
    # two of the three cycles are triangles of H; the third contains the pair b1 c1
    H = graph("a:1-2 b1:1-3 b2:3-2 c1:1-3 c2:3-2")
    with pytest.raises(WeakFrameworkInconsistency):
        balanced_cycles(FrameworkPair(G, GraphicMatroid(H)))


def test_classify_examples():
    G = graph(K4)
    P = FrameworkPair(G, GraphicMatroid(G))
    assert classify_circuit(P, "abd").tag == "balanced-cycle"
    P = FrameworkPair(loops("ab"), UniformMatroid(1, "ab"))
    assert classify_circuit(P, "ab").tag == "disjoint-unbalanced-cycles"
    T = graph(TRIANGLE + " x:u-u")
    P = FrameworkPair(T, fm_matroid(BiasedGraph(T, frozenset())))
    cls = classify_circuit(P, "abcx")
    assert cls.tag == "connected-theta-like"
    assert len(cls.witness.edge_labels) == len(cls.witness.vertices) + 1
    with pytest.raises(NotACircuitError):
        classify_circuit(P, "ab")


def test_is_cycle_matroid_examples():
    G = graph(K4)
    assert is_cycle_matroid(G, GraphicMatroid(G))
    assert not is_cycle_matroid(graph(TRIANGLE), UniformMatroid(3, "abc"))


def test_minor_examples():
    G = graph(K4)
    P = FrameworkPair(G, GraphicMatroid(G))
    for e in G.edge_labels:
        Q = framework_minor(P, "delete", e)
        assert is_framework(Q.graph, Q.matroid)
    Q = framework_minor(P, "contract", "a")
    assert matroids_equal(Q.matroid, minor(GraphicMatroid(G), [], ["a"]))
    T = graph(TRIANGLE + " x:u-u")
    P = FrameworkPair(T, fm_matroid(BiasedGraph(T, frozenset())))
    Q = framework_minor(P, "contract", "x")
    assert is_framework(Q.graph, Q.matroid)
    # a balanced loop is a loop of M; G o e is refused for it
    L = graph(TRIANGLE + " x:u-u")
    P = FrameworkPair(L, fm_matroid(BiasedGraph(L, frozenset([frozenset("x")]))))
    with pytest.raises(PreconditionError):
        framework_minor(P, "contract", "x")


def test_connectify_lift_of_a_triangle():
    # U_{3,4} on a triangle plus a separate loop-component
    G = graph(TRIANGLE + " e:z-z")
    M = UniformMatroid(3, "abce")
    assert matroids_equal(minor(M, [], ["e"]), GraphicMatroid(graph(TRIANGLE)))
    assert is_framework(G, M)
    Q = connectify(FrameworkPair(G, M))
    assert is_connected(Q.graph)
    assert is_framework(Q.graph, M)


def test_connectify_identity_and_rejects_bad_shape():
    G = graph(K4)
    P = FrameworkPair(G, GraphicMatroid(G))
    assert connectify(P) is P
    M = UniformMatroid(2, "abcd")
    with pytest.raises(PreconditionError):
        connectify(FrameworkPair(loops("abcd"), M))
    assert not is_framework(loops("abcd"), M)


def test_strengthen_examples():
    G = graph(K4)
    P = FrameworkPair(G, GraphicMatroid(G))
    assert is_strong(G, P.matroid)
    assert strengthen(P).graph == G


def _non_strong_fm_instance():
    for cp in framework_pairs(CorpusSpec(max_vertices=4, max_edges=6)):
        if cp.kind != "FM" or len(cp.matroid) < 4:
            continue
        if not is_connected(cp.graph) or is_strong(cp.graph, cp.matroid):
            continue
        if is_3_connected(cp.matroid):
            return cp
    return None


def test_strengthen_adds_loop_edges_on_a_non_strong_fm_instance():
    cp = _non_strong_fm_instance()
    assert cp is not None
    S = strengthen(FrameworkPair(cp.graph, cp.matroid))
    assert is_strong(S.graph, S.matroid)
    assert is_framework(S.graph, S.matroid)
    assert len(S.graph.loop_edges()) > len(cp.graph.loop_edges())


def test_strengthen_rejects_non_3_connected():
    T = graph(TRIANGLE)
    with pytest.raises(PreconditionError):
        strengthen(FrameworkPair(T, GraphicMatroid(T)))


def test_find_frameworks_examples():
    G = graph(K4)
    found = find_frameworks(GraphicMatroid(G), 4)
    assert canonical_vertex_form(G) in found
    assert find_frameworks(vamos_matroid(), 4)
    assert find_frameworks(UniformMatroid(2, 4), 2)
    with pytest.raises(ValueError):
        find_frameworks(UniformMatroid(2, 4), 9)


def _brute_frameworks(M, n, weak_connected=False):
    E = M.groundset
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    out = set()
    for choice in product(pairs, repeat=len(E)):
        G = MultiGraph.from_edges({e: (f"v{i}", f"v{j}") for e, (i, j) in zip(E, choice)})
        if weak_connected:
            ok = is_connected(G) and M.rank_of_matroid <= len(G.vertices) and is_weak_framework(G, M)
        else:
            ok = is_framework(G, M)
        if ok:
            out.add(canonical_vertex_form(G))
    return out


@pytest.mark.parametrize(
    "M",
    [
        UniformMatroid(2, 4),
        UniformMatroid(1, 3),
        UniformMatroid(3, 4),
        GraphicMatroid(graph(TRIANGLE)),
        GraphicMatroid(graph(THETA)),
        fm_matroid(BiasedGraph(graph("a:u-v b:v-w c:u-w d:u-u"), frozenset())),
        lm_matroid(BiasedGraph(graph("a:1-2 b:1-2 c:3-4 d:3-4"), frozenset())),
    ],
    ids=str,
)
def test_search_matches_brute_force(M):
    n = 3
    assert set(find_frameworks(M, n)) == _brute_frameworks(M, n)
    assert set(find_certificates(M, n)) == _brute_frameworks(M, n, weak_connected=True)


def test_search_results_are_distinct_and_have_no_isolated_vertices():
    found = find_frameworks(UniformMatroid(2, 4), 3)
    assert len(found) == len(set(found))
    for G in found:
        assert all(G.incident(v) for v in G.vertices)


def test_vamos_witnesses_are_neither_frame_nor_lift_graphs():
    from quasigraphic.biased import is_fm_of, is_lm_of

    V = vamos_matroid()
    for W in find_frameworks(V, 4):
        P = FrameworkPair(W, V)
        assert not is_fm_of(P) and not is_lm_of(P)
