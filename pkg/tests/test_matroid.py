import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import K4, TRIANGLE, brute_circuits, brute_rank, graph, subsets
from quasigraphic.biased import BiasedGraph, fm_matroid, lift_extension, lm_matroid
from quasigraphic.graph import MultiGraph, components, edge_subgraph
from quasigraphic.matroid import (
    EnumerationCapError,
    ExplicitMatroid,
    GraphicMatroid,
    MatroidError,
    UniformMatroid,
    UnknownElementError,
    add_coloop,
    check_axioms,
    circuits,
    closure,
    cocircuits,
    connectivity,
    is_3_connected,
    is_connected_matroid,
    minor,
    rank,
    vamos_matroid,
)
from quasigraphic.oracle import IndependenceFamily, matroids_equal


def test_rank_examples():
    assert rank(GraphicMatroid(graph(K4)), "abcdef") == 3
    assert rank(UniformMatroid(2, 4), ["e0", "e1", "e2", "e3"]) == 2
    V = vamos_matroid()
    assert rank(V, V.groundset) == 4
    with pytest.raises(UnknownElementError):
        rank(V, ["zz"])


def test_closure_examples():
    assert closure(GraphicMatroid(graph(TRIANGLE)), "ab") == frozenset("abc")
    assert closure(UniformMatroid(3, 3), ["e0"]) == frozenset(["e0"])


def test_vamos_closure_of_a_circuit_hyperplane_minus_one():
    V = vamos_matroid()
    H = frozenset(["a1", "a2", "b1", "b2"])
    for x in H:
        X = H - {x}
        want = {y for y in V.groundset if brute_rank(V, X | {y}) == brute_rank(V, X)}
        assert closure(V, X) == frozenset(want) == H


def test_vamos_is_a_matroid_with_65_bases():
    V = vamos_matroid()
    assert check_axioms(V)
    assert len(V.bases) == 65
    # {c1,c2,d1,d2} is a basis; the other five pair-unions are circuits
    assert V.is_independent(["c1", "c2", "d1", "d2"])
    assert not V.is_independent(["a1", "a2", "c1", "c2"])
    assert is_3_connected(V)


def test_circuit_examples():
    assert circuits(GraphicMatroid(graph(TRIANGLE))) == [frozenset("abc")]
    assert circuits(UniformMatroid(1, ["a", "b"])) == [frozenset("ab")]
    cuts = cocircuits(GraphicMatroid(graph(TRIANGLE)))
    assert sorted(map(sorted, cuts)) == [["a", "b"], ["a", "c"], ["b", "c"]]


def test_connectivity_examples():
    M = GraphicMatroid(graph(K4))
    assert connectivity(M, []) == 0
    assert connectivity(M, M.groundset) == 0


def test_three_connectivity_examples():
    assert is_3_connected(UniformMatroid(2, 4))
    tri_plus_coloop = add_coloop(GraphicMatroid(graph(TRIANGLE)), "z")
    assert not is_3_connected(tri_plus_coloop)
    assert is_3_connected(GraphicMatroid(graph(K4)))
    assert not is_connected_matroid(tri_plus_coloop)


def test_minor_examples():
    G = graph(K4)
    assert matroids_equal(minor(GraphicMatroid(G), ["a"], []), GraphicMatroid(G.delete_edges(["a"])))
    U = UniformMatroid(2, 4)
    assert matroids_equal(minor(U, [], ["e0"]), UniformMatroid(1, ["e1", "e2", "e3"]))
    with pytest.raises(MatroidError):
        minor(U, ["e0"], ["e0"])


def test_lift_extension_contracts_to_graphic():
    G = graph("a:1-2 b:2-3 c:1-3 d:4-5 e:5-6 f:4-6")
    Mp, e = lift_extension(BiasedGraph(G, frozenset()))
    N = minor(Mp, [], [e])
    assert N.rank_of_matroid == 4
    assert matroids_equal(N, GraphicMatroid(G))


def test_check_axioms_examples():
    assert check_axioms(UniformMatroid(2, 3))
    bad = IndependenceFamily.from_sets("abc", [(), ("a",), ("b",), ("a", "b", "c")])
    assert not check_axioms(bad)


def test_check_axioms_catches_exchange_failure():
    # {a,b} and {c} maximal: not a matroid
    F = IndependenceFamily.from_sets("abc", [(), ("a",), ("b",), ("c",), ("a", "b")])
    assert not check_axioms(F)


def _slow_exchange(table, n):
    sets = [m for m in range(1 << n) if table[m]]
    for I in sets:
        for J in sets:
            if bin(J).count("1") > bin(I).count("1"):
                if not any(table[I | (1 << i)] for i in range(n) if J >> i & 1 and not I >> i & 1):
                    return False
    return True


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.integers(0, (1 << n) - 1), max_size=8))))
def test_check_axioms_matches_literal_augmentation(data):
    n, gens = data
    ground = [chr(97 + i) for i in range(n)]
    table = np.zeros(1 << n, dtype=bool)
    table[0] = True
    for g in gens:  # downward closure of the generators
        for m in range(1 << n):
            if m & g == m:
                table[m] = True
    F = IndependenceFamily(tuple(ground), table)
    assert check_axioms(F) == _slow_exchange(table, n)


def test_theta_fm_families_are_matroids():
    G = graph("a:u-v b:u-v c:u-v")
    for B in [set(), {frozenset("ab"), frozenset("ac"), frozenset("bc")}, {frozenset("ab")}]:
        assert check_axioms(fm_matroid(BiasedGraph(G, B)))


def test_enumeration_cap():
    U = UniformMatroid(2, 8)
    with pytest.raises(EnumerationCapError):
        circuits(U, cap=6)
    with pytest.raises(EnumerationCapError):
        check_axioms(U, cap=6)


def test_explicit_rejects_unequal_bases():
    with pytest.raises(MatroidError):
        ExplicitMatroid("abc", [("a",), ("b", "c")])


# -- exhaustive properties on every backend ----------------------------------


def _backends():
    out = [
        UniformMatroid(2, 5),
        UniformMatroid(0, 3),
        GraphicMatroid(graph(K4)),
        GraphicMatroid(graph("a:u-u b:u-v c:u-v d:v-w")),
        vamos_matroid(),
        fm_matroid(BiasedGraph(graph("a:1-2 b:2-3 c:1-3 d:4-5 e:5-6 f:4-6"), frozenset())),
        lm_matroid(BiasedGraph(graph("a:1-2 b:2-3 c:1-3 d:4-5 e:5-6 f:4-6"), frozenset())),
        minor(GraphicMatroid(graph(K4)), ["a"], ["f"]),
        add_coloop(UniformMatroid(2, 4), "z"),
    ]
    from quasigraphic.linear import LinearMatroid, PrimeFieldMatrix

    out.append(LinearMatroid(PrimeFieldMatrix(3, [[1, 0, 1, 1, 0], [0, 1, 1, 2, 0]], list("abcde"))))
    return out


@pytest.mark.parametrize("M", _backends(), ids=lambda M: type(M).__name__)
def test_rank_is_monotone_submodular_unit_increase(M):
    E = M.groundset
    rk = {S: rank(M, S) for S in subsets(E)}
    for S, r in rk.items():
        assert 0 <= r <= len(S)
        for x in E:
            if x not in S:
                assert rk[S | {x}] - r in (0, 1)
    sets = list(rk)
    for S in sets[:: max(1, len(sets) // 40)]:
        for T in sets[:: max(1, len(sets) // 40)]:
            assert rk[S | T] + rk[S & T] <= rk[S] + rk[T]


@pytest.mark.parametrize("M", _backends(), ids=lambda M: type(M).__name__)
def test_backend_is_a_matroid_and_table_matches_direct_queries(M):
    assert check_axioms(M)
    table = M.independence_table()
    for m in range(1 << len(M)):
        assert bool(table[m]) == M._indep(m)
    assert sorted(map(sorted, circuits(M))) == sorted(map(sorted, brute_circuits(M)))


@pytest.mark.parametrize("M", _backends(), ids=lambda M: type(M).__name__)
def test_rank_matches_brute_force_and_lambda_is_symmetric(M):
    E = frozenset(M.groundset)
    for S in subsets(E):
        assert rank(M, S) == brute_rank(M, S)
        assert connectivity(M, S) == connectivity(M, E - S)


@pytest.mark.parametrize("M", _backends(), ids=lambda M: type(M).__name__)
def test_closure_idempotent_and_extensive(M):
    for S in subsets(M.groundset):
        c = closure(M, S)
        assert S <= c
        assert closure(M, c) == c


@st.composite
def graphs(draw):
    n = draw(st.integers(1, 4))
    m = draw(st.integers(0, 7))
    edges = {f"e{i}": (f"v{draw(st.integers(0, n - 1))}", f"v{draw(st.integers(0, n - 1))}") for i in range(m)}
    return MultiGraph([f"v{i}" for i in range(n)], edges)


@settings(max_examples=100, deadline=None)
@given(graphs())
def test_graphic_rank_is_vertices_minus_components(G):
    M = GraphicMatroid(G)
    for S in subsets(G.edge_labels):
        H = edge_subgraph(G, S)
        assert rank(M, S) == len(H.vertices) - len(components(H))


@settings(max_examples=60, deadline=None)
@given(graphs(), st.data())
def test_minor_composition(G, data):
    M = GraphicMatroid(G)
    E = list(G.edge_labels)
    roles = data.draw(st.lists(st.sampled_from("kdcDC"), min_size=len(E), max_size=len(E)))
    D1 = [e for e, r in zip(E, roles) if r == "d"]
    C1 = [e for e, r in zip(E, roles) if r == "c"]
    D2 = [e for e, r in zip(E, roles) if r == "D"]
    C2 = [e for e, r in zip(E, roles) if r == "C"]
    two_step = minor(minor(M, D1, C1), D2, C2)
    one_step = minor(M, D1 + D2, C1 + C2)
    assert matroids_equal(two_step, one_step)


def test_k4_dual_rank_through_cocircuits():
    M = GraphicMatroid(graph(K4))
    # vertex stars and the 4-edge cuts
    cuts = cocircuits(M)
    assert sorted(len(c) for c in cuts) == [3, 3, 3, 3, 4, 4, 4]
    for c in cuts:
        E = frozenset(M.groundset)
        assert rank(M, E - c) == 2
