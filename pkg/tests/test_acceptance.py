"""Acceptance criteria 1-9, one test each.

Every test records a PASS/FAIL line; the lines are printed in the pytest
terminal summary (see conftest.py) and by running this file directly.
"""

from __future__ import annotations

import random
import time

import numpy as np
import pytest

from quasigraphic.biased import BiasedGraph, balanced_set, decide_loop_edge_case, fm_matroid, is_fm_of, is_lm_of, lm_matroid
from quasigraphic.corpus import CorpusSpec, biased_graphs, framework_pairs, multigraphs
from quasigraphic.framework import (
    FrameworkPair,
    certify_quasi_graphic,
    find_certificates,
    find_frameworks,
    framework_minor,
    is_cycle_matroid,
    is_framework,
)
from quasigraphic.instances import representable_instances
from quasigraphic.lemmas import CORE_LEMMAS, corpus_pairs, run_lemmas
from quasigraphic.linear import LinearMatroid, PrimeFieldMatrix, frame_or_lift_decomposition, incidence_matrix
from quasigraphic.matroid import GraphicMatroid, UniformMatroid, check_axioms, is_3_connected, vamos_matroid
from quasigraphic.oracle import matroids_equal

CORPUS = CorpusSpec(max_vertices=4, max_edges=7, seed=0)
RESULTS: list[str] = []


def record(n: int, ok: bool, detail: str, started: float) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}  ({time.perf_counter() - started:.1f}s)"
    RESULTS.append(line)
    print(line)


def graphic_representation(G) -> LinearMatroid:
    """Signed incidence matrix over GF(3), loop columns zero."""
    A = incidence_matrix(G, 3)
    data = np.array(A.data)
    for j, e in enumerate(A.cols):
        if G.is_loop(e):
            data[:, j] = 0
    return LinearMatroid(PrimeFieldMatrix(3, data, A.cols))


def test_criterion_1_graphic_equivalence():
    t = time.perf_counter()
    count, failures = 0, []
    for G in multigraphs(5, 8, connected=True):
        M = graphic_representation(G)
        ok = bool(is_framework(G, M)) and is_cycle_matroid(G, M) and matroids_equal(M, GraphicMatroid(G))
        count += 1
        if not ok:
            failures.append(G)
    elapsed = time.perf_counter() - t
    ok = not failures and elapsed < 120
    record(1, ok, f"{count} connected graphs (<=5 vertices, <=8 edges), {len(failures)} failures", t)
    assert ok


def test_criterion_2_constructions_are_matroids():
    t = time.perf_counter()
    count, failures = 0, []
    for bg in biased_graphs(CORPUS):
        for M in (fm_matroid(bg), lm_matroid(bg)):
            count += 1
            if not check_axioms(M):
                failures.append((bg, type(M).__name__))
    elapsed = time.perf_counter() - t
    ok = not failures and elapsed < 300
    record(2, ok, f"{count} FM/LM families checked, {len(failures)} axiom failures", t)
    assert ok


def test_criterion_3_frameworks_for_fm_and_lm():
    t = time.perf_counter()
    count, failures = 0, []
    for cp in framework_pairs(CORPUS):
        count += 1
        if not is_framework(cp.graph, cp.matroid):
            failures.append(cp.name)
    record(3, not failures, f"{count} pairs, {len(failures)} not frameworks", t)
    assert not failures


def _single_steps(P):
    G, M = P.graph, P.matroid
    for e in G.edge_labels:
        yield "delete", e
        if G.is_loop(e):
            if not M.is_independent([e]):
                continue  # e is a loop of M: excluded
            v = G.ends(e)[0]
            if len(G.vertices) == 1 and len(G.loops_at(v)) > 1:
                continue  # G o e undefined: no vertex left for the other loop-edges
        yield "contract", e


def test_criterion_4_minor_closure():
    t = time.perf_counter()
    pairs = list(framework_pairs(CORPUS))
    sample = random.Random(CORPUS.seed).sample(pairs, 500)
    steps, failures, skipped = 0, [], 0
    for cp in sample:
        P = FrameworkPair(cp.graph, cp.matroid)
        allowed = list(_single_steps(P))
        skipped += 2 * len(cp.graph.edge_labels) - len(allowed)
        for op, e in allowed:
            Q = framework_minor(P, op, e, verify=False)
            steps += 1
            if not is_framework(Q.graph, Q.matroid):
                failures.append((cp.name, op, e))
    record(4, not failures, f"500 pairs, {steps} minors re-verified, {skipped} excluded contractions, {len(failures)} failures", t)
    assert not failures


def test_criterion_5_loop_edge_dichotomy():
    t = time.perf_counter()
    cases, failures, tags = 0, [], {"LIFT": 0, "FRAME": 0}
    for cp in framework_pairs(CORPUS):
        G, M = cp.graph, cp.matroid
        loops = sorted(G.loop_edges())
        if not loops or len(M) < 4 or not is_3_connected(M):
            continue
        P = FrameworkPair(G, M)
        B = balanced_set(P)
        for e in loops:
            case = decide_loop_edge_case(P, e)
            build = lm_matroid if case.tag == "LIFT" else fm_matroid
            cases += 1
            tags[case.tag] += 1
            if not matroids_equal(M, build(BiasedGraph(G, B))):
                failures.append((cp.name, e, case.tag))
    ok = not failures and cases > 0
    record(5, ok, f"{cases} loop-edge cases (LIFT {tags['LIFT']}, FRAME {tags['FRAME']}), {len(failures)} mismatches", t)
    assert ok


def test_criterion_6_representable_decomposition():
    t = time.perf_counter()
    instances = representable_instances(24, seed=0)
    failures = []
    fields = {I.matrix.p for I in instances}
    for I in instances:
        d = frame_or_lift_decomposition(I.matrix, I.graph)
        ok = d.tag == I.expected
        if ok and d.tag == "LIFT":
            ok = matroids_equal(LinearMatroid(d.witness), GraphicMatroid(I.graph))
        if not ok:
            failures.append(I.name)
    elapsed = time.perf_counter() - t
    ok = len(instances) >= 20 and not failures and elapsed < 120
    kinds = sum(I.expected == "LIFT" for I in instances)
    record(6, ok, f"{len(instances)} instances over GF{sorted(fields)} ({kinds} LIFT), {len(failures)} failures", t)
    assert ok


def test_criterion_7_vamos():
    t = time.perf_counter()
    V = vamos_matroid()
    found = find_frameworks(V, 4)
    certified = bool(found) and bool(certify_quasi_graphic(found[0], V))
    neither = all(not is_fm_of(FrameworkPair(W, V)) and not is_lm_of(FrameworkPair(W, V)) for W in found)
    ok = bool(found) and certified and neither and time.perf_counter() - t < 600
    record(7, ok, f"{len(found)} framework(s) on 4 vertices, certified={certified}, none FM/LM-shaped={neither}", t)
    assert ok


def _supplementary_matroids():
    out = {f"U{r},{n}": UniformMatroid(r, n) for n in range(4, 9) for r in range(2, n - 1)}
    out["F7"] = LinearMatroid(
        PrimeFieldMatrix(2, [[1, 0, 0, 1, 1, 0, 1], [0, 1, 0, 1, 0, 1, 1], [0, 0, 1, 0, 1, 1, 1]], list("abcdefg"))
    )
    out["Vamos"] = vamos_matroid()
    return out


def test_criterion_8_certification_equivalence():
    t = time.perf_counter()
    distinct = {}
    for cp in framework_pairs(CORPUS):
        M = cp.matroid
        key = (M.groundset, M.independence_table().tobytes())
        if key not in distinct:
            distinct[key] = M if is_3_connected(M) else None
    corpus = [M for M in distinct.values() if M is not None]
    extra = [M for M in _supplementary_matroids().values() if is_3_connected(M)]
    mismatches, positive = [], 0
    for M in corpus + extra:
        a = bool(find_certificates(M, 5, limit=1))
        b = bool(find_frameworks(M, 5, limit=1))
        positive += b
        if a != b:
            mismatches.append(M)
    record(
        8,
        not mismatches,
        f"{len(corpus)} corpus + {len(extra)} extra 3-connected matroids, {positive} with frameworks, {len(mismatches)} mismatches",
        t,
    )
    assert not mismatches


def test_criterion_9_lemma_suite():
    t = time.perf_counter()
    reports = run_lemmas(corpus_pairs(CORPUS), sample=500, seed=CORPUS.seed)
    core = [r for r in reports if r.name in CORE_LEMMAS]
    bad = [r.name for r in core if not r.ok]
    for r in reports:
        print("   ", r.line())
    record(9, not bad and len(core) == 14, f"{len(core)} lemmas, violations in: {', '.join(bad) or 'none'}", t)
    assert not bad


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
