"""Command-line interface.

Exit status: 0 on success or a true answer, 1 on a false answer or a
violation (with a report), 2 on usage, parse or enumeration-cap errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .biased import NotACycleError, ThetaPropertyError, fm_matroid, lm_matroid
from .corpus import CorpusSpec
from .formats import (
    FormatError,
    format_matrix,
    format_matroid,
    format_pair,
    read_biased,
    read_graph,
    read_matrix,
    read_matroid,
    read_pair,
)
from .framework import (
    FrameworkError,
    FrameworkPair,
    MAX_SEARCH_VERTICES,
    NotACircuitError,
    PreconditionError,
    WeakFrameworkInconsistency,
    certify_quasi_graphic,
    classify_circuit,
    find_certificates,
    find_frameworks,
    framework_minor,
    is_framework,
)
from .graph import GraphError, format_graph
from .lemmas import LEMMAS, corpus_pairs, run_lemmas
from .linear import DecompositionError, LinearMatroid, frame_or_lift_decomposition
from .matroid import EnumerationCapError, MatroidError, circuits

OK, FALSE, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str | None, what: str) -> str:
    if path is None:
        raise UsageError(f"--{what} is required")
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _parse(reader, path, what):
    try:
        return reader(_read(path, what))
    except FormatError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _pair(args) -> FrameworkPair:
    if args.pair:
        G, M = _parse(read_pair, args.pair, "pair")
    else:
        G = _parse(read_graph, args.graph, "graph")
        M = _parse(read_matroid, args.matroid, "matroid")
    if set(G.edge_labels) != set(M.groundset):
        raise UsageError("graph edges and matroid elements differ: " + " ".join(sorted(set(G.edge_labels) ^ set(M.groundset))))
    return FrameworkPair(G, M)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_verify(args) -> int:
    P = _pair(args)
    verdict = is_framework(P.graph, P.matroid, args.cap)
    if verdict:
        print("OK framework")
        return OK
    print(f"FAIL framework: condition {verdict.condition} at {_show(verdict.witness)}")
    return FALSE


def _show(x) -> str:
    if isinstance(x, (set, frozenset, list, tuple)):
        return "{" + ",".join(sorted(map(str, x))) + "}"
    return str(x)


def cmd_certify(args) -> int:
    P = _pair(args)
    try:
        verdict = certify_quasi_graphic(P.graph, P.matroid, args.cap)
    except PreconditionError as exc:
        raise UsageError(str(exc)) from None
    if verdict:
        print("OK certified: the matroid is quasi-graphic")
        return OK
    print(f"FAIL certify: condition {verdict.condition} at {_show(verdict.witness)}")
    return FALSE


def cmd_classify(args) -> int:
    P = _pair(args)
    status = OK
    for C in circuits(P.matroid, args.cap):
        try:
            cls = classify_circuit(P, C)
            print(f"{_show(C)} {cls.tag}")
        except (WeakFrameworkInconsistency, NotACircuitError) as exc:
            print(f"{_show(C)} VIOLATION {exc}")
            status = FALSE
    return status


def _construct(args, build) -> int:
    bg = _parse(read_biased, args.biased, "biased")
    try:
        M = build(bg)
    except ThetaPropertyError as exc:
        print(f"FAIL theta-property: {exc}")
        return FALSE
    _emit(format_matroid(M), args.out)
    return OK


def cmd_construct_fm(args) -> int:
    return _construct(args, fm_matroid)


def cmd_construct_lm(args) -> int:
    return _construct(args, lm_matroid)


def cmd_minor(args) -> int:
    P = _pair(args)
    if bool(args.delete) == bool(args.contract):
        raise UsageError("give exactly one of --delete or --contract")
    op, e = ("delete", args.delete) if args.delete else ("contract", args.contract)
    if e not in P.matroid.groundset:
        raise UsageError(f"unknown element {e!r}")
    try:
        Q = framework_minor(P, op, e, verify=False)
    except (PreconditionError, GraphError) as exc:
        raise UsageError(str(exc)) from None
    verdict = is_framework(Q.graph, Q.matroid, args.cap)
    _emit(format_pair(Q.graph, Q.matroid), args.out)
    if not verdict:
        print(f"FAIL framework: condition {verdict.condition} at {_show(verdict.witness)}", file=sys.stderr)
        return FALSE
    return OK


def cmd_decompose(args) -> int:
    A = _parse(read_matrix, args.matrix, "matrix")
    G = _parse(read_graph, args.graph, "graph")
    try:
        d = frame_or_lift_decomposition(A, G, LinearMatroid(A))
    except DecompositionError as exc:
        print(f"FAIL decompose: {exc}")
        return FALSE
    print(f"{d.tag} rank(A)={d.rank_a} rank(B)={d.rank_b}")
    _emit(format_matrix(d.witness), args.out)
    return OK


def cmd_search(args) -> int:
    M = _parse(read_matroid, args.matroid, "matroid")
    if not 1 <= args.max_vertices <= MAX_SEARCH_VERTICES:
        raise UsageError(f"--max-vertices must be between 1 and {MAX_SEARCH_VERTICES}")
    find = find_certificates if args.certificates else find_frameworks
    found = find(M, args.max_vertices, limit=args.limit, cap=args.cap)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for k, G in enumerate(found):
            (out / f"framework{k:03d}.g").write_text(format_graph(G))
    print(f"found {len(found)} graph(s) on at most {args.max_vertices} vertices")
    if not args.out:
        for k, G in enumerate(found):
            print(f"# framework {k}")
            sys.stdout.write(format_graph(G))
    return OK if found else FALSE


def cmd_check_lemmas(args) -> int:
    spec = CorpusSpec(max_vertices=args.max_vertices, max_edges=args.max_edges, seed=args.seed)
    names = args.lemma or None
    reports = run_lemmas(corpus_pairs(spec), names, sample=args.sample, seed=args.seed)
    for rep in reports:
        print(rep.line())
    return OK if all(r.ok for r in reports) else FALSE


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quasigraphic", description="Frameworks, biased graphs and frame/lift matroids.")
    sub = ap.add_subparsers(dest="verb", required=True)

    def pair_args(p):
        p.add_argument("--graph")
        p.add_argument("--matroid")
        p.add_argument("--pair", help="graph block followed by a matroid block")

    def common(p):
        p.add_argument("--cap", type=int, default=None, help="largest ground set to enumerate")
        p.add_argument("--out")

    verbs = {
        "verify": (cmd_verify, "is the graph a framework for the matroid?"),
        "certify": (cmd_certify, "check conditions (i)-(iv) for a 3-connected matroid"),
        "classify-circuits": (cmd_classify, "shape of every circuit in the graph"),
        "minor": (cmd_minor, "delete or contract one element of a framework pair"),
    }
    for name, (fn, help_) in verbs.items():
        p = sub.add_parser(name, help=help_)
        pair_args(p)
        common(p)
        p.set_defaults(fn=fn)
        if name == "minor":
            p.add_argument("--delete")
            p.add_argument("--contract")

    for name, fn in (("construct-fm", cmd_construct_fm), ("construct-lm", cmd_construct_lm)):
        p = sub.add_parser(name, help="matroid of a biased graph, written by its bases")
        p.add_argument("--biased")
        common(p)
        p.set_defaults(fn=fn)

    p = sub.add_parser("decompose", help="frame-or-lift split of a matrix with a strong framework")
    p.add_argument("--matrix")
    p.add_argument("--graph")
    common(p)
    p.set_defaults(fn=cmd_decompose)

    p = sub.add_parser("search-framework", help="every framework on at most N vertices")
    p.add_argument("--matroid")
    p.add_argument("--max-vertices", type=int, default=4)
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--certificates", action="store_true", help="search for (i)-(iv) certificates instead")
    common(p)
    p.set_defaults(fn=cmd_search)

    p = sub.add_parser("check-lemmas", help="run the lemma suite over the generated corpus")
    p.add_argument("--max-vertices", type=int, default=4)
    p.add_argument("--max-edges", type=int, default=7)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sample", type=int, default=500, help="pairs for the sampled minor lemmas")
    p.add_argument("--lemma", action="append", choices=[L.name for L in LEMMAS])
    p.set_defaults(fn=cmd_check_lemmas)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except EnumerationCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (NotACycleError, FrameworkError, MatroidError, GraphError) as exc:
        print(f"FAIL {exc}")
        return FALSE


if __name__ == "__main__":
    sys.exit(main())
