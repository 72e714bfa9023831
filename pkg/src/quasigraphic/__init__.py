"""Quasi-graphic matroids: frameworks, biased graphs, frame and lift matroids."""

from .biased import (
    BiasedGraph,
    FrameMatroid,
    LiftMatroid,
    decide_loop_edge_case,
    fm_matroid,
    framed_extension,
    has_theta_property,
    is_fm_of,
    is_lm_of,
    lift_extension,
    lm_matroid,
    support_graph,
)
from .framework import (
    FrameworkPair,
    Verdict,
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
    strengthen,
)
from .graph import MultiGraph, components, contract_edge, contract_loop, enumerate_cycles, enumerate_thetas
from .linear import LinearMatroid, PrimeFieldMatrix, frame_or_lift_decomposition, incidence_matrix
from .matroid import (
    ExplicitMatroid,
    GraphicMatroid,
    Matroid,
    UniformMatroid,
    check_axioms,
    circuits,
    closure,
    is_3_connected,
    minor,
    rank,
    vamos_matroid,
)
from .oracle import IndependenceFamily, enumerate_family, matroids_equal

__version__ = "0.1.0"

__all__ = [
    "BiasedGraph",
    "ExplicitMatroid",
    "FrameMatroid",
    "FrameworkPair",
    "GraphicMatroid",
    "IndependenceFamily",
    "LiftMatroid",
    "LinearMatroid",
    "Matroid",
    "MultiGraph",
    "PrimeFieldMatrix",
    "UniformMatroid",
    "Verdict",
    "balanced_cycles",
    "certify_quasi_graphic",
    "check_axioms",
    "circuits",
    "classify_circuit",
    "closure",
    "components",
    "connectify",
    "contract_edge",
    "contract_loop",
    "decide_loop_edge_case",
    "enumerate_cycles",
    "enumerate_family",
    "enumerate_thetas",
    "find_certificates",
    "find_frameworks",
    "fm_matroid",
    "frame_or_lift_decomposition",
    "framed_extension",
    "framework_minor",
    "has_theta_property",
    "incidence_matrix",
    "is_3_connected",
    "is_cycle_matroid",
    "is_fm_of",
    "is_framework",
    "is_lm_of",
    "is_strong",
    "is_weak_framework",
    "lift_extension",
    "lm_matroid",
    "matroids_equal",
    "minor",
    "rank",
    "strengthen",
    "support_graph",
    "vamos_matroid",
]
