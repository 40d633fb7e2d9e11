"""Quantitative relative judgment aggregation."""

from ._core import (
    DimensionError,
    DivergenceError,
    Error,
    EquivalenceCheck,
    Instance,
    InvalidArgument,
    Judgment,
    MaxCutGraph,
    ParseError,
    ReductionInstance,
    SizeError,
    SolveResult,
    UnknownMethod,
    UnsupportedExponent,
    build_reduction,
    check_relaxation_lemma,
    connected_components,
    evaluate,
    ingest_csv,
    lewis_weights,
    loss,
    method_registry,
    round_solution,
    solve,
    solve_irls,
    solve_l1,
    solve_l2,
    subsample,
    synth_series,
    verify_equivalence,
)

__all__ = [name for name in dir() if not name.startswith("_")]
