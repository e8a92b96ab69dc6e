"""Chromatic persistence norms, spanning trees and lunar trees of planar point sets."""

from chromamst._core import (
    DegenerateInputError,
    InconsistencyError,
    TorusRangeError,
    UsageError,
    analyze,
    cl_bounds,
    diagrams,
    emst_length,
    expected_moment,
    fit_sqrt,
    lower_bound_pipeline,
    lower_incomplete_gamma,
    lunar_tree,
    norm_constants,
    random_coloring,
    sample_poisson,
    sample_uniform,
    triangulation_stats,
)

__all__ = [
    "DegenerateInputError",
    "InconsistencyError",
    "TorusRangeError",
    "UsageError",
    "analyze",
    "cl_bounds",
    "diagrams",
    "emst_length",
    "expected_moment",
    "fit_sqrt",
    "lower_bound_pipeline",
    "lower_incomplete_gamma",
    "lunar_tree",
    "norm_constants",
    "random_coloring",
    "sample_poisson",
    "sample_uniform",
    "triangulation_stats",
]
