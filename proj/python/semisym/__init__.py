"""Curvature, Newman-Penrose data and semi-symmetry checks for closed-form metrics."""

import json

from ._semisym import (
    DegenerateMetricError,
    ExpressionParseError,
    InvalidTetradError,
    MetricFile,
    MetricFileError,
    MissingTetradError,
    TheoremViolationError,
    analyze_json,
    condition_data,
    contracted_condition,
    corpus_names,
    load_metric_file,
    np_scalars,
    null_rotate,
    parse_metric_file,
    petrov_type,
    petrov_type_by_roots,
    pnd_multiplicities,
    ricci_commutator,
    weyl_condition_1,
    weyl_condition_2,
)


def analyze(file, tol=1e-9, seed=0, cross_validate=False, point=None):
    """Analysis report as a list of per-point dicts (the CLI's JSON schema)."""
    if isinstance(file, str):
        file = load_metric_file(file)
    return json.loads(analyze_json(file, tol, seed, cross_validate, point))


__all__ = [name for name in dir() if not name.startswith("_")]
