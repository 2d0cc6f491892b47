"""Quantify, analyze and simulate component interactions from failure cascades."""

from ._core import (
    Cascade,
    CascadeSet,
    InteractionCounts,
    InteractionMatrix,
    IoError,
    QuantifyResult,
    ValidationError,
    WeightedLink,
    apply_mitigation,
    cascades_from_json,
    cascades_to_json,
    ccdf,
    dedupe_first,
    estimate_lambda,
    find_m_min,
    find_mu_min,
    ground_truth_matrix,
    initial_outage_distribution,
    key_components,
    key_links,
    load_cascades,
    matrix_from_links,
    mismatch,
    normalize_weights,
    outage_distribution,
    quantify,
    random_plan,
    save_cascades,
    similarity,
    simulate,
    strengths,
    take_prefix,
    to_weight_map,
    weighted_links,
)

__all__ = [
    "Cascade",
    "CascadeSet",
    "InteractionCounts",
    "InteractionMatrix",
    "IoError",
    "QuantifyResult",
    "ValidationError",
    "WeightedLink",
    "apply_mitigation",
    "cascades_from_json",
    "cascades_to_json",
    "ccdf",
    "dedupe_first",
    "estimate_lambda",
    "find_m_min",
    "find_mu_min",
    "ground_truth_matrix",
    "initial_outage_distribution",
    "key_components",
    "key_links",
    "load_cascades",
    "matrix_from_links",
    "mismatch",
    "normalize_weights",
    "outage_distribution",
    "quantify",
    "random_plan",
    "save_cascades",
    "similarity",
    "simulate",
    "strengths",
    "take_prefix",
    "to_weight_map",
    "weighted_links",
]
