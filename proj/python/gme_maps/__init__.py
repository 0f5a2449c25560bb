"""Lifted positive maps for detecting genuine multipartite entanglement."""

from ._core import (
    GmeError,
    GmeMap,
    bipartitions,
    catalog_ids,
    catalog_map,
    depolarized,
    detect,
    estimate_mu,
    ghz,
    lambda_scan,
    map_from_json,
    map_to_witness,
    noise_threshold,
    partial_transpose,
    phi_T,
    ppt_check,
    ppt_family,
    verify_biseparable_positivity,
    w_state,
    witness_to_map,
)

__all__ = [
    "GmeError",
    "GmeMap",
    "bipartitions",
    "catalog_ids",
    "catalog_map",
    "depolarized",
    "detect",
    "estimate_mu",
    "ghz",
    "lambda_scan",
    "map_from_json",
    "map_to_witness",
    "noise_threshold",
    "partial_transpose",
    "phi_T",
    "ppt_check",
    "ppt_family",
    "verify_biseparable_positivity",
    "w_state",
    "witness_to_map",
]

__version__ = "0.1.0"
