"""JSON input schemas, loaders and canonical serialization."""

from .loaders import (
    load_algebra,
    load_any_structure,
    load_derivation,
    load_family,
    load_form,
    load_kahler,
    load_lie_algebra,
    load_metric,
    load_modification,
    load_normal_j,
    load_pair,
    load_structure,
    parse_model,
    read_json,
)
from .serialize import (
    algebra_to_dict,
    canonical_json,
    derivation_to_dict,
    kahler_to_dict,
    metric_to_dict,
    structure_to_dict,
    write_json,
)

__all__ = [
    "load_algebra",
    "load_any_structure",
    "load_derivation",
    "load_family",
    "load_form",
    "load_kahler",
    "load_lie_algebra",
    "load_metric",
    "load_modification",
    "load_normal_j",
    "load_pair",
    "load_structure",
    "parse_model",
    "read_json",
    "algebra_to_dict",
    "canonical_json",
    "derivation_to_dict",
    "kahler_to_dict",
    "metric_to_dict",
    "structure_to_dict",
    "write_json",
]
