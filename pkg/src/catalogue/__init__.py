"""Named example algebras, their structures and expected properties."""

from .entries import CatalogueEntry, get, list_names, parse_name
from .fixtures import check_entry, compute_properties

__all__ = ["CatalogueEntry", "get", "list_names", "parse_name", "check_entry", "compute_properties"]
