"""Posets in the Boolean lattice: copy detection, extremal and anti-Ramsey search, constructions."""

from .copies import Coloring, CopyEmbedding, find_copy, find_rainbow_copy, is_valid_embedding
from .families import SetFamily, layer, middle_layers
from .poset import Poset, catalog, parse_catalog_id, transitive_closure

__version__ = "0.1.0"

__all__ = [
    "Coloring",
    "CopyEmbedding",
    "Poset",
    "SetFamily",
    "catalog",
    "find_copy",
    "find_rainbow_copy",
    "is_valid_embedding",
    "layer",
    "middle_layers",
    "parse_catalog_id",
    "transitive_closure",
]
