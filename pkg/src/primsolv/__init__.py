"""Computational checks for solvable linear groups and their primitive affine
permutation actions."""

from .perm import Permutation, PermGroup, StabilizerChain, NotSolvableError
from .ffield import ExtField
from .matgroup import MatrixGroup
from .constructions import CatalogEntry, CatalogLimits, catalog
from .verifier import analyze, verify_catalog

__version__ = "0.1.0"

__all__ = [
    "Permutation", "PermGroup", "StabilizerChain", "NotSolvableError", "ExtField",
    "MatrixGroup", "CatalogEntry", "CatalogLimits", "catalog", "analyze",
    "verify_catalog",
]
