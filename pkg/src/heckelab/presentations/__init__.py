"""Quantum Kac-Moody and toroidal presentations, with tools to expand and check them."""

from .build import (
    GFRelation,
    Presentation,
    affine_a_matrix,
    presentation_extended_toroidal,
    presentation_quantum_km,
    presentation_sl2_toroidal_closed,
    presentation_toroidal,
    twist_matrix,
)
from .check import (
    LaurentRing,
    RelationReport,
    Representation,
    ScalarRing,
    SparseOp,
    check_representation,
    weight_representation,
    zero_representation,
)
from .expand import expand_gf_relation, phi, psi
from .extract import sl2_closed_image, specialize_d, subalgebra_extract, u1_contains_km
from .ncpoly import Gen, NCPoly, Relation, relation_keys
from .serialize import presentation_from_json, presentation_to_json
from .theta import AT_INFINITY, AT_ZERO, theta_expand

__all__ = [
    "AT_INFINITY",
    "AT_ZERO",
    "GFRelation",
    "Gen",
    "LaurentRing",
    "NCPoly",
    "Presentation",
    "Relation",
    "RelationReport",
    "Representation",
    "ScalarRing",
    "SparseOp",
    "affine_a_matrix",
    "check_representation",
    "expand_gf_relation",
    "phi",
    "presentation_extended_toroidal",
    "presentation_from_json",
    "presentation_quantum_km",
    "presentation_sl2_toroidal_closed",
    "presentation_to_json",
    "presentation_toroidal",
    "psi",
    "relation_keys",
    "sl2_closed_image",
    "specialize_d",
    "subalgebra_extract",
    "theta_expand",
    "twist_matrix",
    "u1_contains_km",
    "weight_representation",
    "zero_representation",
]
