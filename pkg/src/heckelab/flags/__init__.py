"""Periodic lattice flags over F_q and the operators acting on functions of them."""

from .chevalley import (
    AffineRelationReport,
    ChevalleyOps,
    FlagCalibration,
    FlagSpace,
    calibrate_chevalley,
    check_affine_relations,
    chevalley_ops,
    default_margin,
    flag_representation,
)
from .convolution import (
    composable_indicators,
    convolve,
    delta_diagonal,
    invariant_table,
    is_automorphism_invariant,
    is_invariant_constant,
    orbit_indicator,
)
from .lattice import (
    PeriodicFlag,
    TruncatedModel,
    Window,
    all_flags,
    dimension_vectors,
    embed_flag,
    enumerate_flags,
    enumerate_lattices,
    interior_flags,
    is_flag,
    is_interior,
)
from .orbits import (
    PeriodicMatrix,
    WindowAutomorphism,
    all_automorphisms,
    orbit_completeness,
    orbit_invariant,
    random_automorphism,
    shift_flag,
    validate_periodic_matrix,
)
