"""Isotropic point sets, planar n-revolute chains and their conditioning lengths.

Points are (x, y) tuples, orderings and joint indices are zero-based, and
matrices are lists of rows.
"""

from ._core import (
    IsokinError,
    all_orderings,
    characteristic_length,
    check_isotropic_set,
    check_model_set,
    condition_number_spectral,
    chain_links,
    dedup_orderings,
    forward_kinematics,
    jacobian,
    model_matrix,
    optimal_lambda,
    placement_model_set,
    posture_from_placement,
    reflect_set,
    regular_polygon,
    rotate_set,
    union_sets,
)

__all__ = [
    "IsokinError",
    "all_orderings",
    "characteristic_length",
    "check_isotropic_set",
    "check_model_set",
    "condition_number_spectral",
    "chain_links",
    "dedup_orderings",
    "forward_kinematics",
    "jacobian",
    "model_matrix",
    "optimal_lambda",
    "placement_model_set",
    "posture_from_placement",
    "reflect_set",
    "regular_polygon",
    "rotate_set",
    "union_sets",
]
