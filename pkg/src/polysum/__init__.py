"""Exact Minkowski sums of convex polytopes via the Cayley embedding.

Face lattices, face-count bounds, certified tight lower-bound families, and
block-determinant positivity thresholds, all in exact rational arithmetic.
"""

from .bounds import (
    VertexProfile,
    many_summand_f0_bounds,
    phi,
    three_polytope_bounds,
    trivial_upper_bound,
    two_polytope_bound,
    zonotope_bound,
)
from .cayley import (
    CayleyConfig,
    PartitionedPointSet,
    cayley_embed,
    minksum_direct,
    minksum_via_cayley,
    spanning_face_counts,
)
from .construction import (
    ConstructionParams,
    WitnessSubset,
    find_tau_star,
    find_zeta_diamond,
    generate_family,
    moment_curve_point,
    verify_neighborly,
    verify_tightness,
    witness_determinant,
)
from .detasym import (
    DeltaSpec,
    build_delta,
    certify_positivity,
    delta_value,
    gvd,
    laplace_expand,
    leading_term,
    vandermonde,
)
from .exact import ExactMatrix, affine_rank, determinant, rat, rat_to_str
from .hull import FaceLattice, PointSet, convex_hull, is_face, neighborliness

__all__ = [
    "CayleyConfig",
    "ConstructionParams",
    "DeltaSpec",
    "ExactMatrix",
    "FaceLattice",
    "PartitionedPointSet",
    "PointSet",
    "VertexProfile",
    "WitnessSubset",
    "affine_rank",
    "build_delta",
    "cayley_embed",
    "certify_positivity",
    "convex_hull",
    "delta_value",
    "determinant",
    "find_tau_star",
    "find_zeta_diamond",
    "generate_family",
    "gvd",
    "is_face",
    "laplace_expand",
    "leading_term",
    "many_summand_f0_bounds",
    "minksum_direct",
    "minksum_via_cayley",
    "moment_curve_point",
    "neighborliness",
    "phi",
    "rat",
    "rat_to_str",
    "spanning_face_counts",
    "three_polytope_bounds",
    "trivial_upper_bound",
    "two_polytope_bound",
    "vandermonde",
    "verify_neighborly",
    "verify_tightness",
    "witness_determinant",
    "zonotope_bound",
]

__version__ = "0.1.0"
