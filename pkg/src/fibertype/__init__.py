"""Fiber-type G_a-actions on affine T-varieties of complexity at most one.

A T-variety is encoded by a proper polyhedral divisor on a point or a curve;
this package computes its graded ring, the homogeneous locally nilpotent
derivations of fiber type, their equivalence classes and the resulting
Makar-Limanov type invariants.
"""
from .base import (
    Base,
    BaseKind,
    QDivisor,
    RationalSection,
    degree,
    h0,
    is_big,
    is_semiample,
    round_down,
    section_basis,
    section_in,
)
from .divisor import (
    GradedElement,
    GradedPiece,
    HomogeneousElement,
    PolyhedralDivisor,
    dimension,
    element,
    evaluate,
    generator_candidates,
    graded_piece,
    is_proper,
    multiply,
)
from .errors import FibertypeError, SchemaError
from .invariants import (
    build_trivial_ml_example,
    fml_fib_lower_bound,
    ml_fib,
    standard_example_derivations,
)
from .lattice import Cone, dual_cone, face_dual_to_ray, hilbert_basis, lattice_points, rays
from .lnd import (
    FiberLND,
    RayContext,
    apply,
    d_e,
    equivalent,
    exists_fiber_lnd,
    exp_action,
    kernel_description,
    list_equivalence_classes,
    make_lnd,
    nilpotency_order,
    phi_e,
    ray_context,
    s_rho_contains,
    s_rho_enumerate,
)
from .polyhedra import (
    LinearPiece,
    TailedPolyhedron,
    linear_pieces,
    minkowski_sum,
    piece_containing_face,
    support_eval,
)

__version__ = "0.1.0"
