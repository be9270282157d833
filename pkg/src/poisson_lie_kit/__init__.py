"""Quadratic Poisson brackets on the dual of a Lie algebra from classical r-matrices.

Exact checks over the rationals for the algebraic identities, floating-point
checks on explicit matrix groups for the group-level ones.
"""
from .cocycle import CocycleAlpha, RMatrix, check_cocycle, coboundary_cocycle, cybe_residual
from .document import InputDocument, dump_input, parse_input
from .errors import *  # noqa: F401,F403
from .exact import QTensor
from .gln import GlRMatrix, cross_check, gl_bracket_eq42, gl_structure_constants_eq41
from .group import (
    GroupElement,
    MatrixGroupModel,
    ad_invariance_residual,
    adjoint_matrix,
    coadjoint_equivariance_residual,
    exp_element,
    group_law_sanity,
    sigma_cocycle_residual,
    sigma_pde_residual,
    sigma_tensor,
)
from .lie import (
    AD_STAR_COMMUTATOR_SIGN,
    LieAlgebra,
    ad_star_matrix,
    bracket,
    builtin_algebra,
    check_structure_jacobi,
    gl_structure_constants,
)
from .poisson import (
    BRIDGE_CONSTANT,
    InvariantTheta,
    PoissonTensor,
    QuadraticBeta,
    beta_identity_residual,
    beta_jacobi_residual,
    build_beta,
    build_beta_general,
    build_bracket,
    compatibility_residual,
    eq22_form,
    falls_short_term,
    infinitesimal_equivariance_residual,
    jacobi_residual,
    kernel_map_matrix,
    theta_invariance_residual,
)
from .polynomial import PolyFamily
from .report import VerificationReport, emit_report
from .suites import run_suite

__version__ = "0.1.0"
