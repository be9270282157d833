"""Group-level checks in floating point for explicit matrix Lie groups.

Conventions: ``A(y)`` is the matrix of Ad_y in the basis X_1..X_n, so
y X_j y^{-1} = A^i_j(y) X_i.  The multiplicative tensor is
sigma(y) = A(y) r A(y)^T + r_0 with r_0 = -r unless overridden.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from .cocycle import as_rmatrix, coboundary_cocycle, cybe_residual
from .errors import (
    BasisDegenerate,
    CYBEViolated,
    DimensionMismatch,
    ElementOutsideGroup,
    NonFiniteInput,
    SingularElement,
)
from .lie import LieAlgebra
from .poisson import InvariantTheta, PoissonTensor, build_bracket

CLOSURE_TOL = 1e-12
ADJOINT_FIT_TOL = 1e-10
SINGULAR_DET = 1e-12
FD_STEP = 1e-5


@dataclass(frozen=True, eq=False)
class GroupElement:
    matrix: np.ndarray
    inverse: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        y = np.array(self.matrix, dtype=float)
        if y.ndim != 2 or y.shape[0] != y.shape[1]:
            raise DimensionMismatch(f"group element must be square, got {y.shape}")
        if not np.all(np.isfinite(y)):
            raise NonFiniteInput("group element has non-finite entries")
        if abs(np.linalg.det(y)) <= SINGULAR_DET:
            raise SingularElement(f"|det y| = {abs(np.linalg.det(y)):.3g} <= {SINGULAR_DET:g}")
        y.setflags(write=False)
        inv = np.linalg.inv(y)
        inv.setflags(write=False)
        object.__setattr__(self, "matrix", y)
        object.__setattr__(self, "inverse", inv)

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.matrix @ other.matrix)

    def inv(self) -> "GroupElement":
        return GroupElement(self.inverse)


def as_element(y) -> GroupElement:
    return y if isinstance(y, GroupElement) else GroupElement(y)


class MatrixGroupModel:
    """Basis matrices X_1..X_n realizing ``algebra`` inside gl(m)."""

    def __init__(self, algebra: LieAlgebra, basis):
        B = np.array(basis.to_float() if hasattr(basis, "to_float") else basis, dtype=float)
        if B.ndim != 3 or B.shape[0] != algebra.dim or B.shape[1] != B.shape[2]:
            raise DimensionMismatch(f"basis must have shape ({algebra.dim}, m, m), got {B.shape}")
        n, m = algebra.dim, B.shape[1]
        flat = B.reshape(n, m * m).T
        if np.linalg.matrix_rank(flat, tol=1e-10) < n:
            raise BasisDegenerate("basis matrices are linearly dependent")
        C = algebra.C.to_float()
        comm = np.einsum("iab,jbc->ijac", B, B) - np.einsum("jab,ibc->ijac", B, B)
        expected = np.einsum("kij,kac->ijac", C, B)
        err = float(np.max(np.abs(comm - expected), initial=0.0))
        if err > CLOSURE_TOL:
            raise BasisDegenerate(f"basis does not close under the commutator (max error {err:.3g})")
        self.algebra = algebra
        self.basis = B
        self.n, self.m = n, m
        self.C = C
        self._flat = flat
        self._pinv = np.linalg.pinv(flat)

    @classmethod
    def default(cls, algebra: LieAlgebra) -> "MatrixGroupModel":
        if algebra.matrix_basis is None:
            raise DimensionMismatch(f"algebra {algebra.name!r} has no matrix realization")
        return cls(algebra, algebra.matrix_basis)

    def generator(self, xi) -> np.ndarray:
        xi = np.asarray(xi, dtype=float)
        if xi.shape != (self.n,):
            raise DimensionMismatch(f"expected a vector of length {self.n}")
        return np.tensordot(xi, self.basis, axes=1)

    def coordinates(self, M: np.ndarray) -> np.ndarray:
        """Coordinates of a matrix in the basis; raises if it is outside the span."""
        v = self._pinv @ M.reshape(-1)
        fit = float(np.max(np.abs(self._flat @ v - M.reshape(-1)), initial=0.0))
        if fit > ADJOINT_FIT_TOL * (1.0 + float(np.max(np.abs(M)))):
            raise ElementOutsideGroup(f"matrix is not in the span of the basis (fit error {fit:.3g})")
        return v


def exp_element(model: MatrixGroupModel, xi, t: float = 1.0) -> GroupElement:
    """exp(t xi^i X_i) by scipy's scaling-and-squaring Pade expm."""
    xi = np.asarray(xi, dtype=float)
    if not (np.all(np.isfinite(xi)) and np.isfinite(t)):
        raise NonFiniteInput("xi and t must be finite")
    return GroupElement(expm(t * model.generator(xi)))


def identity_element(model: MatrixGroupModel) -> GroupElement:
    return GroupElement(np.identity(model.m))


def adjoint_matrix(model: MatrixGroupModel, y) -> np.ndarray:
    """A(y) with y X_j y^{-1} = A^i_j(y) X_i."""
    y = as_element(y)
    A = np.empty((model.n, model.n))
    for j in range(model.n):
        A[:, j] = model.coordinates(y.matrix @ model.basis[j] @ y.inverse)
    return A


def adjoint_multiplicativity_residual(model: MatrixGroupModel, x, y) -> float:
    """max |A(xy) - A(x) A(y)|."""
    x, y = as_element(x), as_element(y)
    return float(np.max(np.abs(adjoint_matrix(model, x @ y) - adjoint_matrix(model, x) @ adjoint_matrix(model, y))))


def adjoint_inverse_residual(model: MatrixGroupModel, y) -> float:
    """max |A(y) A(y^{-1}) - I|."""
    y = as_element(y)
    return float(np.max(np.abs(adjoint_matrix(model, y) @ adjoint_matrix(model, y.inv()) - np.identity(model.n))))


def adjoint_derivative_residual(model: MatrixGroupModel, xi, h: float = FD_STEP) -> float:
    """Central difference of A(exp(t xi)) at t = 0 against C^i_{sj} xi^s."""
    xi = np.asarray(xi, dtype=float)
    fd = (adjoint_matrix(model, exp_element(model, xi, h)) - adjoint_matrix(model, exp_element(model, xi, -h))) / (2 * h)
    return float(np.max(np.abs(fd - np.einsum("isj,s->ij", model.C, xi))))


def ad_invariance_residual(model: MatrixGroupModel, y) -> float:
    """max |C^i_{jk} - A^i_s(y) C^s_{pq} A^p_j(y^{-1}) A^q_k(y^{-1})|."""
    y = as_element(y)
    A, Ai = adjoint_matrix(model, y), adjoint_matrix(model, y.inv())
    moved = np.einsum("is,spq,pj,qk->ijk", A, model.C, Ai, Ai)
    return float(np.max(np.abs(model.C - moved), initial=0.0))


def _r_float(model: MatrixGroupModel, r) -> np.ndarray:
    r = as_rmatrix(r)
    if r.dim != model.n:
        raise DimensionMismatch(f"r-matrix has dimension {r.dim}, model has {model.n}")
    return r.r.to_float()


def sigma_tensor(model: MatrixGroupModel, r, y, r0=None) -> np.ndarray:
    """sigma(y) = A(y) r A(y)^T + r_0, with r_0 = -r by default."""
    R = _r_float(model, r)
    R0 = -R if r0 is None else _r_float(model, r0)
    A = adjoint_matrix(model, y)
    sigma = A @ R @ A.T + R0
    skew = float(np.max(np.abs(sigma + sigma.T), initial=0.0))
    if skew > 1e-10 * (1.0 + float(np.max(np.abs(sigma), initial=0.0))):
        raise ValueError(f"sigma lost skew-symmetry (error {skew:.3g})")
    return sigma


def sigma_cocycle_residual(model: MatrixGroupModel, r, x, y, r0=None) -> float:
    """max |sigma(xy) - sigma(x) - A(x) sigma(y) A(x)^T|."""
    x, y = as_element(x), as_element(y)
    A = adjoint_matrix(model, x)
    lhs = sigma_tensor(model, r, x @ y, r0)
    rhs = sigma_tensor(model, r, x, r0) + A @ sigma_tensor(model, r, y, r0) @ A.T
    return float(np.max(np.abs(lhs - rhs)))


def sigma_pde_residual(model: MatrixGroupModel, r, x, k: int, h: float = FD_STEP) -> float:
    """d/dt sigma(x exp(t e_k)) at t = 0, by central differences, against A(x) alpha_k A(x)^T."""
    if not 0 <= k < model.n:
        raise DimensionMismatch(f"direction {k} out of range for dimension {model.n}")
    x = as_element(x)
    e = np.zeros(model.n)
    e[k] = 1.0
    plus = sigma_tensor(model, r, x @ exp_element(model, e, h))
    minus = sigma_tensor(model, r, x @ exp_element(model, e, -h))
    fd = (plus - minus) / (2 * h)
    alpha = coboundary_cocycle(model.algebra, as_rmatrix(r)).alpha.to_float()[:, :, k]
    A = adjoint_matrix(model, x)
    return float(np.max(np.abs(fd - A @ alpha @ A.T)))


def coadjoint_equivariance_residual(
    model: MatrixGroupModel,
    r,
    theta: InvariantTheta | None,
    y,
    eta,
    omega: PoissonTensor | None = None,
) -> float:
    """max_{ij} of the coadjoint functional equation

    omega_{ij}(A(y^{-1})^T eta) = A^k_i(y^{-1}) A^l_j(y^{-1}) omega_{kl}(eta)
        + C^m_{iq} C^n_{jt} A^s_m(y^{-1}) A^p_n(y^{-1}) eta_s eta_p sigma^{qt}(y).

    Refuses (CYBEViolated) unless r solves the CYBE exactly.  Pass ``omega`` to
    reuse a bracket already built for the same (r, theta).
    """
    r = as_rmatrix(r)
    if not cybe_residual(model.algebra, r).is_zero():
        raise CYBEViolated("r does not satisfy the classical Yang-Baxter equation")
    if omega is None:
        omega = build_bracket(model.algebra, r, theta)
    y = as_element(y)
    eta = np.asarray(eta, dtype=float)
    if eta.shape != (model.n,):
        raise DimensionMismatch(f"eta must have length {model.n}")
    if not np.all(np.isfinite(eta)):
        raise NonFiniteInput("eta must be finite")
    Ai = adjoint_matrix(model, y.inv())
    moved = Ai.T @ eta
    lhs = omega.evaluate(moved)
    B = np.einsum("miq,m->iq", model.C, moved)
    rhs = Ai.T @ omega.evaluate(eta) @ Ai + B @ sigma_tensor(model, r, y) @ B.T
    return float(np.max(np.abs(lhs - rhs), initial=0.0))


def group_law_sanity(model: MatrixGroupModel, x) -> float:
    """max-abs of x x^{-1} - I and x^{-1} x - I."""
    x = as_element(x)
    eye = np.identity(model.m)
    return float(max(np.max(np.abs(x.matrix @ x.inverse - eye)), np.max(np.abs(x.inverse @ x.matrix - eye))))
