"""Finite-dimensional Lie algebras given by exact structure constants.

Tensors are stored 0-based with the upper index first: ``C[k, i, j]`` is the
structure constant C^k_{ij}, so that ``[e_i, e_j] = C^k_{ij} e_k``.  Reports and
docs use the 1-based labels e_1..e_n.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DimensionMismatch, NotAntisymmetric, UnknownAlgebra
from .exact import QTensor, contract

# (ad*_a)(ad*_b) - (ad*_b)(ad*_a) == AD_STAR_COMMUTATOR_SIGN * ad*_[a,b]
# with (ad*_z)^i_j = -C^i_{sj} z^s.  Fixed on sl2, asserted for every algebra.
AD_STAR_COMMUTATOR_SIGN = -1


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    dim: int
    C: QTensor
    name: str = ""
    # Optional faithful realization: dim matrices (m x m) of exact rationals,
    # with [X_i, X_j] = C^k_{ij} X_k under the matrix commutator.
    matrix_basis: QTensor | None = field(default=None, repr=False)

    def __post_init__(self):
        C = QTensor.from_values(self.C)
        object.__setattr__(self, "C", C)
        if self.dim < 1:
            raise DimensionMismatch("dimension must be positive")
        if C.shape != (self.dim,) * 3:
            raise DimensionMismatch(f"structure tensor has shape {C.shape}, expected {(self.dim,) * 3}")
        if not (C + C.einsum("kij->kji")).is_zero():
            bad = (C + C.einsum("kij->kji")).nonzero_indices()[0]
            k, i, j = (x + 1 for x in bad)
            raise NotAntisymmetric(f"C^{k}_{{{i}{j}}} != -C^{k}_{{{j}{i}}}")
        if self.matrix_basis is not None:
            basis = QTensor.from_values(self.matrix_basis)
            if basis.ndim != 3 or basis.shape[0] != self.dim or basis.shape[1] != basis.shape[2]:
                raise DimensionMismatch("matrix basis must have shape (dim, m, m)")
            object.__setattr__(self, "matrix_basis", basis)

    def __eq__(self, other):
        return isinstance(other, LieAlgebra) and self.dim == other.dim and self.C == other.C

    __hash__ = None

    @property
    def is_abelian(self) -> bool:
        return self.C.is_zero()


def vector(values, n: int | None = None) -> QTensor:
    v = QTensor.from_values(values)
    if v.ndim != 1 or (n is not None and v.shape[0] != n):
        raise DimensionMismatch(f"expected a vector of length {n}, got shape {v.shape}")
    return v


def check_structure_jacobi(algebra: LieAlgebra) -> QTensor:
    """Jacobi residual R[q, i, p, n] of the structure constants.

    R = C^s_{ip} C^q_{sn} + C^s_{ni} C^q_{sp} + C^s_{pn} C^q_{si}; all zero iff
    the bracket satisfies the Jacobi identity.  Antisymmetry is enforced when the
    algebra is constructed.
    """
    C = algebra.C
    return (
        contract("sip,qsn->qipn", C, C)
        + contract("sni,qsp->qipn", C, C)
        + contract("spn,qsi->qipn", C, C)
    )


def bracket(algebra: LieAlgebra, x, y) -> QTensor:
    n = algebra.dim
    return contract("kij,i,j->k", algebra.C, vector(x, n), vector(y, n))


def ad_matrix(algebra: LieAlgebra, zeta) -> QTensor:
    """Matrix of x -> [zeta, x]: entry (i, j) is C^i_{sj} zeta^s."""
    return contract("isj,s->ij", algebra.C, vector(zeta, algebra.dim))


def ad_star_matrix(algebra: LieAlgebra, zeta) -> QTensor:
    """(ad*_zeta)^i_j = -C^i_{sj} zeta^s."""
    return -ad_matrix(algebra, zeta)


def _matrix_units(n: int) -> list[np.ndarray]:
    units = []
    for a in range(n):
        for i in range(n):
            e = np.zeros((n, n), dtype=np.int64)
            e[a, i] = 1
            units.append(e)
    return units


def structure_from_matrices(basis) -> QTensor:
    """Structure constants of a matrix basis, by exact coordinate solve.

    Raises DimensionMismatch if a commutator leaves the span of the basis.
    """
    B = np.asarray(QTensor.from_values(basis).to_fractions())
    n = B.shape[0]
    flat = B.reshape(n, -1).T  # (m*m, n)
    coords = _ExactSpanSolver(flat)
    C = np.empty((n, n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            comm = (B[i].dot(B[j]) - B[j].dot(B[i])).reshape(-1)
            C[:, i, j] = coords.solve(comm)
    return QTensor.from_values(C)


class _ExactSpanSolver:
    """Coordinates of vectors in the column span of a fixed exact matrix."""

    def __init__(self, columns: np.ndarray):
        from .elimination import row_reduce

        self.rows, self.n = columns.shape
        aug = np.concatenate([columns, np.eye(self.rows, dtype=int).astype(object)], axis=1)
        self.rref, self.pivots = row_reduce([[Fraction(x) for x in row] for row in aug], ncols=self.n)
        if len(self.pivots) != self.n:
            raise DimensionMismatch("basis matrices are linearly dependent")

    def solve(self, target) -> list[Fraction]:
        # Apply the recorded row operations (right block) to the target.
        t = [sum(row[self.n + c] * Fraction(target[c]) for c in range(self.rows)) for row in self.rref]
        for r in range(len(self.pivots), self.rows):
            if t[r] != 0:
                raise DimensionMismatch("commutator is outside the span of the basis")
        return [t[r] for r in range(self.n)]


def gl_structure_constants(n: int) -> LieAlgebra:
    """gl(n) in the matrix-unit basis E_{(a,i)}, flattened row-major.

    The 1-based label (a, i) sits at position (a-1)*n + i, i.e. 0-based a*n + i.
    Constants come from multiplying matrix units; the Kronecker-delta formula
    lives in :mod:`poisson_lie_kit.gln` as an independent cross-check.
    """
    if n < 1:
        raise DimensionMismatch("gl(n) needs n >= 1")
    units = _matrix_units(n)
    N = n * n
    C = np.zeros((N, N, N), dtype=np.int64)
    for p, X in enumerate(units):
        for q, Y in enumerate(units):
            comm = X @ Y - Y @ X
            C[:, p, q] = comm.reshape(-1)
    return LieAlgebra(N, QTensor(C), f"gl:{n}", matrix_basis=QTensor(np.stack(units)))


def _from_brackets(dim: int, name: str, rules: dict, basis) -> LieAlgebra:
    C = np.zeros((dim, dim, dim), dtype=np.int64)
    for (i, j), out in rules.items():
        for k, v in out.items():
            C[k, i, j] = v
            C[k, j, i] = -v
    return LieAlgebra(dim, QTensor(C), name, matrix_basis=QTensor(np.asarray(basis, dtype=np.int64)))


def _abelian(n: int) -> LieAlgebra:
    basis = [np.diag([1 if t == i else 0 for t in range(n)]) for i in range(n)]
    return LieAlgebra(n, QTensor.zeros((n, n, n)), f"abelian:{n}", matrix_basis=QTensor(np.stack(basis)))


def _aff1() -> LieAlgebra:
    # e1 = [[1,0],[0,0]], e2 = [[0,1],[0,0]]: [e1, e2] = e2
    return _from_brackets(2, "aff1", {(0, 1): {1: 1}}, [[[1, 0], [0, 0]], [[0, 1], [0, 0]]])


def _heisenberg3() -> LieAlgebra:
    # p = E12, q = E23, z = E13: [p, q] = z
    E = _matrix_units(3)
    return _from_brackets(3, "heisenberg3", {(0, 1): {2: 1}}, [E[1], E[5], E[2]])


def _sl2() -> LieAlgebra:
    # h = diag(1,-1), e = E12, f = E21
    rules = {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}
    return _from_brackets(3, "sl2", rules, [[[1, 0], [0, -1]], [[0, 1], [0, 0]], [[0, 0], [1, 0]]])


CATALOG_NAMES = ("abelian:<n>", "aff1", "heisenberg3", "sl2", "gl:<n>")


def builtin_algebra(name: str) -> LieAlgebra:
    """Catalog lookup: ``abelian:<n>``, ``aff1``, ``heisenberg3``, ``sl2``, ``gl:<n>``."""
    key = name.strip()
    fixed = {"aff1": _aff1, "heisenberg3": _heisenberg3, "sl2": _sl2}
    if key in fixed:
        return fixed[key]()
    m = re.fullmatch(r"(abelian|gl):(\d+)", key)
    if m and int(m.group(2)) >= 1:
        n = int(m.group(2))
        return _abelian(n) if m.group(1) == "abelian" else gl_structure_constants(n)
    raise UnknownAlgebra(f"unknown algebra {name!r}; known: {', '.join(CATALOG_NAMES)}")
