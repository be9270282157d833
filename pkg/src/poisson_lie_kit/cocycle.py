"""r-matrices, the classical Yang-Baxter residual and 1-cocycles alpha: g -> g^g."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatch, NotSkew, NotSkewUpper
from .exact import QTensor, contract, to_fraction
from .lie import LieAlgebra, vector


@dataclass(frozen=True, eq=False)
class RMatrix:
    """Skew 2-tensor ``r[i, j] = r^{ij}``."""

    r: QTensor

    def __post_init__(self):
        r = QTensor.from_values(self.r)
        if r.ndim != 2 or r.shape[0] != r.shape[1]:
            raise DimensionMismatch(f"r-matrix must be square, got {r.shape}")
        if not (r + r.einsum("ij->ji")).is_zero():
            raise NotSkew("r-matrix is not skew-symmetric")
        object.__setattr__(self, "r", r)

    @property
    def dim(self) -> int:
        return self.r.shape[0]

    @classmethod
    def zero(cls, n: int) -> "RMatrix":
        return cls(QTensor.zeros((n, n)))

    @classmethod
    def from_entries(cls, n: int, entries: dict) -> "RMatrix":
        """Upper entries {(i, j): value}, 0-based; the skew partner is filled in."""
        vals = [[0] * n for _ in range(n)]
        for (i, j), v in entries.items():
            vals[i][j] = v
            vals[j][i] = -to_fraction(v)
        return cls(QTensor.from_values(vals))

    @classmethod
    def wedge(cls, a, b, scale=1) -> "RMatrix":
        """scale * (a (x) b - b (x) a)."""
        a, b = vector(a), vector(b)
        return cls((contract("i,j->ij", a, b) - contract("i,j->ij", b, a)) * scale)

    def __add__(self, other: "RMatrix") -> "RMatrix":
        return RMatrix(self.r + other.r)

    def __mul__(self, c) -> "RMatrix":
        return RMatrix(self.r * c)

    __rmul__ = __mul__

    def __neg__(self) -> "RMatrix":
        return RMatrix(-self.r)

    def __eq__(self, other):
        return isinstance(other, RMatrix) and self.r == other.r

    __hash__ = None


@dataclass(frozen=True, eq=False)
class CocycleAlpha:
    """``alpha[i, j, k] = alpha^{ij}_k``, skew in the two upper indices."""

    alpha: QTensor

    def __post_init__(self):
        a = QTensor.from_values(self.alpha)
        if a.ndim != 3 or len(set(a.shape)) != 1:
            raise DimensionMismatch(f"cocycle must have shape (n, n, n), got {a.shape}")
        if not (a + a.einsum("ijk->jik")).is_zero():
            raise NotSkewUpper("alpha^{ij}_k is not skew in (i, j)")
        object.__setattr__(self, "alpha", a)

    @property
    def dim(self) -> int:
        return self.alpha.shape[0]

    def __eq__(self, other):
        return isinstance(other, CocycleAlpha) and self.alpha == other.alpha

    __hash__ = None


def as_rmatrix(r) -> RMatrix:
    return r if isinstance(r, RMatrix) else RMatrix(r)


def as_alpha(alpha) -> CocycleAlpha:
    return alpha if isinstance(alpha, CocycleAlpha) else CocycleAlpha(alpha)


def _check_dim(algebra: LieAlgebra, n: int, what: str):
    if n != algebra.dim:
        raise DimensionMismatch(f"{what} has dimension {n}, algebra has {algebra.dim}")


def cybe_residual(algebra: LieAlgebra, r) -> QTensor:
    """T[n, j, l] = C^n_{sp} r^{sj} r^{pl} + C^j_{sp} r^{sl} r^{pn} + C^l_{sp} r^{sn} r^{pj}.

    Zero iff r solves the classical Yang-Baxter equation.  T is cyclic in (n, j, l);
    that is re-checked on every call as a guard against index slips.
    """
    r = as_rmatrix(r)
    _check_dim(algebra, r.dim, "r-matrix")
    C, R = algebra.C, r.r
    T = (
        contract("nsp,sj,pl->njl", C, R, R)
        + contract("jsp,sl,pn->njl", C, R, R)
        + contract("lsp,sn,pj->njl", C, R, R)
    )
    if T != T.einsum("njl->jln"):
        raise RuntimeError("CYBE residual is not cyclic in (n, j, l)")
    return T


def coboundary_cocycle(algebra: LieAlgebra, r) -> CocycleAlpha:
    """alpha = delta r: alpha^{ij}_n = C^i_{ns} r^{sj} + C^j_{ns} r^{is}."""
    r = as_rmatrix(r)
    _check_dim(algebra, r.dim, "r-matrix")
    C, R = algebra.C, r.r
    return CocycleAlpha(contract("ins,sj->ijn", C, R) + contract("jns,is->ijn", C, R))


def check_cocycle(algebra: LieAlgebra, alpha) -> QTensor:
    """Residual[k, l, i, j] of the 1-cocycle identity

    alpha^{kl}_s C^s_{ij} - (alpha^{ml}_j C^k_{im} + alpha^{km}_j C^l_{im}
                             - alpha^{ml}_i C^k_{jm} - alpha^{km}_i C^l_{jm}).
    """
    alpha = as_alpha(alpha)
    _check_dim(algebra, alpha.dim, "cocycle")
    C, a = algebra.C, alpha.alpha
    lhs = contract("kls,sij->klij", a, C)
    rhs = (
        contract("mlj,kim->klij", a, C)
        + contract("kmj,lim->klij", a, C)
        - contract("mli,kjm->klij", a, C)
        - contract("kmi,ljm->klij", a, C)
    )
    return lhs - rhs
