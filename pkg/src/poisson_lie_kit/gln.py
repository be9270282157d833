"""The gl(n) specialization, written in doubled matrix indices.

A basis element of gl(n) is the matrix unit E_(a,i) (row a, column i), stored at
flat position a*n + i.  Coordinates on gl(n)* are eta^i_a = eta[(a, i)], and the
doubled r-matrix is r^{ab}_{ij} = r[(b, j), (a, i)].  The transposed pairing is
the one under which substituting the delta structure constants into the generic
bracket reproduces the explicit formula; with r[(a, i), (b, j)] the quadratic
part flips sign.

Everything here is deliberately computed from the delta formulas, term by term,
without calling the generic construction, so that :func:`cross_check` compares
two independent routes.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from .cocycle import RMatrix
from .errors import DimensionMismatch, NotSkewDoubled, SizeGuardExceeded
from .exact import QTensor
from .lie import gl_structure_constants
from .poisson import InvariantTheta, PoissonTensor, build_bracket
from .polynomial import PolyFamily

CROSS_CHECK_MAX_N = 3


def flat_index(n: int, a: int, i: int) -> int:
    """0-based (row a, column i) -> 0-based flat basis index."""
    if not (0 <= a < n and 0 <= i < n):
        raise DimensionMismatch(f"matrix index ({a}, {i}) out of range for n={n}")
    return a * n + i


def split_index(n: int, p: int) -> tuple[int, int]:
    if not 0 <= p < n * n:
        raise DimensionMismatch(f"flat index {p} out of range for n={n}")
    return divmod(p, n)


@dataclass(frozen=True, eq=False)
class GlRMatrix:
    """``r[a, b, i, j] = r^{ab}_{ij}`` with r^{ab}_{ij} = -r^{ba}_{ji}."""

    r: QTensor

    def __post_init__(self):
        r = QTensor.from_values(self.r)
        if r.ndim != 4 or len(set(r.shape)) != 1:
            raise DimensionMismatch(f"doubled r-matrix must have shape (n, n, n, n), got {r.shape}")
        if not (r + r.einsum("baji->abij")).is_zero():
            raise NotSkewDoubled("r^{ab}_{ij} != -r^{ba}_{ji}")
        object.__setattr__(self, "r", r)

    @property
    def n(self) -> int:
        return self.r.shape[0]

    def flatten(self) -> RMatrix:
        n = self.n
        return RMatrix(self.r.einsum("abij->bjai").reshape(n * n, n * n))

    @classmethod
    def from_flat(cls, r: RMatrix) -> "GlRMatrix":
        n = int(round(np.sqrt(r.dim)))
        if n * n != r.dim:
            raise DimensionMismatch(f"dimension {r.dim} is not a square")
        return cls(r.r.reshape(n, n, n, n).einsum("bjai->abij"))

    def __eq__(self, other):
        return isinstance(other, GlRMatrix) and self.r == other.r

    __hash__ = None


def _delta(x: int, y: int) -> int:
    return 1 if x == y else 0


def gl_structure_constants_eq41(n: int) -> QTensor:
    """C^{(a,i)}_{(b,j)(c,k)} = d^a_b d^j_c d^k_i - d^a_c d^k_b d^j_i."""
    N = n * n
    C = np.zeros((N, N, N), dtype=np.int64)
    for a, i, b, j, c, k in product(range(n), repeat=6):
        C[a * n + i, b * n + j, c * n + k] = _delta(a, b) * _delta(j, c) * _delta(k, i) - _delta(a, c) * _delta(k, b) * _delta(
            j, i
        )
    return QTensor(C)


def gl_bracket_eq42(n: int, r: GlRMatrix, theta: InvariantTheta | None = None) -> PoissonTensor:
    """{eta^j_b, eta^k_c} assembled from the five explicit terms

    (d^j_c eta^k_b - d^k_b eta^j_c) Theta + r^{lw}_{bc} eta^k_w eta^j_l + r^{jk}_{nm} eta^n_b eta^m_c
      - r^{lk}_{bm} eta^m_c eta^j_l - r^{jw}_{nc} eta^k_w eta^n_b.
    """
    if r.n != n:
        raise DimensionMismatch(f"r is a gl({r.n}) tensor, expected gl({n})")
    algebra = gl_structure_constants(n)
    if theta is None:
        theta = InvariantTheta.one(algebra)
    N = n * n
    R = r.r.to_fractions()
    f = lambda a, i: a * n + i  # noqa: E731
    lin = np.full((N, N, N), Fraction(0), dtype=object)  # [eta slot, I, J]
    quad = np.full((N, N, N, N), Fraction(0), dtype=object)  # [slot, slot, I, J]
    for b, j, c, k in product(range(n), repeat=4):
        I, J = f(b, j), f(c, k)
        if j == c:
            lin[f(b, k), I, J] += 1
        if k == b:
            lin[f(c, j), I, J] -= 1
        for x, y in product(range(n), repeat=2):
            # r^{xy}_{bc} eta^k_y eta^j_x
            quad[f(y, k), f(x, j), I, J] += R[x, y, b, c]
            # r^{jk}_{xy} eta^x_b eta^y_c
            quad[f(b, x), f(c, y), I, J] += R[j, k, x, y]
            # - r^{xk}_{by} eta^y_c eta^j_x
            quad[f(c, y), f(x, j), I, J] -= R[x, k, b, y]
            # - r^{jy}_{xc} eta^k_y eta^x_b
            quad[f(y, k), f(b, x), I, J] -= R[j, y, x, c]
    linear = PolyFamily(N, (N, N), {1: QTensor.from_values(lin)}).product(theta.poly, "ij,->ij")
    quadratic = PolyFamily(N, (N, N), {2: QTensor.from_values(quad)})
    return PoissonTensor(algebra, linear + quadratic, theta=theta)


def cross_check(n: int, r: GlRMatrix, theta: InvariantTheta | None = None) -> Fraction:
    """Largest monomial coefficient of (explicit gl(n) bracket) - (generic bracket)."""
    if n > CROSS_CHECK_MAX_N:
        raise SizeGuardExceeded(f"cross_check is limited to n <= {CROSS_CHECK_MAX_N}")
    explicit = gl_bracket_eq42(n, r, theta)
    generic = build_bracket(explicit.algebra, r.flatten(), explicit.theta)
    return (explicit.poly - generic.poly).max_abs_coefficient()


def random_gl_rmatrix(n: int, rng: np.random.Generator) -> GlRMatrix:
    from .sampling import random_skew

    return GlRMatrix.from_flat(random_skew(n * n, rng))
