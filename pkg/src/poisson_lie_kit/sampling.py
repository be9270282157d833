"""Random exact inputs: rationals, skew r-matrices and CYBE solutions.

CYBE solutions are built as r = lam * a ^ b with span{a, b} a 2-dim subalgebra;
every returned r is re-checked with :func:`cybe_residual` before it leaves.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .cocycle import RMatrix, cybe_residual
from .exact import QTensor
from .lie import LieAlgebra

_MAX_TRIES = 50


def random_rational(rng: np.random.Generator, bound: int = 5, den: int = 4) -> Fraction:
    return Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, den + 1)))


def random_vector(n: int, rng: np.random.Generator, **kw) -> QTensor:
    return QTensor.from_values([random_rational(rng, **kw) for _ in range(n)])


def random_skew(n: int, rng: np.random.Generator, **kw) -> RMatrix:
    vals = np.full((n, n), Fraction(0), dtype=object)
    for i in range(n):
        for j in range(i + 1, n):
            v = random_rational(rng, **kw)
            vals[i, j], vals[j, i] = v, -v
    return RMatrix(QTensor.from_values(vals))


def _nonzero_rational(rng: np.random.Generator) -> Fraction:
    while True:
        v = random_rational(rng)
        if v:
            return v


def _sl2_coords(m: np.ndarray) -> list[Fraction]:
    # [[x, y], [z, -x]] = x h + y e + z f
    return [m[0, 0], m[0, 1], m[1, 0]]


def _unipotent(size: int, rng: np.random.Generator) -> np.ndarray:
    g = np.identity(size, dtype=object) * Fraction(1)
    i, j = rng.choice(size, 2, replace=False)
    g[i, j] = random_rational(rng)
    return g


def _unipotent_inverse(g: np.ndarray) -> np.ndarray:
    # (I + N)^{-1} = I - N when N^2 = 0
    eye = np.identity(g.shape[0], dtype=object) * Fraction(1)
    return eye - (g - eye)


def _subalgebra_pair(algebra: LieAlgebra, rng: np.random.Generator):
    """Two vectors spanning a 2-dim subalgebra, or None to fall back to an arbitrary skew r."""
    n, name = algebra.dim, algebra.name
    if algebra.is_abelian or n <= 2:
        return None
    if name == "heisenberg3":
        # z is central, so span{a, z} is an abelian subalgebra
        return [random_rational(rng) for _ in range(3)], [0, 0, _nonzero_rational(rng)]
    if name == "sl2":
        h = np.array([[1, 0], [0, -1]], dtype=object) * Fraction(1)
        e = np.array([[0, 1], [0, 0]], dtype=object) * Fraction(1)
        f = np.array([[0, 0], [1, 0]], dtype=object) * Fraction(1)
        a, b = h, e if rng.integers(2) else f  # Borel subalgebras
        for _ in range(2):
            g = _unipotent(2, rng)
            gi = _unipotent_inverse(g)
            a, b = g.dot(a).dot(gi), g.dot(b).dot(gi)
        return _sl2_coords(a), _sl2_coords(b)
    if name.startswith("gl:"):
        m = int(name.split(":")[1])
        eye = np.identity(m, dtype=object) * Fraction(1)
        if rng.integers(2):
            # diagonal D and a matrix unit E_ij: [D, E_ij] = (d_i - d_j) E_ij
            a = eye * 0
            for t in range(m):
                a[t, t] = random_rational(rng)
            i, j = rng.choice(m, 2, replace=False)
            b = eye * 0
            b[i, j] = Fraction(1)
        else:
            # A and A^2 commute
            a = np.array([[random_rational(rng) for _ in range(m)] for _ in range(m)], dtype=object)
            b = a.dot(a)
        g = _unipotent(m, rng)
        gi = _unipotent_inverse(g)
        a, b = g.dot(a).dot(gi), g.dot(b).dot(gi)
        return list(a.reshape(-1)), list(b.reshape(-1))
    return None


def random_cybe_rmatrix(algebra: LieAlgebra, rng: np.random.Generator) -> RMatrix:
    """A random nonzero r with cybe_residual(algebra, r) == 0."""
    n = algebra.dim
    for _ in range(_MAX_TRIES):
        pair = _subalgebra_pair(algebra, rng)
        if pair is None:
            r = random_skew(n, rng)
        else:
            r = RMatrix.wedge(pair[0], pair[1], _nonzero_rational(rng))
        if r.r.is_zero() and n > 1:
            continue
        if cybe_residual(algebra, r).is_zero():
            return r
    raise RuntimeError(f"could not sample a CYBE solution on {algebra.name!r}")


def random_noncybe_rmatrix(algebra: LieAlgebra, rng: np.random.Generator) -> RMatrix:
    for _ in range(_MAX_TRIES):
        r = random_skew(algebra.dim, rng)
        if not cybe_residual(algebra, r).is_zero():
            return r
    raise RuntimeError(f"every sampled r solves the CYBE on {algebra.name!r}")


def random_unit_ball(n: int, rng: np.random.Generator) -> np.ndarray:
    """Componentwise uniform in [-1, 1], rescaled to Euclidean norm <= 1."""
    v = rng.uniform(-1.0, 1.0, size=n)
    norm = float(np.linalg.norm(v))
    return v / norm if norm > 1.0 else v
