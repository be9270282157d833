from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from poisson_lie_kit.cocycle import CocycleAlpha, RMatrix, check_cocycle, coboundary_cocycle, cybe_residual
from poisson_lie_kit.errors import DimensionMismatch, NotSkew, NotSkewUpper
from poisson_lie_kit.exact import QTensor
from poisson_lie_kit.lie import builtin_algebra
from poisson_lie_kit.sampling import random_cybe_rmatrix, random_skew

from conftest import CATALOG, loop_cybe, random_skew_matrix


def test_rmatrix_validation():
    with pytest.raises(NotSkew):
        RMatrix(QTensor.from_values([[0, 1], [1, 0]]))
    with pytest.raises(DimensionMismatch):
        RMatrix(QTensor.from_values([[0, 1, 2]]))
    r = RMatrix.from_entries(3, {(0, 2): "1/2"})
    assert r.r[2, 0] == Fraction(-1, 2)


def test_alpha_validation():
    a = np.zeros((2, 2, 2), dtype=np.int64)
    a[0, 1, 0] = 1
    with pytest.raises(NotSkewUpper):
        CocycleAlpha(QTensor(a))


def test_cybe_zero_r(catalog_algebra):
    assert cybe_residual(catalog_algebra, RMatrix.zero(catalog_algebra.dim)).is_zero()


@pytest.mark.parametrize("lam", [1, -3, Fraction(7, 2)])
def test_cybe_aff1_any_r(lam):
    A = builtin_algebra("aff1")
    assert cybe_residual(A, RMatrix.from_entries(2, {(0, 1): lam})).is_zero()


def test_cybe_abelian_any_r(rng):
    A = builtin_algebra("abelian:3")
    for _ in range(10):
        assert cybe_residual(A, random_skew(3, rng)).is_zero()


@pytest.mark.parametrize("name", CATALOG)
def test_cybe_matches_loops_and_is_cyclic(name, rng):
    A = builtin_algebra(name)
    C = A.C.to_fractions()
    for _ in range(3):
        R = random_skew_matrix(A.dim, rng)
        T = cybe_residual(A, RMatrix(QTensor.from_values(R)))
        assert T == QTensor.from_values(loop_cybe(C, R))
        assert T == T.einsum("njl->jln") == T.einsum("njl->lnj")


def test_sl2_e_wedge_f_violates_cybe():
    A = builtin_algebra("sl2")
    r = RMatrix.wedge([0, 1, 0], [0, 0, 1])
    assert not cybe_residual(A, r).is_zero()


def test_coboundary_aff1_by_hand():
    A = builtin_algebra("aff1")
    alpha = coboundary_cocycle(A, RMatrix.from_entries(2, {(0, 1): 1})).alpha
    for idx in product(range(2), repeat=3):
        expected = {(0, 1, 0): 1, (1, 0, 0): -1}.get(idx, 0)
        assert alpha[idx] == expected


def test_coboundary_against_loops(rng):
    A = builtin_algebra("gl:2")
    C = A.C.to_fractions()
    R = random_skew_matrix(4, rng)
    alpha = coboundary_cocycle(A, RMatrix(QTensor.from_values(R))).alpha
    for i, j, m in product(range(4), repeat=3):
        expected = sum(C[i, m, s] * R[s, j] + C[j, m, s] * R[i, s] for s in range(4))
        assert alpha[i, j, m] == expected


def test_coboundary_trivial_cases(catalog_algebra, rng):
    n = catalog_algebra.dim
    assert coboundary_cocycle(catalog_algebra, RMatrix.zero(n)).alpha.is_zero()
    assert coboundary_cocycle(builtin_algebra("abelian:4"), random_skew(4, rng)).alpha.is_zero()


@pytest.mark.parametrize("name", CATALOG)
def test_coboundaries_are_cocycles(name, rng):
    A = builtin_algebra(name)
    for _ in range(50 if A.dim <= 4 else 10):
        alpha = coboundary_cocycle(A, random_skew(A.dim, rng))
        assert check_cocycle(A, alpha).is_zero()


def test_zero_alpha_is_cocycle(catalog_algebra):
    n = catalog_algebra.dim
    assert check_cocycle(catalog_algebra, QTensor.zeros((n, n, n))).is_zero()


def test_sl2_non_cocycle():
    a = np.zeros((3, 3, 3), dtype=np.int64)
    a[0, 1, 0], a[1, 0, 0] = 1, -1
    assert not check_cocycle(builtin_algebra("sl2"), QTensor(a)).is_zero()


@settings(max_examples=30, deadline=None)
@given(
    st.fractions(min_value=-5, max_value=5, max_denominator=5),
    st.fractions(min_value=-5, max_value=5, max_denominator=5),
    st.integers(0, 2**32 - 1),
)
def test_coboundary_linear(a, b, seed):
    rng = np.random.default_rng(seed)
    A = builtin_algebra("sl2")
    r1, r2 = random_skew(3, rng), random_skew(3, rng)
    lhs = coboundary_cocycle(A, r1 * a + r2 * b).alpha
    rhs = coboundary_cocycle(A, r1).alpha * a + coboundary_cocycle(A, r2).alpha * b
    assert lhs == rhs


@pytest.mark.parametrize("name", CATALOG)
def test_sampled_cybe_solutions(name, rng):
    A = builtin_algebra(name)
    for _ in range(10):
        r = random_cybe_rmatrix(A, rng)
        assert not r.r.is_zero()
        assert cybe_residual(A, r).is_zero()


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        cybe_residual(builtin_algebra("sl2"), RMatrix.zero(2))
