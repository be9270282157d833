from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from poisson_lie_kit.errors import DimensionMismatch, NotAntisymmetric, UnknownAlgebra
from poisson_lie_kit.exact import QTensor, contract
from poisson_lie_kit.lie import (
    AD_STAR_COMMUTATOR_SIGN,
    LieAlgebra,
    ad_star_matrix,
    bracket,
    builtin_algebra,
    check_structure_jacobi,
    gl_structure_constants,
    structure_from_matrices,
)

from conftest import CATALOG, loop_structure_jacobi

small_rationals = st.fractions(min_value=-6, max_value=6, max_denominator=6)


def aff1_raw():
    C = np.zeros((2, 2, 2), dtype=np.int64)
    C[1, 0, 1], C[1, 1, 0] = 1, -1
    return C


@pytest.mark.parametrize("name", [*CATALOG, "gl:1", "gl:4", "abelian:1"])
def test_structure_jacobi_zero(name):
    A = builtin_algebra(name)
    assert check_structure_jacobi(A).is_zero()


def test_structure_jacobi_against_loops():
    for name in ("aff1", "sl2", "gl:2"):
        A = builtin_algebra(name)
        C = A.C.to_fractions()
        loops = loop_structure_jacobi(C)
        R = check_structure_jacobi(A)
        assert all(R[idx] == v for idx, v in loops.items())


def test_jacobi_residual_detects_non_lie_bracket():
    # [e1,e2] = e2, [e1,e3] = e3, [e2,e3] = e1: the cyclic sum is -2 e1
    C = np.zeros((3, 3, 3), dtype=np.int64)
    for k, i, j in ((1, 0, 1), (2, 0, 2), (0, 1, 2)):
        C[k, i, j], C[k, j, i] = 1, -1
    assert not check_structure_jacobi(LieAlgebra(3, QTensor(C))).is_zero()


def test_not_antisymmetric():
    C = np.zeros((2, 2, 2), dtype=np.int64)
    C[0, 0, 1] = 1
    C[1, 0, 1] = 1
    with pytest.raises(NotAntisymmetric):
        LieAlgebra(2, QTensor(C))


def test_wrong_shape():
    with pytest.raises(DimensionMismatch):
        LieAlgebra(3, QTensor(aff1_raw()))


def test_aff1_bracket():
    A = LieAlgebra(2, QTensor(aff1_raw()))
    assert bracket(A, [1, 0], [0, 1]) == QTensor.from_values([0, 1])
    assert builtin_algebra("aff1") == A


def test_abelian_bracket_zero():
    A = builtin_algebra("abelian:4")
    assert bracket(A, [1, 2, 3, 4], [4, 3, 2, 1]).is_zero()
    assert ad_star_matrix(A, [1, -1, 2, 0]).is_zero()


@settings(max_examples=100, deadline=None)
@given(st.lists(small_rationals, min_size=6, max_size=6), st.sampled_from(("sl2", "heisenberg3")))
def test_bracket_antisymmetric(vals, name):
    A = builtin_algebra(name)
    x, y = vals[:3], vals[3:]
    assert bracket(A, x, y) == -bracket(A, y, x)
    assert bracket(A, x, x).is_zero()


def test_ad_star_aff1():
    M = ad_star_matrix(builtin_algebra("aff1"), [1, 0])
    assert M == QTensor.from_values([[0, 0], [0, -1]])
    assert ad_star_matrix(builtin_algebra("aff1"), [0, 0]).is_zero()


@settings(max_examples=50, deadline=None)
@given(st.lists(small_rationals, min_size=8, max_size=8))
def test_ad_star_linear(vals):
    A = builtin_algebra("sl2")
    a, b = vals[0], vals[1]
    z1, z2 = vals[2:5], vals[5:8]
    combo = [a * p + b * q for p, q in zip(z1, z2)]
    assert ad_star_matrix(A, combo) == ad_star_matrix(A, z1) * a + ad_star_matrix(A, z2) * b


@pytest.mark.parametrize("name", CATALOG)
def test_ad_star_commutator_sign(name, rng):
    A = builtin_algebra(name)
    n = A.dim
    C = A.C.to_fractions()
    for _ in range(5):
        z1 = [Fraction(int(v)) for v in rng.integers(-3, 4, n)]
        z2 = [Fraction(int(v)) for v in rng.integers(-3, 4, n)]
        M1, M2 = ad_star_matrix(A, z1), ad_star_matrix(A, z2)
        comm = contract("ij,jk->ik", M1, M2) - contract("ij,jk->ik", M2, M1)
        w = [sum(C[k, i, j] * z1[i] * z2[j] for i in range(n) for j in range(n)) for k in range(n)]
        expected = np.array(
            [[-sum(C[i, s, j] * w[s] for s in range(n)) for j in range(n)] for i in range(n)], dtype=object
        )
        assert comm == QTensor.from_values(expected) * AD_STAR_COMMUTATOR_SIGN


def test_gl_structure_constants():
    assert gl_structure_constants(1).is_abelian
    C = gl_structure_constants(2).C
    # [E11, E12] = E12 with E_(a,i) at a*n + i
    assert C[1, 0, 1] == 1
    assert builtin_algebra("gl:2") == gl_structure_constants(2)


def test_gl2_jacobi_brute_force():
    C = gl_structure_constants(2).C.to_fractions()
    assert all(v == 0 for v in loop_structure_jacobi(C).values())


def test_catalog_normalizations():
    sl2 = builtin_algebra("sl2").C
    assert (sl2[1, 0, 1], sl2[2, 0, 2], sl2[0, 1, 2]) == (2, -2, 1)
    heis = builtin_algebra("heisenberg3").C
    assert heis[2, 0, 1] == 1 and heis.count_nonzero() == 2
    assert builtin_algebra("abelian:3").C.is_zero()


@pytest.mark.parametrize("name", ["so3", "gl:0", "abelian:x", ""])
def test_unknown_algebra(name):
    with pytest.raises(UnknownAlgebra):
        builtin_algebra(name)


@pytest.mark.parametrize("name", CATALOG)
def test_matrix_basis_reproduces_constants(name):
    A = builtin_algebra(name)
    assert structure_from_matrices(A.matrix_basis) == A.C


def test_matrix_units_by_hand():
    E = np.zeros((2, 2, 2), dtype=np.int64)
    E[0][0, 0] = 1
    E[1][0, 1] = 1
    C = structure_from_matrices(QTensor(E))
    expected = {(1, 0, 1): 1, (1, 1, 0): -1}
    for idx in product(range(2), repeat=3):
        assert C[idx] == expected.get(idx, 0)
