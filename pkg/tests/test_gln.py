from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from poisson_lie_kit.cocycle import RMatrix
from poisson_lie_kit.errors import NotSkewDoubled, SizeGuardExceeded
from poisson_lie_kit.exact import QTensor
from poisson_lie_kit.gln import (
    GlRMatrix,
    cross_check,
    flat_index,
    gl_bracket_eq42,
    gl_structure_constants_eq41,
    random_gl_rmatrix,
    split_index,
)
from poisson_lie_kit.lie import builtin_algebra, gl_structure_constants
from poisson_lie_kit.poisson import InvariantTheta, build_bracket, lie_poisson_bracket


def single_component_r(n, a, b, i, j, value=1):
    r = np.full((n,) * 4, Fraction(0), dtype=object)
    r[a, b, i, j] = Fraction(value)
    r[b, a, j, i] = -Fraction(value)
    return GlRMatrix(QTensor.from_values(r))


def commutator_constants(n):
    """C^k_{ij} read off from matrix-unit commutators, independent of either formula."""
    units = []
    for a, i in product(range(n), repeat=2):
        m = np.zeros((n, n), dtype=int)
        m[a, i] = 1
        units.append(m)
    C = np.zeros((n * n,) * 3, dtype=int)
    for p, q in product(range(n * n), repeat=2):
        comm = units[p] @ units[q] - units[q] @ units[p]
        for k in range(n * n):
            C[k, p, q] = comm.reshape(-1)[k]
    return C


def test_index_bijection():
    for n in (1, 2, 3):
        seen = {flat_index(n, a, i) for a, i in product(range(n), repeat=2)}
        assert seen == set(range(n * n))
        assert all(split_index(n, flat_index(n, a, i)) == (a, i) for a, i in product(range(n), repeat=2))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_delta_constants(n):
    C = gl_structure_constants_eq41(n)
    assert C == gl_structure_constants(n).C
    assert np.array_equal(C.to_fractions().astype(int), commutator_constants(n))


def test_zero_r_gives_lie_poisson():
    for n in (1, 2, 3):
        w = gl_bracket_eq42(n, GlRMatrix(QTensor.zeros((n,) * 4)))
        assert w.poly == lie_poisson_bracket(builtin_algebra(f"gl:{n}")).poly


def test_gl1_is_trivial():
    w = gl_bracket_eq42(1, GlRMatrix(QTensor.zeros((1, 1, 1, 1))))
    assert w.poly.is_zero()
    with pytest.raises(NotSkewDoubled):
        GlRMatrix(QTensor.from_values(np.ones((1, 1, 1, 1), dtype=int)))


def test_linear_part_by_hand():
    # [E_01, E_10] = E_00 - E_11
    w = gl_bracket_eq42(2, GlRMatrix(QTensor.zeros((2,) * 4)))
    assert w.component(flat_index(2, 0, 1), flat_index(2, 1, 0)) == {(1, 0, 0, 0): 1, (0, 0, 0, 1): -1}


def test_not_skew_doubled():
    r = np.zeros((2,) * 4, dtype=int)
    r[0, 1, 0, 1] = 1
    r[1, 0, 1, 0] = 1
    with pytest.raises(NotSkewDoubled):
        GlRMatrix(QTensor.from_values(r))


def test_flatten_round_trip(rng):
    for n in (2, 3):
        for _ in range(5):
            g = random_gl_rmatrix(n, rng)
            flat = g.flatten()
            assert GlRMatrix.from_flat(flat) == g
            assert flat.r == -flat.r.einsum("ij->ji")


def test_flat_skewness_is_doubled_skewness(rng):
    n = 2
    for _ in range(10):
        vals = rng.integers(-3, 4, size=(4, 4))
        flat = QTensor.from_values(vals)
        doubled = flat.reshape((n,) * 4).einsum("bjai->abij")
        flat_skew = (flat + flat.einsum("ij->ji")).is_zero()
        doubled_skew = (doubled + doubled.einsum("baji->abij")).is_zero()
        assert flat_skew == doubled_skew
    g = random_gl_rmatrix(2, rng)
    assert isinstance(g.flatten(), RMatrix)


def test_single_component_pinned():
    lie = lie_poisson_bracket(builtin_algebra("gl:2")).poly
    # r^{01}_{01} pairs E_00 with E_11, whose sum is central, so the quadratic part cancels
    g = single_component_r(2, 0, 1, 0, 1)
    assert cross_check(2, g) == 0
    assert gl_bracket_eq42(2, g).poly == lie
    g = single_component_r(2, 0, 1, 0, 0)
    assert cross_check(2, g) == 0
    quad = gl_bracket_eq42(2, g).poly - lie
    assert not quad.is_zero() and quad.degree == 2


def test_cross_check_zero():
    assert cross_check(2, GlRMatrix(QTensor.zeros((2,) * 4))) == 0


def test_cross_check_random_n2(rng):
    for _ in range(20):
        assert cross_check(2, random_gl_rmatrix(2, rng)) == 0


def test_cross_check_random_n3_with_trace(rng):
    theta = InvariantTheta.gl_trace(3)
    for _ in range(2):
        assert cross_check(3, random_gl_rmatrix(3, rng), theta) == 0


def test_cross_check_sees_the_pairing(rng):
    # the untransposed flattening gives a different bracket for a generic r
    g = random_gl_rmatrix(2, rng)
    naive = RMatrix(g.r.einsum("abij->aibj").reshape((4, 4)))
    generic = build_bracket(builtin_algebra("gl:2"), naive)
    assert generic.poly != gl_bracket_eq42(2, g).poly


def test_cross_check_size_guard(rng):
    with pytest.raises(SizeGuardExceeded):
        cross_check(4, GlRMatrix(QTensor.zeros((4,) * 4)))
