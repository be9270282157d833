from fractions import Fraction

import numpy as np
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from poisson_lie_kit.exact import QTensor
from poisson_lie_kit.polynomial import PolyFamily

from conftest import sympy_coefficients

N = 3
X = sp.symbols(f"x0:{N}")

# degree <= 3 keeps products at degree <= 6; symmetrizing costs d! per part
monomials = st.dictionaries(
    st.tuples(*[st.integers(0, 2)] * N).filter(lambda m: sum(m) <= 3),
    st.fractions(min_value=-9, max_value=9, max_denominator=4),
    max_size=5,
)


def to_sympy(terms):
    return sp.expand(sum(sp.Rational(c.numerator, c.denominator) * sp.prod([x**e for x, e in zip(X, m)]) for m, c in terms.items()))


def clean(terms):
    return {m: Fraction(c) for m, c in terms.items() if c}


@settings(max_examples=60, deadline=None)
@given(monomials)
def test_round_trip_coefficients(terms):
    assert PolyFamily.from_monomials(N, terms).coefficients() == clean(terms)


@settings(max_examples=40, deadline=None)
@given(monomials, monomials)
def test_product_matches_sympy(a, b):
    p = PolyFamily.from_monomials(N, a).product(PolyFamily.from_monomials(N, b), ",->")
    assert p.coefficients() == sympy_coefficients(sp.expand(to_sympy(a) * to_sympy(b)), X)


@settings(max_examples=40, deadline=None)
@given(monomials)
def test_derivative_matches_sympy(a):
    grad = PolyFamily.from_monomials(N, a).derivative()
    for i in range(N):
        assert grad.coefficients((i,)) == sympy_coefficients(sp.diff(to_sympy(a), X[i]), X)


@settings(max_examples=30, deadline=None)
@given(monomials, st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=3), min_size=N, max_size=N))
def test_evaluate_matches_sympy(a, point):
    p = PolyFamily.from_monomials(N, a)
    expected = to_sympy(a).subs(dict(zip(X, [sp.Rational(v.numerator, v.denominator) for v in point])))
    got = p.evaluate(np.array(point, dtype=object))
    assert Fraction(np.asarray(got).item()) == Fraction(int(sp.numer(expected)), int(sp.denom(expected)))


def test_family_product_free_indices():
    # linear family L_i = x_i, matrix family M_ij = x_i x_j; contract "i,ij->j"
    lin = PolyFamily(N, (N,), {1: QTensor.from_values(np.eye(N, dtype=np.int64))})
    quad = lin.product(lin, "i,j->ij")
    out = lin.product(quad, "i,ij->j")
    for j in range(N):
        expected = sp.expand(sum(X[i] * X[i] * X[j] for i in range(N)))
        assert out.coefficients((j,)) == sympy_coefficients(expected, X)


def test_rearrange_and_zero():
    lin = PolyFamily(N, (N,), {1: QTensor.from_values(np.eye(N, dtype=np.int64))})
    quad = lin.product(lin, "i,j->ij")
    anti = quad - quad.rearrange("ij->ji")
    assert anti.is_zero()
    assert PolyFamily.zero(N, (2,)).degree == -1


def test_max_abs_coefficient_counts_multinomials():
    p = PolyFamily.from_monomials(N, {(1, 1, 0): 6, (0, 0, 2): -1})
    assert p.max_abs_coefficient() == 6
