from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from poisson_lie_kit.exact import QTensor, contract, format_fraction, stack, to_fraction

rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=50)


def test_to_fraction_accepts_exact_values():
    assert to_fraction("3/4") == Fraction(3, 4)
    assert to_fraction(-2) == Fraction(-2)
    assert to_fraction(Fraction(6, 8)) == Fraction(3, 4)


@pytest.mark.parametrize("bad", [0.5, True, "abc"])
def test_to_fraction_rejects_inexact(bad):
    with pytest.raises((TypeError, ValueError)):
        to_fraction(bad)


def test_canonical_form():
    t = QTensor.from_values([Fraction(2, 4), Fraction(-3, 6)])
    assert t.den == 2
    assert list(t.num) == [1, -1]
    assert format_fraction(Fraction(-6, 4)) == "-3/2"
    assert format_fraction(Fraction(4, 2)) == "2"


@settings(max_examples=60, deadline=None)
@given(st.lists(rationals, min_size=6, max_size=6), st.lists(rationals, min_size=6, max_size=6), rationals)
def test_arithmetic_matches_fractions(a, b, c):
    A, B = QTensor.from_values(a), QTensor.from_values(b)
    assert list((A + B).to_fractions()) == [x + y for x, y in zip(a, b)]
    assert list((A - B).to_fractions()) == [x - y for x, y in zip(a, b)]
    assert list((A * c).to_fractions()) == [x * c for x in a]


@settings(max_examples=40, deadline=None)
@given(st.lists(rationals, min_size=9, max_size=9), st.lists(rationals, min_size=9, max_size=9))
def test_contract_matches_loops(a, b):
    A = QTensor.from_values(np.array(a, dtype=object).reshape(3, 3))
    B = QTensor.from_values(np.array(b, dtype=object).reshape(3, 3))
    got = contract("ij,jk->ik", A, B).to_fractions()
    for i in range(3):
        for k in range(3):
            assert got[i, k] == sum(a[3 * i + j] * b[3 * j + k] for j in range(3))


def test_large_values_fall_back_to_python_ints():
    big = QTensor.from_values([[2**40, 1], [1, 2**40]])
    prod = contract("ij,jk,kl->il", big, big, big)
    assert prod[0, 0] == 2**120 + 3 * 2**40
    assert prod.num.dtype == object


def test_stack_widens_on_overflow():
    s = stack([QTensor.from_values([2**62]), QTensor.from_values([Fraction(1, 3)])])
    assert s[0, 0] == 2**62
    assert s[1, 0] == Fraction(1, 3)


def test_symmetrize_and_equality():
    t = QTensor.from_values([[0, 1], [0, 0]])
    s = t.symmetrize([0, 1])
    assert s == QTensor.from_values([[0, Fraction(1, 2)], [Fraction(1, 2), 0]])
    assert s != t
