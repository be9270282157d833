from fractions import Fraction
from itertools import product

import numpy as np
import pytest
import sympy as sp

from poisson_lie_kit.lie import builtin_algebra

CATALOG = ("abelian:3", "aff1", "heisenberg3", "sl2", "gl:2", "gl:3")
SMALL_CATALOG = ("abelian:3", "aff1", "heisenberg3", "sl2", "gl:2")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(params=CATALOG)
def catalog_algebra(request):
    return builtin_algebra(request.param)


@pytest.fixture(params=SMALL_CATALOG)
def small_algebra(request):
    return builtin_algebra(request.param)


# ----------------------------------------------------------------------------
# Independent oracles: plain Python loops over Fractions, and sympy.


def fractions(t):
    """QTensor -> nested numpy object array of Fractions."""
    return t.to_fractions()


def loop_structure_jacobi(C):
    n = C.shape[0]
    out = {}
    for q, i, p, m in product(range(n), repeat=4):
        out[q, i, p, m] = sum(
            C[s, i, p] * C[q, s, m] + C[s, m, i] * C[q, s, p] + C[s, p, m] * C[q, s, i] for s in range(n)
        )
    return out


def loop_cybe(C, r):
    n = C.shape[0]
    T = np.full((n, n, n), Fraction(0), dtype=object)
    for a, b, c in product(range(n), repeat=3):
        T[a, b, c] = sum(
            C[a, s, p] * r[s, b] * r[p, c] + C[b, s, p] * r[s, c] * r[p, a] + C[c, s, p] * r[s, a] * r[p, b]
            for s in range(n)
            for p in range(n)
        )
    return T


def sympy_bracket(C, r, theta_expr=1):
    """omega_{ij} written straight from C^s_{ij} eta_s Theta + C^k_{ip} C^l_{js} r^{sp} eta_k eta_l."""
    n = C.shape[0]
    eta = sp.symbols(f"x0:{n}")
    W = sp.zeros(n, n)
    for i, j in product(range(n), repeat=2):
        expr = sum(sp.Rational(C[s, i, j]) * eta[s] for s in range(n)) * theta_expr
        for k, l, p, s in product(range(n), repeat=4):
            c = C[k, i, p] * C[l, j, s] * r[s, p]
            if c:
                expr += sp.Rational(c) * eta[k] * eta[l]
        W[i, j] = sp.expand(expr)
    return W, eta


def sympy_jacobi(W, eta):
    n = len(eta)
    out = {}
    for j, k, l in product(range(n), repeat=3):
        e = sum(
            W[i, j] * sp.diff(W[k, l], eta[i]) + W[i, k] * sp.diff(W[l, j], eta[i]) + W[i, l] * sp.diff(W[j, k], eta[i])
            for i in range(n)
        )
        out[j, k, l] = sp.expand(e)
    return out


def sympy_coefficients(expr, eta):
    if expr == 0:
        return {}
    poly = sp.Poly(expr, *eta)
    return {tuple(m): Fraction(int(c.p), int(c.q)) for m, c in poly.terms() if c != 0}


def random_skew_matrix(n, rng, scale=5):
    r = np.full((n, n), Fraction(0), dtype=object)
    for i in range(n):
        for j in range(i + 1, n):
            v = Fraction(int(rng.integers(-scale, scale + 1)), int(rng.integers(1, 4)))
            r[i, j], r[j, i] = v, -v
    return r
