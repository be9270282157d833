"""Families of polynomials in eta_1..eta_n with exact coefficients.

A :class:`PolyFamily` holds, for each degree d, a dense coefficient tensor of
shape ``(n,)*d + free_shape``: the first d axes are eta slots (kept symmetric),
the trailing axes index the family member.  For a member ``idx`` the polynomial
is  sum_d  T_d[a1..ad, idx] * eta_a1 * ... * eta_ad.  Keeping the eta slots
symmetrized makes equality of polynomials equality of tensors.
"""
from __future__ import annotations

import math
import string
from collections import Counter
from fractions import Fraction
from itertools import combinations_with_replacement, permutations
from typing import Mapping

import numpy as np

from .exact import QTensor, contract, to_fraction

_SLOT_LETTERS = string.ascii_uppercase


def _multinomial(counts) -> int:
    total = math.factorial(sum(counts))
    for c in counts:
        total //= math.factorial(c)
    return total


class PolyFamily:
    __slots__ = ("n", "free_shape", "parts")
    __hash__ = None

    def __init__(self, n: int, free_shape: tuple, parts: Mapping[int, QTensor] | None = None, *, symmetric=False):
        self.n = n
        self.free_shape = tuple(free_shape)
        clean = {}
        for d, t in (parts or {}).items():
            if t.shape != (n,) * d + self.free_shape:
                raise ValueError(f"degree-{d} part has shape {t.shape}")
            if not symmetric:
                t = t.symmetrize(range(d))
            if not t.is_zero():
                clean[d] = t
        self.parts = clean

    # -- constructors -------------------------------------------------------------
    @classmethod
    def zero(cls, n: int, free_shape=()) -> "PolyFamily":
        return cls(n, free_shape)

    @classmethod
    def constant(cls, n: int, value=1) -> "PolyFamily":
        return cls(n, (), {0: QTensor.from_values(value)}, symmetric=True)

    @classmethod
    def from_monomials(cls, n: int, terms: Mapping[tuple, object]) -> "PolyFamily":
        """Scalar polynomial from ``{exponent_vector: coefficient}``."""
        by_degree: dict[int, np.ndarray] = {}
        for exps, coeff in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != n or min(exps, default=0) < 0:
                raise ValueError(f"bad exponent vector {exps}")
            d = sum(exps)
            arr = by_degree.setdefault(d, np.full((n,) * d, Fraction(0), dtype=object))
            slots = [i for i, e in enumerate(exps) for _ in range(e)]
            share = to_fraction(coeff) / _multinomial([e for e in exps if e])
            for perm in set(permutations(slots)):
                arr[perm] += share
        return cls(n, (), {d: QTensor.from_values(a) for d, a in by_degree.items()}, symmetric=True)

    # -- queries ------------------------------------------------------------------
    @property
    def degree(self) -> int:
        return max(self.parts, default=-1)

    def is_zero(self) -> bool:
        return not self.parts

    def part(self, d: int) -> QTensor:
        if d in self.parts:
            return self.parts[d]
        return QTensor.zeros((self.n,) * d + self.free_shape)

    def nonzero_members(self) -> list[tuple]:
        hits = set()
        for d, t in self.parts.items():
            for idx in t.nonzero_indices():
                hits.add(idx[d:])
        return sorted(hits)

    def coefficients(self, member: tuple = ()) -> dict[tuple, Fraction]:
        """Monomial coefficients ``{exponent_vector: value}`` of one member."""
        member = tuple(member)
        out = {}
        for d, t in self.parts.items():
            for combo in combinations_with_replacement(range(self.n), d):
                v = t[combo + member]
                if v:
                    exps = [0] * self.n
                    for a in combo:
                        exps[a] += 1
                    out[tuple(exps)] = v * _multinomial(Counter(combo).values())
        return out

    def max_abs_coefficient(self) -> Fraction:
        best = Fraction(0)
        for d, t in self.parts.items():
            # largest monomial coefficient is bounded by slot entry times multinomial
            for idx in t.nonzero_indices():
                combo = idx[:d]
                v = abs(t[idx]) * _multinomial(Counter(combo).values())
                best = max(best, v)
        return best

    def evaluate(self, eta) -> np.ndarray:
        """Evaluate every member at one point (floats or exact rationals)."""
        eta = np.asarray(eta)
        exact = eta.dtype == object or np.issubdtype(eta.dtype, np.integer)
        total = None
        for d, t in self.parts.items():
            arr = t.to_fractions() if exact else t.to_float()
            for _ in range(d):
                arr = np.tensordot(eta, arr, axes=([0], [0]))
            total = arr if total is None else total + arr
        if total is None:
            total = np.zeros(self.free_shape, dtype=object if exact else float)
            if exact:
                total[...] = Fraction(0)
        return total

    # -- algebra ------------------------------------------------------------------
    def _check(self, other: "PolyFamily"):
        if self.n != other.n or self.free_shape != other.free_shape:
            raise ValueError("incompatible polynomial families")

    def __add__(self, other: "PolyFamily") -> "PolyFamily":
        self._check(other)
        parts = dict(self.parts)
        for d, t in other.parts.items():
            parts[d] = parts[d] + t if d in parts else t
        return PolyFamily(self.n, self.free_shape, parts, symmetric=True)

    def __neg__(self) -> "PolyFamily":
        return PolyFamily(self.n, self.free_shape, {d: -t for d, t in self.parts.items()}, symmetric=True)

    def __sub__(self, other: "PolyFamily") -> "PolyFamily":
        return self + (-other)

    def __mul__(self, c) -> "PolyFamily":
        return PolyFamily(self.n, self.free_shape, {d: t * c for d, t in self.parts.items()}, symmetric=True)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, PolyFamily):
            return NotImplemented
        return (self.n, self.free_shape) == (other.n, other.free_shape) and (self - other).is_zero()

    def derivative(self) -> "PolyFamily":
        """Gradient: new family with the differentiation index prepended to the free axes."""
        parts = {}
        for d, t in self.parts.items():
            if d == 0:
                continue
            # d/d eta_i of T[a1..ad] eta^d is d * T[i, a2..ad] eta^(d-1) by symmetry
            slots = _SLOT_LETTERS[: d - 1]
            free = string.ascii_lowercase[: len(self.free_shape)]
            spec = f"z{slots}{free}->{slots}z{free}"
            parts[d - 1] = t.einsum(spec) * d
        return PolyFamily(self.n, (self.n,) + self.free_shape, parts, symmetric=True)

    def product(self, other: "PolyFamily", spec: str) -> "PolyFamily":
        """Multiply two families, combining free indices by an einsum spec.

        ``spec`` names only free axes, e.g. ``"ij,ikl->jkl"``; eta slots are
        multiplied as an outer product and re-symmetrized.
        """
        if self.n != other.n:
            raise ValueError("families over different variables")
        (fa, fb), fout = spec.split("->")[0].split(","), spec.split("->")[1]
        parts: dict[int, QTensor] = {}
        for da, ta in self.parts.items():
            for db, tb in other.parts.items():
                sa, sb = _SLOT_LETTERS[:da], _SLOT_LETTERS[da : da + db]
                term = contract(f"{sa}{fa},{sb}{fb}->{sa}{sb}{fout}", ta, tb)
                d = da + db
                parts[d] = parts[d] + term if d in parts else term
        free_shape = _output_shape(fa, fb, fout, self.free_shape, other.free_shape)
        return PolyFamily(self.n, free_shape, parts)

    def rearrange(self, spec: str) -> "PolyFamily":
        """Permute / take diagonals of the free axes, e.g. ``"jkl->klj"``."""
        src, dst = spec.split("->")
        parts = {d: t.einsum(f"...{src}->...{dst}") for d, t in self.parts.items()}
        shape = dict(zip(src, self.free_shape))
        return PolyFamily(self.n, tuple(shape[c] for c in dst), parts, symmetric=True)


def _output_shape(fa, fb, fout, sa, sb) -> tuple:
    sizes = dict(zip(fa, sa))
    sizes.update(zip(fb, sb))
    return tuple(sizes[c] for c in fout)
