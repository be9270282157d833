"""Exact rational tensors stored as an integer array over one common denominator.

Every entry of a :class:`QTensor` equals ``num[idx] / den``.  Integer arrays are
kept as ``int64`` while every intermediate value provably fits, and fall back to
``object`` arrays of Python ints otherwise, so results never depend on rounding.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np

_INT64_LIMIT = 2**62


def to_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected on purpose: a float has already lost exactness.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rational scalars")
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_fraction(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _max_abs_int(arr: np.ndarray) -> int:
    if arr.size == 0:
        return 0
    if arr.dtype == object:
        return max(abs(int(x)) for x in arr.flat)
    return int(np.abs(arr).max())


def _shrink(arr: np.ndarray) -> np.ndarray:
    if arr.dtype == object and _max_abs_int(arr) < _INT64_LIMIT:
        return arr.astype(np.int64)
    return arr


def _widen(arr: np.ndarray) -> np.ndarray:
    if arr.dtype == object:
        return arr
    return np.array([int(x) for x in arr.flat], dtype=object).reshape(arr.shape)


class QTensor:
    """Dense tensor of exact rationals."""

    __slots__ = ("num", "den")
    __array_priority__ = 100
    __hash__ = None

    def __init__(self, num, den: int = 1):
        num = np.asarray(num)
        if num.dtype != object and not np.issubdtype(num.dtype, np.integer):
            raise TypeError("QTensor numerators must be integers")
        if num.dtype != object:
            num = num.astype(np.int64)
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = -num, -den
        self.num, self.den = _normalize(num, den)

    # -- construction -------------------------------------------------------------
    @classmethod
    def from_values(cls, values) -> "QTensor":
        """Build from a nested sequence / array of ints, Fractions or "p/q" strings."""
        if isinstance(values, QTensor):
            return values
        arr = np.asarray(values, dtype=object)
        fracs = [to_fraction(v) for v in arr.flat]
        den = reduce(math.lcm, (f.denominator for f in fracs), 1)
        num = np.array([f.numerator * (den // f.denominator) for f in fracs], dtype=object)
        return cls(_shrink(num.reshape(arr.shape)), den)

    @classmethod
    def zeros(cls, shape) -> "QTensor":
        return cls(np.zeros(shape, dtype=np.int64), 1)

    # -- basic protocol -----------------------------------------------------------
    @property
    def shape(self) -> tuple:
        return self.num.shape

    @property
    def ndim(self) -> int:
        return self.num.ndim

    def __getitem__(self, idx):
        part = self.num[idx]
        if isinstance(part, np.ndarray):
            return QTensor(part.copy(), self.den)
        return Fraction(int(part), self.den)

    def __repr__(self) -> str:
        return f"QTensor(shape={self.shape}, den={self.den}, nonzero={self.count_nonzero()})"

    def to_fractions(self) -> np.ndarray:
        out = np.empty(self.shape, dtype=object)
        for idx, v in np.ndenumerate(self.num):
            out[idx] = Fraction(int(v), self.den)
        return out

    def to_float(self) -> np.ndarray:
        if self.num.dtype == object:
            return np.array([int(x) / self.den for x in self.num.flat], dtype=float).reshape(self.shape)
        return self.num.astype(float) / self.den

    def is_zero(self) -> bool:
        return not self.num.any()

    def count_nonzero(self) -> int:
        return int(np.count_nonzero(self.num))

    def max_abs(self) -> Fraction:
        return Fraction(_max_abs_int(self.num), self.den)

    def nonzero_indices(self) -> list[tuple[int, ...]]:
        return [tuple(int(i) for i in idx) for idx in zip(*np.nonzero(self.num))]

    # -- arithmetic ---------------------------------------------------------------
    def _aligned(self, other: "QTensor"):
        other = _coerce(other, self.shape)
        den = math.lcm(self.den, other.den)
        fa, fb = den // self.den, den // other.den
        a, b = self.num, other.num
        bound = _max_abs_int(a) * fa + _max_abs_int(b) * fb
        if bound >= _INT64_LIMIT:
            a, b = _widen(a), _widen(b)
        return a * fa, b * fb, den

    def __add__(self, other):
        a, b, den = self._aligned(other)
        return QTensor(a + b, den)

    __radd__ = __add__

    def __sub__(self, other):
        a, b, den = self._aligned(other)
        return QTensor(a - b, den)

    def __rsub__(self, other):
        return -(self - other)

    def __neg__(self):
        return QTensor(-self.num, self.den)

    def __mul__(self, scalar):
        if isinstance(scalar, QTensor):
            return NotImplemented
        f = to_fraction(scalar)
        num = self.num
        if _max_abs_int(num) * abs(f.numerator) >= _INT64_LIMIT:
            num = _widen(num)
        return QTensor(num * f.numerator, self.den * f.denominator)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        f = to_fraction(scalar)
        return self * Fraction(f.denominator, f.numerator)

    def __eq__(self, other):
        if not isinstance(other, QTensor):
            return NotImplemented
        if self.shape != other.shape:
            return False
        return self.den == other.den and bool(np.array_equal(self.num, other.num))

    def einsum(self, spec: str) -> "QTensor":
        """Single-operand index rearrangement, e.g. ``"abc->cab"``."""
        return QTensor(np.einsum(spec, self.num), self.den)

    def reshape(self, *shape) -> "QTensor":
        return QTensor(self.num.reshape(*shape), self.den)

    def symmetrize(self, axes: Sequence[int]) -> "QTensor":
        """Average over all permutations of the given axes."""
        from itertools import permutations

        axes = list(axes)
        if len(axes) < 2:
            return self
        perms = list(permutations(axes))
        total = None
        for p in perms:
            order = list(range(self.ndim))
            for src, dst in zip(axes, p):
                order[src] = dst
            term = QTensor(np.transpose(self.num, order), self.den)
            total = term if total is None else total + term
        return total / len(perms)


def _coerce(other, shape) -> QTensor:
    if isinstance(other, QTensor):
        if other.shape != shape:
            raise ValueError(f"shape mismatch {other.shape} vs {shape}")
        return other
    f = to_fraction(other)
    if f == 0:
        return QTensor.zeros(shape)
    return QTensor(np.full(shape, f.numerator, dtype=object), f.denominator)


def _normalize(num: np.ndarray, den: int):
    if den == 1:
        return _shrink(num), 1
    if not num.any():
        return (num if num.dtype != object else num.astype(np.int64)), 1
    g = int(np.gcd.reduce(num.ravel())) if num.dtype != object else reduce(math.gcd, (int(x) for x in num.flat), 0)
    g = math.gcd(g, den)
    if g > 1:
        num = num // g
        den //= g
    return _shrink(num), den


def contract(spec: str, *operands: QTensor) -> QTensor:
    """Exact ``einsum`` over rational tensors.

    Uses int64 when a crude bound (product of operand maxima times the size of
    every summed index) stays below 2**62; each partial sum is bounded by the
    same quantity, so no intermediate can overflow.  Otherwise Python ints.
    """
    ops = [o if isinstance(o, QTensor) else QTensor.from_values(o) for o in operands]
    den = 1
    for o in ops:
        den *= o.den
    inputs, output = spec.split("->")
    terms = inputs.split(",")
    sizes: dict[str, int] = {}
    for term, o in zip(terms, ops):
        for letter, dim in zip(term, o.shape):
            sizes[letter] = dim
    summed = set("".join(terms)) - set(output)
    bound = 1
    for o in ops:
        m = _max_abs_int(o.num)
        if m == 0:
            out_shape = tuple(sizes[c] for c in output)
            return QTensor.zeros(out_shape)
        bound *= m
    for letter in summed:
        bound *= sizes[letter]
    if bound < _INT64_LIMIT:
        nums = [o.num if o.num.dtype != object else o.num.astype(np.int64) for o in ops]
    else:
        nums = [_widen(o.num) for o in ops]
    result = np.einsum(spec, *nums, optimize=len(ops) > 2)
    return QTensor(np.asarray(result), den)


def stack(tensors: Iterable[QTensor]) -> QTensor:
    tensors = list(tensors)
    den = reduce(math.lcm, (t.den for t in tensors), 1)
    wide = any(_max_abs_int(t.num) * (den // t.den) >= _INT64_LIMIT for t in tensors)
    nums = [(_widen(t.num) if wide else t.num) * (den // t.den) for t in tensors]
    return QTensor(np.stack(nums), den)
