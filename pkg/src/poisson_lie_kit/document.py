"""Input documents: one JSON object per file, all numbers exact.

Keys (indices are 1-based, values are integers or "p/q" strings):

    dim                     integer; optional when ``name`` is a catalog entry and C is absent
    name                    text label or catalog name ("aff1", "gl:2", ...)
    C                       [[i, j, k, value], ...] meaning C^k_{ij} = value
    lower_triangular_input  bool; if true each C entry also sets C^k_{ji} = -value
    r                       [[i, j, value], ...] meaning r^{ij}; the skew partner is filled in
    alpha                   [[i, j, k, value], ...] meaning alpha^{ij}_k; skew partner filled in
    theta                   [[[e_1, ..., e_n], value], ...] monomials of Theta(eta)
    matrix_basis            [[[row], ...], ...] one square matrix per basis element
    seed                    integer
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np

from .cocycle import CocycleAlpha, RMatrix
from .errors import (
    DuplicateEntry,
    IndexOutOfRange,
    MissingField,
    NonRationalValue,
    ParseError,
    UnknownAlgebra,
)
from .exact import QTensor, format_fraction, to_fraction
from .lie import LieAlgebra, builtin_algebra

KNOWN_KEYS = ("dim", "name", "C", "lower_triangular_input", "r", "alpha", "theta", "matrix_basis", "seed")


@dataclass(frozen=True)
class InputDocument:
    dim: int
    name: str = ""
    C: tuple | None = None  # ((i, j, k, Fraction), ...) 1-based
    lower_triangular_input: bool = False
    r: tuple | None = None  # ((i, j, Fraction), ...)
    alpha: tuple | None = None  # ((i, j, k, Fraction), ...)
    theta: tuple | None = None  # ((exponents, Fraction), ...)
    matrix_basis: tuple | None = None  # nested tuples of Fraction
    seed: int | None = None


def _rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise NonRationalValue(f"{where}: {value!r} is not an exact rational (write it as a \"p/q\" string)")
    try:
        return to_fraction(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise NonRationalValue(f"{where}: {value!r} is not an exact rational") from None


def _integer(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{where}: expected an integer, got {value!r}")
    return value


def _entries(raw: Any, key: str, arity: int, dim: int) -> tuple:
    if not isinstance(raw, list):
        raise ParseError(f"{key}: expected a list of entries")
    seen = set()
    out = []
    for pos, entry in enumerate(raw):
        where = f"{key}[{pos}]"
        if not isinstance(entry, list) or len(entry) != arity + 1:
            raise ParseError(f"{where}: expected {arity} indices and a value")
        idx = tuple(_integer(v, where) for v in entry[:arity])
        for v in idx:
            if not 1 <= v <= dim:
                raise IndexOutOfRange(f"{where}: index {v} outside 1..{dim}")
        if idx in seen:
            raise DuplicateEntry(f"{where}: index tuple {idx} given twice")
        seen.add(idx)
        out.append(idx + (_rational(entry[arity], where),))
    return tuple(sorted(out))


def _theta(raw: Any, dim: int) -> tuple:
    if not isinstance(raw, list):
        raise ParseError("theta: expected a list of [exponents, value] pairs")
    seen = set()
    out = []
    for pos, entry in enumerate(raw):
        where = f"theta[{pos}]"
        if not isinstance(entry, list) or len(entry) != 2 or not isinstance(entry[0], list):
            raise ParseError(f"{where}: expected [exponents, value]")
        exps = tuple(_integer(v, where) for v in entry[0])
        if len(exps) != dim:
            raise IndexOutOfRange(f"{where}: exponent vector has length {len(exps)}, expected {dim}")
        if min(exps, default=0) < 0:
            raise ParseError(f"{where}: negative exponent")
        if exps in seen:
            raise DuplicateEntry(f"{where}: monomial {exps} given twice")
        seen.add(exps)
        out.append((exps, _rational(entry[1], where)))
    return tuple(sorted(out))


def _matrices(raw: Any, dim: int) -> tuple:
    where = "matrix_basis"
    if not isinstance(raw, list) or len(raw) != dim:
        raise ParseError(f"{where}: expected {dim} matrices")
    mats = []
    size = None
    for p, mat in enumerate(raw):
        if not isinstance(mat, list) or not all(isinstance(row, list) for row in mat):
            raise ParseError(f"{where}[{p}]: expected a list of rows")
        size = len(mat) if size is None else size
        if len(mat) != size or any(len(row) != size for row in mat):
            raise ParseError(f"{where}[{p}]: expected a {size}x{size} matrix")
        mats.append(tuple(tuple(_rational(v, f"{where}[{p}]") for v in row) for row in mat))
    return tuple(mats)


def _no_duplicate_keys(pairs):
    keys = [k for k, _ in pairs]
    dupes = sorted({k for k in keys if keys.count(k) > 1})
    if dupes:
        raise DuplicateEntry(f"key(s) given twice: {', '.join(dupes)}")
    return dict(pairs)


def parse_input(text: str) -> InputDocument:
    """Parse and validate one document (see module docstring for the format)."""
    try:
        raw = json.loads(text, object_pairs_hook=_no_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(raw, dict):
        raise ParseError("top level must be an object", 1, 1)
    unknown = sorted(set(raw) - set(KNOWN_KEYS))
    if unknown:
        raise ParseError(f"unknown key(s): {', '.join(unknown)}")
    name = raw.get("name", "")
    if not isinstance(name, str):
        raise ParseError("name: expected text")
    if "dim" in raw:
        dim = _integer(raw["dim"], "dim")
        if dim < 1:
            raise ParseError("dim: must be positive")
    elif "C" not in raw and name:
        try:
            dim = builtin_algebra(name).dim
        except UnknownAlgebra:
            raise MissingField(f"dim: required because {name!r} is not a catalog algebra") from None
    else:
        raise MissingField("dim")
    if "C" not in raw:
        if not name:
            raise MissingField("C (or a catalog name)")
        try:
            catalog = builtin_algebra(name)
        except UnknownAlgebra:
            raise MissingField(f"C: required because {name!r} is not a catalog algebra") from None
        if catalog.dim != dim:
            raise ParseError(f"dim: {dim} does not match catalog algebra {name!r} of dimension {catalog.dim}")
    lower = raw.get("lower_triangular_input", False)
    if not isinstance(lower, bool):
        raise ParseError("lower_triangular_input: expected true or false")
    seed = raw.get("seed")
    return InputDocument(
        dim=dim,
        name=name,
        C=_entries(raw["C"], "C", 3, dim) if "C" in raw else None,
        lower_triangular_input=lower,
        r=_entries(raw["r"], "r", 2, dim) if "r" in raw else None,
        alpha=_entries(raw["alpha"], "alpha", 3, dim) if "alpha" in raw else None,
        theta=_theta(raw["theta"], dim) if "theta" in raw else None,
        matrix_basis=_matrices(raw["matrix_basis"], dim) if "matrix_basis" in raw else None,
        seed=_integer(seed, "seed") if seed is not None else None,
    )


def dump_input(doc: InputDocument) -> str:
    """Canonical text: sorted keys and entries, rationals as "p/q" strings."""
    f = format_fraction
    out: dict[str, Any] = {"dim": doc.dim}
    if doc.name:
        out["name"] = doc.name
    if doc.C is not None:
        out["C"] = [[*e[:3], f(e[3])] for e in doc.C]
    if doc.lower_triangular_input:
        out["lower_triangular_input"] = True
    if doc.r is not None:
        out["r"] = [[*e[:2], f(e[2])] for e in doc.r]
    if doc.alpha is not None:
        out["alpha"] = [[*e[:3], f(e[3])] for e in doc.alpha]
    if doc.theta is not None:
        out["theta"] = [[list(exps), f(v)] for exps, v in doc.theta]
    if doc.matrix_basis is not None:
        out["matrix_basis"] = [[[f(v) for v in row] for row in mat] for mat in doc.matrix_basis]
    if doc.seed is not None:
        out["seed"] = doc.seed
    return json.dumps(out, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------------
# documents -> library objects


def _skew_fill(entries: tuple, shape: tuple) -> np.ndarray:
    """Place entries (first two indices form the skew pair); fill missing partners."""
    arr = np.full(shape, Fraction(0), dtype=object)
    given = {e[:-1] for e in entries}
    for e in entries:
        idx = tuple(i - 1 for i in e[:-1])
        arr[idx] = e[-1]
        partner = (e[1], e[0]) + e[2:-1]
        if partner not in given:
            arr[(idx[1], idx[0]) + idx[2:]] = -e[-1]
    return arr


def document_algebra(doc: InputDocument) -> LieAlgebra:
    """The algebra a document describes; raises NotAntisymmetric for bad raw C."""
    if doc.C is None:
        base = builtin_algebra(doc.name)
        if doc.matrix_basis is None:
            return base
        return LieAlgebra(base.dim, base.C, base.name, matrix_basis=_basis_tensor(doc))
    n = doc.dim
    C = np.full((n, n, n), Fraction(0), dtype=object)
    placed = set()
    for i, j, k, v in doc.C:
        C[k - 1, i - 1, j - 1] = v
        placed.add((i, j, k))
        if doc.lower_triangular_input:
            if (j, i, k) in placed and C[k - 1, j - 1, i - 1] != -v:
                raise DuplicateEntry(f"C entries ({i},{j},{k}) and ({j},{i},{k}) conflict under lower_triangular_input")
            C[k - 1, j - 1, i - 1] = -v
            placed.add((j, i, k))
    basis = _basis_tensor(doc) if doc.matrix_basis is not None else None
    return LieAlgebra(n, QTensor.from_values(C), doc.name, matrix_basis=basis)


def _basis_tensor(doc: InputDocument) -> QTensor:
    return QTensor.from_values(np.array(doc.matrix_basis, dtype=object))


def document_rmatrix(doc: InputDocument) -> RMatrix:
    """r from the document, or the zero r-matrix when absent."""
    if doc.r is None:
        return RMatrix.zero(doc.dim)
    return RMatrix(QTensor.from_values(_skew_fill(doc.r, (doc.dim,) * 2)))


def document_alpha(doc: InputDocument) -> CocycleAlpha | None:
    if doc.alpha is None:
        return None
    return CocycleAlpha(QTensor.from_values(_skew_fill(doc.alpha, (doc.dim,) * 3)))


def document_theta_terms(doc: InputDocument) -> dict | None:
    if doc.theta is None:
        return None
    return {exps: v for exps, v in doc.theta}
