"""Exact rational linear algebra.

Everything here works over :class:`fractions.Fraction`.  Elimination runs on
integer rows (denominators cleared, content divided out after every step) and
only converts back to fractions when normalising pivots, which keeps the
coefficient growth in check without ever touching floating point.

Subspaces are stored by a reduced-row-echelon basis, so two subspaces are
equal exactly when their basis matrices are.  Matrices of ``gl_n`` are
flattened row-major into ``Q^(n*n)`` when a subspace of matrices is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

from .errors import DimensionError, DomainError, InvertibilityError, SchemaError

__all__ = [
    "Rational", "INFINITY", "to_rational", "format_rational", "parse_rational", "vp",
    "RMatrix", "Subspace", "Flag",
    "rref", "kernel", "intersect", "subspace_sum", "dim_sum", "dim_intersection", "flag_of_matrix",
]

Rational = Fraction


@total_ordering
class _PlusInfinity:
    """Value of ``v_p(0)``. Compares above every integer and is not one."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("fernkit.+inf")

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "+inf"


INFINITY = _PlusInfinity()


def to_rational(x) -> Fraction:
    """Coerce ints, Fractions and ``"a/b"`` strings. Floats are refused."""
    if isinstance(x, bool):
        raise SchemaError(f"boolean is not a rational: {x!r}")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    raise SchemaError(f"not an exact rational: {x!r}")


def parse_rational(s: str) -> Fraction:
    text = s.strip()
    try:
        if "/" in text:
            num, den = text.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError):
        raise SchemaError(f"cannot parse rational {s!r}") from None


def format_rational(q: Fraction) -> str:
    q = to_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _vp_int(m: int, p: int) -> int:
    k = 0
    while m % p == 0:
        m //= p
        k += 1
    return k


def vp(q, p: int):
    """p-adic valuation of a rational; ``INFINITY`` for zero."""
    if p < 2:
        raise DomainError(f"p must be a prime, got {p}")
    q = to_rational(q)
    if q == 0:
        return INFINITY
    return _vp_int(abs(q.numerator), p) - _vp_int(q.denominator, p)


# --------------------------------------------------------------------------
# elimination core


def _integer_row(row: Sequence[Fraction]) -> list[int]:
    den = 1
    for x in row:
        den = den * x.denominator // math.gcd(den, x.denominator)
    return [x.numerator * (den // x.denominator) for x in row]


def _primitive(row: list[int]) -> list[int]:
    g = math.gcd(*row)
    if g > 1:
        return [a // g for a in row]
    return row


def _rref_lists(rows: Sequence[Sequence[Fraction]], ncols: int):
    """Gauss-Jordan on integer rows. Returns (nonzero rref rows, pivot columns)."""
    work = [_primitive(_integer_row(r)) for r in rows]
    work = [r for r in work if any(r)]
    m = len(work)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        p = next((i for i in range(r, m) if work[i][c]), None)
        if p is None:
            continue
        work[r], work[p] = work[p], work[r]
        prow = work[r]
        pv = prow[c]
        for i in range(m):
            if i == r:
                continue
            f = work[i][c]
            if f:
                work[i] = _primitive([pv * a - f * b for a, b in zip(work[i], prow)])
        pivots.append(c)
        r += 1
    out = []
    for i, c in enumerate(pivots):
        pv = work[i][c]
        out.append([Fraction(a, pv) for a in work[i]])
    return out, pivots


# --------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class RMatrix:
    """Dense immutable matrix of Fractions."""

    rows: int
    cols: int
    entries: tuple

    def __init__(self, data, cols: int | None = None):
        data = [tuple(to_rational(x) for x in row) for row in data]
        if cols is None:
            cols = len(data[0]) if data else 0
        if any(len(row) != cols for row in data):
            raise DimensionError("ragged matrix rows")
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", tuple(data))

    @classmethod
    def identity(cls, n: int) -> "RMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RMatrix":
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def diag(cls, values) -> "RMatrix":
        values = list(values)
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns, nrows: int | None = None) -> "RMatrix":
        columns = [list(c) for c in columns]
        if nrows is None:
            nrows = len(columns[0]) if columns else 0
        return cls([[col[i] for col in columns] for i in range(nrows)], len(columns))

    @classmethod
    def from_flat(cls, vec, n: int) -> "RMatrix":
        """Inverse of :meth:`flatten` for square matrices."""
        vec = list(vec)
        if len(vec) != n * n:
            raise DimensionError(f"expected {n * n} entries, got {len(vec)}")
        return cls([vec[i * n:(i + 1) * n] for i in range(n)], n)

    @classmethod
    def from_json(cls, obj) -> "RMatrix":
        if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
            raise SchemaError("matrix must be an array of arrays")
        return cls(obj)

    def to_json(self) -> list:
        return [[format_rational(x) for x in row] for row in self.entries]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(x) for x in row) for row in self.entries)
        return f"RMatrix([{body}])"

    @property
    def shape(self):
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.cols)]

    def flatten(self) -> tuple:
        return tuple(x for row in self.entries for x in row)

    def transpose(self) -> "RMatrix":
        return RMatrix([self.column(j) for j in range(self.cols)], self.rows)

    T = property(transpose)

    def __matmul__(self, other: "RMatrix") -> "RMatrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        ocols = other.columns()
        return RMatrix(
            [[sum(a * b for a, b in zip(row, col) if a and b) for col in ocols] for row in self.entries],
            other.cols,
        )

    def __add__(self, other: "RMatrix") -> "RMatrix":
        if self.shape != other.shape:
            raise DimensionError("shape mismatch")
        return RMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.cols)

    def __sub__(self, other: "RMatrix") -> "RMatrix":
        if self.shape != other.shape:
            raise DimensionError("shape mismatch")
        return RMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.cols)

    def scale(self, c) -> "RMatrix":
        c = to_rational(c)
        return RMatrix([[c * a for a in row] for row in self.entries], self.cols)

    def apply(self, vec) -> tuple:
        """Matrix times column vector."""
        vec = [to_rational(x) for x in vec]
        if len(vec) != self.cols:
            raise DimensionError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.entries)

    def diagonal(self) -> tuple:
        return tuple(self.entries[i][i] for i in range(min(self.rows, self.cols)))

    def is_zero(self) -> bool:
        return not any(x for row in self.entries for x in row)

    def is_upper(self) -> bool:
        return all(self.entries[i][j] == 0 for i in range(self.rows) for j in range(min(i, self.cols)))

    def is_lower(self) -> bool:
        return all(self.entries[i][j] == 0 for i in range(self.rows) for j in range(i + 1, self.cols))

    def rank(self) -> int:
        return len(_rref_lists(self.entries, self.cols)[1])

    def is_invertible(self) -> bool:
        return self.is_square and self.rank() == self.rows

    def inverse(self) -> "RMatrix":
        if not self.is_square:
            raise InvertibilityError("non-square matrix")
        n = self.rows
        aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(self.entries)]
        red, piv = _rref_lists(aug, 2 * n)
        if piv[:n] != list(range(n)) or len(piv) < n:
            raise InvertibilityError("matrix is singular")
        return RMatrix([row[n:] for row in red], n)


def _as_matrix(M) -> RMatrix:
    return M if isinstance(M, RMatrix) else RMatrix(M)


def rref(M) -> tuple[RMatrix, int]:
    """Reduced row-echelon form (same shape, zero rows at the bottom) and rank."""
    M = _as_matrix(M)
    red, piv = _rref_lists(M.entries, M.cols)
    zero = [Fraction(0)] * M.cols
    full = red + [zero] * (M.rows - len(red))
    return RMatrix(full, M.cols), len(piv)


# --------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    """Subspace of ``Q^ambient_dim`` held as its canonical rref basis.

    The constructor trusts its input; build through :meth:`span` unless the
    rows are already reduced.
    """

    ambient_dim: int
    basis: RMatrix

    @classmethod
    def span(cls, vectors: Iterable, ambient_dim: int) -> "Subspace":
        vecs = [[to_rational(x) for x in v] for v in vectors]
        if any(len(v) != ambient_dim for v in vecs):
            raise DimensionError(f"vectors must have length {ambient_dim}")
        red, _ = _rref_lists(vecs, ambient_dim)
        return cls(ambient_dim, RMatrix(red, ambient_dim))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, RMatrix([], ambient_dim))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, RMatrix.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def vectors(self) -> list[tuple]:
        return list(self.basis.entries)

    def contains(self, v) -> bool:
        v = [to_rational(x) for x in v]
        if len(v) != self.ambient_dim:
            raise DimensionError("vector length mismatch")
        return len(_rref_lists(list(self.basis.entries) + [v], self.ambient_dim)[1]) == self.dim

    __contains__ = contains

    def is_subspace_of(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        return all(other.contains(v) for v in self.basis.entries)

    def __le__(self, other):
        return self.is_subspace_of(other)

    def __add__(self, other):
        return subspace_sum(self, other)

    def __and__(self, other):
        return intersect(self, other)

    def to_json(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "dim": self.dim, "basis": self.basis.to_json()}


def _check_ambient(A: Subspace, B: Subspace):
    if A.ambient_dim != B.ambient_dim:
        raise DimensionError(f"ambient dimensions differ: {A.ambient_dim} vs {B.ambient_dim}")


def kernel(M) -> Subspace:
    """Null space ``{v : M v = 0}`` as a subspace of column vectors."""
    M = _as_matrix(M)
    red, piv = _rref_lists(M.entries, M.cols)
    free = [c for c in range(M.cols) if c not in set(piv)]
    vecs = []
    for fc in free:
        v = [Fraction(0)] * M.cols
        v[fc] = Fraction(1)
        for row, pc in zip(red, piv):
            v[pc] = -row[fc]
        vecs.append(v)
    return Subspace.span(vecs, M.cols)


def subspace_sum(A: Subspace, B: Subspace) -> Subspace:
    _check_ambient(A, B)
    return Subspace.span(list(A.basis.entries) + list(B.basis.entries), A.ambient_dim)


def dim_sum(A: Subspace, B: Subspace) -> int:
    _check_ambient(A, B)
    return len(_rref_lists(list(A.basis.entries) + list(B.basis.entries), A.ambient_dim)[1])


def dim_intersection(A: Subspace, B: Subspace) -> int:
    """``dim(A ∩ B)`` by Grassmann, without building a basis."""
    return A.dim + B.dim - dim_sum(A, B)


def intersect(A: Subspace, B: Subspace) -> Subspace:
    """``A ∩ B`` via the kernel of ``[A^T | -B^T]``."""
    _check_ambient(A, B)
    if A.dim == 0 or B.dim == 0:
        return Subspace.zero(A.ambient_dim)
    d = A.ambient_dim
    stacked = RMatrix(
        [[A.basis[k, i] for k in range(A.dim)] + [-B.basis[k, i] for k in range(B.dim)] for i in range(d)],
        A.dim + B.dim,
    )
    coeffs = kernel(stacked)
    vecs = []
    for c in coeffs.basis.entries:
        vecs.append([sum(c[k] * A.basis[k, i] for k in range(A.dim)) for i in range(d)])
    return Subspace.span(vecs, d)


# --------------------------------------------------------------------------
# flags


@dataclass(frozen=True)
class Flag:
    """Complete flag ``V_1 ⊂ ... ⊂ V_n`` with ``dim V_i = i``."""

    n: int
    steps: tuple

    def __post_init__(self):
        steps = tuple(self.steps)
        object.__setattr__(self, "steps", steps)
        if len(steps) != self.n:
            raise DimensionError(f"a complete flag of Q^{self.n} has {self.n} steps")
        for i, s in enumerate(steps):
            if s.ambient_dim != self.n or s.dim != i + 1:
                raise DimensionError(f"step {i + 1} has dimension {s.dim}")
            if i and not steps[i - 1].is_subspace_of(s):
                raise DimensionError(f"step {i} is not contained in step {i + 1}")

    @classmethod
    def from_vectors(cls, vectors, n: int | None = None) -> "Flag":
        """Flag whose i-th step is spanned by the first i vectors.

        ``n - 1`` vectors suffice; the last step is then the whole space.
        Pass ``n`` when the list may be empty (rank one).
        """
        vectors = [[to_rational(x) for x in v] for v in vectors]
        if n is None:
            if not vectors:
                raise DimensionError("no vectors given and no dimension to infer")
            n = len(vectors[0])
        if any(len(v) != n for v in vectors):
            raise DimensionError(f"flag vectors must have length {n}")
        if n == 1 and not vectors:
            return cls.standard(1)
        if len(vectors) not in (n - 1, n):
            raise DimensionError(f"need {n - 1} or {n} vectors for a flag of Q^{n}")
        steps = [Subspace.span(vectors[:i], n) for i in range(1, len(vectors) + 1)]
        if len(steps) == n - 1:
            steps.append(Subspace.full(n))
        return cls(n, tuple(steps))

    @classmethod
    def standard(cls, n: int) -> "Flag":
        return flag_of_matrix(RMatrix.identity(n))

    def __getitem__(self, i: int) -> Subspace:
        """``flag[i]`` is ``V_i`` (1-based; ``flag[0]`` is the zero space)."""
        if i == 0:
            return Subspace.zero(self.n)
        return self.steps[i - 1]

    def translate(self, g: RMatrix) -> "Flag":
        """The flag ``g·F``."""
        if not g.is_invertible():
            raise InvertibilityError("cannot translate a flag by a singular matrix")
        return Flag(self.n, tuple(Subspace.span([g.apply(v) for v in s.vectors()], self.n) for s in self.steps))

    def to_json(self) -> list:
        return [s.basis.to_json() for s in self.steps]


def flag_of_matrix(g) -> Flag:
    """Flag of the coset ``gB``: ``V_i`` spanned by the first i columns of g."""
    g = _as_matrix(g)
    if not g.is_invertible():
        raise InvertibilityError("flag_of_matrix needs an invertible matrix")
    cols = g.columns()
    return Flag(g.rows, tuple(Subspace.span(cols[:i], g.rows) for i in range(1, g.rows + 1)))
