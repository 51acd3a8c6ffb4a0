"""Points and tangent spaces of X = g~ x_g g~ for gl_n.

A point is a triple ``(g1 B, A, g2 B)`` with both ``Ad(g_i^-1) A`` upper
triangular.  Only the fibre over ``A = 0`` is handled for tangent spaces: a
first-order deformation ``(g1(1 + eps h1), eps A', g2(1 + eps h2))`` has
``h1, h2`` free in the strictly lower triangular chart and ``A'`` cut out by
``Ad(g_i^-1) A'`` upper triangular together with the graded-w0 condition
``diag(Ad(g1^-1) A') = reverse(diag(Ad(g2^-1) A'))``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .borel import graded_w0_constraints
from .errors import DomainError, InvertibilityError, UnsupportedError, ValidationError
from .exactlin import RMatrix, flag_of_matrix, kernel
from .weyl import (
    Permutation, all_permutations, cycle_count, is_distinct_simple_product, length, longest, relpos,
)

__all__ = [
    "LocalModelPoint", "TangentReport", "is_point", "stratum", "in_kappa_fiber_Tw0",
    "tangent_fiber_dim", "formula_dim", "standard_point", "tangent_sweep",
]


def _check(g, name):
    g = g if isinstance(g, RMatrix) else RMatrix(g)
    if not g.is_invertible():
        raise InvertibilityError(f"{name} must be invertible")
    return g


def is_point(g1, A, g2) -> bool:
    g1, g2 = _check(g1, "g1"), _check(g2, "g2")
    A = A if isinstance(A, RMatrix) else RMatrix(A)
    if not (g1.rows == g2.rows == A.rows == A.cols):
        raise DomainError("g1, A, g2 must all be n x n")
    return all((g.inverse() @ A @ g).is_upper() for g in (g1, g2))


@dataclass(frozen=True)
class LocalModelPoint:
    g1: RMatrix
    A: RMatrix
    g2: RMatrix

    def __post_init__(self):
        for name in ("g1", "A", "g2"):
            val = getattr(self, name)
            if not isinstance(val, RMatrix):
                object.__setattr__(self, name, RMatrix(val))
        if not is_point(self.g1, self.A, self.g2):
            raise ValidationError("Ad(g_i^-1) A must be upper triangular for i = 1, 2")

    @property
    def n(self) -> int:
        return self.g1.rows

    def translate(self, h: RMatrix) -> "LocalModelPoint":
        """Left action of G: ``(h g1, h A h^-1, h g2)``."""
        return LocalModelPoint(h @ self.g1, h @ self.A @ h.inverse(), h @ self.g2)


def standard_point(w: Permutation) -> LocalModelPoint:
    """The point ``(B, 0, wB)``."""
    n = w.n
    return LocalModelPoint(RMatrix.identity(n), RMatrix.zeros(n, n), w.matrix())


def stratum(x: LocalModelPoint) -> Permutation:
    return relpos(flag_of_matrix(x.g1), flag_of_matrix(x.g2))


def in_kappa_fiber_Tw0(x: LocalModelPoint) -> bool:
    d1 = (x.g1.inverse() @ x.A @ x.g1).diagonal()
    d2 = (x.g2.inverse() @ x.A @ x.g2).diagonal()
    return d1 == tuple(reversed(d2))


def formula_dim(w: Permutation) -> int:
    """``n(n-1) + cycles(w0 w^-1) + length(w0 w^-1)``."""
    n = w.n
    v = longest(n) * w.inverse()
    return n * (n - 1) + cycle_count(v) + length(v)


@dataclass(frozen=True)
class TangentReport:
    stratum: Permutation
    ambient_dim: int
    fiber_tangent_dim: int
    formula_dim: int
    distinct_simple: bool
    equality_with_Xw0: bool

    def to_json(self) -> dict:
        n = self.stratum.n
        return {
            "n": n,
            "stratum": self.stratum.to_json(),
            "stratum_cycles": self.stratum.cycle_notation(),
            "w0_winv": (longest(n) * self.stratum.inverse()).to_json(),
            "ambient_dim": self.ambient_dim,
            "fiber_tangent_dim": self.fiber_tangent_dim,
            "formula_dim": self.formula_dim,
            "dim_G": n * n,
            "distinct_simple": self.distinct_simple,
            "equality_with_Xw0": self.equality_with_Xw0,
        }


def _tangent_system(x: LocalModelPoint) -> RMatrix:
    """Constraints on ``(h1, A', h2)`` in coordinates of size m + n^2 + m.

    The h-blocks carry no constraint (zero columns).  On the A' block,
    ``Ad(g1^-1)`` plays the left side of the graded condition and
    ``Ad(g2^-1)`` the reversed one.
    """
    n = x.n
    m = n * (n - 1) // 2
    block = graded_w0_constraints(x.g2.inverse(), x.g1.inverse())
    rows = [[0] * m + list(r) + [0] * m for r in block]
    return RMatrix(rows, 2 * m + n * n)


def tangent_fiber_dim(x: LocalModelPoint) -> TangentReport:
    """Dimension of ``T_x kappa^-1(T_w0)`` at a point with ``A = 0``."""
    if not x.A.is_zero():
        raise UnsupportedError("tangent spaces are only computed over A = 0")
    n = x.n
    w = stratum(x)
    dim = kernel(_tangent_system(x)).dim
    v = longest(n) * w.inverse()
    return TangentReport(
        stratum=w,
        ambient_dim=n * (n - 1) + n * n,
        fiber_tangent_dim=dim,
        formula_dim=formula_dim(w),
        distinct_simple=is_distinct_simple_product(v),
        equality_with_Xw0=(dim == n * n),
    )


def tangent_sweep(n: int) -> list[TangentReport]:
    """Reports at ``(B, 0, wB)`` for every w in S_n."""
    return [tangent_fiber_dim(standard_point(w)) for w in all_permutations(n)]
