"""Borel subalgebras of gl_n and the envelope decomposition.

``borel_of(g)`` is ``b_g = g^-1 b g``, the matrices M with ``g M g^-1`` upper
triangular.  For two invertible g, h the graded-w0 intersection is

    { M in b_g ∩ b_h : diag(h M h^-1) = reverse(diag(g M g^-1)) }

(reversing a diagonal is ``Ad(w0)`` on the torus).  The envelope statement
checked by :func:`verify_envelope` is that ``b_g`` is spanned by the graded
intersections ``(b_g ∩ b_{c w'})^{gr=w0}`` as c runs over the full cycles,
for ``w' = w0 s`` where ``g = u l s``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DimensionError, DomainError, InvertibilityError
from .exactlin import RMatrix, Subspace, kernel, subspace_sum
from .weyl import Permutation, full_cycles, longest

__all__ = [
    "BorelSubalgebra", "EnvelopeReport", "borel_of", "graded_w0_intersection",
    "graded_w0_constraints", "uls_decompose", "aij_matrix", "envelope_witness", "envelope_summands",
    "verify_envelope",
    "conjugate", "upper_triangular_space",
]


def _require_invertible(g: RMatrix, name: str = "g") -> RMatrix:
    if not isinstance(g, RMatrix):
        g = RMatrix(g)
    if not g.is_invertible():
        raise InvertibilityError(f"{name} must be invertible")
    return g


def conjugate(x: RMatrix, M: RMatrix) -> RMatrix:
    """``Ad(x) M = x M x^-1``."""
    return x @ M @ x.inverse()


def _entry_row(X: RMatrix, Y: RMatrix, a: int, b: int) -> list:
    """Coefficients of ``(X M Y)[a, b]`` in the row-major entries of M."""
    n = X.cols
    xa = X.entries[a]
    yb = [Y.entries[l][b] for l in range(n)]
    return [xa[k] * yb[l] for k in range(n) for l in range(n)]


def _lower_constraints(X: RMatrix, Y: RMatrix) -> list:
    n = X.rows
    return [_entry_row(X, Y, a, b) for a in range(n) for b in range(a)]


def upper_triangular_space(n: int) -> Subspace:
    return kernel(RMatrix(_lower_constraints(RMatrix.identity(n), RMatrix.identity(n)) or [[0] * (n * n)], n * n))


@dataclass(frozen=True)
class BorelSubalgebra:
    n: int
    conjugator: RMatrix
    space: Subspace

    def contains(self, M: RMatrix) -> bool:
        return (self.conjugator @ M @ self.conjugator.inverse()).is_upper()


def borel_of(g) -> BorelSubalgebra:
    g = _require_invertible(g)
    n = g.rows
    rows = _lower_constraints(g, g.inverse())
    space = kernel(RMatrix(rows or [[0] * (n * n)], n * n))
    return BorelSubalgebra(n, g, space)


def graded_w0_constraints(g: RMatrix, h: RMatrix) -> list:
    """Rows of the linear system cutting out ``(b_g ∩ b_h)^{gr=w0}``."""
    n = g.rows
    gi, hi = g.inverse(), h.inverse()
    rows = _lower_constraints(g, gi) + _lower_constraints(h, hi)
    for i in range(n):
        hrow = _entry_row(h, hi, i, i)
        grow = _entry_row(g, gi, n - 1 - i, n - 1 - i)
        rows.append([a - b for a, b in zip(hrow, grow)])
    return rows


def graded_w0_intersection(g, h) -> Subspace:
    """``(b_g ∩ b_h)^{gr=w0}`` as one linear system on the n^2 entries of M.

    g is the side inside ``Ad(w0)``; the condition is symmetric under swapping
    g and h because reversal is an involution.
    """
    g = _require_invertible(g, "g")
    h = _require_invertible(h, "h")
    if g.rows != h.rows:
        raise DimensionError("g and h must have the same size")
    n = g.rows
    return kernel(RMatrix(graded_w0_constraints(g, h), n * n))


def _pivot_order(A: RMatrix) -> list[int]:
    """Row chosen for each column in elimination, always the lowest nonzero one."""
    n = A.rows
    work = [list(r) for r in A.entries]
    free = list(range(n))
    order = []
    for k in range(n):
        cands = [r for r in free if work[r][k] != 0]
        if not cands:
            raise InvertibilityError("matrix is singular")
        p = max(cands)
        free.remove(p)
        order.append(p)
        for r in free:
            f = work[r][k] / work[p][k]
            if f:
                work[r] = [a - f * b for a, b in zip(work[r], work[p])]
    return order


def _lu(B: RMatrix) -> tuple[RMatrix, RMatrix]:
    """Doolittle factorisation without pivoting, ``B = L U`` with L unit lower."""
    n = B.rows
    U = [list(r) for r in B.entries]
    L = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for k in range(n):
        if U[k][k] == 0:
            raise InvertibilityError("zero pivot in LU")
        for r in range(k + 1, n):
            f = U[r][k] / U[k][k]
            if f:
                L[r][k] = f
                U[r] = [a - f * b for a, b in zip(U[r], U[k])]
    return RMatrix(L, n), RMatrix(U, n)


def uls_decompose(g) -> tuple[RMatrix, RMatrix, Permutation]:
    """Write ``g = u l s`` with u upper, l lower triangular and s a permutation.

    Obtained from ``g^-1 = P L U`` (pivot = lowest nonzero row of each column),
    so ``u = U^-1``, ``l = L^-1`` and ``s`` has matrix ``P^-1``.  For
    ``g = w0 b`` this returns ``s = w0``.
    """
    g = _require_invertible(g)
    n = g.rows
    ginv = g.inverse()
    order = _pivot_order(ginv)
    pi = Permutation(tuple(p + 1 for p in order))  # P e_k = e_{pi(k)}
    B = RMatrix([ginv.entries[p] for p in order], n)  # P^-1 g^-1
    L, U = _lu(B)
    return U.inverse(), L.inverse(), pi.inverse()


def aij_matrix(b, i: int, j: int) -> RMatrix:
    """Matrix of the endomorphism pi attached to (b, i, j), 1-based, i >= j.

    pi kills ``b e_1, ..., b e_{j-1}, b e_{j+1}, ..., b e_i, e_{i+1}, ..., e_n``
    and sends ``e_j`` to ``e_i``.  The result lives on row i, columns j..i.
    """
    b = b if isinstance(b, RMatrix) else RMatrix(b)
    n = b.rows
    if not b.is_square or not b.is_upper():
        raise DomainError("b must be square upper triangular")
    if not b.is_invertible():
        raise InvertibilityError("b must be invertible")
    if not 1 <= j <= i <= n:
        raise DomainError(f"need 1 <= j <= i <= n, got i={i}, j={j}")
    cols = b.columns()
    basis = []
    for k in range(1, n + 1):
        if k == j or k > i:
            basis.append([Fraction(int(r == k - 1)) for r in range(n)])
        else:
            basis.append(list(cols[k - 1]))
    Q = RMatrix.from_columns(basis, n)
    target = [[Fraction(0)] * n for _ in range(n)]
    target[i - 1][j - 1] = Fraction(1)
    return RMatrix(target, n) @ Q.inverse()


def envelope_witness(g) -> Permutation:
    """``w' = w0 s`` from ``g = u l s``; the identity when ``g = w0 b``."""
    _, _, s = uls_decompose(g)
    return longest(s.n) * s


@dataclass(frozen=True)
class EnvelopeReport:
    n: int
    witness: Permutation
    summand_dims: dict = field(hash=False)
    total_span_dim: int
    verified: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "witness": self.witness.to_json(),
            "witness_cycles": self.witness.cycle_notation(),
            "summand_dims": dict(self.summand_dims),
            "total_span_dim": self.total_span_dim,
            "expected_dim": self.n * (self.n + 1) // 2,
            "verified": self.verified,
        }


def envelope_summands(g, w_prime: Permutation) -> list[tuple[Permutation, Subspace]]:
    g = _require_invertible(g)
    out = []
    for c in full_cycles(g.rows):
        w = c * w_prime
        out.append((c, graded_w0_intersection(g, w.matrix())))
    return out


def verify_envelope(g, w_prime: Permutation | None = None) -> EnvelopeReport:
    """Check ``b_g = sum_c (b_g ∩ b_{c w'})^{gr=w0}`` over the full cycles c."""
    g = _require_invertible(g)
    n = g.rows
    if w_prime is None:
        w_prime = envelope_witness(g)
    if w_prime.n != n:
        raise DomainError(f"witness lives in S_{w_prime.n}, expected S_{n}")
    target = borel_of(g).space
    total = Subspace.zero(n * n)
    dims = {}
    for c, summand in envelope_summands(g, w_prime):
        dims[c.cycle_notation()] = summand.dim
        total = subspace_sum(total, summand)
    verified = total.dim == n * (n + 1) // 2 and total == target
    return EnvelopeReport(n, w_prime, dims, total.dim, verified)

