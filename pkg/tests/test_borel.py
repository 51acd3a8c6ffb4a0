import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import oracles
from fernkit.borel import (
    aij_matrix, borel_of, envelope_summands, envelope_witness, graded_w0_intersection, uls_decompose,
    verify_envelope,
)
from fernkit.errors import DomainError, InvertibilityError
from fernkit.exactlin import RMatrix, Subspace
from fernkit.sampling import random_gl, random_upper
from fernkit.weyl import Permutation, full_cycle, identity, longest

SINGULAR = RMatrix([[1, 2], [2, 4]])


def graded_dim_oracle(g, h):
    """dim of the graded-w0 intersection from independently assembled constraint rows."""
    n = g.rows
    gi, hi = g.inverse(), h.inverse()

    def coeff(x, xi, a, b):
        # (x M x^-1)[a][b] as a linear form in the entries M[k][l]
        return [x[a, k] * xi[l, b] for k in range(n) for l in range(n)]

    rows = []
    for x, xi in ((g, gi), (h, hi)):
        rows += [coeff(x, xi, a, b) for a in range(n) for b in range(a)]
    for i in range(n):
        rows.append([p - q for p, q in zip(coeff(h, hi, i, i), coeff(g, gi, n - 1 - i, n - 1 - i))])
    return n * n - oracles.rank(rows)


def in_graded(M, g, h):
    A, B = g @ M @ g.inverse(), h @ M @ h.inverse()
    return A.is_upper() and B.is_upper() and B.diagonal() == tuple(reversed(A.diagonal()))


# -- Borel subalgebras -------------------------------------------------------


def test_borel_of_examples():
    n = 3
    upper = Subspace.span([RMatrix([[int((r, c) == (i, j)) for c in range(n)] for r in range(n)]).flatten()
                           for i in range(n) for j in range(i, n)], n * n)
    lower = Subspace.span([RMatrix([[int((r, c) == (j, i)) for c in range(n)] for r in range(n)]).flatten()
                           for i in range(n) for j in range(i, n)], n * n)
    assert borel_of(RMatrix.identity(n)).space == upper
    assert borel_of(longest(n).matrix()).space == lower
    with pytest.raises(InvertibilityError):
        borel_of(SINGULAR)


@given(st.integers(1, 4), st.integers(0, 10**6))
def test_borel_of_random(n, seed):
    g = random_gl(random.Random(seed), n)
    B = borel_of(g)
    assert B.space.dim == n * (n + 1) // 2
    for v in B.space.vectors():
        assert B.contains(RMatrix.from_flat(v, n))


# -- graded intersections ----------------------------------------------------


def test_graded_examples():
    I2, w0 = RMatrix.identity(2), longest(2).matrix()
    S = graded_w0_intersection(I2, I2)
    assert S == Subspace.span([[1, 0, 0, 1], [0, 1, 0, 0]], 4)
    D = graded_w0_intersection(w0, I2)
    assert D == Subspace.span([[1, 0, 0, 0], [0, 0, 0, 1]], 4)
    assert graded_w0_intersection(RMatrix.identity(3), RMatrix.identity(3)).dim == 5
    with pytest.raises(InvertibilityError):
        graded_w0_intersection(SINGULAR, I2)


@given(st.integers(1, 4), st.integers(0, 10**6))
def test_graded_matches_oracle(n, seed):
    rng = random.Random(seed)
    g, h = random_gl(rng, n), random_gl(rng, n)
    S = graded_w0_intersection(g, h)
    assert S.dim == graded_dim_oracle(g, h)
    for v in S.vectors():
        assert in_graded(RMatrix.from_flat(v, n), g, h)
    # the condition is symmetric in the pair
    assert graded_w0_intersection(h, g) == S


# -- u l s -------------------------------------------------------------------


def test_uls_examples():
    b = RMatrix([[2, 1, 3], [0, -1, 4], [0, 0, 5]])
    assert uls_decompose(b) == (b, RMatrix.identity(3), identity(3))
    w = Permutation((3, 1, 2))
    assert uls_decompose(w.matrix()) == (RMatrix.identity(3), RMatrix.identity(3), w)
    g = RMatrix([[1, 2], [3, 4]])
    u, l, s = uls_decompose(g)
    assert u @ l @ s.matrix() == g
    with pytest.raises(InvertibilityError):
        uls_decompose(SINGULAR)


@given(st.integers(1, 6), st.integers(0, 10**6))
def test_uls_exact(n, seed):
    g = random_gl(random.Random(seed), n)
    u, l, s = uls_decompose(g)
    assert u.is_upper() and l.is_lower() and u.is_invertible() and l.is_invertible()
    assert u @ l @ s.matrix() == g
    w0 = longest(n).matrix()
    # l = w0 b w0 with b upper triangular
    assert (w0 @ l @ w0).is_upper()


# -- a^{i,j} -----------------------------------------------------------------


def test_aij_examples():
    I = RMatrix.identity(3)
    for i in range(1, 4):
        for j in range(1, i + 1):
            E = RMatrix([[int((r, c) == (i - 1, j - 1)) for c in range(3)] for r in range(3)])
            assert aij_matrix(I, i, j) == E
    assert aij_matrix(RMatrix([[1, 1], [0, 1]]), 2, 1) == RMatrix([[0, 0], [1, -1]])
    with pytest.raises(DomainError):
        aij_matrix(I, 1, 2)
    with pytest.raises(DomainError):
        aij_matrix(RMatrix([[1, 0], [1, 1]]), 2, 1)


def test_aij_defining_property():
    rng = random.Random(11)
    n = 4
    b = random_upper(rng, n)
    a = aij_matrix(b, 3, 1)
    # pi(e_1) = e_3, pi(b e_2) = pi(b e_3) = 0, pi(e_4) = 0
    e = [[Fraction(int(k == m)) for k in range(n)] for m in range(n)]
    assert a.apply(e[0]) == tuple(e[2])
    assert a.apply(b.column(1)) == (0,) * n and a.apply(b.column(2)) == (0,) * n
    assert a.apply(e[3]) == (0,) * n
    assert all(a[r, c] == 0 for r in range(n) for c in range(n) if r != 2 or c > 2)
    h = full_cycle(3, 1, n).matrix() @ b.inverse()
    assert in_graded(a, longest(n).matrix(), h)


# -- envelopes ---------------------------------------------------------------


def test_witness_examples():
    n = 4
    rng = random.Random(5)
    w0 = longest(n).matrix()
    assert envelope_witness(w0 @ random_upper(rng, n)) == identity(n)
    assert envelope_witness(RMatrix.identity(n)) == longest(n)


def test_verify_envelope_examples():
    rep = verify_envelope(longest(3).matrix(), identity(3))
    assert rep.verified and rep.total_span_dim == 6
    rep = verify_envelope(RMatrix.identity(2), longest(2))
    assert rep.verified and sum(rep.summand_dims.values()) >= 3
    assert set(rep.summand_dims) == {"()", "(2 1)"}
    assert verify_envelope(RMatrix.identity(1)).verified
    with pytest.raises(InvertibilityError):
        verify_envelope(SINGULAR)


def test_witness_matters():
    # found by sweeping all w' over small random g; two of six witnesses fall short
    g = RMatrix([[3, 0, 3], [0, -3, -1], [1, 0, 0]])
    assert envelope_witness(g) == identity(3)
    assert verify_envelope(g).verified
    for bad in (Permutation((3, 1, 2)), longest(3)):
        rep = verify_envelope(g, bad)
        assert not rep.verified and rep.total_span_dim == 5


@given(st.integers(2, 4), st.integers(0, 10**6))
def test_envelope_random(n, seed):
    g = random_gl(random.Random(seed), n)
    assert verify_envelope(g, envelope_witness(g)).verified


@given(st.integers(2, 4), st.integers(0, 10**6))
def test_conjugated_span_identity(n, seed):
    h = random_gl(random.Random(seed), n)
    g = h.inverse()  # b_g = h b h^-1
    wp = envelope_witness(g)
    span = Subspace.zero(n * n)
    for _, summand in envelope_summands(g, wp):
        span = span + summand
    for i in range(n):
        for j in range(i, n):
            E = RMatrix([[int((r, c) == (i, j)) for c in range(n)] for r in range(n)])
            assert (h @ E @ h.inverse()).flatten() in span
    assert span.dim == n * (n + 1) // 2
