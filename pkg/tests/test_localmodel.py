import random

import pytest
from hypothesis import given, strategies as st

import oracles
from fernkit.errors import InvertibilityError, UnsupportedError, ValidationError
from fernkit.exactlin import RMatrix
from fernkit.localmodel import (
    LocalModelPoint, formula_dim, in_kappa_fiber_Tw0, is_point, standard_point, stratum, tangent_fiber_dim,
    tangent_sweep,
)
from fernkit.sampling import random_gl, random_upper
from fernkit.weyl import Permutation, all_permutations, bruhat_leq, identity, longest, simple_reflection

I2 = RMatrix.identity(2)
Z2 = RMatrix.zeros(2, 2)


def test_is_point_examples():
    assert is_point(I2, Z2, I2)
    assert not is_point(I2, RMatrix([[0, 0], [1, 0]]), I2)
    g = random_gl(random.Random(3), 3)
    assert is_point(RMatrix.identity(3), RMatrix.zeros(3, 3), g)
    with pytest.raises(InvertibilityError):
        is_point(RMatrix([[1, 1], [1, 1]]), Z2, I2)
    with pytest.raises(ValidationError):
        LocalModelPoint(I2, RMatrix([[0, 0], [1, 0]]), I2)


def test_stratum_examples():
    assert stratum(standard_point(identity(3))) == identity(3)
    assert stratum(standard_point(longest(3))) == longest(3)


def test_kappa_fiber_examples():
    assert in_kappa_fiber_Tw0(LocalModelPoint(I2, Z2, random_gl(random.Random(1), 2)))
    assert not in_kappa_fiber_Tw0(LocalModelPoint(I2, RMatrix.diag([1, 2]), I2))
    assert in_kappa_fiber_Tw0(LocalModelPoint(I2, RMatrix.diag([1, 1]), I2))


def test_tangent_examples():
    rep = tangent_fiber_dim(standard_point(longest(2)))
    assert (rep.fiber_tangent_dim, rep.formula_dim, rep.equality_with_Xw0) == (4, 4, True)
    # w0 w^-1 = s1 in S_3
    w = simple_reflection(1, 3) * longest(3)
    assert longest(3) * w.inverse() == simple_reflection(1, 3)
    rep = tangent_fiber_dim(standard_point(w))
    assert rep.fiber_tangent_dim == 9 and rep.equality_with_Xw0 and rep.distinct_simple


def test_tangent_identity_in_s3():
    # 6 from the two flag directions, then 2 + 3 for the palindromic diagonals and strict upper part
    rep = tangent_fiber_dim(standard_point(identity(3)))
    assert rep.fiber_tangent_dim == 11 == rep.formula_dim
    assert rep.fiber_tangent_dim > 9 and not rep.equality_with_Xw0 and not rep.distinct_simple


def test_tangent_rejects_nonzero_A():
    with pytest.raises(UnsupportedError):
        tangent_fiber_dim(LocalModelPoint(I2, RMatrix.diag([1, 1]), I2))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_sweep_matches_formula_and_oracle(n):
    for rep in tangent_sweep(n):
        v = longest(n) * rep.stratum.inverse()
        closed = n * (n - 1) + oracles.fixed_space_dim(v.images) + oracles.inversions(v.images)
        assert rep.fiber_tangent_dim == rep.formula_dim == closed
        assert rep.equality_with_Xw0 == rep.distinct_simple


@given(st.integers(1, 4), st.integers(0, 10**6))
def test_tangent_conjugation_invariant(n, seed):
    rng = random.Random(seed)
    w = Permutation(tuple(rng.sample(range(1, n + 1), n)))
    h = random_gl(rng, n)
    x = standard_point(w)
    a, b = tangent_fiber_dim(x), tangent_fiber_dim(x.translate(h))
    assert a == b


@given(st.integers(1, 4), st.integers(0, 10**6))
def test_tangent_right_borel_invariant(n, seed):
    # the point depends only on the cosets g_i B
    rng = random.Random(seed)
    g1, g2 = random_gl(rng, n), random_gl(rng, n)
    Z = RMatrix.zeros(n, n)
    x = LocalModelPoint(g1, Z, g2)
    y = LocalModelPoint(g1 @ random_upper(rng, n), Z, g2 @ random_upper(rng, n))
    assert tangent_fiber_dim(x).fiber_tangent_dim == tangent_fiber_dim(y).fiber_tangent_dim
    assert stratum(x) == stratum(y)


@given(st.integers(1, 4), st.integers(0, 10**6))
def test_stratum_closure_bound(n, seed):
    rng = random.Random(seed)
    w1 = Permutation(tuple(rng.sample(range(1, n + 1), n)))
    w2 = Permutation(tuple(rng.sample(range(1, n + 1), n)))
    b = random_upper(rng, n)
    x = LocalModelPoint(w1.matrix(), RMatrix.zeros(n, n), b @ w2.matrix())
    assert bruhat_leq(w1.inverse() * w2, stratum(x))


def test_formula_dim_values():
    # n = 2: w = id gives 2 + 1 + 1, w = w0 gives 2 + 2 + 0
    assert [formula_dim(w) for w in all_permutations(2)] == [4, 4]
    assert formula_dim(identity(4)) == 12 + 2 + 6
