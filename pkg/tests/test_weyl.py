import itertools
import random

import pytest
from hypothesis import given, strategies as st

import oracles
from fernkit.errors import DomainError, SchemaError
from fernkit.exactlin import Flag, RMatrix
from fernkit.sampling import random_gl, random_upper
from fernkit.weyl import (
    Permutation, all_permutations, bruhat_leq, cycle_count, full_cycle, full_cycles, identity,
    is_distinct_simple_product, length, longest, parse_permutation, reduced_word, relpos, simple_reflection,
    word_to_permutation,
)


def perms(max_n=6):
    return st.integers(1, max_n).flatmap(lambda n: st.permutations(range(1, n + 1)).map(tuple)).map(Permutation)


def test_length_examples():
    assert length(identity(4)) == 0
    for n in range(1, 7):
        assert length(longest(n)) == n * (n - 1) // 2
    assert length(Permutation((2, 1, 3))) == 1


def test_longest():
    assert longest(1) == identity(1)
    assert longest(2) == Permutation((2, 1))
    assert longest(4) == Permutation((4, 3, 2, 1)) and length(longest(4)) == 6
    assert longest(5) * longest(5) == identity(5)
    with pytest.raises(DomainError):
        longest(0)


def test_full_cycles_examples():
    assert full_cycles(2) == [identity(2), Permutation((2, 1))]
    assert set(full_cycles(3)) == {identity(3)} | {parse_permutation(c, 3) for c in ("(2 1)", "(3 2)", "(3 2 1)")}
    assert len(full_cycles(5)) == 11
    # c_{i,j} sends i to i-1 and j to i
    c = full_cycle(4, 2, 5)
    assert (c(4), c(3), c(2), c(5), c(1)) == (3, 2, 4, 5, 1)


@pytest.mark.parametrize("n", range(1, 9))
def test_full_cycle_count_and_lengths(n):
    cyc = full_cycles(n)
    assert len(cyc) == len(set(cyc)) == 1 + n * (n - 1) // 2
    for i in range(1, n + 1):
        for j in range(1, i + 1):
            assert length(full_cycle(i, j, n)) == i - j


def test_bruhat_examples():
    s1, s2 = simple_reflection(1, 3), simple_reflection(2, 3)
    t13 = s1 * s2 * s1
    assert t13 == Permutation((3, 2, 1))
    assert bruhat_leq(Permutation((2, 1, 3)), t13)
    for w in all_permutations(3):
        assert bruhat_leq(identity(3), w)
        if w != longest(3):
            assert not bruhat_leq(longest(3), w)
    with pytest.raises(DomainError):
        bruhat_leq(identity(2), identity(3))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_bruhat_matches_subword_oracle(n):
    for u, w in itertools.product(list(all_permutations(n)), repeat=2):
        assert bruhat_leq(u, w) == oracles.bruhat_leq_subword(u.images, w.images)


def test_bruhat_partial_order_on_s4():
    ws = list(all_permutations(4))
    leq = {(u, w): bruhat_leq(u, w) for u in ws for w in ws}
    for u in ws:
        assert leq[u, u]
    for u, w in itertools.product(ws, repeat=2):
        if u != w and leq[u, w]:
            assert not leq[w, u]
    for u, v, w in itertools.product(ws, repeat=3):
        if leq[u, v] and leq[v, w]:
            assert leq[u, w]


@given(perms())
def test_reduced_word_is_reduced(w):
    word = reduced_word(w)
    assert len(word) == length(w)
    assert word_to_permutation(word, w.n) == w


def test_reduced_word_examples():
    assert reduced_word(identity(3)) == []
    assert reduced_word(Permutation((1, 3, 2))) == [2]
    assert len(reduced_word(longest(3))) == 3


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_distinct_simple_matches_ordering_oracle(n):
    expected = oracles.distinct_simple_products(n)
    for w in all_permutations(n):
        assert is_distinct_simple_product(w) == (w.images in expected)


def test_distinct_simple_examples():
    assert is_distinct_simple_product(identity(4))
    assert all(is_distinct_simple_product(simple_reflection(i, 5)) for i in range(1, 5))
    assert not is_distinct_simple_product(longest(3))


def test_cycle_count_examples():
    assert cycle_count(identity(4)) == 4
    assert cycle_count(parse_permutation("(1 2)", 4)) == 3


@pytest.mark.parametrize("n", range(1, 7))
def test_carter_identity(n):
    for w in all_permutations(n):
        assert cycle_count(w) == oracles.fixed_space_dim(w.images)
        if is_distinct_simple_product(w):
            assert cycle_count(w) == n - length(w)


def _perm_flag(w: Permutation) -> Flag:
    return Flag.from_vectors([[int(k == w(i) - 1) for k in range(w.n)] for i in range(1, w.n + 1)])


def test_relpos_examples():
    F = Flag.standard(4)
    assert relpos(F, F) == identity(4)
    assert relpos(F, _perm_flag(longest(4))) == longest(4)


def test_relpos_of_permuted_flags_all_s4():
    for w1 in all_permutations(4):
        for w2 in all_permutations(4):
            assert relpos(_perm_flag(w1), _perm_flag(w2)) == w1.inverse() * w2


@given(st.integers(1, 4), st.integers(0, 10**6))
def test_relpos_gl_invariant_and_matches_rank_oracle(n, seed):
    rng = random.Random(seed)
    g1, g2, h = random_gl(rng, n), random_gl(rng, n), random_gl(rng, n)
    F, G = Flag.from_vectors(g1.columns()), Flag.from_vectors(g2.columns())
    w = relpos(F, G)
    assert relpos(F.translate(h), G.translate(h)) == w
    assert w.images == oracles.relpos_from_ranks(g1.columns(), g2.columns())


@given(st.integers(1, 4), st.integers(0, 10**6))
def test_bruhat_closure_lemma(n, seed):
    rng = random.Random(seed)
    w1 = Permutation(tuple(rng.sample(range(1, n + 1), n)))
    w2 = Permutation(tuple(rng.sample(range(1, n + 1), n)))
    b = random_upper(rng, n)
    F = Flag.from_vectors(w1.matrix().columns())
    G = Flag.from_vectors((b @ w2.matrix()).columns())
    assert bruhat_leq(w1.inverse() * w2, relpos(F, G))


def test_parse_permutation():
    assert parse_permutation([2, 1, 3]) == Permutation((2, 1, 3))
    assert parse_permutation("[2,1,3]") == Permutation((2, 1, 3))
    assert parse_permutation("(1 4)(2 3)", 4) == Permutation((4, 3, 2, 1))
    assert parse_permutation("id", 3) == identity(3)
    with pytest.raises(SchemaError):
        parse_permutation("(1 2)")
    with pytest.raises(SchemaError):
        parse_permutation("(1 2) junk", 3)
    with pytest.raises(DomainError):
        Permutation((1, 1, 2))


@given(perms())
def test_cycle_notation_round_trip(w):
    assert parse_permutation(w.cycle_notation(), w.n) == w
    assert parse_permutation(str(w)) == w


@given(perms(5), perms(5))
def test_matrix_is_a_homomorphism(u, w):
    if u.n != w.n:
        return
    assert (u * w).matrix() == u.matrix() @ w.matrix()
    assert u.matrix() @ RMatrix([[int(i == 0)] for i in range(u.n)]) == RMatrix(
        [[int(i == u(1) - 1)] for i in range(u.n)]
    )
