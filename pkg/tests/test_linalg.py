from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nilsymp import linalg
from nilsymp.linalg import Subspace


def skew(n, entries):
    m = [[Fraction(0)] * n for _ in range(n)]
    it = iter(entries)
    for i in range(n):
        for j in range(i + 1, n):
            x = Fraction(next(it))
            m[i][j], m[j][i] = x, -x
    return m


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(
    lambda h: st.lists(st.integers(-5, 5), min_size=h * (2 * h - 1), max_size=h * (2 * h - 1))
    .map(lambda xs: (2 * h, xs))))
def test_pfaffian_squares_to_determinant(data):
    n, xs = data
    m = skew(n, xs)
    assert linalg.pfaffian(m) ** 2 == linalg.dense_det(m)


def test_pfaffian_standard_form():
    # e^1 ^ e^2 + e^3 ^ e^4 has Pfaffian 1
    m = skew(4, [1, 0, 0, 0, 0, 1])
    assert linalg.pfaffian(m) == 1


@settings(max_examples=60, deadline=None)
@given(st.lists(st.dictionaries(st.integers(0, 5), st.integers(-3, 3), max_size=4), min_size=1, max_size=6))
def test_kernel_vectors_annihilate(cols_raw):
    cols = {j: linalg.vec(c) for j, c in enumerate(cols_raw)}
    ker = linalg.kernel(cols)
    for v in ker:
        total = {}
        for j, c in v.items():
            linalg.axpy(total, c, cols[j])
        assert not total
    assert len(ker) + linalg.rank(cols.values()) == len(cols)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.dictionaries(st.integers(0, 4), st.integers(-3, 3), max_size=3), min_size=1, max_size=5),
       st.lists(st.integers(-2, 2), min_size=5, max_size=5))
def test_solve_recovers_consistent_targets(cols_raw, coeffs):
    cols = {j: linalg.vec(c) for j, c in enumerate(cols_raw)}
    target = {}
    for j, c in zip(cols, coeffs):
        linalg.axpy(target, c, cols[j])
    x = linalg.solve(cols, target)
    assert x is not None
    back = {}
    for j, c in x.items():
        linalg.axpy(back, c, cols[j])
    assert back == target


def test_solve_inconsistent():
    assert linalg.solve({0: linalg.vec({0: 1})}, linalg.vec({1: 1})) is None


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=1, max_size=5))
def test_rank_mod_large_prime_matches_exact(rows):
    p = (1 << 61) - 1
    assert linalg.rank_mod_p([[x % p for x in r] for r in rows], p) == linalg.dense_rank(rows)


def test_subspace_canonical_equality():
    a = Subspace(3, [{0: 1, 1: 1}, {1: 1}])
    b = Subspace(3, [{0: 2}, {0: 1, 1: -1}])
    assert a == b and hash(a) == hash(b)
    assert a.dim == 2 and a.contains({0: 5, 1: 7}) and not a.contains({2: 1})
    assert (a + Subspace.coordinate(3, [2])) == Subspace.full(3)
    assert Subspace.zero(3).dim == 0


def test_tuple_keys():
    s = Subspace(0, [{(0, 1): 1, (1, 2): 1}])
    assert s.contains({(0, 1): 3, (1, 2): 3})
    assert not s.contains({(0, 1): 1})
