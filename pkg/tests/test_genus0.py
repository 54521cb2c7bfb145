from fractions import Fraction
from itertools import permutations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from m1n_chi.genus0 import Genus0Series, check_nonnegative, f3, iterate_pushforward, string_pushforward_g0
from m1n_chi.series import MultiSeries, all_exponents, permute_vars


def test_f3_point():
    f = f3(3)
    assert f.coeff((0, 0, 0)) == 1
    assert f.coeff((2, 0, 0)) == 1
    for p in permutations((1, 2, 3)):
        assert permute_vars(f.series, [0, *p]) == f.series


def test_m04_is_projective_line():
    m04 = string_pushforward_g0(f3(30))
    # every L_i has degree 1 on M_{0,4} = P^1
    for e in all_exponents((6, 6, 6)):
        assert m04.coeff(e + (0,)) == sum(e) + 1
    assert [m04.coeff((d, 0, 0, 0)) for d in range(31)] == list(range(1, 32))


def test_pushforward_symmetric_in_old_variables():
    m05 = iterate_pushforward(5, 3)
    for p in permutations((1, 2, 3)):
        assert permute_vars(m05.series, [0, *p, 4, 5]) == m05.series


def test_undetermined_slots_refused():
    m05 = iterate_pushforward(5, 2)
    with pytest.raises(ValueError):
        m05.coeff((1, 1, 1, 1, 0))


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_iterated_pushforward_nonnegative_integers(n):
    f = iterate_pushforward(n, 6)
    assert check_nonnegative(f) == []
    assert all(c.denominator == 1 for _, c in f.series.items())


def test_negative_control():
    caps = (0, 2, 2, 2)
    bad = Genus0Series(3, MultiSeries(caps, {(0, 0, 0, 0): 1, (0, 1, 0, 0): -1}), 3)
    assert check_nonnegative(bad) == [(0, 1, 0, 0)]
    assert check_nonnegative(MultiSeries(caps, {(0, 1, 1, 0): Fraction(1, 2)})) == [(0, 1, 1, 0)]


@given(st.integers(3, 7), st.integers(0, 8))
@settings(max_examples=40, deadline=None)
def test_single_cotangent_power_counts_monomials(n, d):
    # L_1 on M_{0,n} is the pullback of O(1) from P^(n-3), so chi(L_1^d) = C(d+n-3, n-3)
    f = iterate_pushforward(n, (8, 0, 0))
    assert f.coeff((d,) + (0,) * (n - 1)) == comb(d + n - 3, n - 3)
