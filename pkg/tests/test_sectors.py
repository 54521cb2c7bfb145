from fractions import Fraction
from math import factorial, prod

import pytest
import sympy as sp

from m1n_chi.sectors import (
    SECTOR_TABLE,
    PointFamily,
    QuadNumber,
    SectorContribution,
    SectorError,
    SectorKind,
    phi,
    phi_ak,
    phi_main,
    phi_points,
    point_sector_oracle,
)
from m1n_chi.series import all_exponents

q, q1, q2, q3 = sp.symbols("q q1 q2 q3")
QS = [q1, q2, q3]


def test_phi_main_lowest_terms():
    assert phi_main(2, (2, 2, 2)).coeff((0, 1, 1)) == Fraction(1, 24)
    assert phi_main(5, (1,) * 6).coeff((0, 1, 1, 1, 1, 1)) == 1


def test_phi_main_matches_coefficient_formula():
    # q/(1-q)^2 = sum d q^d and 1/(1-q) = sum q^d
    n, caps = 3, (3, 4, 4, 4)
    s = phi_main(n, caps)
    for e in all_exponents(caps):
        assert s.coeff(e) == Fraction(factorial(n - 1), 24) * prod(e[1:])


def test_ak_lowest_terms():
    assert phi_ak(2, (2, 2, 2)).coeff((0, 1, 1)) == Fraction(11, 8)
    assert phi_ak(3, (1,) * 4).coeff((0, 1, 1, 1)) < 0


def test_ak_rejects_k():
    with pytest.raises(SectorError):
        phi_ak(5, (1,) * 6)


def ak_expr(k, d_k):
    body = 11 + 2 * q / (1 + q) - sum(2 * x / (1 + x) for x in QS[:k])
    return (-1) ** k * sp.Rational(d_k, 24) / (1 + q) * sp.Mul(*[x / (1 - x**2) for x in QS[:k]]) * body


@pytest.mark.parametrize("k,d_k", [(2, 3), (3, 6)])
def test_ak_matches_rational_function(expand, k, d_k):
    caps = (3,) + (3 if k == 2 else 2,) * k
    assert phi_ak(k, caps) == expand(ak_expr(k, d_k), [q] + QS[:k], caps)


def point_expr(family):
    if family is PointFamily.C4_PRIME:
        num = 1 - q + q1 + q2 - q1 * q2 + q * q1 + q * q2 + q * q1 * q2
        den = (1 + q**2) * (1 + q1**2) * (1 + q2**2)
        return sp.Rational(1, 4) * q1 * q2 / ((1 - q1) * (1 - q2)) * num / den
    c = lambda x: 1 + x + x**2  # noqa: E731
    if family is PointFamily.C6_PRIME:
        num = 1 - q + (q + 2) * (q1 + q2) + (2 * q + 1) * q1 * q2
        return sp.Rational(1, 3) * q1 * q2 / ((1 - q1) * (1 - q2)) * num / (c(q) * c(q1) * c(q2))
    num = (
        1 - q + (q + 2) * (q1 + q2 + q3)
        + (2 * q + 1) * (q1 * q2 + q1 * q3 + q2 * q3)
        + (q - 1) * q1 * q2 * q3
    )
    den = c(q) * c(q1) * c(q2) * c(q3)
    return -sp.Rational(1, 3) * q1 * q2 * q3 / ((1 - q1) * (1 - q2) * (1 - q3)) * num / den


FAMILIES = [(2, PointFamily.C4_PRIME), (2, PointFamily.C6_PRIME), (3, PointFamily.C6_DOUBLE_PRIME)]


@pytest.mark.parametrize("n,family", FAMILIES)
def test_points_match_rational_function(expand, n, family):
    caps = (3,) * (n + 1) if n == 2 else (2,) * (n + 1)
    assert phi_points(n, family, caps) == expand(point_expr(family), [q] + QS[:n], caps)


def test_points_lowest_terms():
    assert phi_points(2, PointFamily.C4_PRIME, (2, 2, 2)).coeff((0, 1, 1)) == Fraction(1, 4)
    assert phi_points(2, PointFamily.C6_PRIME, (2, 2, 2)).coeff((0, 1, 1)) == Fraction(1, 3)
    assert phi_points(3, PointFamily.C6_DOUBLE_PRIME, (1,) * 4).coeff((0, 1, 1, 1)) == Fraction(-1, 3)


@pytest.mark.parametrize("n,family", FAMILIES)
def test_points_equal_eigenvalue_sum(n, family):
    caps = (6,) * (n + 1)
    oracle = point_sector_oracle(n, family, caps)
    assert phi_points(n, family, caps) == oracle
    assert all(c.denominator in (1, 2, 3, 4, 6, 12) for _, c in oracle.items())


def test_point_family_domain():
    with pytest.raises(SectorError):
        phi_points(3, PointFamily.C4_PRIME, (1,) * 4)
    with pytest.raises(SectorError):
        point_sector_oracle(2, PointFamily.C6_DOUBLE_PRIME, (1,) * 3)


def test_quadratic_field():
    i = QuadNumber(Fraction(0), Fraction(1), 0, 1)
    assert i * i == i._lift(-1)
    w = QuadNumber(Fraction(0), Fraction(1), 1, 1)
    assert w**3 == w._lift(1)
    assert w * w.inverse() == w._lift(1)
    assert (w + w.conjugate()) == w._lift(-1)
    assert ((i._lift(1) + i) * (i._lift(1) + i).inverse()) == i._lift(1)


def test_sector_table_rows():
    kinds = lambda n: [(s.kind, s.k, s.family) for s in SECTOR_TABLE[n]]  # noqa: E731
    assert kinds(2) == [
        (SectorKind.MAIN, None, None),
        (SectorKind.AK_BAR, 2, None),
        (SectorKind.POINT_PAIR, None, PointFamily.C4_PRIME),
        (SectorKind.POINT_PAIR, None, PointFamily.C6_PRIME),
    ]
    assert kinds(3) == [
        (SectorKind.MAIN, None, None),
        (SectorKind.AK_BAR, 3, None),
        (SectorKind.POINT_PAIR, None, PointFamily.C6_DOUBLE_PRIME),
    ]
    assert kinds(4) == [(SectorKind.MAIN, None, None), (SectorKind.AK_BAR, 4, None)]
    for n in (5, 6, 9):
        assert kinds(n) == [(SectorKind.MAIN, None, None)]
    assert [s.d_k for s in SECTOR_TABLE[2] + SECTOR_TABLE[3] + SECTOR_TABLE[4] if s.d_k] == [3, 6, 6]
    prefs = [s.group_prefactor for n in (2, 3) for s in SECTOR_TABLE[n] if s.group_prefactor]
    assert prefs == [Fraction(1, 4), Fraction(1, 3), Fraction(1, 3)]


def test_ak_only_for_small_k():
    with pytest.raises(SectorError):
        SectorContribution.ak_bar(1)


def test_phi_sums_sectors():
    caps = (2,) * 5
    assert phi(5, (2,) * 6) == phi_main(5, (2,) * 6)
    assert phi(4, caps) == phi_main(4, caps) + phi_ak(4, caps)
    caps = (3, 3, 3)
    expected = (
        phi_main(2, caps)
        + phi_ak(2, caps)
        + phi_points(2, PointFamily.C4_PRIME, caps)
        + phi_points(2, PointFamily.C6_PRIME, caps)
    )
    assert phi(2, caps) == expected


def test_phi_rejects_small_n():
    with pytest.raises(SectorError):
        phi(1, (2, 2))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_phi_vanishes_without_every_cotangent_variable(n):
    s = phi(n, (2,) * (n + 1))
    assert all(all(e[1:]) for e, _ in s.items())
