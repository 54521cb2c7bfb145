"""Sector contributions to the corrected generating function Phi_n.

Phi_n is the Euler characteristic of
``1/(1 - q H^-1) * prod_i (1/(1 - q_i L_i) - 1/(1 - q_i))`` on M_{1,n}-bar.
Orbifold Riemann-Roch splits it over the components of the inertia stack:
the untwisted component, the one-dimensional sectors A_k-bar (k = 2, 3, 4),
and pairs of isolated points with automorphisms of order 4 or 3.  Boundary
sectors contribute nothing.  Which sectors occur for which n is fixed data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import product
from math import factorial
from typing import Sequence

from .series import MultiSeries, geom, poly, prod_series


class SectorKind(Enum):
    MAIN = "main"
    AK_BAR = "ak_bar"
    POINT_PAIR = "point_pair"


class PointFamily(Enum):
    C4_PRIME = "C4'"
    C6_PRIME = "C6'"
    C6_DOUBLE_PRIME = "C6''"


# degree of A_k-bar -> M_{1,1}-bar forgetting all but one point
AK_DEGREE = {2: 3, 3: 6, 4: 6}

POINT_PREFACTOR = {
    PointFamily.C4_PRIME: Fraction(1, 4),
    PointFamily.C6_PRIME: Fraction(1, 3),
    PointFamily.C6_DOUBLE_PRIME: Fraction(1, 3),
}

POINT_ARITY = {
    PointFamily.C4_PRIME: 2,
    PointFamily.C6_PRIME: 2,
    PointFamily.C6_DOUBLE_PRIME: 3,
}


class SectorError(ValueError):
    pass


@dataclass(frozen=True)
class SectorContribution:
    kind: SectorKind
    k: int | None = None
    d_k: int | None = None
    family: PointFamily | None = None
    group_prefactor: Fraction | None = None

    @classmethod
    def main(cls) -> "SectorContribution":
        return cls(SectorKind.MAIN)

    @classmethod
    def ak_bar(cls, k: int, d_k: int | None = None) -> "SectorContribution":
        if k not in AK_DEGREE:
            raise SectorError(f"A_k-bar sectors exist only for k in 2..4, got {k}")
        return cls(SectorKind.AK_BAR, k=k, d_k=AK_DEGREE[k] if d_k is None else d_k)

    @classmethod
    def point_pair(cls, family: PointFamily) -> "SectorContribution":
        return cls(SectorKind.POINT_PAIR, family=family, group_prefactor=POINT_PREFACTOR[family])

    def label(self) -> str:
        if self.kind is SectorKind.MAIN:
            return "main"
        if self.kind is SectorKind.AK_BAR:
            return f"A{self.k}-bar(d={self.d_k})"
        return f"points {self.family.value}"


@dataclass(frozen=True)
class SectorTable:
    """Sector lists per n; anything past the largest key uses ``default``."""

    rows: dict = field(default_factory=dict)
    default: tuple = (SectorContribution.main(),)

    def __getitem__(self, n: int) -> tuple[SectorContribution, ...]:
        if n < 2:
            raise SectorError(f"Phi_n is defined for n >= 2, got {n}")
        return tuple(self.rows.get(n, self.default))

    def with_row(self, n: int, sectors: Sequence[SectorContribution]) -> "SectorTable":
        rows = dict(self.rows)
        rows[n] = tuple(sectors)
        return SectorTable(rows, self.default)


SECTOR_TABLE = SectorTable(
    {
        2: (
            SectorContribution.main(),
            SectorContribution.ak_bar(2),
            SectorContribution.point_pair(PointFamily.C4_PRIME),
            SectorContribution.point_pair(PointFamily.C6_PRIME),
        ),
        3: (
            SectorContribution.main(),
            SectorContribution.ak_bar(3),
            SectorContribution.point_pair(PointFamily.C6_DOUBLE_PRIME),
        ),
        4: (
            SectorContribution.main(),
            SectorContribution.ak_bar(4),
        ),
    }
)


def phi_main(n: int, caps: Sequence[int]) -> MultiSeries:
    """(n-1)!/(24(1-q)) * prod_i q_i/(1-q_i)^2."""
    if n < 2:
        raise SectorError("phi_main needs n >= 2")
    caps = tuple(caps)
    factors = [geom(0, 1, 1, caps)]
    for i in range(1, n + 1):
        factors += [MultiSeries.var(caps, i), geom(i, 1, 1, caps), geom(i, 1, 1, caps)]
    return prod_series(factors, caps).scale(Fraction(factorial(n - 1), 24))


def phi_ak(k: int, caps: Sequence[int], d_k: int | None = None) -> MultiSeries:
    """Contribution of the involution sector A_k-bar.

    The correction bracket sums over the k cotangent slots of the sector.
    ``d_k`` overrides the forgetful degree (only useful for negative tests).
    """
    if k not in AK_DEGREE:
        raise SectorError(f"A_k-bar sectors exist only for k in 2..4, got {k}")
    if d_k is None:
        d_k = AK_DEGREE[k]
    caps = tuple(caps)
    bracket = MultiSeries.constant(caps, 11) + MultiSeries.var(caps, 0, 2) * geom(0, -1, 1, caps)
    for i in range(1, k + 1):
        bracket = bracket - MultiSeries.var(caps, i, 2) * geom(i, -1, 1, caps)
    factors = [geom(0, -1, 1, caps)]
    for i in range(1, k + 1):
        factors += [MultiSeries.var(caps, i), geom(i, 1, 2, caps)]
    factors.append(bracket)
    return prod_series(factors, caps).scale(Fraction((-1) ** k * d_k, 24))


def _cyclotomic3_inverse(v: int, caps) -> MultiSeries:
    # 1/(1 + x + x^2) = (1 - x)/(1 - x^3)
    return (MultiSeries.constant(caps) - MultiSeries.var(caps, v)) * geom(v, 1, 3, caps)


def _point_numerator(family: PointFamily, caps) -> MultiSeries:
    z = (0,) * len(caps)

    def mono(**kw):
        e = list(z)
        for name, x in kw.items():
            e[0 if name == "q" else int(name[1:])] = x
        return tuple(e)

    if family is PointFamily.C4_PRIME:
        # 1 - q + q1 + q2 - q1 q2 + q q1 + q q2 + q q1 q2
        terms = {
            mono(): 1, mono(q=1): -1, mono(q1=1): 1, mono(q2=1): 1,
            mono(q1=1, q2=1): -1, mono(q=1, q1=1): 1, mono(q=1, q2=1): 1,
            mono(q=1, q1=1, q2=1): 1,
        }
    elif family is PointFamily.C6_PRIME:
        # 1 - q + (q + 2)(q1 + q2) + (2q + 1) q1 q2
        terms = {
            mono(): 1, mono(q=1): -1,
            mono(q=1, q1=1): 1, mono(q1=1): 2, mono(q=1, q2=1): 1, mono(q2=1): 2,
            mono(q=1, q1=1, q2=1): 2, mono(q1=1, q2=1): 1,
        }
    else:
        # 1 - q + (q + 2) e1 + (2q + 1) e2 + (q - 1) e3 in q1, q2, q3
        terms = {mono(): 1, mono(q=1): -1}
        for j in (1, 2, 3):
            terms[mono(q=1, **{f"q{j}": 1})] = 1
            terms[mono(**{f"q{j}": 1})] = 2
        for a, b in ((1, 2), (1, 3), (2, 3)):
            terms[mono(q=1, **{f"q{a}": 1, f"q{b}": 1})] = 2
            terms[mono(**{f"q{a}": 1, f"q{b}": 1})] = 1
        terms[mono(q=1, q1=1, q2=1, q3=1)] = 1
        terms[mono(q1=1, q2=1, q3=1)] = -1
    return poly(caps, terms)


def phi_points(n: int, family: PointFamily, caps: Sequence[int]) -> MultiSeries:
    """Closed-form contribution of a conjugate pair of isolated sectors."""
    family = PointFamily(family)
    if POINT_ARITY[family] != n:
        raise SectorError(f"{family.value} sectors live on M_(1,{POINT_ARITY[family]}), not n={n}")
    caps = tuple(caps)
    if len(caps) < n + 1:
        raise SectorError(f"caps {caps} too short for n={n}")
    factors = []
    for j in range(1, n + 1):
        factors += [MultiSeries.var(caps, j), geom(j, 1, 1, caps)]
    factors.append(_point_numerator(family, caps))
    if family is PointFamily.C4_PRIME:
        factors += [geom(v, -1, 2, caps) for v in range(n + 1)]
        sign = 1
    else:
        factors += [_cyclotomic3_inverse(v, caps) for v in range(n + 1)]
        sign = -1 if family is PointFamily.C6_DOUBLE_PRIME else 1
    return prod_series(factors, caps).scale(sign * POINT_PREFACTOR[family])


# -- eigenvalue-sum oracle ---------------------------------------------------


class NonRealResult(ArithmeticError):
    """A conjugate-pair sum kept an irrational part."""


@dataclass(frozen=True)
class QuadNumber:
    """a + b*t in Q(t) with t^2 = -c1*t - c0."""

    a: Fraction
    b: Fraction
    c1: int
    c0: int

    def _lift(self, other):
        if isinstance(other, QuadNumber):
            if (other.c1, other.c0) != (self.c1, self.c0):
                raise ValueError("mixing different quadratic fields")
            return other
        return QuadNumber(Fraction(other), Fraction(0), self.c1, self.c0)

    def __add__(self, other):
        o = self._lift(other)
        return QuadNumber(self.a + o.a, self.b + o.b, self.c1, self.c0)

    __radd__ = __add__

    def __neg__(self):
        return QuadNumber(-self.a, -self.b, self.c1, self.c0)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        # (a + b t)(c + d t) = ac + (ad + bc) t + bd t^2
        bd = self.b * o.b
        return QuadNumber(
            self.a * o.a - self.c0 * bd,
            self.a * o.b + self.b * o.a - self.c1 * bd,
            self.c1,
            self.c0,
        )

    __rmul__ = __mul__

    def conjugate(self):
        # the other root is -c1 - t
        return QuadNumber(self.a - self.c1 * self.b, -self.b, self.c1, self.c0)

    def norm(self) -> Fraction:
        return self.a * self.a - self.c1 * self.a * self.b + self.c0 * self.b * self.b

    def inverse(self):
        n = self.norm()
        if not n:
            raise ZeroDivisionError("zero in quadratic field")
        c = self.conjugate()
        return QuadNumber(c.a / n, c.b / n, self.c1, self.c0)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self._lift(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out


def _eigen_pair(family: PointFamily) -> tuple[QuadNumber, QuadNumber]:
    if family is PointFamily.C4_PRIME:
        # t = i, t^2 = -1; the pair is {i, -i}
        t = QuadNumber(Fraction(0), Fraction(1), 0, 1)
    else:
        # t = eps^2 = exp(2 pi i/3), t^2 = -t - 1; the pair is {eps^2, eps^4}
        t = QuadNumber(Fraction(0), Fraction(1), 1, 1)
    return t, t.conjugate()


class _Integrand:
    """Coefficients of the sector integrand at one eigenvalue lam.

    (lam-1)^n / ((1 - q/lam)(1+lam)(1-lam)^n) * prod_i q_i/((1-q_i)(1-q_i lam))
    """

    def __init__(self, lam: QuadNumber, n: int, cap_q: int, cap_qi: int):
        one = lam._lift(1)
        self.n = n
        self.prefix = (lam - 1) ** n * ((one + lam) * (one - lam) ** n).inverse()
        # 1/(1 - q lam^-1) contributes lam^-d at q^d
        inv = lam.inverse()
        self.hodge = [one]
        for _ in range(cap_q):
            self.hodge.append(self.hodge[-1] * inv)
        # q_i/((1-q_i)(1-q_i lam)) contributes sum_{m < x} lam^m at q_i^x
        self.point = [lam * 0]
        p = one
        for _ in range(cap_qi):
            self.point.append(self.point[-1] + p)
            p = p * lam

    def coeff(self, e: Sequence[int]) -> QuadNumber:
        value = self.prefix * self.hodge[e[0]]
        for x in e[1:self.n + 1]:
            value = value * self.point[x]
        return value


def point_sector_oracle(n: int, family: PointFamily, caps: Sequence[int]) -> MultiSeries:
    """Same series as :func:`phi_points`, summed over the conjugate eigenvalues."""
    family = PointFamily(family)
    if POINT_ARITY[family] != n:
        raise SectorError(f"{family.value} sectors live on M_(1,{POINT_ARITY[family]}), not n={n}")
    caps = tuple(caps)
    cap_qi = max(caps[1:n + 1])
    pair = [_Integrand(lam, n, caps[0], cap_qi) for lam in _eigen_pair(family)]
    pref = POINT_PREFACTOR[family]
    terms = {}
    # every q_i appears with a factor q_i, so d_i = 0 never contributes
    ranges = [range(caps[0] + 1)] + [range(1, caps[v] + 1) for v in range(1, n + 1)]
    # slots past n (if any) stay at exponent zero
    tail = (0,) * (len(caps) - n - 1)
    for head in product(*ranges):
        total = pair[0].coeff(head) + pair[1].coeff(head)
        if total.b:
            raise NonRealResult(f"coefficient at {head} has irrational part {total.b}")
        if total.a:
            terms[head + tail] = pref * total.a
    return MultiSeries(caps, terms)


def contribution(sector: SectorContribution, n: int, caps: Sequence[int]) -> MultiSeries:
    if sector.kind is SectorKind.MAIN:
        return phi_main(n, caps)
    if sector.kind is SectorKind.AK_BAR:
        if sector.k != n:
            raise SectorError(f"A_{sector.k}-bar listed for n={n}")
        return phi_ak(sector.k, caps, sector.d_k)
    return phi_points(n, sector.family, caps)


def phi(n: int, caps: Sequence[int], table: SectorTable = SECTOR_TABLE) -> MultiSeries:
    """Phi_n: sum of the sector contributions listed for n."""
    if n < 2:
        raise SectorError(f"Phi_n is defined for n >= 2, got {n}")
    caps = tuple(caps)
    if len(caps) != n + 1:
        raise SectorError(f"Phi_{n} needs {n + 1} caps, got {len(caps)}")
    total = MultiSeries.zero(caps)
    for sector in table[n]:
        total = total + contribution(sector, n, caps)
    return total
