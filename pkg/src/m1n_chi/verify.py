"""Self-checks: closed forms against oracles and identities the series must obey."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .genus0 import check_nonnegative, f3, iterate_pushforward, string_pushforward_g0
from .genus1 import Engine, IntegralityError, string_equation_rhs, x1_series
from .sectors import SECTOR_TABLE, PointFamily, SectorTable, phi_points, point_sector_oracle
from .series import MultiSeries, SeriesError, geom, is_symmetric, permute_vars, prod_series, subst_zero
from .wps import x1_oracle


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checks: int = 0
    failure: str = ""


@dataclass
class VerifyParams:
    x1_caps: tuple[int, int] = (30, 30)
    mf_cap: int = 60
    point_cap: int = 8
    symmetry_n: int = 4
    symmetry_cap: int = 3
    string_n: int = 4
    string_cap: int = 4
    integrality_n: int = 4
    integrality_cap: int = 5
    genus0_n: int = 6
    genus0_cap: int = 6
    table: SectorTable = SECTOR_TABLE
    threads: int = 1
    cache: object | None = None

    def engine(self) -> Engine:
        return Engine(self.table, self.threads, self.cache)


class Mismatch(AssertionError):
    pass


def first_difference(a: MultiSeries, b: MultiSeries) -> str | None:
    """Smallest exponent where the two series disagree, formatted for a report."""
    diff = a - b
    if not diff:
        return None
    e, _ = diff.items()[0]
    return f"at exponent {e}: {a.terms.get(e, 0)} != {b.terms.get(e, 0)}"


def _expect_equal(a, b, what):
    msg = first_difference(a, b)
    if msg:
        raise Mismatch(f"{what} {msg}")


def suite_x1(p: VerifyParams) -> int:
    cq, c1 = p.x1_caps
    _expect_equal(x1_series(cq, c1), x1_oracle(cq, c1), "x1_series vs P(4,6) oracle")
    return 1


def suite_mf(p: VerifyParams) -> int:
    caps = (0, p.mf_cap)
    x = x1_series(0, p.mf_cap)
    _expect_equal(x, prod_series([geom(1, 1, 4, caps), geom(1, 1, 6, caps)], caps), "X_1(0, q1)")
    return 1


def suite_points(p: VerifyParams) -> int:
    count = 0
    for n, fam in ((2, PointFamily.C4_PRIME), (2, PointFamily.C6_PRIME), (3, PointFamily.C6_DOUBLE_PRIME)):
        caps = (p.point_cap,) * (n + 1)
        _expect_equal(phi_points(n, fam, caps), point_sector_oracle(n, fam, caps), f"{fam.value} closed form vs eigenvalue sum")
        count += 1
    return count


def suite_symmetry(p: VerifyParams) -> int:
    eng = p.engine()
    count = 0
    for n in range(2, p.symmetry_n + 1):
        x = eng.x_series(n, p.symmetry_cap, p.symmetry_cap)
        if not is_symmetric(x):
            for i in range(2, n + 1):
                swapped = permute_vars(x, {1: i, i: 1})
                _expect_equal(swapped, x, f"X_{n} under swap 1<->{i}")
            raise Mismatch(f"X_{n} is not symmetric")
        count += 1
    return count


def suite_string(p: VerifyParams) -> int:
    eng = p.engine()
    c = p.string_cap
    count = 0
    for n in range(2, p.string_n + 1):
        x = eng.x_series(n, c, c)
        prev = eng.x_series(n - 1, c + 1, c)
        _expect_equal(subst_zero(x, n), string_equation_rhs(prev, n, x.caps), f"string equation n={n}")
        count += 1
    return count


def suite_integrality(p: VerifyParams) -> int:
    eng = p.engine()
    c = p.integrality_cap
    count = 0
    for n in range(2, p.integrality_n + 1):
        x = eng.x_series(n, c, c)
        for e, v in x.items():
            if v.denominator != 1:
                raise Mismatch(f"X_{n} coefficient {v} at exponent {e} is not an integer")
        count += 1
    return count


def suite_genus0(p: VerifyParams) -> int:
    m04 = string_pushforward_g0(f3((30, 0, 0)))
    for d in range(31):
        got = m04.coeff((d, 0, 0, 0))
        if got != d + 1:
            raise Mismatch(f"M_(0,4) at exponent {(d, 0, 0, 0)}: {got} != {d + 1}")
    count = 1
    for n in range(3, p.genus0_n + 1):
        bad = check_nonnegative(iterate_pushforward(n, p.genus0_cap))
        if bad:
            raise Mismatch(f"M_(0,{n}) has negative or fractional coefficient at {bad[0]}")
        count += 1
    return count


SUITES: dict[str, Callable[[VerifyParams], int]] = {
    "x1": suite_x1,
    "mf": suite_mf,
    "points": suite_points,
    "symmetry": suite_symmetry,
    "string": suite_string,
    "integrality": suite_integrality,
    "genus0": suite_genus0,
}


def run_suites(names=None, params: VerifyParams | None = None) -> list[SuiteResult]:
    params = params or VerifyParams()
    names = list(SUITES) if not names else list(names)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise KeyError(f"unknown suite(s): {', '.join(unknown)}")
    results = []
    for name in names:
        try:
            checks = SUITES[name](params)
        except (Mismatch, IntegralityError, SeriesError) as exc:
            results.append(SuiteResult(name, False, failure=str(exc)))
        else:
            results.append(SuiteResult(name, True, checks))
    return results
