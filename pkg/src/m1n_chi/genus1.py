"""Euler characteristics chi(M_{1,n}-bar, H^-d (x) L_1^d1 (x) ... (x) L_n^dn).

X_n is the generating series of these numbers in q (Hodge) and q_1..q_n.
X_1 has a closed form; X_n for n >= 2 comes from Phi_n and X_{n-1} through a
signed sum over nonempty subsets of the marked points.  That sum contains
1/q terms, which only make sense after cancellation, so each level eats one
unit of q-precision.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import ENGINE_VERSION
from .sectors import SECTOR_TABLE, SectorTable, phi
from .series import (
    MultiSeries,
    SeriesError,
    all_exponents,
    div_by_var,
    embed,
    geom,
    poly,
    prod_series,
    subst_zero,
)

log = logging.getLogger(__name__)


class IntegralityError(ArithmeticError):
    def __init__(self, exponent, value):
        self.exponent = tuple(exponent)
        self.value = Fraction(value)
        super().__init__(f"non-integer chi {self.value} at exponent {self.exponent}")


class CapBudgetError(SeriesError):
    pass


# numerator of X_1 as {(deg q, deg q1): coeff}, before the (1 + q q1) factor
_X1_NUMERATOR = {
    (0, 0): 1, (4, 0): -1, (6, 0): -1, (6, 2): -1, (8, 2): -1, (8, 4): -1,
    (2, 2): 1, (4, 4): 1, (6, 6): 1, (8, 8): 1,
}


def x1_series(cap_q: int, cap_q1: int) -> MultiSeries:
    """Closed form of X_1 on M_{1,1}-bar = P(4,6), expanded to the given caps.

    The leading factor is (1 + q q1): the coefficient of q q1 is chi(O) = 1.
    """
    caps = (cap_q, cap_q1)
    numerator = poly(caps, _X1_NUMERATOR) * poly(caps, {(0, 0): 1, (1, 1): 1})
    return prod_series(
        [numerator, geom(0, 1, 4, caps), geom(0, 1, 6, caps), geom(1, 1, 4, caps), geom(1, 1, 6, caps)],
        caps,
    )


def required_q_cap(n: int, cap_q: int, k: int = 1) -> int:
    """q-cap X_k must have so that X_n comes out exact to q-degree cap_q."""
    return cap_q + (n - k)


def one_plus_string_factor(caps: Sequence[int], slots: Sequence[int]) -> MultiSeries:
    """1 + sum_{j in slots} q_j/(1 - q_j)."""
    out = MultiSeries.constant(caps)
    for j in slots:
        out = out + MultiSeries.var(caps, j) * geom(j, 1, 1, caps)
    return out


def _hodge_shift(a: MultiSeries, caps: Sequence[int]) -> MultiSeries:
    """(a(0, ...) - a(q, ...)) / q, truncated to ``caps``.

    ``a`` must carry one more unit of q-cap than ``caps`` asks for.
    """
    return div_by_var(subst_zero(a, 0) - a, 0).truncate(caps)


def subset_term(x_prev: MultiSeries, n: int, caps: Sequence[int], subset: Sequence[int]) -> MultiSeries:
    """One unsigned summand of the reduction formula for a nonempty subset I of 1..n.

    prod_{i in I} 1/(1-q_i) * [ X_{n-1}(q, {q_j}_{j not in I}, 0...) (1 - 1/q + sum_j q_j/(1-q_j))
                                + X_{n-1}(0, {q_j}_{j not in I}, 0...) / q ]
    """
    caps = tuple(caps)
    wide = (caps[0] + 1,) + caps[1:]
    rest = [j for j in range(1, n + 1) if j not in subset]
    # X_{n-1} is symmetric, so fill its first slots with the complement and zero the others
    slot_map = {0: 0}
    slot_map.update({s: j for s, j in enumerate(rest, start=1)})
    a = embed(x_prev, slot_map, wide)
    body = a.truncate(caps) * one_plus_string_factor(caps, rest) + _hodge_shift(a, caps)
    for i in subset:
        body = body * geom(i, 1, 1, caps)
    return body


def _subset_job(args):
    x_prev, n, caps, subset = args
    return subset_term(x_prev, n, caps, subset)


def nonempty_subsets(n: int) -> list[tuple[int, ...]]:
    return [c for r in range(1, n + 1) for c in combinations(range(1, n + 1), r)]


def x_next(
    x_prev: MultiSeries,
    phi_n: MultiSeries,
    n: int,
    caps: Sequence[int],
    threads: int = 1,
) -> MultiSeries:
    """X_n from X_{n-1} and Phi_n, exact to ``caps`` = (cap_q, cap_1, ..., cap_n)."""
    caps = tuple(caps)
    if n < 2:
        raise ValueError("the reduction needs n >= 2")
    if len(caps) != n + 1 or x_prev.arity != n:
        raise CapBudgetError(f"X_{n} needs {n + 1} caps and X_{n - 1} of arity {n}")
    if phi_n.caps != caps:
        raise CapBudgetError(f"Phi_n caps {phi_n.caps} differ from {caps}")
    if x_prev.caps[0] < caps[0] + 1:
        raise CapBudgetError(
            f"X_{n - 1} has q-cap {x_prev.caps[0]}, need {caps[0] + 1} to absorb the 1/q shift"
        )
    if any(c > x_prev.caps[1] for c in caps[1:]) or len(set(x_prev.caps[1:])) > 1:
        raise CapBudgetError(f"X_{n - 1} cotangent caps {x_prev.caps[1:]} too small for {caps[1:]}")
    x_prev = x_prev.truncate((caps[0] + 1,) + (caps[1],) * (n - 1))

    subsets = nonempty_subsets(n)
    jobs = [(x_prev, n, caps, s) for s in subsets]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_subset_job, jobs))
    else:
        parts = [_subset_job(j) for j in jobs]

    total = phi_n
    for s, part in zip(subsets, parts):
        total = total + part if len(s) % 2 else total - part
    return total


@dataclass
class Engine:
    """Runs the X_1 -> X_n chain, optionally through a series cache."""

    table: SectorTable = SECTOR_TABLE
    threads: int = 1
    cache: object | None = None

    def x_series(self, n: int, cap_q: int, cap_qi: int) -> MultiSeries:
        if n < 1:
            raise ValueError("n must be at least 1")
        cached = self._load(n, cap_q, cap_qi)
        if cached is not None:
            return cached
        if n == 1:
            result = x1_series(cap_q, cap_qi)
        else:
            prev = self.x_series(n - 1, cap_q + 1, cap_qi)
            caps = (cap_q,) + (cap_qi,) * n
            log.info("X_%d at caps %s", n, caps)
            result = x_next(prev, phi(n, caps, self.table), n, caps, self.threads)
        self._store(n, cap_q, cap_qi, result)
        return result

    def _load(self, n, cap_q, cap_qi):
        if self.cache is None or self.table is not SECTOR_TABLE:
            return None
        return self.cache.load(n, cap_q, cap_qi)

    def _store(self, n, cap_q, cap_qi, series):
        if self.cache is not None and self.table is SECTOR_TABLE:
            self.cache.store(n, cap_q, cap_qi, series)


def x_series(n: int, cap_q: int, cap_qi: int, **kw) -> MultiSeries:
    return Engine(**kw).x_series(n, cap_q, cap_qi)


@dataclass
class ChiTable:
    n: int
    cap_d: int
    cap_di: int
    entries: dict = field(default_factory=dict)
    engine_version: str = ENGINE_VERSION

    def __getitem__(self, key):
        d, di = key
        return self.entries[(d, tuple(sorted(di)))]

    def rows(self) -> list[tuple[int, tuple[int, ...], int]]:
        return [(d, di, v) for (d, di), v in sorted(self.entries.items())]

    def to_csv(self) -> str:
        header = ["d"] + [f"d{i}" for i in range(1, self.n + 1)] + ["chi"]
        lines = [",".join(header)]
        for d, di, v in self.rows():
            lines.append(",".join(str(x) for x in (d, *di, v)))
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "cap_d": self.cap_d,
            "cap_di": self.cap_di,
            "engine_version": self.engine_version,
            "entries": [{"d": d, "di": list(di), "chi": str(v)} for d, di, v in self.rows()],
        }


def table_from_series(x: MultiSeries, n: int, cap_d: int, cap_di: int) -> ChiTable:
    """Integer table over every exponent inside the caps, keyed by sorted d_i."""
    for e, c in x.items():
        if c.denominator != 1:
            raise IntegralityError(e, c)
    entries = {}
    for e in all_exponents((cap_d,) + (cap_di,) * n):
        key = (e[0], tuple(sorted(e[1:])))
        if key not in entries:
            entries[key] = int(x.coeff(e))
    return ChiTable(n, cap_d, cap_di, entries)


def chi_table(n: int, cap_d: int, cap_di: int, **kw) -> ChiTable:
    if n < 1:
        raise ValueError("n must be at least 1")
    if cap_d < 0 or cap_di < 0:
        raise ValueError("caps must be nonnegative")
    x = Engine(**kw).x_series(n, cap_d, cap_di)
    return table_from_series(x, n, cap_d, cap_di)


def string_equation_rhs(x_prev: MultiSeries, n: int, caps: Sequence[int]) -> MultiSeries:
    """Pushforward of X_{n-1} along the map forgetting point n, in arity n+1.

    Equals X_n with q_n set to zero:
    X_{n-1} (1 + sum_{j<n} q_j/(1-q_j)) - (X_{n-1}(q, .) - X_{n-1}(0, .)) / q.
    """
    caps = tuple(caps)
    wide = (caps[0] + 1,) + caps[1:]
    a = embed(x_prev, {i: i for i in range(n)}, wide)
    return a.truncate(caps) * one_plus_string_factor(caps, range(1, n)) + _hodge_shift(a, caps)
