"""Genus-zero generating series built by the K-theoretic string equation.

Slot ``i`` holds q_i; slot 0 is unused (cap 0) so that the slot numbering
matches the genus-one series.  Pushing forward along the map forgetting the
last point only determines the new series with the new variable set to zero,
so a :class:`Genus0Series` records how many leading variables are live.
"""

from __future__ import annotations

from dataclasses import dataclass

from .series import MultiSeries, embed, geom, prod_series


@dataclass(frozen=True)
class Genus0Series:
    n: int
    series: MultiSeries
    live: int

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("M_{0,n}-bar needs n >= 3")
        if self.series.arity != self.n + 1:
            raise ValueError(f"expected arity {self.n + 1}, got {self.series.arity}")
        if not 0 <= self.live <= self.n:
            raise ValueError(f"live slot count {self.live} outside 0..{self.n}")

    @property
    def caps(self) -> tuple[int, ...]:
        return self.series.caps[1:]

    def coeff(self, di) -> int:
        di = tuple(di)
        if any(di[self.live:]):
            raise ValueError(f"only the first {self.live} variables are determined")
        c = self.series.coeff((0,) + di)
        return int(c) if c.denominator == 1 else c


def _caps(n: int, cap) -> tuple[int, ...]:
    if isinstance(cap, int):
        return (0,) + (cap,) * n
    cap = tuple(cap)
    if len(cap) != n:
        raise ValueError(f"need {n} caps, got {len(cap)}")
    return (0,) + cap


def f3(cap) -> Genus0Series:
    """M_{0,3}-bar is a point: every L_i is trivial.

    ``cap`` is one cap for all three variables or a triple.
    """
    caps = _caps(3, cap)
    return Genus0Series(3, prod_series([geom(i, 1, 1, caps) for i in (1, 2, 3)], caps), 3)


def string_pushforward_g0(f: Genus0Series) -> Genus0Series:
    """Series on M_{0,n+1}-bar with q_{n+1} = 0, from the series on M_{0,n}-bar.

    Multiplies by 1 + sum_i q_i/(1 - q_i) over the live variables.
    """
    n = f.n + 1
    caps = _caps(n, f.caps + f.caps[-1:])
    lifted = embed(f.series, {i: i for i in range(f.n + 1)}, caps)
    factor = MultiSeries.constant(caps)
    for i in range(1, f.live + 1):
        factor = factor + MultiSeries.var(caps, i) * geom(i, 1, 1, caps)
    return Genus0Series(n, lifted * factor, f.live)


def iterate_pushforward(n: int, cap) -> Genus0Series:
    f = f3(cap)
    while f.n < n:
        f = string_pushforward_g0(f)
    return f


def check_nonnegative(f: Genus0Series | MultiSeries) -> list[tuple[int, ...]]:
    """Exponents whose coefficient is negative or not an integer."""
    s = f.series if isinstance(f, Genus0Series) else f
    return [e for e, c in s.items() if c < 0 or c.denominator != 1]
