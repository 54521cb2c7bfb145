"""Line bundles on the weighted projective line P(a, b).

Sections of O(k) are spanned by monomials x^s y^t with a*s + b*t = k, and
Serre duality pairs O(k) with O(-k-a-b).  Everything here is plain integer
counting, kept apart from the series machinery so it can act as an oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .series import MultiSeries


@dataclass(frozen=True)
class WpsLineBundle:
    a: int
    b: int
    k: int

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise ValueError(f"weights must be positive, got ({self.a}, {self.b})")

    @property
    def dual_degree(self) -> int:
        return -self.k - self.a - self.b


def h0(a: int, b: int, k: int) -> int:
    """Number of monomials of weighted degree k."""
    WpsLineBundle(a, b, k)
    if k < 0:
        return 0
    count = 0
    for s in range(k // a + 1):
        if (k - a * s) % b == 0:
            count += 1
    return count


def chi_wps(a: int, b: int, k: int) -> int:
    return h0(a, b, k) - h0(a, b, -k - a - b)


def bundle_h0(bundle: WpsLineBundle) -> int:
    return h0(bundle.a, bundle.b, bundle.k)


def bundle_chi(bundle: WpsLineBundle) -> int:
    return chi_wps(bundle.a, bundle.b, bundle.k)


def x1_oracle(cap_q: int, cap_q1: int) -> MultiSeries:
    """Generating series of chi(P(4,6), O(d1 - d)) over d <= cap_q, d1 <= cap_q1."""
    terms = {}
    for d in range(cap_q + 1):
        for d1 in range(cap_q1 + 1):
            terms[(d, d1)] = chi_wps(4, 6, d1 - d)
    return MultiSeries((cap_q, cap_q1), terms)
