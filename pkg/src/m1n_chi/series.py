"""Truncated multivariate power series with exact rational coefficients.

A series lives in ``arity`` variables: slot 0 is the Hodge variable ``q`` and
slots ``1..n`` are the cotangent variables ``q_1..q_n``.  Every series carries
per-slot degree caps; anything beyond a cap is discarded on construction and
never reported as zero by :meth:`MultiSeries.coeff`.
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import permutations, product
from typing import Iterable, Mapping, Sequence

Rat = Fraction
Exponent = tuple[int, ...]


class SeriesError(Exception):
    pass


class ShapeMismatch(SeriesError):
    """Operands disagree on arity or caps."""


class DivisibilityError(SeriesError):
    """A series was divided by a variable it is not divisible by."""


class CapExceeded(SeriesError):
    """A coefficient beyond the computed truncation was requested."""


def _check_caps(caps: Sequence[int]) -> tuple[int, ...]:
    caps = tuple(int(c) for c in caps)
    if not caps:
        raise SeriesError("a series needs at least one variable")
    if any(c < 0 for c in caps):
        raise SeriesError(f"negative cap in {caps}")
    return caps


class MultiSeries:
    """Immutable sparse truncated power series.

    ``terms`` maps exponent tuples to nonzero :class:`fractions.Fraction`
    values.  Construction drops zeros and anything above the caps.
    """

    __slots__ = ("caps", "terms")

    def __init__(self, caps: Sequence[int], terms: Mapping[Exponent, object] | None = None):
        caps = _check_caps(caps)
        clean: dict[Exponent, Fraction] = {}
        if terms:
            k = len(caps)
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != k:
                    raise ShapeMismatch(f"exponent {e} does not match arity {k}")
                if any(x < 0 for x in e):
                    raise SeriesError(f"negative exponent {e}")
                if any(x > m for x, m in zip(e, caps)):
                    continue
                c = Fraction(c)
                if c:
                    clean[e] = c
        object.__setattr__(self, "caps", caps)
        object.__setattr__(self, "terms", clean)

    @classmethod
    def _raw(cls, caps: tuple[int, ...], terms: dict[Exponent, Fraction]) -> "MultiSeries":
        # trusted constructor: terms already canonical
        obj = object.__new__(cls)
        object.__setattr__(obj, "caps", caps)
        object.__setattr__(obj, "terms", terms)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("MultiSeries is immutable")

    def __reduce__(self):
        return (_rebuild, (self.caps, self.terms))

    # -- basic constructors -------------------------------------------------

    @classmethod
    def zero(cls, caps: Sequence[int]) -> "MultiSeries":
        return cls._raw(_check_caps(caps), {})

    @classmethod
    def constant(cls, caps: Sequence[int], c=1) -> "MultiSeries":
        caps = _check_caps(caps)
        return cls(caps, {(0,) * len(caps): c})

    @classmethod
    def monomial(cls, caps: Sequence[int], e: Sequence[int], c=1) -> "MultiSeries":
        return cls(caps, {tuple(e): c})

    @classmethod
    def var(cls, caps: Sequence[int], v: int, c=1) -> "MultiSeries":
        caps = _check_caps(caps)
        _check_var(v, len(caps))
        e = [0] * len(caps)
        e[v] = 1
        return cls(caps, {tuple(e): c})

    # -- properties ---------------------------------------------------------

    @property
    def arity(self) -> int:
        return len(self.caps)

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def items(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in canonical (lexicographic exponent) order."""
        return sorted(self.terms.items())

    def coeff(self, e: Sequence[int]) -> Fraction:
        e = tuple(e)
        if len(e) != self.arity:
            raise ShapeMismatch(f"exponent {e} does not match arity {self.arity}")
        if any(x > m for x, m in zip(e, self.caps)):
            raise CapExceeded(f"exponent {e} exceeds caps {self.caps}")
        return self.terms.get(e, Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiSeries):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return f"MultiSeries(caps={self.caps}, 0)"
        shown = " + ".join(f"({c})*{_mono(e)}" for e, c in self.items()[:8])
        more = " + ..." if len(self.terms) > 8 else ""
        return f"MultiSeries(caps={self.caps}, {shown}{more})"

    # -- arithmetic ---------------------------------------------------------

    def _same_shape(self, other: "MultiSeries") -> None:
        if not isinstance(other, MultiSeries):
            raise TypeError(f"expected MultiSeries, got {type(other).__name__}")
        if self.caps != other.caps:
            raise ShapeMismatch(f"caps differ: {self.caps} vs {other.caps}")

    def __add__(self, other: "MultiSeries") -> "MultiSeries":
        self._same_shape(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s += c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return MultiSeries._raw(self.caps, out)

    def __neg__(self) -> "MultiSeries":
        return MultiSeries._raw(self.caps, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MultiSeries") -> "MultiSeries":
        return self + (-other)

    def scale(self, c) -> "MultiSeries":
        c = Fraction(c)
        if not c:
            return MultiSeries._raw(self.caps, {})
        return MultiSeries._raw(self.caps, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._same_shape(other)
        return _mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def truncate(self, caps: Sequence[int]) -> "MultiSeries":
        """Re-truncate to caps no larger than the current ones."""
        caps = _check_caps(caps)
        if len(caps) != self.arity:
            raise ShapeMismatch("truncate cannot change arity")
        if any(a > b for a, b in zip(caps, self.caps)):
            raise SeriesError(f"cannot raise caps {self.caps} to {caps}")
        return MultiSeries._raw(
            caps,
            {e: c for e, c in self.terms.items() if all(x <= m for x, m in zip(e, caps))},
        )

    def support_vars(self) -> set[int]:
        return {i for e in self.terms for i, x in enumerate(e) if x}

    # -- serialization ------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "arity": self.arity,
            "caps": list(self.caps),
            "terms": [
                {"e": list(e), "num": str(c.numerator), "den": str(c.denominator)}
                for e, c in self.items()
            ],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "MultiSeries":
        caps = data["caps"]
        if len(caps) != data["arity"]:
            raise ShapeMismatch("arity field disagrees with caps")
        terms = {tuple(t["e"]): Fraction(int(t["num"]), int(t["den"])) for t in data["terms"]}
        return cls(caps, terms)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "MultiSeries":
        return cls.from_dict(json.loads(text))


def _rebuild(caps, terms):
    return MultiSeries._raw(caps, terms)


def _mono(e: Exponent) -> str:
    parts = []
    for i, x in enumerate(e):
        if not x:
            continue
        name = "q" if i == 0 else f"q{i}"
        parts.append(name if x == 1 else f"{name}^{x}")
    return "*".join(parts) or "1"


def _check_var(v: int, arity: int) -> None:
    if not 0 <= v < arity:
        raise SeriesError(f"variable index {v} outside arity {arity}")


def _mul(a: MultiSeries, b: MultiSeries) -> MultiSeries:
    caps = a.caps
    if len(a.terms) < len(b.terms):
        a, b = b, a
    out: dict[Exponent, Fraction] = {}
    pieces = _split_by_slot(b)
    if pieces is not None:
        # b is a sum of single-slot series: shift along one slot at a time
        for v, bterms in pieces:
            cap = caps[v]
            for e, c in a.terms.items():
                x = e[v]
                for k, d in bterms:
                    if x + k > cap:
                        break
                    f = e[:v] + (x + k,) + e[v + 1:]
                    s = out.get(f)
                    out[f] = c * d if s is None else s + c * d
    else:
        bterms = list(b.terms.items())
        for e, c in a.terms.items():
            for g, d in bterms:
                f = tuple(x + y for x, y in zip(e, g))
                if any(x > m for x, m in zip(f, caps)):
                    continue
                s = out.get(f)
                out[f] = c * d if s is None else s + c * d
    return MultiSeries._raw(caps, {e: c for e, c in out.items() if c})


def _split_by_slot(b: MultiSeries):
    """[(slot, sorted [(degree, coeff)])] if every term of b involves at most one slot."""
    groups: dict[int, list] = {}
    const = None
    for e, c in b.terms.items():
        nz = [i for i, x in enumerate(e) if x]
        if len(nz) > 1:
            return None
        if nz:
            groups.setdefault(nz[0], []).append((e[nz[0]], c))
        else:
            const = c
    if const is not None:
        slot = min(groups) if groups else 0
        groups.setdefault(slot, []).append((0, const))
    return [(v, sorted(t)) for v, t in sorted(groups.items())]


def mul(a: MultiSeries, b: MultiSeries) -> MultiSeries:
    return a * b


def add(a: MultiSeries, b: MultiSeries) -> MultiSeries:
    return a + b


def prod_series(factors: Iterable[MultiSeries], caps: Sequence[int]) -> MultiSeries:
    """Product of factors, starting from 1; factors are applied in order."""
    out = MultiSeries.constant(caps)
    for f in factors:
        out = out * f
    return out


def geom(v: int, c, step: int, caps: Sequence[int]) -> MultiSeries:
    """Expansion of ``1/(1 - c * x_v**step)`` up to the cap on slot ``v``."""
    caps = _check_caps(caps)
    _check_var(v, len(caps))
    if step <= 0:
        raise SeriesError("geom needs a positive step")
    c = Fraction(c)
    terms: dict[Exponent, Fraction] = {}
    zero = [0] * len(caps)
    power = Fraction(1)
    for m in range(caps[v] // step + 1):
        e = list(zero)
        e[v] = m * step
        terms[tuple(e)] = power
        power *= c
        if not power:
            break
    return MultiSeries(caps, terms)


def poly(caps: Sequence[int], terms: Mapping[Exponent, object]) -> MultiSeries:
    """Polynomial from an exponent -> coefficient map, truncated at caps."""
    return MultiSeries(caps, terms)


def subst_zero(s: MultiSeries, v: int) -> MultiSeries:
    """Set slot ``v`` to zero; the slot stays in place but becomes inert."""
    _check_var(v, s.arity)
    return MultiSeries._raw(s.caps, {e: c for e, c in s.terms.items() if e[v] == 0})


def mul_by_var(s: MultiSeries, v: int) -> MultiSeries:
    _check_var(v, s.arity)
    cap = s.caps[v]
    out = {}
    for e, c in s.terms.items():
        if e[v] < cap:
            out[e[:v] + (e[v] + 1,) + e[v + 1:]] = c
    return MultiSeries._raw(s.caps, out)


def div_by_var(s: MultiSeries, v: int) -> MultiSeries:
    """Exact division by ``x_v``.

    Caps are unchanged, but the top degree in ``v`` of the result is no longer
    reliable: it would have come from a term one degree above the old cap.
    Callers truncate accordingly.
    """
    _check_var(v, s.arity)
    out = {}
    for e, c in s.terms.items():
        if e[v] == 0:
            raise DivisibilityError(f"term {_mono(e)} with coefficient {c} is not divisible by slot {v}")
        out[e[:v] + (e[v] - 1,) + e[v + 1:]] = c
    return MultiSeries._raw(s.caps, out)


def coeff(s: MultiSeries, e: Sequence[int]) -> Fraction:
    return s.coeff(e)


def permute_vars(s: MultiSeries, perm: Mapping[int, int] | Sequence[int]) -> MultiSeries:
    """Move the exponent in slot ``i`` to slot ``perm[i]``.

    ``perm`` is a mapping or a sequence indexed by slot, and must fix slot 0.
    Slots absent from a mapping stay put.
    """
    k = s.arity
    if isinstance(perm, Mapping):
        target = [perm.get(i, i) for i in range(k)]
    else:
        target = list(perm)
    if len(target) != k or sorted(target) != list(range(k)):
        raise SeriesError(f"{target} is not a permutation of 0..{k - 1}")
    if target[0] != 0:
        raise SeriesError("permutations must fix the Hodge slot 0")
    caps = [0] * k
    for i, t in enumerate(target):
        caps[t] = s.caps[i]
    out = {}
    for e, c in s.terms.items():
        f = [0] * k
        for i, t in enumerate(target):
            f[t] = e[i]
        out[tuple(f)] = c
    return MultiSeries._raw(tuple(caps), out)


def embed(s: MultiSeries, slot_map: Mapping[int, int], caps: Sequence[int]) -> MultiSeries:
    """Evaluate ``s`` with some slots renamed and every other slot set to zero.

    ``slot_map`` sends source slots to target slots of a series with the given
    caps.  Source slots missing from the map are substituted by zero, and
    target slots not hit stay at exponent zero.  Terms landing beyond the
    target caps are dropped.
    """
    caps = _check_caps(caps)
    targets = list(slot_map.values())
    if len(set(targets)) != len(targets):
        raise SeriesError("slot_map must be injective")
    for src, dst in slot_map.items():
        _check_var(src, s.arity)
        _check_var(dst, len(caps))
    killed = [i for i in range(s.arity) if i not in slot_map]
    pairs = sorted(slot_map.items())
    zero = [0] * len(caps)
    out = {}
    for e, c in s.terms.items():
        if any(e[i] for i in killed):
            continue
        f = list(zero)
        ok = True
        for src, dst in pairs:
            x = e[src]
            if x > caps[dst]:
                ok = False
                break
            f[dst] = x
        if ok:
            out[tuple(f)] = c
    return MultiSeries._raw(caps, out)


def is_symmetric(s: MultiSeries) -> bool:
    """True when ``s`` is invariant under every permutation of slots 1..n."""
    if len(set(s.caps[1:])) > 1:
        return False
    for e, c in s.terms.items():
        for f in set(_perms(e)):
            if s.terms.get(f) != c:
                return False
    return True


def _perms(e: Exponent):
    head, tail = e[:1], e[1:]
    for p in permutations(tail):
        yield head + p


def all_exponents(caps: Sequence[int]):
    """Every exponent vector inside the caps, lexicographically."""
    return product(*(range(c + 1) for c in caps))
