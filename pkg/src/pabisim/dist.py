"""Exact finitely supported subdistributions.

All weights are :class:`fractions.Fraction`; floats are rejected so that
equality of distributions is syntactic.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

from .errors import DuplicateState, MassExceedsOne, NotInSupport
from .partition import state_key

ZERO = Fraction(0)
ONE = Fraction(1)

_INT = re.compile(r"[+]?\d+\Z")
_RATIO = re.compile(r"[+]?\d+\s*/\s*\d+\Z")
_DECIMAL = re.compile(r"[+]?(\d+\.\d*|\.\d+)([eE][+-]?\d+)?\Z|[+]?\d+[eE][+-]?\d+\Z")


def to_prob(value) -> Fraction:
    """Coerce an exact rational (int, Fraction, or literal string) to a Fraction."""
    if isinstance(value, bool):
        raise TypeError("booleans are not probabilities")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"probabilities must be exact rationals, got {type(value).__name__}")


def parse_rational(text: str) -> Fraction:
    """Parse ``p``, ``p/q`` or a finite decimal literal into an exact Fraction.

    Raises ``ValueError`` for anything else.
    """
    t = text.strip()
    if _INT.match(t):
        return Fraction(int(t))
    if _RATIO.match(t):
        num, den = (part.strip() for part in t.split("/"))
        if int(den) == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    if _DECIMAL.match(t):
        return Fraction(t)
    raise ValueError(f"not a rational literal: {text!r}")


def format_prob(p: Fraction) -> str:
    return str(p.numerator) if p.denominator == 1 else f"{p.numerator}/{p.denominator}"


class SubDist:
    """Immutable map from states to strictly positive Fractions with mass <= 1."""

    __slots__ = ("_items", "_map", "_mass", "_hash")

    def __init__(self, weights=None, *, _trusted=False):
        if _trusted:
            items = weights
        else:
            items = []
            for s, p in (weights or {}).items():
                p = to_prob(p)
                if p < 0:
                    raise ValueError(f"negative weight {p} on state {s!r}")
                if p:
                    items.append((s, p))
            items.sort(key=lambda kv: state_key(kv[0]))
            items = tuple(items)
        self._items = items
        self._map = dict(items)
        self._mass = sum((p for _, p in items), ZERO)
        if self._mass > 1:
            raise MassExceedsOne(f"total mass {self._mass} exceeds 1")
        self._hash = None

    def __getitem__(self, s) -> Fraction:
        return self._map.get(s, ZERO)

    def get(self, s, default=ZERO):
        return self._map.get(s, default)

    def items(self):
        return self._items

    def support(self):
        return frozenset(self._map)

    def support_sorted(self):
        return [s for s, _ in self._items]

    @property
    def mass(self) -> Fraction:
        return self._mass

    def is_dist(self):
        return self._mass == 1

    def is_dirac(self, s=None):
        if len(self._items) != 1 or self._items[0][1] != 1:
            return False
        return s is None or self._items[0][0] == s

    def sort_key(self):
        return tuple((state_key(s), p) for s, p in self._items)

    def __contains__(self, s):
        return s in self._map

    def __iter__(self):
        return iter(self._map)

    def __len__(self):
        return len(self._items)

    def __eq__(self, other):
        if not isinstance(other, SubDist):
            return NotImplemented
        return self._items == other._items

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._items)
        return self._hash

    def __repr__(self):
        body = ", ".join(f"{s}: {format_prob(p)}" for s, p in self._items)
        return "{" + body + "}"


# Class-level distributions share the representation; keys are block ids.
ClassDist = SubDist

EMPTY = SubDist()


def make_subdist(entries) -> SubDist:
    """Build a SubDist from ``(state, prob)`` pairs; zero weights are dropped."""
    weights = {}
    for s, p in entries:
        if s in weights:
            raise DuplicateState(f"state {s!r} occurs twice")
        p = to_prob(p)
        if p < 0:
            raise ValueError(f"negative probability {p} for state {s!r}")
        weights[s] = p
    return SubDist(weights)


def dirac(s) -> SubDist:
    return SubDist(((s, ONE),), _trusted=True)


def oplus(a: SubDist, b: SubDist) -> SubDist:
    if a.mass + b.mass > 1:
        raise MassExceedsOne(f"|a| + |b| = {a.mass + b.mass} exceeds 1")
    weights = dict(a.items())
    for s, p in b.items():
        weights[s] = weights.get(s, ZERO) + p
    return SubDist(weights)


def scale(c, m: SubDist) -> SubDist:
    c = to_prob(c)
    if c < 0:
        raise ValueError("scale factor must be nonnegative")
    if c * m.mass > 1:
        raise MassExceedsOne(f"{c} * {m.mass} exceeds 1")
    return SubDist({s: c * p for s, p in m.items()})


def minus(m: SubDist, s) -> SubDist:
    if s not in m:
        raise NotInSupport(f"state {s!r} is not in the support")
    return SubDist(tuple(kv for kv in m.items() if kv[0] != s), _trusted=True)


def project(m: SubDist, partition) -> SubDist:
    """Mass per block of ``partition``; keys are block ids."""
    weights = {}
    for s, p in m.items():
        bid = partition.block_of(s)
        weights[bid] = weights.get(bid, ZERO) + p
    return SubDist(weights)


def lift_holds(partition, a: SubDist, b: SubDist) -> bool:
    """True iff every block carries the same exact mass under ``a`` and ``b``."""
    return project(a, partition) == project(b, partition)


def tv_distance(a: SubDist, b: SubDist) -> Fraction:
    """sup over state sets A of |a(A) - b(A)|, via the positive-part sums."""
    pos = neg = ZERO
    for s in a.support() | b.support():
        d = a[s] - b[s]
        if d > 0:
            pos += d
        else:
            neg -= d
    return max(pos, neg)
