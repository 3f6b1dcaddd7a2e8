"""Exact arithmetic in the ring of rational combinations of square roots.

A :class:`Radical` is a finite sum ``q1*sqrt(m1) + q2*sqrt(m2) + ...`` with
rational ``q`` and square-free, pairwise distinct radicands ``m``.  Square
roots of distinct square-free integers are linearly independent over the
rationals, so the normalized term map is canonical and equality is a plain
map comparison.

Rationals are :class:`fractions.Fraction`.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC

__all__ = [
    "Fraction",
    "Radical",
    "radical_normalize",
    "radical_add",
    "radical_mul",
    "square_free_split",
]


@lru_cache(maxsize=65536)
def square_free_split(n: int) -> tuple[int, int]:
    """Return ``(s, m)`` with ``n == s*s*m`` and ``m`` square-free.

    Trial division; radicands in this library stay small enough that
    nothing smarter is warranted.
    """
    if n < 0:
        raise ValueError(f"negative radicand {n}")
    if n < 4:
        return 1, n
    outside = 1
    inside = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            outside *= d ** (e // 2)
            if e % 2:
                inside *= d
        d += 1 if d == 2 else 2
    inside *= n
    return outside, inside


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    raise TypeError(f"expected a rational number, got {type(x).__name__}")


class Radical:
    """Immutable exact number ``sum(q * sqrt(m))``.

    Build values with :meth:`sqrt`, :func:`radical_normalize` or from a
    rational (``Radical(3)``, ``Radical(Fraction(1, 2))``).  Arithmetic with
    ``int`` and ``Fraction`` operands is supported on both sides.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, value=0):
        if isinstance(value, Radical):
            self._terms = value._terms
        else:
            q = _as_fraction(value)
            self._terms = {1: q} if q else {}
        self._hash = None

    @classmethod
    def _from_terms(cls, terms: dict) -> "Radical":
        # terms must already be normalized: square-free keys, no zero values
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def from_terms(cls, terms) -> "Radical":
        """Sum ``q*sqrt(m)`` over an iterable or mapping of ``(m, q)`` pairs."""
        items = terms.items() if hasattr(terms, "items") else terms
        out: dict[int, Fraction] = {}
        for m, q in items:
            q = _as_fraction(q)
            if not q:
                continue
            s, mm = square_free_split(int(m))
            if mm == 0:
                continue
            out[mm] = out.get(mm, 0) + q * s
        return cls._from_terms({m: q for m, q in sorted(out.items()) if q})

    @classmethod
    def sqrt(cls, x) -> "Radical":
        """Exact square root of a nonnegative rational."""
        x = _as_fraction(x)
        if x < 0:
            raise ValueError(f"square root of negative number {x}")
        # sqrt(p/q) = sqrt(p*q)/q
        return radical_normalize(Fraction(1, x.denominator), x.numerator * x.denominator)

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict[int, Fraction]:
        """Copy of the normalized ``{radicand: coefficient}`` map."""
        return dict(self._terms)

    def is_rational(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 1 in self._terms)

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self._terms.get(1, Fraction(0))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __float__(self) -> float:
        return float(sum(float(q) * math.sqrt(m) for m, q in self._terms.items()))

    def sign(self) -> int:
        """Exact sign, by integer interval refinement of each square root."""
        if not self._terms:
            return 0
        if len(self._terms) == 1:
            (q,) = self._terms.values()
            return 1 if q > 0 else -1
        bits = 32
        while True:
            scale = 1 << bits
            lo = hi = Fraction(0)
            for m, q in self._terms.items():
                r = math.isqrt(m * scale * scale)
                low = Fraction(r, scale)
                high = low if r * r == m * scale * scale else Fraction(r + 1, scale)
                if q > 0:
                    lo += q * low
                    hi += q * high
                else:
                    lo += q * high
                    hi += q * low
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            # nonzero by linear independence, so refinement terminates
            bits *= 2

    def __abs__(self) -> "Radical":
        return -self if self.sign() < 0 else self

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, Radical):
            return other
        if isinstance(other, (int, Fraction)):
            return Radical(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return radical_add(self, o)

    __radd__ = __add__

    def __neg__(self) -> "Radical":
        return Radical._from_terms({m: -q for m, q in self._terms.items()})

    def __pos__(self) -> "Radical":
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return radical_add(self, -o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return radical_add(o, -self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return Radical._from_terms({m: q * other for m, q in self._terms.items()})
        if not isinstance(other, Radical):
            return NotImplemented
        return radical_mul(self, other)

    __rmul__ = __mul__

    def inverse(self) -> "Radical":
        """Multiplicative inverse; defined for single-term values only."""
        if len(self._terms) != 1:
            raise ZeroDivisionError("inverse only defined for nonzero single-term radicals")
        ((m, q),) = self._terms.items()
        # 1/(q sqrt m) = sqrt(m) / (q m)
        return Radical._from_terms({m: 1 / (q * m)})

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        if not isinstance(other, Radical):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, n: int) -> "Radical":
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparison -------------------------------------------------------

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.as_fraction())
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __le__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() <= 0

    def __gt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() > 0

    def __ge__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() >= 0

    # -- text -------------------------------------------------------------

    def to_text(self) -> str:
        """Render as ``q*sqrt(m)`` terms joined by `` + ``; ``"0"`` for zero."""
        if not self._terms:
            return "0"
        parts = []
        for m, q in sorted(self._terms.items()):
            parts.append(str(q) if m == 1 else f"{q}*sqrt({m})")
        return " + ".join(parts)

    __str__ = to_text

    def __repr__(self) -> str:
        return f"Radical({self.to_text()!r})"

    _TERM = re.compile(r"^\s*(-?\d+(?:/\d+)?)(?:\*sqrt\((\d+)\))?\s*$")

    @classmethod
    def parse(cls, text: str) -> "Radical":
        """Inverse of :meth:`to_text`."""
        pairs = []
        for part in text.split(" + "):
            match = cls._TERM.match(part)
            if match is None:
                raise ValueError(f"cannot parse radical term {part!r}")
            q, m = match.groups()
            pairs.append((int(m) if m else 1, Fraction(q)))
        return cls.from_terms(pairs)


ZERO = Radical(0)
ONE = Radical(1)


def radical_normalize(coefficient, radicand: int) -> Radical:
    """``coefficient * sqrt(radicand)`` with the square part pulled out."""
    if radicand < 0:
        raise ValueError(f"negative radicand {radicand}")
    q = _as_fraction(coefficient)
    if not q or radicand == 0:
        return ZERO
    s, m = square_free_split(radicand)
    return Radical._from_terms({m: q * s})


def radical_add(a: Radical, b: Radical) -> Radical:
    if not b._terms:
        return a
    if not a._terms:
        return b
    out = dict(a._terms)
    for m, q in b._terms.items():
        v = out.get(m)
        if v is None:
            out[m] = q
        else:
            v = v + q
            if v:
                out[m] = v
            else:
                del out[m]
    if len(out) > 1:
        out = dict(sorted(out.items()))
    return Radical._from_terms(out)


def radical_mul(a: Radical, b: Radical) -> Radical:
    ta, tb = a._terms, b._terms
    if not ta or not tb:
        return ZERO
    if len(ta) == 1 and len(tb) == 1:
        ((m1, q1),) = ta.items()
        ((m2, q2),) = tb.items()
        if m1 == 1:
            return Radical._from_terms({m2: q1 * q2})
        if m2 == 1:
            return Radical._from_terms({m1: q1 * q2})
    out: dict[int, Fraction] = {}
    for m1, q1 in ta.items():
        for m2, q2 in tb.items():
            # m1, m2 square-free: sqrt(m1 m2) = g sqrt((m1/g)(m2/g)), the latter square-free
            g = math.gcd(m1, m2)
            m = (m1 // g) * (m2 // g)
            out[m] = out.get(m, 0) + q1 * q2 * g
    return Radical._from_terms({m: q for m, q in sorted(out.items()) if q})
