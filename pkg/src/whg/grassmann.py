"""Commuting nilpotent variables, the generalized variable eta and Berezin integrals.

The algebra is generated by ``theta_1..theta_k`` and their conjugates
``thetabar_1..thetabar_k``, all mutually commuting with ``theta_i^2 = 0``.
A monomial is a pair of bitmasks ``(theta_mask, thetabar_mask)``; bit
``i - 1`` stands for index ``i``.  Coefficients may come from any
commutative ring whose zero is falsy (``Radical``, ``Fraction``, ``int``).
"""
from __future__ import annotations

import itertools
from math import comb, factorial
from typing import Iterable

from .exactnum import ONE, Fraction, Radical
from .report import CheckReport

__all__ = [
    "GrassmannElement",
    "OrderMismatch",
    "g_mul",
    "one",
    "theta",
    "theta_bar",
    "eta",
    "eta_bar",
    "sym_poly",
    "dicke_poly",
    "theta_derivative",
    "eta_derivative",
    "eta_bar_derivative",
    "g_operator",
    "berezin",
    "berezin_pairing",
    "sigma_measure",
    "format_monomial",
    "verify_grassmann",
]

THETA = "theta"
THETA_BAR = "theta_bar"


class OrderMismatch(ValueError):
    pass


def _indices(mask: int) -> list[int]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def format_monomial(mono: tuple[int, int]) -> str:
    """``t{1,3}tb{2}`` style text for a monomial."""
    t, tb = mono
    return "t{" + ",".join(map(str, _indices(t))) + "}tb{" + ",".join(map(str, _indices(tb))) + "}"


class GrassmannElement:
    """Immutable sparse element ``{(theta_mask, thetabar_mask): coefficient}``."""

    __slots__ = ("order", "_terms")

    def __init__(self, order: int, terms=None):
        if order < 1:
            raise ValueError(f"order must be >= 1, got {order}")
        self.order = order
        full = (1 << order) - 1
        clean = {}
        if terms:
            for (t, tb), c in (terms.items() if hasattr(terms, "items") else terms):
                if t & ~full or tb & ~full:
                    raise ValueError(f"monomial {format_monomial((t, tb))} exceeds order {order}")
                if c:
                    clean[(t, tb)] = clean[(t, tb)] + c if (t, tb) in clean else c
        self._terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def _wrap(cls, order: int, terms: dict) -> "GrassmannElement":
        obj = cls.__new__(cls)
        obj.order = order
        obj._terms = terms
        return obj

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, theta_set: Iterable[int] = (), theta_bar_set: Iterable[int] = ()):
        key = (sum(1 << (i - 1) for i in theta_set), sum(1 << (i - 1) for i in theta_bar_set))
        return self._terms.get(key, 0)

    def _same(self, other: "GrassmannElement") -> None:
        if not isinstance(other, GrassmannElement):
            raise TypeError(f"expected GrassmannElement, got {type(other).__name__}")
        if other.order != self.order:
            raise OrderMismatch(f"orders {self.order} and {other.order} differ")

    def __add__(self, other):
        if not isinstance(other, GrassmannElement):
            return NotImplemented
        self._same(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            if m in out:
                s = out[m] + c
                if s:
                    out[m] = s
                else:
                    del out[m]
            else:
                out[m] = c
        return GrassmannElement._wrap(self.order, out)

    def __neg__(self):
        return GrassmannElement._wrap(self.order, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, GrassmannElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "GrassmannElement":
        if not c:
            return GrassmannElement._wrap(self.order, {})
        return GrassmannElement._wrap(
            self.order, {m: v for m, v in ((m, c * v) for m, v in self._terms.items()) if v}
        )

    def __mul__(self, other):
        if isinstance(other, GrassmannElement):
            return g_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int) -> "GrassmannElement":
        out = one(self.order)
        for _ in range(n):
            out = g_mul(out, self)
            if not out:
                break
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, GrassmannElement):
            return self.order == other.order and self._terms == other._terms
        if not other:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash((self.order, frozenset(self._terms.items())))

    def dump(self) -> list[str]:
        return [f"{format_monomial(m)} {_text(c)}" for m, c in sorted(self._terms.items())]

    def __repr__(self) -> str:
        body = " + ".join(f"({_text(c)}) {format_monomial(m)}" for m, c in sorted(self._terms.items()))
        return f"GrassmannElement(k={self.order}: {body or '0'})"


def _text(c) -> str:
    return c.to_text() if hasattr(c, "to_text") else str(c)


def g_mul(a: GrassmannElement, b: GrassmannElement) -> GrassmannElement:
    """Product; terms sharing any theta or any thetabar index vanish."""
    a._same(b)
    out: dict = {}
    for (t1, tb1), c1 in a._terms.items():
        for (t2, tb2), c2 in b._terms.items():
            if t1 & t2 or tb1 & tb2:
                continue
            key = (t1 | t2, tb1 | tb2)
            c = c1 * c2
            out[key] = out[key] + c if key in out else c
    return GrassmannElement._wrap(a.order, {m: c for m, c in out.items() if c})


def one(k: int, coefficient=ONE) -> GrassmannElement:
    return GrassmannElement(k, {(0, 0): coefficient})


def _check_index(k: int, i: int) -> None:
    if not 1 <= i <= k:
        raise ValueError(f"index {i} out of range 1..{k}")


def theta(k: int, i: int) -> GrassmannElement:
    _check_index(k, i)
    return GrassmannElement(k, {(1 << (i - 1), 0): ONE})


def theta_bar(k: int, i: int) -> GrassmannElement:
    _check_index(k, i)
    return GrassmannElement(k, {(0, 1 << (i - 1)): ONE})


def eta(k: int) -> GrassmannElement:
    """``theta_1 + ... + theta_k``."""
    if k < 1:
        raise ValueError("eta needs k >= 1")
    return GrassmannElement(k, {(1 << i, 0): ONE for i in range(k)})


def eta_bar(k: int) -> GrassmannElement:
    if k < 1:
        raise ValueError("eta_bar needs k >= 1")
    return GrassmannElement(k, {(0, 1 << i): ONE for i in range(k)})


def _subset_masks(k: int, n: int):
    for combo in itertools.combinations(range(k), n):
        yield sum(1 << i for i in combo)


def sym_poly(k: int, n: int, conjugate: bool = False) -> GrassmannElement:
    """Elementary symmetric polynomial ``e_n`` in the thetas (or thetabars)."""
    if not 0 <= n <= k:
        raise ValueError(f"degree {n} outside 0..{k}")
    if conjugate:
        return GrassmannElement(k, {(0, m): ONE for m in _subset_masks(k, n)})
    return GrassmannElement(k, {(m, 0): ONE for m in _subset_masks(k, n)})


def dicke_poly(k: int, n: int) -> GrassmannElement:
    """``D_n = sqrt(n! (k-n)! / k!) e_n``, the Grassmann image of a Dicke state."""
    if not 0 <= n <= k:
        raise ValueError(f"degree {n} outside 0..{k}")
    return sym_poly(k, n).scale(Radical.sqrt(Fraction(1, comb(k, n))))


def theta_derivative(x: GrassmannElement, i: int, conjugate: bool = False) -> GrassmannElement:
    """``d/dtheta_i``: drop theta_i where present, kill the term otherwise."""
    _check_index(x.order, i)
    bit = 1 << (i - 1)
    out = {}
    for (t, tb), c in x._terms.items():
        if conjugate:
            if tb & bit:
                out[(t, tb ^ bit)] = c
        elif t & bit:
            out[(t ^ bit, tb)] = c
    return GrassmannElement._wrap(x.order, out)


def _sum_of_removals(x: GrassmannElement, conjugate: bool) -> GrassmannElement:
    out: dict = {}
    for (t, tb), c in x._terms.items():
        mask = tb if conjugate else t
        bit = 1
        while bit <= mask:
            if mask & bit:
                key = (t, tb ^ bit) if conjugate else (t ^ bit, tb)
                out[key] = out[key] + c if key in out else c
            bit <<= 1
    return GrassmannElement._wrap(x.order, {m: c for m, c in out.items() if c})


def eta_derivative(x: GrassmannElement) -> GrassmannElement:
    """``d/deta = sum_i d/dtheta_i``."""
    return _sum_of_removals(x, conjugate=False)


def eta_bar_derivative(x: GrassmannElement) -> GrassmannElement:
    return _sum_of_removals(x, conjugate=True)


def g_operator(x: GrassmannElement, n: int) -> GrassmannElement:
    """``g_n = sum over i_1 < ... < i_n of d/dtheta_{i_1} ... d/dtheta_{i_n}``.

    Applied by explicit composition of single-variable derivatives.
    """
    if n == 0:
        return x
    total = GrassmannElement(x.order)
    for combo in itertools.combinations(range(1, x.order + 1), n):
        y = x
        for i in combo:
            y = theta_derivative(y, i)
        total = total + y
    return total


def berezin(x: GrassmannElement, which: str = THETA) -> GrassmannElement:
    """Integrate over ``d eta = d theta_1 ... d theta_k`` (or the thetabars).

    Only terms containing every variable of the chosen kind survive, with
    that full product removed.
    """
    full = (1 << x.order) - 1
    if which == THETA:
        out = {(0, tb): c for (t, tb), c in x._terms.items() if t == full}
    elif which == THETA_BAR:
        out = {(t, 0): c for (t, tb), c in x._terms.items() if tb == full}
    else:
        raise ValueError(f"which must be {THETA!r} or {THETA_BAR!r}, got {which!r}")
    return GrassmannElement._wrap(x.order, out)


def scalar_part(x: GrassmannElement):
    """Coefficient of the empty monomial."""
    return x._terms.get((0, 0), 0)


def berezin_pairing(a: GrassmannElement, b: GrassmannElement):
    """``integral of a*b d eta d etabar`` without forming the full product.

    Only pairs of monomials with complementary index sets reach the top
    monomial, so each term of ``a`` meets at most one term of ``b``.
    """
    a._same(b)
    full = (1 << a.order) - 1
    total = 0
    bt = b._terms
    for (t, tb), c in a._terms.items():
        other = bt.get((full ^ t, full ^ tb))
        if other:
            total = total + c * other
    return total


def sigma_measure(k: int) -> GrassmannElement:
    """``sum_n eta^{k-n} etabar^{k-n} / (k! (k-n)!)`` for n = 0..k."""
    if k < 1:
        raise ValueError("sigma_measure needs k >= 1")
    out = GrassmannElement(k)
    e, eb = eta(k), eta_bar(k)
    pe, peb = one(k), one(k)
    powers = []
    for _ in range(k + 1):
        powers.append((pe, peb))
        pe, peb = g_mul(pe, e), g_mul(peb, eb)
    for n in range(k + 1):
        p, pb = powers[k - n]
        weight = Fraction(1, factorial(k) * factorial(k - n))
        out = out + g_mul(p, pb).scale(weight)
    return out


def verify_grassmann(k: int, ladder_max: int = 6) -> CheckReport:
    """Nilpotency, symmetric-polynomial, derivative, Berezin and measure identities.

    The Dicke-polynomial ladder relations are included while ``k <= ladder_max``.
    """
    rep = CheckReport("grassmann", 1, k)
    e = eta(k)
    powers = [one(k)]
    for _ in range(k + 1):
        powers.append(g_mul(powers[-1], e))
    _expect_zero(rep, f"eta^{k + 1} = 0", powers[k + 1])
    for n in range(k + 1):
        diff = powers[n] - sym_poly(k, n).scale(factorial(n))
        _expect_zero(rep, f"eta^{n} = {n}! e_{n}", diff)
    # every theta monomial at once, each with its own coefficient
    y = GrassmannElement(k, {(m, 0): Radical(m + 1) for m in range(1 << k)})
    for _ in range(k + 1):
        y = eta_derivative(y)
    _expect_zero(rep, f"(d/deta)^{k + 1} = 0", y)
    for n in range(1, k + 1):
        diff = eta_derivative(sym_poly(k, n)) - sym_poly(k, n - 1).scale(k - n + 1)
        _expect_zero(rep, f"d/deta e_{n} = {k - n + 1} e_{n - 1}", diff)
    eb = eta_bar(k)
    pb = one(k)
    for n in range(k + 1):
        expected = factorial(k) if n == k else 0
        got = scalar_part(berezin(powers[n], THETA))
        gotb = scalar_part(berezin(pb, THETA_BAR))
        _expect_scalar(rep, f"int eta^{n} deta = {expected}", got, expected)
        _expect_scalar(rep, f"int etabar^{n} detabar = {expected}", gotb, expected)
        pb = g_mul(pb, eb)
    sigma = sigma_measure(k)
    bar_powers = [one(k)]
    for _ in range(k):
        bar_powers.append(g_mul(bar_powers[-1], eb))
    for n in range(k + 1):
        for m in range(k + 1):
            expected = Fraction(factorial(k), factorial(k - n)) if n == m else 0
            got = berezin_pairing(sigma, g_mul(powers[n], bar_powers[m]))
            _expect_scalar(rep, f"int sigma eta^{n} etabar^{m} = {expected}", got, expected)
    if k <= ladder_max:
        for n in range(k + 1):
            if n < k:
                diff = g_mul(e, dicke_poly(k, n)) - dicke_poly(k, n + 1).scale(
                    Radical.sqrt((n + 1) * (k - n)))
                _expect_zero(rep, f"eta D_{n} = sqrt({(n + 1) * (k - n)}) D_{n + 1}", diff)
            if n >= 1:
                diff = eta_derivative(dicke_poly(k, n)) - dicke_poly(k, n - 1).scale(
                    Radical.sqrt(n * (k + 1 - n)))
                _expect_zero(rep, f"d/deta D_{n} = sqrt({n * (k + 1 - n)}) D_{n - 1}", diff)
    return rep


def _expect_zero(rep: CheckReport, relation: str, diff: GrassmannElement) -> bool:
    return rep.expect_items_zero(relation, (
        (format_monomial(m), c if isinstance(c, Radical) else Radical(c))
        for m, c in sorted(diff._terms.items())
    ))


def _expect_scalar(rep: CheckReport, relation: str, got, expected) -> bool:
    return rep.expect_items_zero(relation, [("value", Radical(got) - expected)])
