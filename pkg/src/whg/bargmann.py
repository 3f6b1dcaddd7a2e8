"""Fock-Bargmann realization of A(r) on total-degree-truncated polynomials.

Functions are polynomials in formal commuting generators ``eta_1..eta_r``
modulo every monomial of total degree ``k + 1``.  Creation acts as
multiplication by ``eta_i``; annihilation acts through the derivative
rule ``eta^l -> l_i (k + 1 - |l|) eta^{l - e_i}``.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial, prod

from .exactnum import ONE, Radical
from .fock import annihilation, basis, compositions, creation
from .report import CheckReport

__all__ = [
    "BargmannFunction",
    "basis_function",
    "multiply_by_eta",
    "eta_partial",
    "verify_bargmann",
]


class BargmannFunction:
    """Sparse map ``exponent tuple -> Radical`` truncated at total degree ``k``."""

    __slots__ = ("r", "k", "terms")

    def __init__(self, r: int, k: int, terms=None):
        self.r = r
        self.k = k
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != r or any(x < 0 for x in exps):
                raise ValueError(f"bad exponent tuple {exps} for rank {r}")
            if sum(exps) > k or not c:
                continue
            clean[exps] = c if isinstance(c, Radical) else Radical(c)
        self.terms = clean

    def __add__(self, other: "BargmannFunction") -> "BargmannFunction":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return BargmannFunction(self.r, self.k, out)

    def __sub__(self, other: "BargmannFunction") -> "BargmannFunction":
        return self + other.scale(-1)

    def scale(self, c) -> "BargmannFunction":
        return BargmannFunction(self.r, self.k, {e: v * c for e, v in self.terms.items()})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BargmannFunction):
            return NotImplemented
        return (self.r, self.k, self.terms) == (other.r, other.k, other.terms)

    def dump(self) -> list[str]:
        return [f"({','.join(map(str, e))}) {c.to_text()}" for e, c in sorted(self.terms.items())]

    def __repr__(self) -> str:
        return f"BargmannFunction(r={self.r}, k={self.k}, terms={len(self.terms)})"


def normalization(n, k: int) -> Radical:
    """``c_n = sqrt((k - |n|)! / (k! prod n_i!))``."""
    return Radical.sqrt(Fraction(factorial(k - sum(n)), factorial(k) * prod(factorial(x) for x in n)))


def basis_function(n, k: int) -> BargmannFunction:
    """``f_n = c_n eta_1^{n_1} ... eta_r^{n_r}``."""
    n = tuple(n)
    if any(x < 0 for x in n) or sum(n) > k:
        raise ValueError(f"occupation {n} exceeds level {k}")
    return BargmannFunction(len(n), k, {n: normalization(n, k)})


def _mode(i: int, r: int) -> int:
    if not 1 <= i <= r:
        raise ValueError(f"mode {i} out of range 1..{r}")
    return i - 1


def multiply_by_eta(i: int, f: BargmannFunction) -> BargmannFunction:
    p = _mode(i, f.r)
    out = {}
    for e, c in f.terms.items():
        if sum(e) == f.k:
            continue  # degree k+1 vanishes
        out[e[:p] + (e[p] + 1,) + e[p + 1:]] = c
    return BargmannFunction(f.r, f.k, out)


def eta_partial(i: int, f: BargmannFunction) -> BargmannFunction:
    p = _mode(i, f.r)
    out = {}
    for e, c in f.terms.items():
        if e[p] == 0:
            continue
        factor = e[p] * (f.k + 1 - sum(e))
        out[e[:p] + (e[p] - 1,) + e[p + 1:]] = c * factor
    return BargmannFunction(f.r, f.k, out)


def _items(f: BargmannFunction):
    return ((e, c) for e, c in sorted(f.terms.items()))


def verify_bargmann(r: int, k: int) -> CheckReport:
    """Intertwining of |n> -> f_n with the Fock ladder matrices, plus the
    generalized nilpotency of the derivatives.  At r=1 the formal algebra is
    also compared with the concrete theta realization ``eta = sum theta_i``."""
    b = basis(r, k)
    rep = CheckReport("bargmann", r, k)
    f = {n: basis_function(n, k) for n in b}

    def image(column: dict) -> BargmannFunction:
        out = BargmannFunction(r, k)
        for idx, c in column.items():
            out = out + f[b.label(idx)].scale(c)
        return out

    rep.record("f_(0,...,0) = 1", f[(0,) * r] == BargmannFunction(r, k, {(0,) * r: ONE}))
    for i in range(1, r + 1):
        up, down = creation(i, b), annihilation(i, b)
        bad_up, bad_down = [], []
        for col, n in enumerate(b):
            d = multiply_by_eta(i, f[n]) - image(up.apply({col: ONE}))
            bad_up.extend(((n, e), c) for e, c in _items(d))
            d = eta_partial(i, f[n]) - image(down.apply({col: ONE}))
            bad_down.extend(((n, e), c) for e, c in _items(d))
        rep.expect_items_zero(f"eta{i} f_n = image of a{i}+ |n>", bad_up)
        rep.expect_items_zero(f"d/deta{i} f_n = image of a{i}- |n>", bad_down)

    generic = BargmannFunction(r, k, {n: Radical(j + 1) for j, n in enumerate(b)})
    for exps in compositions(k + 1, r):
        g = generic
        for i, m in enumerate(exps, start=1):
            for _ in range(m):
                g = eta_partial(i, g)
        word = " ".join(f"(d/deta{i})^{m}" for i, m in enumerate(exps, start=1) if m)
        rep.expect_items_zero(f"{word} = 0", _items(g))
        g = BargmannFunction(r, k, {(0,) * r: ONE})
        for i, m in enumerate(exps, start=1):
            for _ in range(m):
                g = multiply_by_eta(i, g)
        word = " ".join(f"eta{i}^{m}" for i, m in enumerate(exps, start=1) if m)
        rep.expect_items_zero(f"{word} = 0", _items(g))

    if r == 1:
        _theta_realization(rep, k)
    return rep


def _theta_realization(rep: CheckReport, k: int) -> None:
    from .grassmann import GrassmannElement, eta, eta_derivative, format_monomial, g_mul, one, sym_poly

    e = eta(k)
    powers = [one(k)]
    for _ in range(k + 1):
        powers.append(g_mul(powers[-1], e))

    def realize(f: BargmannFunction) -> GrassmannElement:
        out = GrassmannElement(k)
        for (l,), c in f.terms.items():
            out = out + powers[l].scale(c)
        return out

    def items(x: GrassmannElement):
        return ((format_monomial(m), c) for m, c in sorted(x.terms.items()))

    rep.record(f"concrete eta^{k + 1} = 0", not powers[k + 1])
    rep.record(f"concrete 1, eta, ..., eta^{k} nonzero (dimension {k + 1})",
               all(powers[l] for l in range(k + 1)))
    for l in range(k + 1):
        rep.expect_items_zero(f"eta^{l} maps to {l}! e_{l}",
                              items(powers[l] - sym_poly(k, l).scale(factorial(l))))
        mono = BargmannFunction(1, k, {(l,): ONE})
        rep.expect_items_zero(f"eta * (eta^{l}) realized as theta product",
                              items(realize(multiply_by_eta(1, mono)) - g_mul(e, powers[l])))
        rep.expect_items_zero(f"d/deta (eta^{l}) matches sum_i d/dtheta_i",
                              items(realize(eta_partial(1, mono)) - eta_derivative(powers[l])))
