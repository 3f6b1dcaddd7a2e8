"""Barut-Girardello coherent states for su(r+1) with a generalized Grassmann label.

States live in the Fock representation of level ``k``; their entries are
symbolic coefficients in a single nilpotent generator ``eta`` (with
``eta^{k+1} = 0``), its conjugate, and the complex labels ``z_i`` and
``zbar_i``.  States are kept unnormalized: the Grassmann-valued
normalization has no scalar inverse square root, and the measure's
``|N|^{-2}`` factor cancels it exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod
from typing import NamedTuple

from .exactnum import ONE, ZERO, Radical
from .fock import annihilation, basis, compositions, creation, number, FockBasis
from .operators import SparseOperator, commutator
from .report import CheckReport

__all__ = [
    "SymbolicCoefficient",
    "CoherentState",
    "SpinOperators",
    "spin_operators",
    "verify_spin",
    "bg_coefficients",
    "bg_coefficients_by_recurrence",
    "su2_coefficients",
    "su3_coefficients",
    "verify_coefficients",
    "build_coherent_state",
    "normalization_inverse_square",
    "eigen_check",
    "lambda_nilpotency",
    "gaussian_moment",
    "sigma_symbolic",
    "eta_moments",
    "resolution_matrix",
    "resolution_check",
]


class SymbolicCoefficient:
    """Sparse polynomial ``{(p, pbar, z_exps, zbar_exps): Radical}``.

    ``p`` and ``pbar`` are powers of ``eta`` and ``etabar``; any term with
    a power above ``k`` is identically zero and is dropped on construction.
    """

    __slots__ = ("r", "k", "terms")

    def __init__(self, r: int, k: int, terms=None):
        self.r = r
        self.k = k
        clean = {}
        for key, c in (terms or {}).items():
            p, pb, z, zb = key
            if p > k or pb > k or not c:
                continue
            clean[(p, pb, tuple(z), tuple(zb))] = c if isinstance(c, Radical) else Radical(c)
        self.terms = clean

    @classmethod
    def constant(cls, r: int, k: int, c=ONE) -> "SymbolicCoefficient":
        zero = (0,) * r
        return cls(r, k, {(0, 0, zero, zero): c})

    @classmethod
    def monomial(cls, r: int, k: int, c, eta_power: int, z_exps, eta_bar_power: int = 0,
                 zbar_exps=None) -> "SymbolicCoefficient":
        zbar_exps = (0,) * r if zbar_exps is None else tuple(zbar_exps)
        return cls(r, k, {(eta_power, eta_bar_power, tuple(z_exps), zbar_exps): c})

    @classmethod
    def eigenvalue(cls, r: int, k: int, i: int) -> "SymbolicCoefficient":
        """``lambda_i = eta z_i``."""
        z = tuple(int(j == i - 1) for j in range(r))
        return cls.monomial(r, k, ONE, 1, z)

    def _same(self, other: "SymbolicCoefficient") -> None:
        if (self.r, self.k) != (other.r, other.k):
            raise ValueError(f"coefficient rings differ: {(self.r, self.k)} vs {(other.r, other.k)}")

    def __add__(self, other):
        if not isinstance(other, SymbolicCoefficient):
            return NotImplemented
        self._same(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out[key] + c if key in out else c
        return SymbolicCoefficient(self.r, self.k, out)

    def __neg__(self):
        return SymbolicCoefficient(self.r, self.k, {key: -c for key, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SymbolicCoefficient):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (Radical, int, Fraction)):
            return SymbolicCoefficient(self.r, self.k, {key: c * other for key, c in self.terms.items()})
        if not isinstance(other, SymbolicCoefficient):
            return NotImplemented
        self._same(other)
        out: dict = {}
        for (p1, pb1, z1, zb1), c1 in self.terms.items():
            for (p2, pb2, z2, zb2), c2 in other.terms.items():
                p, pb = p1 + p2, pb1 + pb2
                if p > self.k or pb > self.k:
                    continue
                key = (p, pb, tuple(a + b for a, b in zip(z1, z2)), tuple(a + b for a, b in zip(zb1, zb2)))
                c = c1 * c2
                out[key] = out[key] + c if key in out else c
        return SymbolicCoefficient(self.r, self.k, out)

    def __rmul__(self, other):
        if isinstance(other, (Radical, int, Fraction)):
            return self * other
        return NotImplemented

    def conjugate(self) -> "SymbolicCoefficient":
        # Radical coefficients are real
        return SymbolicCoefficient(self.r, self.k, {(pb, p, zb, z): c for (p, pb, z, zb), c in self.terms.items()})

    def substitute_z(self, values) -> "SymbolicCoefficient":
        """Set ``z_i = zbar_i = values[i]`` (real rationals), keeping the eta powers."""
        out: dict = {}
        zero = (0,) * self.r
        for (p, pb, z, zb), c in self.terms.items():
            factor = prod(Fraction(v) ** (a + b) for v, a, b in zip(values, z, zb))
            key = (p, pb, zero, zero)
            out[key] = out[key] + c * factor if key in out else c * factor
        return SymbolicCoefficient(self.r, self.k, out)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, SymbolicCoefficient):
            return (self.r, self.k, self.terms) == (other.r, other.k, other.terms)
        if not other:
            return not self.terms
        return NotImplemented

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (p, pb, z, zb), c in sorted(self.terms.items()):
            factors = []
            if p:
                factors.append(f"eta^{p}")
            if pb:
                factors.append(f"etabar^{pb}")
            factors += [f"z{i + 1}^{e}" for i, e in enumerate(z) if e]
            factors += [f"zbar{i + 1}^{e}" for i, e in enumerate(zb) if e]
            parts.append("(" + c.to_text() + ")" + ("*" + "*".join(factors) if factors else ""))
        return " + ".join(parts)

    __str__ = to_text

    def __repr__(self) -> str:
        return f"SymbolicCoefficient({self.to_text()})"


# -- su(2) -------------------------------------------------------------------


class SpinOperators(NamedTuple):
    j_plus: SparseOperator
    j_minus: SparseOperator
    j_z: SparseOperator
    j_sq: SparseOperator


def spin_operators(two_j: int) -> SpinOperators:
    """Spin-j matrices on ``|n>``, ``n = j + m = 0..2j``."""
    if two_j < 1:
        raise ValueError(f"two_j must be >= 1, got {two_j}")
    b = basis(1, two_j)
    j = Fraction(two_j, 2)
    # m = n - j, so (j - m)(j + m + 1) = (2j - n)(n + 1)
    jp = SparseOperator(len(b), {(n + 1, n): Radical.sqrt((two_j - n) * (n + 1)) for n in range(two_j)})
    jm = jp.transpose()
    jz = SparseOperator.diagonal(n - j for n in range(two_j + 1))
    jsq = jz @ jz + (jp @ jm + jm @ jp) * Fraction(1, 2)
    return SpinOperators(jp, jm, jz, jsq)


def verify_spin(two_j: int) -> CheckReport:
    ops = spin_operators(two_j)
    b = basis(1, two_j)
    j = Fraction(two_j, 2)
    ident = SparseOperator.identity(len(b))
    rep = CheckReport("su2_spin", 1, two_j)
    rep.expect_equal("[jz, j+] = +j+", commutator(ops.j_z, ops.j_plus), ops.j_plus, b.label)
    rep.expect_equal("[jz, j-] = -j-", commutator(ops.j_z, ops.j_minus), -ops.j_minus, b.label)
    rep.expect_equal("[j+, j-] = 2 jz", commutator(ops.j_plus, ops.j_minus), ops.j_z * 2, b.label)
    rep.expect_equal(f"j^2 = j(j+1) I = {j * (j + 1)} I", ops.j_sq, ident * (j * (j + 1)), b.label)
    rep.expect_equal(f"j+ = a+ (r=1, k={two_j})", ops.j_plus, creation(1, b), b.label)
    rep.expect_equal(f"j- = a- (r=1, k={two_j})", ops.j_minus, annihilation(1, b), b.label)
    rep.expect_equal("jz = N - j I", ops.j_z, number(1, b) - ident * j, b.label)
    return rep


# -- expansion coefficients ---------------------------------------------------


def _closed_form(n, k: int) -> Radical:
    return Radical.sqrt(Fraction(factorial(k - sum(n)), prod(factorial(x) for x in n) * factorial(k)))


def bg_coefficients(r: int, k: int) -> dict[tuple[int, ...], Radical]:
    """``C_n = sqrt((k - |n|)! / (n_1! ... n_r! k!))`` for every basis state."""
    return {n: _closed_form(n, k) for n in basis(r, k)}


def bg_coefficients_by_recurrence(r: int, k: int):
    """Coefficients generated from ``C_0 = 1`` by the eigenvalue recurrences.

    Each mode's recurrence ``C_{n+e_i} sqrt((n_i + 1)(k - |n|)) = C_n`` gives
    one prediction for ``C_{n+e_i}``.  Returns ``(coefficients, conflicts)``
    where ``conflicts`` lists states whose predictions disagree.
    """
    b = basis(r, k)
    coeffs: dict[tuple[int, ...], Radical] = {(0,) * r: ONE}
    conflicts = []
    for n in b.states[1:]:
        predictions = []
        for p in range(r):
            if n[p] == 0:
                continue
            prev = n[:p] + (n[p] - 1,) + n[p + 1:]
            # (prev_p + 1)(k - |prev|) = n_p (k + 1 - |n|)
            step = n[p] * (k + 1 - sum(n))
            predictions.append(coeffs[prev] * Radical.sqrt(Fraction(1, step)))
        coeffs[n] = predictions[0]
        if any(x != predictions[0] for x in predictions[1:]):
            conflicts.append(n)
    return coeffs, conflicts


def su2_coefficients(two_j: int) -> list[Radical]:
    """``C_n = sqrt((2j - n)! / (n! (2j)!))``, n = 0..2j."""
    return [Radical.sqrt(Fraction(factorial(two_j - n), factorial(n) * factorial(two_j)))
            for n in range(two_j + 1)]


def su3_coefficients(k: int) -> dict[tuple[int, int], Radical]:
    """``C_{n,l} = C_{0,l} sqrt((k-n-l)! / ((k-l)! n!))`` with
    ``C_{0,l} = sqrt((k-l)! / (k! l!))``."""
    out = {}
    for l in range(k + 1):
        c0l = Radical.sqrt(Fraction(factorial(k - l), factorial(k) * factorial(l)))
        for n in range(k - l + 1):
            out[(n, l)] = c0l * Radical.sqrt(Fraction(factorial(k - n - l), factorial(k - l) * factorial(n)))
    return out


def verify_coefficients(r: int, k: int) -> CheckReport:
    rep = CheckReport("bg_coefficients", r, k)
    closed = bg_coefficients(r, k)
    rec, conflicts = bg_coefficients_by_recurrence(r, k)
    rep.record("all mode recurrences agree", not conflicts,
               None if not conflicts else ", ".join(map(str, conflicts)))
    rep.expect_items_zero("recurrence from C_0 = 1 matches closed form",
                          ((n, rec[n] - closed[n]) for n in basis(r, k)))
    if r == 1:
        su2 = su2_coefficients(k)
        rep.expect_items_zero("r=1 matches su(2) coefficients", (((n,), su2[n] - closed[(n,)]) for n in range(k + 1)))
    if r == 2:
        su3 = su3_coefficients(k)
        rep.expect_items_zero("r=2 matches su(3) composite coefficients",
                              ((n, su3[n] - closed[n]) for n in basis(2, k)))
    return rep


# -- coherent states ----------------------------------------------------------


@dataclass
class CoherentState:
    basis: FockBasis
    entries: list[SymbolicCoefficient]

    @property
    def r(self) -> int:
        return self.basis.r

    @property
    def k(self) -> int:
        return self.basis.k

    def as_vector(self) -> dict[int, SymbolicCoefficient]:
        return {i: e for i, e in enumerate(self.entries) if e}

    def substitute_z(self, values) -> "CoherentState":
        return CoherentState(self.basis, [e.substitute_z(values) for e in self.entries])

    def to_records(self) -> list[dict]:
        """JSON-ready records, one per basis state."""
        out = []
        for n, e in zip(self.basis, self.entries):
            ((p, _, z, _), c), = e.terms.items()
            out.append({"index": list(n), "coefficient": c.to_text(), "eta_power": p, "z_monomial": list(z)})
        return out


def build_coherent_state(r: int, k: int) -> CoherentState:
    """Unnormalized ``sum_n C_n eta^{|n|} z^n |n>``."""
    b = basis(r, k)
    coeffs = bg_coefficients(r, k)
    entries = [SymbolicCoefficient.monomial(r, k, coeffs[n], sum(n), n) for n in b]
    return CoherentState(b, entries)


def normalization_inverse_square(r: int, k: int) -> SymbolicCoefficient:
    """``|N|^{-2} = sum_n C_n^2 eta^{|n|} etabar^{|n|} |z_1|^{2 n_1} ... |z_r|^{2 n_r}``."""
    terms = {}
    for n, c in bg_coefficients(r, k).items():
        terms[(sum(n), sum(n), n, n)] = c * c
    return SymbolicCoefficient(r, k, terms)


def eigen_check(r: int, k: int) -> CheckReport:
    """``j_i^- |CS> = eta z_i |CS>``, one record per mode."""
    rep = CheckReport("eigen", r, k)
    state = build_coherent_state(r, k)
    b = state.basis
    vec = state.as_vector()
    for i in range(1, r + 1):
        lhs = annihilation(i, b).apply(vec)
        lam = SymbolicCoefficient.eigenvalue(r, k, i)
        bad = []
        for idx, n in enumerate(b):
            diff = lhs.get(idx, SymbolicCoefficient(r, k)) - lam * state.entries[idx]
            bad.extend(((n, _key_text(key)), c) for key, c in sorted(diff.terms.items()))
        rep.expect_items_zero(f"j{i}- |eta, z> = eta z{i} |eta, z>", bad)
    return rep


def lambda_nilpotency(r: int, k: int) -> CheckReport:
    """Every degree-(k+1) monomial in the eigenvalues vanishes; degree k does not."""
    rep = CheckReport("eigenvalue_nilpotency", r, k)
    for total, expect_zero in ((k + 1, True), (k, False)):
        for exps in compositions(total, r):
            prod_ = SymbolicCoefficient.constant(r, k)
            for i, m in enumerate(exps, start=1):
                for _ in range(m):
                    prod_ = prod_ * SymbolicCoefficient.eigenvalue(r, k, i)
            word = " ".join(f"lambda{i}^{m}" for i, m in enumerate(exps, start=1) if m) or "1"
            if expect_zero:
                rep.expect_items_zero(f"{word} = 0", ((_key_text(key), c) for key, c in sorted(prod_.terms.items())))
            else:
                rep.record(f"{word} != 0", bool(prod_))
    return rep


def _key_text(key) -> str:
    p, pb, z, zb = key
    return f"eta^{p} etabar^{pb} z^{z} zbar^{zb}"


def gaussian_moment(n: int, m: int) -> Fraction:
    """``integral z^n zbar^m exp(-|z|^2) d^2z / pi = n! delta_{nm}``."""
    if n < 0 or m < 0:
        raise ValueError("moments need nonnegative exponents")
    return Fraction(factorial(n)) if n == m else Fraction(0)


def sigma_symbolic(r: int, k: int) -> SymbolicCoefficient:
    """The measure weight ``sum_n eta^{k-n} etabar^{k-n} / (k! (k-n)!)``."""
    zero = (0,) * r
    return SymbolicCoefficient(r, k, {
        (k - n, k - n, zero, zero): Fraction(1, factorial(k) * factorial(k - n)) for n in range(k + 1)
    })


def eta_moments(k: int) -> list[list[Radical]]:
    """``M[p][q] = integral eta^p etabar^q d eta d etabar``, computed at theta level."""
    from .grassmann import THETA, THETA_BAR, berezin, eta, eta_bar, g_mul, one, scalar_part

    e, eb = eta(k), eta_bar(k)
    ints, bar_ints = [], []
    x, xb = one(k), one(k)
    for _ in range(k + 1):
        ints.append(Radical(scalar_part(berezin(x, THETA))))
        bar_ints.append(Radical(scalar_part(berezin(xb, THETA_BAR))))
        x, xb = g_mul(x, e), g_mul(xb, eb)
    # commuting variables: the double integral of eta^p etabar^q factorizes
    return [[ints[p] * bar_ints[q] for q in range(k + 1)] for p in range(k + 1)]


def _integrate(c: SymbolicCoefficient, moments) -> Radical:
    total = ZERO
    for (p, pb, z, zb), v in c.terms.items():
        g = prod(gaussian_moment(a, b) for a, b in zip(z, zb))
        if g:
            total = total + v * moments[p][pb] * g
    return total


def resolution_matrix(r: int, k: int) -> SparseOperator:
    """``integral |eta,z> dmu <eta,z|`` with the normalization cancelled."""
    state = build_coherent_state(r, k)
    sigma = sigma_symbolic(r, k)
    moments = eta_moments(k)
    bras = [e.conjugate() for e in state.entries]
    entries = {}
    for row, ket in enumerate(state.entries):
        weighted = ket * sigma
        for col, bra in enumerate(bras):
            entries[(row, col)] = _integrate(weighted * bra, moments)
    return SparseOperator(len(state.basis), entries)


def resolution_check(r: int, k: int, theta_sigma_max: int = 8) -> CheckReport:
    """Resolution of the identity, plus the sigma moment identity it relies on.

    The theta-level sigma checks run while ``k <= theta_sigma_max``.
    """
    from .grassmann import GrassmannElement, berezin_pairing, eta, eta_bar, g_mul, one, sigma_measure

    rep = CheckReport("resolution", r, k)
    b = basis(r, k)
    res = resolution_matrix(r, k)
    ident = SparseOperator.identity(len(b))
    if rep.expect_equal("integral |eta,z> dmu <eta,z| = identity", res, ident, b.label):
        rep.notes.append("identity: exact")
    moments = eta_moments(k)
    sigma = sigma_symbolic(r, k)
    zero = (0,) * r
    for n in range(k + 1):
        probe = SymbolicCoefficient(r, k, {(n, n, zero, zero): ONE})
        got = _integrate(sigma * probe, moments)
        expected = Fraction(factorial(k), factorial(k - n))
        rep.expect_items_zero(f"int sigma eta^{n} etabar^{n} = {expected}", [("value", got - expected)])
    if k <= theta_sigma_max:
        e, eb = eta(k), eta_bar(k)
        pw, pwb = [one(k)], [one(k)]
        for _ in range(k):
            pw.append(g_mul(pw[-1], e))
            pwb.append(g_mul(pwb[-1], eb))
        concrete = sigma_measure(k)
        realized = GrassmannElement(k)
        for (p, pb, _, _), c in sigma.terms.items():
            realized = realized + g_mul(pw[p], pwb[pb]).scale(c)
        rep.record("symbolic sigma realizes grassmann sigma_measure", realized == concrete)
        for n in range(k + 1):
            got = berezin_pairing(concrete, g_mul(pw[n], pwb[n]))
            expected = Fraction(factorial(k), factorial(k - n))
            rep.expect_items_zero(f"theta level: int sigma eta^{n} etabar^{n} = {expected}",
                                  [("value", Radical(got) - expected)])
    return rep
