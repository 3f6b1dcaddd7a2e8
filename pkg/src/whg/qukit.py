"""A(1) realized on k qubits: collective ladders and symmetric Dicke states.

Basis states of the k-qubit space are integers; bit ``i`` (0-based) is set
when qubit ``i + 1`` is in the excited state ``|+>``.  Rendering is
left-to-right in qubit order, so ``0b011`` at k=3 prints as ``++-``.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Mapping

from .exactnum import ONE, ZERO, Radical
from .fock import annihilation, basis, creation, number
from .operators import SparseOperator, commutator
from .report import CheckReport

__all__ = [
    "MAX_QUBITS",
    "MultiQubitVector",
    "single_qubit_ops",
    "collective_ops",
    "dicke_state",
    "vacuum",
    "bitstring",
    "verify_qukit",
    "verify_nilpotency",
]

MAX_QUBITS = 12

# single-qubit basis order: index 0 = |->, index 1 = |+>
MINUS, PLUS = 0, 1


def bitstring(state: int, k: int) -> str:
    return "".join("+" if state >> i & 1 else "-" for i in range(k))


class MultiQubitVector:
    """Sparse k-qubit vector ``{basis_state: amplitude}`` with exact amplitudes."""

    __slots__ = ("k", "amplitudes")

    def __init__(self, k: int, amplitudes: Mapping[int, Radical] | None = None):
        self.k = k
        self.amplitudes = {s: a for s, a in (amplitudes or {}).items() if a}

    def __add__(self, other: "MultiQubitVector") -> "MultiQubitVector":
        out = dict(self.amplitudes)
        for s, a in other.amplitudes.items():
            out[s] = out.get(s, ZERO) + a
        return MultiQubitVector(self.k, out)

    def __sub__(self, other: "MultiQubitVector") -> "MultiQubitVector":
        return self + other * -1

    def __mul__(self, c) -> "MultiQubitVector":
        return MultiQubitVector(self.k, {s: a * c for s, a in self.amplitudes.items()})

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.amplitudes)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiQubitVector):
            return NotImplemented
        return self.k == other.k and self.amplitudes == other.amplitudes

    def inner(self, other: "MultiQubitVector") -> Radical:
        # amplitudes are real
        total = ZERO
        small, big = sorted((self.amplitudes, other.amplitudes), key=len)
        for s, a in small.items():
            b = big.get(s)
            if b is not None:
                total = total + a * b
        return total

    def norm_squared(self) -> Radical:
        return self.inner(self)

    def apply(self, op: SparseOperator) -> "MultiQubitVector":
        return MultiQubitVector(self.k, op.apply(self.amplitudes))

    def dump(self) -> list[str]:
        return [f"{bitstring(s, self.k)} {a.to_text()}" for s, a in sorted(self.amplitudes.items())]

    def __repr__(self) -> str:
        return f"MultiQubitVector(k={self.k}, nnz={len(self.amplitudes)})"


def single_qubit_ops() -> tuple[SparseOperator, SparseOperator, SparseOperator]:
    """``(q-, q+, N_q)`` on the basis ``(|->, |+>)``; ``N_q = |+><+|``."""
    q_minus = SparseOperator(2, {(MINUS, PLUS): ONE})
    q_plus = SparseOperator(2, {(PLUS, MINUS): ONE})
    n_q = SparseOperator(2, {(PLUS, PLUS): ONE})
    return q_minus, q_plus, n_q


def _check_k(k: int, cap: int = MAX_QUBITS) -> None:
    if not 1 <= k <= cap:
        raise ValueError(f"qubit count {k} outside 1..{cap}")


def collective_ops(k: int, cap: int = MAX_QUBITS) -> tuple[SparseOperator, SparseOperator, SparseOperator]:
    """``(a-, a+, N)`` on the ``2^k`` space: sums of single-qubit operators."""
    _check_k(k, cap)
    dim = 1 << k
    lower, raise_, num = {}, {}, {}
    for s in range(dim):
        w = bin(s).count("1")
        if w:
            num[(s, s)] = w
        for i in range(k):
            bit = 1 << i
            if s & bit:
                lower[(s ^ bit, s)] = ONE
            else:
                raise_[(s | bit, s)] = ONE
    return SparseOperator(dim, lower), SparseOperator(dim, raise_), SparseOperator(dim, num)


def vacuum(k: int) -> MultiQubitVector:
    return MultiQubitVector(k, {0: ONE})


def dicke_state(k: int, n: int) -> MultiQubitVector:
    """Uniform superposition of the ``C(k, n)`` weight-n states, unit norm."""
    if not 0 <= n <= k:
        raise ValueError(f"excitation {n} outside 0..{k}")
    amp = Radical.sqrt(Fraction(1, comb(k, n)))
    return MultiQubitVector(k, {s: amp for s in range(1 << k) if bin(s).count("1") == n})


def verify_nilpotency(k: int, cap: int = MAX_QUBITS) -> CheckReport:
    """``(a+)^{k+1} = 0`` and ``(a-)^{k+1} = 0`` as operators on ``2^k``."""
    rep = CheckReport("qukit_nilpotency", 1, k)
    a_minus, a_plus, _ = collective_ops(k, cap)
    rep.expect_zero(f"(a+)^{k + 1} = 0", a_plus.power(k + 1), lambda s: bitstring(s, k))
    rep.expect_zero(f"(a-)^{k + 1} = 0", a_minus.power(k + 1), lambda s: bitstring(s, k))
    below = a_plus.power(k)
    rep.record(f"(a+)^{k} != 0", not below.is_zero())
    return rep


def _vector_items(v: MultiQubitVector):
    return ((bitstring(s, v.k), a) for s, a in sorted(v.amplitudes.items()))


def verify_qukit(k: int, cap: int = MAX_QUBITS, grassmann_max: int = 6) -> CheckReport:
    """The qukit realization of A(1), checked exactly on ``2^k`` amplitudes.

    Relations whose printed sign conventions disagree with each other are
    recorded in the form actually realized by the ladder actions.
    """
    _check_k(k, cap)
    rep = CheckReport("qukit", 1, k)
    lab = lambda s: bitstring(s, k)  # noqa: E731
    dim = 1 << k
    a_minus, a_plus, num = collective_ops(k, cap)
    ident = SparseOperator.identity(dim)
    dicke = [dicke_state(k, n) for n in range(k + 1)]

    for n in range(k + 1):
        for m in range(n, k + 1):
            ip = dicke[n].inner(dicke[m])
            rep.expect_items_zero(f"<D{n}|D{m}> = {int(n == m)}", [("value", ip - int(n == m))])

    rep.expect_items_zero("a- |0> = 0", _vector_items(vacuum(k).apply(a_minus)))
    v = vacuum(k)
    for n in range(k + 1):
        pref = Radical.sqrt(Fraction(factorial(n) * factorial(k), factorial(k - n)))
        rep.expect_items_zero(
            f"(a+)^{n} |0> = sqrt({n}! {k}! / {k - n}!) |{n}>",
            _vector_items(v - dicke[n] * pref),
        )
        v = v.apply(a_plus)
    rep.expect_items_zero(f"(a+)^{k + 1} |0> = 0", _vector_items(v))

    for n in range(k + 1):
        up = dicke[n].apply(a_plus)
        expected = dicke[n + 1] * Radical.sqrt((n + 1) * (k - n)) if n < k else MultiQubitVector(k)
        rep.expect_items_zero(f"a+ |{n}> = sqrt(F({n + 1})) |{n + 1}>", _vector_items(up - expected))
        down = dicke[n].apply(a_minus)
        expected = dicke[n - 1] * Radical.sqrt(n * (k + 1 - n)) if n else MultiQubitVector(k)
        rep.expect_items_zero(f"a- |{n}> = sqrt(F({n})) |{n - 1}>", _vector_items(down - expected))
        rep.expect_items_zero(f"N |{n}> = {n} |{n}>", _vector_items(dicke[n].apply(num) - dicke[n] * n))

    rep.expect_equal("[a-, a+] = k I - 2N (full 2^k space)", commutator(a_minus, a_plus),
                     ident * k - num * 2, lab)
    rep.expect_equal("realized: [a+, a-] = -(k I - 2N)", commutator(a_plus, a_minus),
                     -(ident * k - num * 2), lab)
    rep.expect_equal("realized: [N, a+] = +a+", commutator(num, a_plus), a_plus, lab)
    rep.expect_equal("realized: [N, a-] = -a-", commutator(num, a_minus), -a_minus, lab)
    bracket = commutator(a_plus, a_minus)
    rep.expect_equal("realized: [a-, [a+, a-]] = +2 a-", commutator(a_minus, bracket), a_minus * 2, lab)
    rep.expect_equal("realized: [a+, [a+, a-]] = -2 a+", commutator(a_plus, bracket), a_plus * -2, lab)
    rep.notes.append("[a+, a-] is realized as -(kI - 2N) and [N, a+] as +a+; "
                     "the trilinear relations hold with the signs +2a- and -2a+")

    # restriction to the Dicke span against the r=1 Fock matrices
    b = basis(1, k)
    for name, op, fock_op in (("a-", a_minus, annihilation(1, b)),
                              ("a+", a_plus, creation(1, b)),
                              ("N", num, number(1, b))):
        images = [dicke[n].apply(op) for n in range(k + 1)]
        restricted = SparseOperator(k + 1, {
            (m, n): dicke[m].inner(images[n]) for n in range(k + 1) for m in range(k + 1)
        })
        rep.expect_equal(f"<Dm| {name} |Dn> = fock {name} (r=1, k={k})", restricted, fock_op, b.label)
        leak = [(f"|{n}>", (images[n] - _project(images[n], dicke)).norm_squared()) for n in range(k + 1)]
        rep.expect_items_zero(f"{name} preserves the Dicke span", leak)

    if k <= grassmann_max:
        _grassmann_correspondence(rep, k)
    return rep


def _project(v: MultiQubitVector, basis_vectors) -> MultiQubitVector:
    out = MultiQubitVector(v.k)
    for d in basis_vectors:
        c = d.inner(v)
        if c:
            out = out + d * c
    return out


def _grassmann_correspondence(rep: CheckReport, k: int) -> None:
    """|n> -> D_n(theta) intertwines a+ with eta and a- with d/deta."""
    from .grassmann import dicke_poly, eta, eta_derivative, format_monomial, g_mul

    b = basis(1, k)
    up, down = creation(1, b), annihilation(1, b)
    polys = [dicke_poly(k, n) for n in range(k + 1)]
    e = eta(k)

    def image(column: dict):
        total = polys[0].scale(0)
        for n, c in column.items():
            total = total + polys[n].scale(c)
        return total

    for n in range(k + 1):
        lhs = g_mul(e, polys[n]) - image(up.apply({n: ONE}))
        rep.expect_items_zero(f"eta D_{n} = image of a+ |{n}>",
                              ((format_monomial(m), c) for m, c in sorted(lhs.terms.items())))
        lhs = eta_derivative(polys[n]) - image(down.apply({n: ONE}))
        rep.expect_items_zero(f"d/deta D_{n} = image of a- |{n}>",
                              ((format_monomial(m), c) for m, c in sorted(lhs.terms.items())))
