"""Finite Fock representation of the generalized Weyl-Heisenberg algebra A(r).

Basis vectors are occupation tuples ``(n_1, ..., n_r)`` with ``sum(n) <= k``.
Modes are numbered from 1 as in the usual physics notation; the ladder
actions are

    a_i^- |n> = sqrt(n_i (k + 1 - |n|)) |n - e_i>
    a_i^+ |n> = sqrt((n_i + 1)(k - |n|)) |n + e_i>

with ``|n| = sum(n)``.  Operators are :class:`SparseOperator` instances
indexed by basis rank.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import comb

from .exactnum import ONE, Radical
from .operators import SparseOperator, commutator
from .report import CheckReport

__all__ = [
    "FockBasis",
    "basis",
    "basis_size",
    "structure_function",
    "annihilation",
    "creation",
    "number",
    "commutator",
    "verify_wh_relations",
    "su_generators",
    "verify_su_generators",
    "cartan_matrix",
    "chevalley_generators",
    "serre_check",
    "commuting_ladders",
    "verify_commuting_ladders",
    "large_k_deviation",
    "large_k_report",
    "compositions",
]


def basis_size(r: int, k: int) -> int:
    """``(k + r)! / (k! r!)``."""
    return comb(k + r, r)


def compositions(total: int, parts: int):
    """All tuples of ``parts`` nonnegative integers summing to ``total``, lex order."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def _count(total: int, parts: int) -> int:
    # weak compositions of total into parts
    if parts == 0:
        return 1 if total == 0 else 0
    return comb(total + parts - 1, parts - 1)


class FockBasis:
    """All ``r``-mode occupations with total at most ``k``, graded-lex ordered.

    Order: by total occupation, then lexicographically ascending.  ``rank``
    and ``unrank`` are closed-form combinatorial maps; the stored state list
    is only a cache for iteration.
    """

    def __init__(self, r: int, k: int):
        if r < 1:
            raise ValueError(f"rank must be >= 1, got {r}")
        if k < 1:
            raise ValueError(f"level must be >= 1, got {k}")
        self.r = r
        self.k = k
        self.states: tuple[tuple[int, ...], ...] = tuple(
            n for s in range(k + 1) for n in compositions(s, r)
        )

    def __len__(self) -> int:
        return len(self.states)

    @property
    def size(self) -> int:
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def __contains__(self, n) -> bool:
        n = tuple(n)
        return len(n) == self.r and all(x >= 0 for x in n) and sum(n) <= self.k

    def validate(self, n) -> tuple[int, ...]:
        n = tuple(int(x) for x in n)
        if n not in self:
            raise ValueError(f"{n} is not a basis state for r={self.r}, k={self.k}")
        return n

    def rank(self, n) -> int:
        n = self.validate(n)
        s = sum(n)
        pos = comb(s - 1 + self.r, self.r) if s else 0
        remaining = s
        for p in range(self.r - 1):
            tail = self.r - p - 1
            for a in range(n[p]):
                pos += _count(remaining - a, tail)
            remaining -= n[p]
        return pos

    def unrank(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < len(self):
            raise IndexError(f"index {index} outside basis of size {len(self)}")
        s = 0
        while comb(s + self.r, self.r) <= index:
            s += 1
        offset = index - (comb(s - 1 + self.r, self.r) if s else 0)
        out = []
        remaining = s
        for p in range(self.r - 1):
            tail = self.r - p - 1
            a = 0
            while offset >= _count(remaining - a, tail):
                offset -= _count(remaining - a, tail)
                a += 1
            out.append(a)
            remaining -= a
        out.append(remaining)
        return tuple(out)

    def label(self, index: int) -> tuple[int, ...]:
        return self.states[index]

    def __repr__(self) -> str:
        return f"FockBasis(r={self.r}, k={self.k}, size={len(self)})"


@lru_cache(maxsize=None)
def basis(r: int, k: int) -> FockBasis:
    return FockBasis(r, k)


def _mode(i: int, r: int) -> int:
    if not 1 <= i <= r:
        raise ValueError(f"mode {i} out of range 1..{r}")
    return i - 1


def structure_function(i: int, n, k: int) -> Fraction:
    """``F_i(n) = n_i (k + 1 - |n|)``."""
    n = tuple(n)
    p = _mode(i, len(n))
    if any(x < 0 for x in n) or sum(n) > k + 1:
        raise ValueError(f"invalid occupation {n} for level {k}")
    return Fraction(n[p] * (k + 1 - sum(n)))


def _shift(n: tuple[int, ...], p: int, d: int) -> tuple[int, ...]:
    return n[:p] + (n[p] + d,) + n[p + 1:]


@lru_cache(maxsize=None)
def annihilation(i: int, b: FockBasis) -> SparseOperator:
    p = _mode(i, b.r)
    entries = {}
    for col, n in enumerate(b.states):
        if n[p] == 0:
            continue
        amp = n[p] * (b.k + 1 - sum(n))
        entries[(b.rank(_shift(n, p, -1)), col)] = Radical.sqrt(amp)
    return SparseOperator(len(b), entries)


@lru_cache(maxsize=None)
def creation(i: int, b: FockBasis) -> SparseOperator:
    p = _mode(i, b.r)
    entries = {}
    for col, n in enumerate(b.states):
        if sum(n) == b.k:
            continue
        amp = (n[p] + 1) * (b.k - sum(n))
        entries[(b.rank(_shift(n, p, 1)), col)] = Radical.sqrt(amp)
    return SparseOperator(len(b), entries)


@lru_cache(maxsize=None)
def number(i: int, b: FockBasis) -> SparseOperator:
    p = _mode(i, b.r)
    return SparseOperator.diagonal(n[p] for n in b.states)


def total_number(b: FockBasis) -> SparseOperator:
    return SparseOperator.diagonal(sum(n) for n in b.states)


def verify_wh_relations(r: int, k: int) -> CheckReport:
    """Check the defining relations of A(r) exactly on the Fock representation."""
    b = basis(r, k)
    rep = CheckReport("wh_relations", r, k)
    lab = b.label
    ident = SparseOperator.identity(len(b))
    total = total_number(b)
    minus = {i: annihilation(i, b) for i in range(1, r + 1)}
    plus = {i: creation(i, b) for i in range(1, r + 1)}
    nums = {i: number(i, b) for i in range(1, r + 1)}
    modes = range(1, r + 1)
    for i in modes:
        rep.expect_equal(
            f"[a{i}-, a{i}+] = k I - (sum_j N_j + N{i})",
            commutator(minus[i], plus[i]),
            ident * k - (total + nums[i]),
            lab,
        )
    for i in modes:
        for j in modes:
            for sign, ops in ((1, plus), (-1, minus)):
                s = "+" if sign > 0 else "-"
                expected = ops[j] * sign if i == j else SparseOperator.zeros(len(b))
                rep.expect_equal(
                    f"[N{i}, a{j}{s}] = {s}delta({i},{j}) a{j}{s}",
                    commutator(nums[i], ops[j]),
                    expected,
                    lab,
                )
    for i, j in itertools.combinations(modes, 2):
        rep.expect_zero(f"[a{i}+, a{j}+] = 0", commutator(plus[i], plus[j]), lab)
        rep.expect_zero(f"[a{i}-, a{j}-] = 0", commutator(minus[i], minus[j]), lab)
    for i in modes:
        for j in modes:
            if i == j:
                continue
            rep.expect_zero(
                f"[a{i}+, [a{i}+, a{j}-]] = 0",
                commutator(plus[i], commutator(plus[i], minus[j])),
                lab,
            )
            rep.expect_zero(
                f"[a{i}-, [a{i}-, a{j}+]] = 0",
                commutator(minus[i], commutator(minus[i], plus[j])),
                lab,
            )
    return rep


def su_generators(r: int, k: int) -> dict[str, SparseOperator]:
    """The ``r(r+2)`` generators of su(r+1) built from A(r).

    Keys: ``E+a``, ``E-a`` (ladders), ``Ha`` (Cartan) and ``E+a,-b`` for
    ``a != b`` (the commutators ``[a_a^+, a_b^-]``).
    """
    b = basis(r, k)
    ident = SparseOperator.identity(len(b))
    total = total_number(b)
    half = Fraction(1, 2)
    gens: dict[str, SparseOperator] = {}
    for a in range(1, r + 1):
        gens[f"E+{a}"] = creation(a, b)
        gens[f"E-{a}"] = annihilation(a, b)
    for a in range(1, r + 1):
        gens[f"H{a}"] = (ident * k - (total + number(a, b))) * half
    for a in range(1, r + 1):
        for c in range(1, r + 1):
            if a != c:
                gens[f"E+{a},-{c}"] = commutator(creation(a, b), annihilation(c, b))
    return gens


def _mixed_expected(b: FockBasis, i: int, j: int) -> SparseOperator:
    # sqrt(n_j (n_i + 1)) |n + e_i - e_j>
    pi, pj = i - 1, j - 1
    entries = {}
    for col, n in enumerate(b.states):
        if n[pj] == 0:
            continue
        target = _shift(_shift(n, pj, -1), pi, 1)
        entries[(b.rank(target), col)] = Radical.sqrt(n[pj] * (n[pi] + 1))
    return SparseOperator(len(b), entries)


def verify_su_generators(r: int, k: int) -> CheckReport:
    """Mixed-generator actions, tracelessness and Cartan weights of su(r+1)."""
    b = basis(r, k)
    rep = CheckReport("su_generators", r, k)
    gens = su_generators(r, k)
    rep.record(f"generator count = r(r+2) = {r * (r + 2)}", len(gens) == r * (r + 2),
               None if len(gens) == r * (r + 2) else str(len(gens)))
    for i in range(1, r + 1):
        for j in range(1, r + 1):
            if i == j:
                continue
            rep.expect_equal(
                f"[a{i}+, a{j}-] |n> = sqrt(n{j}(n{i}+1)) |n + e{i} - e{j}>",
                gens[f"E+{i},-{j}"],
                _mixed_expected(b, i, j),
                b.label,
            )
    for name, op in gens.items():
        if name.startswith("H"):
            continue
        tr = op.trace()
        rep.record(f"trace({name}) = 0", not tr, None if not tr else tr.to_text(), abs(tr))
    for i, j in itertools.combinations(range(1, r + 1), 2):
        rep.expect_zero(f"[H{i}, H{j}] = 0", commutator(gens[f"H{i}"], gens[f"H{j}"]), b.label)
    for i in range(1, r + 1):
        for a in range(1, r + 1):
            weight = Fraction(1 + (i == a), 2)
            rep.expect_equal(
                f"[H{i}, E+{a}] = -{weight} E+{a}",
                commutator(gens[f"H{i}"], gens[f"E+{a}"]),
                gens[f"E+{a}"] * -weight,
                b.label,
            )
            rep.expect_equal(
                f"[H{i}, E-{a}] = +{weight} E-{a}",
                commutator(gens[f"H{i}"], gens[f"E-{a}"]),
                gens[f"E-{a}"] * weight,
                b.label,
            )
    return rep


def cartan_matrix(r: int) -> list[list[int]]:
    """Cartan matrix of su(r+1): 2 on the diagonal, -1 on the first off-diagonals."""
    return [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(r)] for i in range(r)]


def boson_bilinear(b: FockBasis, p: int, q: int) -> SparseOperator:
    """``b_p^+ b_q^-`` restricted to ``n_0 + n_1 + ... + n_r = k``.

    Oscillator 0 is eliminated through ``n_0 = k - |n|``; indices ``p, q``
    run over ``0..r``.
    """
    entries = {}
    for col, n in enumerate(b.states):
        full = (b.k - sum(n),) + n
        if p == q:
            if full[p]:
                entries[(col, col)] = full[p]
            continue
        if full[q] == 0:
            continue
        amp = full[q] * (full[p] + 1)
        moved = list(full)
        moved[q] -= 1
        moved[p] += 1
        entries[(b.rank(tuple(moved[1:])), col)] = Radical.sqrt(amp)
    return SparseOperator(len(b), entries)


def chevalley_generators(r: int, k: int):
    """``(e, f, h)`` lists for su(r+1) in the symmetric representation of level k.

    ``e_i = b_{i-1}^+ b_i^-``, ``f_i = b_{i-1}^- b_i^+``,
    ``h_i = N_{i-1} - N_i``; lists are 0-based (``e[0]`` is e_1).
    """
    b = basis(r, k)
    e = [boson_bilinear(b, i - 1, i) for i in range(1, r + 1)]
    f = [boson_bilinear(b, i, i - 1) for i in range(1, r + 1)]
    h = [boson_bilinear(b, i - 1, i - 1) - boson_bilinear(b, i, i) for i in range(1, r + 1)]
    return e, f, h


def serre_check(r: int, k: int) -> CheckReport:
    """Chevalley relations and both Serre relations, exactly."""
    b = basis(r, k)
    lab = b.label
    rep = CheckReport("serre", r, k)
    a = cartan_matrix(r)
    e, f, h = chevalley_generators(r, k)
    zero = SparseOperator.zeros(len(b))
    idx = range(r)
    for i in idx:
        for j in idx:
            rep.expect_equal(f"[e{i+1}, f{j+1}] = delta h{j+1}", commutator(e[i], f[j]),
                             h[j] if i == j else zero, lab)
    for i in idx:
        for j in idx:
            rep.expect_equal(f"[h{i+1}, e{j+1}] = {a[i][j]} e{j+1}", commutator(h[i], e[j]),
                             e[j] * a[i][j], lab)
            rep.expect_equal(f"[h{i+1}, f{j+1}] = {-a[i][j]} f{j+1}", commutator(h[i], f[j]),
                             f[j] * -a[i][j], lab)
    for i, j in itertools.combinations(idx, 2):
        if j - i > 1:
            rep.expect_zero(f"[e{i+1}, e{j+1}] = 0", commutator(e[i], e[j]), lab)
            rep.expect_zero(f"[f{i+1}, f{j+1}] = 0", commutator(f[i], f[j]), lab)
    for i in idx:
        for j in (i - 1, i + 1):
            if not 0 <= j < r:
                continue
            for name, x in (("e", e), ("f", f)):
                xi, xj = x[i], x[j]
                serre = xi @ xi @ xj - (xi @ xj @ xi) * 2 + xj @ xi @ xi
                rep.expect_zero(
                    f"{name}{i+1}^2 {name}{j+1} - 2 {name}{i+1} {name}{j+1} {name}{i+1}"
                    f" + {name}{j+1} {name}{i+1}^2 = 0",
                    serre,
                    lab,
                )
    return rep


def commuting_ladders(r: int, k: int):
    """``(j_plus, j_minus)`` built by nested commutators of Chevalley generators.

    ``j_1^+ = f_1``, ``j_i^+ = [f_i, j_{i-1}^+]`` and ``j_1^- = e_1``,
    ``j_i^- = [j_{i-1}^-, e_i]``.  Lists are 0-based.
    """
    e, f, _ = chevalley_generators(r, k)
    jp = [f[0]]
    jm = [e[0]]
    for i in range(1, r):
        jp.append(commutator(f[i], jp[-1]))
        jm.append(commutator(jm[-1], e[i]))
    return jp, jm


def _word(ops, exps, dim):
    out = SparseOperator.identity(dim)
    for op, m in zip(ops, exps):
        for _ in range(m):
            out = op @ out
            if out.is_zero():
                return out
    return out


def verify_commuting_ladders(r: int, k: int) -> CheckReport:
    b = basis(r, k)
    lab = b.label
    rep = CheckReport("commuting_ladders", r, k)
    jp, jm = commuting_ladders(r, k)
    for i in range(1, r + 1):
        rep.expect_equal(f"j{i}- = a{i}-", jm[i - 1], annihilation(i, b), lab)
        rep.expect_equal(f"j{i}+ = a{i}+", jp[i - 1], creation(i, b), lab)
        rep.expect_equal(f"j{i}- = transpose(j{i}+)", jm[i - 1], jp[i - 1].transpose(), lab)
    for i, j in itertools.combinations(range(r), 2):
        rep.expect_zero(f"[j{i+1}-, j{j+1}-] = 0", commutator(jm[i], jm[j]), lab)
        rep.expect_zero(f"[j{i+1}+, j{j+1}+] = 0", commutator(jp[i], jp[j]), lab)
    for exps in compositions(k + 1, r):
        word = " ".join(f"(j{i+1}{{s}})^{m}" for i, m in enumerate(exps) if m)
        rep.expect_zero(word.format(s="+") + " = 0", _word(jp, exps, len(b)), lab)
        rep.expect_zero(word.format(s="-") + " = 0", _word(jm, exps, len(b)), lab)
    return rep


def _scaled_commutators(r: int, k: int, n_max: int):
    if not 0 <= n_max < k:
        raise ValueError(f"need 0 <= n_max < k, got n_max={n_max}, k={k}")
    b = basis(r, k)
    inv_k = Fraction(1, k)
    keep = lambda idx: sum(b.states[idx]) <= n_max  # noqa: E731
    ident = SparseOperator.identity(len(b))
    diag = {}
    cross = {}
    for i in range(1, r + 1):
        c = commutator(annihilation(i, b), creation(i, b)) * inv_k
        diag[i] = (c - ident).restrict(keep)
        for j in range(1, r + 1):
            if i != j:
                cross[(i, j)] = (commutator(annihilation(i, b), creation(j, b)) * inv_k).restrict(keep)
    return b, diag, cross


def large_k_deviation(r: int, k: int, n_max: int) -> Radical:
    """Largest |entry| of ``[a_i^-/sqrt k, a_i^+/sqrt k] - I`` and of the
    cross commutators ``[a_i^-/sqrt k, a_j^+/sqrt k]``, over states with total
    occupation at most ``n_max``."""
    _, diag, cross = _scaled_commutators(r, k, n_max)
    best = Radical(0)
    for op in list(diag.values()) + list(cross.values()):
        worst = op.max_abs_entry()
        if worst is not None and worst[1] > best:
            best = worst[1]
    return best


def large_k_report(r: int, k: int, n_max: int) -> CheckReport:
    """Contraction to r independent oscillators as k grows."""
    b, diag, cross = _scaled_commutators(r, k, n_max)
    rep = CheckReport("large_k", r, k)
    bound = Fraction(2 * n_max, k)
    for i, op in diag.items():
        worst = op.max_abs_entry()
        dev = worst[1] if worst else Radical(0)
        rep.record(f"|[a{i}-, a{i}+]/k - I| on |n|<={n_max}: {dev} <= {bound}", dev <= bound,
                   None if dev <= bound else dev.to_text())
    for (i, j), op in cross.items():
        worst = op.max_abs_entry()
        dev = worst[1] if worst else Radical(0)
        rep.record(f"|[a{i}-, a{j}+]/k| on |n|<={n_max}: {dev} <= {bound}", dev <= bound,
                   None if dev <= bound else dev.to_text())
        stray = [
            ((b.label(row), b.label(col)), v)
            for (row, col), v in sorted(op.entries.items())
            if b.label(row) != _shift(_shift(b.label(col), j - 1, 1), i - 1, -1)
        ]
        rep.expect_items_zero(f"[a{i}-, a{j}+] supported on |n> -> |n - e{i} + e{j}>", stray)
    return rep
