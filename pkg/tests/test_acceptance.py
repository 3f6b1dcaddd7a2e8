"""Acceptance criteria, one test per criterion.

Every comparison is exact, so the tolerance is zero throughout.  Each test
prints one PASS/FAIL line; ``tests/conftest.py`` repeats them in the pytest
summary, and ``python3 tests/test_acceptance.py`` prints them directly.
"""
from __future__ import annotations

import itertools
import subprocess
import sys
import time
from fractions import Fraction
from math import factorial

from whg import bargmann, coherent, fock, grassmann, qukit
from whg.operators import SparseOperator

RESULTS: dict[int, str] = {}


def _verdict(number: int, title: str, failures: list[str], elapsed: float, limit: float) -> bool:
    passed = not failures and elapsed < limit
    line = f"criterion {number:2d} [{'PASS' if passed else 'FAIL'}] {title} ({elapsed:.2f}s, limit {limit:g}s)"
    if failures:
        line += f"; first failure: {failures[0]}"
    RESULTS[number] = line
    print(line)
    return passed


def _failed(reports) -> list[str]:
    out = []
    for rep in reports:
        for r in rep.results:
            if not r.passed:
                out.append(f"{rep.check} r={rep.rank} k={rep.level}: {r.relation} ({r.witness})")
    return out


def _require(reports, *fragments) -> list[str]:
    """Each fragment must name at least one recorded relation."""
    names = [r.relation for rep in reports for r in rep.results]
    return [f"no relation matching {f!r}" for f in fragments if not any(f in n for n in names)]


def test_criterion_01_dimension_formula():
    start = time.perf_counter()
    failures = []
    for r in range(1, 5):
        for k in range(1, 7):
            brute = [n for n in itertools.product(range(k + 1), repeat=r) if sum(n) <= k]
            formula = factorial(k + r) // (factorial(k) * factorial(r))
            b = fock.basis(r, k)
            if not len(b) == fock.basis_size(r, k) == len(brute) == formula:
                failures.append(f"r={r} k={k}: {len(b)} vs {len(brute)} vs {formula}")
            if sorted(b.states) != sorted(brute):
                failures.append(f"r={r} k={k}: state sets differ")
    if len(fock.basis(2, 2)) != 6:
        failures.append("r=2 k=2 is not 6")
    assert _verdict(1, "basis dimension (k+r)!/(k!r!)", failures, time.perf_counter() - start, 1)


def test_criterion_02_wh_relations():
    start = time.perf_counter()
    reports = [fock.verify_wh_relations(r, k) for r in (1, 2, 3) for k in range(1, 6)]
    failures = _failed(reports) + _require(reports, "[a1-, a1+]", "[N1, a1+]", "[a1+, [a1+, a2-]]")
    assert _verdict(2, "A(r) commutation relations", failures, time.perf_counter() - start, 30)


def test_criterion_03_su_realization():
    start = time.perf_counter()
    reports = []
    for r in (2, 3):
        for k in range(1, 5):
            reports += [fock.verify_su_generators(r, k), fock.serre_check(r, k)]
    failures = _failed(reports) + _require(reports, "[a1+, a2-] |n>", "[e1, f1]", "e1^2 e2 - 2 e1 e2 e1 + e2 e1^2")
    assert _verdict(3, "su(r+1) mixed actions and Chevalley-Serre", failures, time.perf_counter() - start, 60)


def test_criterion_04_qukit():
    start = time.perf_counter()
    reports = [qukit.verify_nilpotency(k) for k in range(1, 11)]
    reports += [qukit.verify_qukit(k) for k in range(1, 9)]
    failures = _failed(reports) + _require(reports, "(a+)^11 = 0", "(a-)^11 = 0", "(a+)^8 |0> = sqrt(8! 8! / 0!)",
                                            "<Dm| a- |Dn> = fock a- (r=1, k=8)")
    assert _verdict(4, "qukit nilpotency, prefactors, Dicke restriction", failures,
                    time.perf_counter() - start, 60)


def test_criterion_05_grassmann():
    start = time.perf_counter()
    reports = [grassmann.verify_grassmann(k) for k in range(1, 9)]
    failures = _failed(reports) + _require(reports[-1:], "eta^9 = 0", "eta^8 = 8! e_8", "(d/deta)^9 = 0",
                                           "int eta^8 deta = 40320", "int sigma eta^8 etabar^8 = 40320")
    failures += [f"k={rep.level}: no D_n ladder records" for rep in reports[:6]
                 if not any(r.relation.startswith("eta D_") for r in rep.results)]
    assert _verdict(5, "Grassmann calculus and sigma moments", failures, time.perf_counter() - start, 30)


def test_criterion_06_bargmann():
    start = time.perf_counter()
    reports = [bargmann.verify_bargmann(r, k) for r in range(1, 4) for k in range(1, 5)]
    failures = _failed(reports) + _require(reports, "eta1 f_n = image", "d/deta1 f_n = image", "realized as theta product")
    assert _verdict(6, "Fock-Bargmann intertwining", failures, time.perf_counter() - start, 30)


def test_criterion_07_eigenvalue_equations():
    start = time.perf_counter()
    reports = [coherent.eigen_check(r, k) for r in range(1, 4) for k in range(1, 5)]
    failures = _failed(reports)
    failures += [f"r={rep.rank} k={rep.level}: {len(rep.results)} mode records" for rep in reports
                 if len(rep.results) != rep.rank]
    assert _verdict(7, "j_i^- |CS> = eta z_i |CS>", failures, time.perf_counter() - start, 30)


GRID_8 = [(1, k) for k in range(1, 7)] + [(2, k) for k in range(1, 5)] + [(3, k) for k in range(1, 4)]


def test_criterion_08_resolution_of_identity():
    start = time.perf_counter()
    failures = []
    for r, k in GRID_8:
        res = coherent.resolution_matrix(r, k)
        if res != SparseOperator.identity(len(fock.basis(r, k))):
            failures.append(f"r={r} k={k}: matrix differs from identity")
    reports = [coherent.resolution_check(r, k) for r, k in GRID_8]
    failures += _failed(reports)
    assert _verdict(8, "resolution of the identity", failures, time.perf_counter() - start, 60)


def test_criterion_09_recurrence():
    start = time.perf_counter()
    failures = []
    for r, k in GRID_8:
        rec, conflicts = coherent.bg_coefficients_by_recurrence(r, k)
        if conflicts:
            failures.append(f"r={r} k={k}: recurrences disagree at {conflicts[0]}")
        closed = coherent.bg_coefficients(r, k)
        bad = [n for n in closed if rec[n] != closed[n]]
        if bad:
            failures.append(f"r={r} k={k}: mismatch at {bad[0]}")
    failures += _failed([coherent.verify_coefficients(r, k) for r, k in GRID_8])
    assert _verdict(9, "recurrence from C_0 = 1 equals closed form", failures, time.perf_counter() - start, 10)


def test_criterion_10_large_k():
    start = time.perf_counter()
    failures = []
    for k in (50, 100):
        dev = fock.large_k_deviation(1, k, 3)
        if dev != Fraction(6, k):
            failures.append(f"k={k}: deviation {dev} != {Fraction(6, k)}")
    rep = fock.large_k_report(2, 50, 3)
    failures += _failed([rep]) + _require([rep], "[a1-, a2+] supported on", "[a2-, a1+] supported on")
    assert _verdict(10, "large-k contraction", failures, time.perf_counter() - start, 5)


def test_criterion_11_cli_determinism():
    start = time.perf_counter()
    cmd = [sys.executable, "-m", "whg", "verify-all", "--max-rank", "3", "--max-level", "3", "--format", "json"]
    runs = [subprocess.run(cmd, capture_output=True, check=False) for _ in range(2)]
    failures = [f"exit code {p.returncode}: {p.stderr.decode()[:200]}" for p in runs if p.returncode != 0]
    if runs[0].stdout != runs[1].stdout:
        failures.append("outputs differ between runs")
    if not runs[0].stdout:
        failures.append("empty output")
    assert _verdict(11, "verify-all exit 0 and byte-identical output", failures, time.perf_counter() - start, 120)


if __name__ == "__main__":
    ok = True
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                ok = False
    sys.exit(0 if ok else 1)
