from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from whg.exactnum import Radical
from whg.fock import (
    FockBasis,
    annihilation,
    basis,
    basis_size,
    boson_bilinear,
    cartan_matrix,
    chevalley_generators,
    commuting_ladders,
    creation,
    large_k_deviation,
    large_k_report,
    number,
    serre_check,
    structure_function,
    su_generators,
    total_number,
    verify_commuting_ladders,
    verify_su_generators,
    verify_wh_relations,
)
from whg.operators import SparseOperator, commutator


def _brute_force_states(r, k):
    return [n for n in itertools.product(range(k + 1), repeat=r) if sum(n) <= k]


@pytest.mark.parametrize("r", range(1, 5))
@pytest.mark.parametrize("k", range(1, 7))
def test_basis_size_matches_enumeration(r, k):
    states = _brute_force_states(r, k)
    assert basis_size(r, k) == len(states) == math.factorial(k + r) // (math.factorial(k) * math.factorial(r))
    assert sorted(basis(r, k).states) == sorted(states)


def test_graded_lex_order():
    assert basis(2, 2).states == ((0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0))
    assert len(basis(2, 2)) == 6


@given(st.integers(1, 4), st.integers(1, 8), st.data())
def test_rank_unrank_round_trip(r, k, data):
    b = basis(r, k)
    idx = data.draw(st.integers(0, len(b) - 1))
    n = b.unrank(idx)
    assert b.rank(n) == idx
    assert b.states[idx] == n


def test_basis_rejects_bad_parameters():
    with pytest.raises(ValueError):
        FockBasis(0, 3)
    with pytest.raises(ValueError):
        FockBasis(2, 0)
    b = basis(2, 2)
    assert (1, 1) in b
    assert (2, 1) not in b
    with pytest.raises(ValueError):
        b.rank((2, 1))
    with pytest.raises(IndexError):
        b.unrank(6)


def test_structure_function():
    # F_i(n) = n_i (k + 1 - |n|)
    assert structure_function(1, (2, 1), 4) == 4
    assert structure_function(2, (2, 1), 4) == 2
    assert structure_function(1, (0, 3), 4) == 0
    assert isinstance(structure_function(1, (1,), 2), Fraction)


def test_frozen_ladder_matrices_r1_k2():
    b = basis(1, 2)
    assert annihilation(1, b).dump(b.label) == ["(0) (1) 1*sqrt(2)", "(1) (2) 1*sqrt(2)"]
    assert creation(1, b).dump(b.label) == ["(1) (0) 1*sqrt(2)", "(2) (1) 1*sqrt(2)"]
    assert number(1, b).dump(b.label) == ["(1) (1) 1", "(2) (2) 2"]


def test_frozen_ladder_matrices_r2_k2():
    b = basis(2, 2)
    assert annihilation(2, b).dump(b.label) == [
        "(0,0) (0,1) 1*sqrt(2)",
        "(0,1) (0,2) 1*sqrt(2)",
        "(1,0) (1,1) 1",
    ]


def _float_ladder(r, k, i, raising):
    # independent float construction from the occupation-number action
    states = sorted(_brute_force_states(r, k), key=lambda n: (sum(n), n))
    pos = {n: j for j, n in enumerate(states)}
    m = np.zeros((len(states), len(states)))
    for n in states:
        tot = sum(n)
        if raising:
            if tot < k:
                target = n[:i - 1] + (n[i - 1] + 1,) + n[i:]
                m[pos[target], pos[n]] = math.sqrt((n[i - 1] + 1) * (k - tot))
        elif n[i - 1]:
            target = n[:i - 1] + (n[i - 1] - 1,) + n[i:]
            m[pos[target], pos[n]] = math.sqrt(n[i - 1] * (k + 1 - tot))
    return m


def _as_float(op):
    return np.array([[float(x) for x in row] for row in op.to_dense()])


@pytest.mark.parametrize("r, k", [(1, 4), (2, 3), (3, 2)])
def test_ladders_match_float_oracle(r, k):
    b = basis(r, k)
    for i in range(1, r + 1):
        assert np.allclose(_as_float(annihilation(i, b)), _float_ladder(r, k, i, False))
        assert np.allclose(_as_float(creation(i, b)), _float_ladder(r, k, i, True))


@pytest.mark.parametrize("r", [1, 2, 3])
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_wh_relations(r, k):
    rep = verify_wh_relations(r, k)
    assert rep.passed, rep.to_text()
    assert rep.max_deviation == 0


def test_basic_commutator_by_hand():
    b = basis(2, 3)
    lhs = commutator(annihilation(1, b), creation(1, b))
    rhs = SparseOperator.identity(len(b)) * 3 - (total_number(b) + number(1, b))
    assert lhs == rhs


@pytest.mark.parametrize("r, k", [(1, 3), (2, 2), (2, 4), (3, 3), (4, 2)])
def test_su_generators_and_serre(r, k):
    assert len(su_generators(r, k)) == r * (r + 2)
    rep = verify_su_generators(r, k)
    assert rep.passed, rep.to_text()
    rep = serre_check(r, k)
    assert rep.passed, rep.to_text()


def test_cartan_matrix():
    assert cartan_matrix(1) == [[2]]
    assert cartan_matrix(3) == [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]


def test_chevalley_in_terms_of_bosons():
    # f_1 lowers mode 0 and raises mode 1, so it equals the creation operator a_1^+
    b = basis(2, 2)
    e, f, h = chevalley_generators(2, 2)
    assert f[0] == creation(1, b)
    assert e[0] == annihilation(1, b)
    assert boson_bilinear(b, 2, 1) == commutator(creation(2, b), annihilation(1, b))


@pytest.mark.parametrize("r, k", [(1, 2), (2, 3), (3, 2), (4, 2)])
def test_commuting_ladders(r, k):
    jp, jm = commuting_ladders(r, k)
    b = basis(r, k)
    assert jm == [annihilation(i, b) for i in range(1, r + 1)]
    assert jp == [creation(i, b) for i in range(1, r + 1)]
    assert verify_commuting_ladders(r, k).passed


def test_corrupted_relation_reports_witness():
    b = basis(1, 2)
    bad = creation(1, b) + SparseOperator(len(b), {(0, 0): Radical(1)})
    from whg.report import CheckReport

    rep = CheckReport("demo", 1, 2)
    rep.expect_equal("a+ = a+", bad, creation(1, b), b.label)
    assert not rep.passed
    assert rep.max_deviation == 1
    assert rep.results[0].witness == "(0) (0) 1"


@pytest.mark.parametrize("r, k, n_max, expected", [
    (1, 50, 3, Fraction(3, 25)),
    (1, 100, 3, Fraction(3, 50)),
    (2, 50, 2, Fraction(2, 25)),
])
def test_large_k_deviation(r, k, n_max, expected):
    assert large_k_deviation(r, k, n_max) == expected


def test_large_k_report_support():
    rep = large_k_report(2, 40, 3)
    assert rep.passed, rep.to_text()
    with pytest.raises(ValueError):
        large_k_deviation(1, 3, 3)
