from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from whg.exactnum import ONE, Radical
from whg.operators import DimensionMismatch, SparseOperator, commutator

DIM = 4

entries = st.dictionaries(
    st.tuples(st.integers(0, DIM - 1), st.integers(0, DIM - 1)),
    st.integers(-3, 3).map(Radical) | st.sampled_from([Radical.sqrt(2), Radical.sqrt(3)]),
    max_size=6,
)
ops = entries.map(lambda e: SparseOperator(DIM, e))


def _dense_mul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(DIM)), Radical(0)) for j in range(DIM)] for i in range(DIM)]


@given(ops, ops)
def test_matmul_matches_dense(a, b):
    assert (a @ b).to_dense() == _dense_mul(a.to_dense(), b.to_dense())


@given(ops, ops, ops)
def test_jacobi_identity(a, b, c):
    total = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b))
    assert total.is_zero()


@given(ops, ops)
def test_commutator_antisymmetric(a, b):
    assert commutator(a, b) == -commutator(b, a)


def test_zero_entries_are_dropped():
    op = SparseOperator(2, {(0, 1): 0, (1, 0): ONE})
    assert op.nnz == 1
    assert op[(0, 1)] == 0


def test_power_and_trace():
    shift = SparseOperator(3, {(1, 0): ONE, (2, 1): ONE})
    assert not shift.power(2).is_zero()
    assert shift.power(3).is_zero()
    assert SparseOperator.identity(3).trace() == 3
    assert shift.power(0) == SparseOperator.identity(3)


def test_apply_on_sparse_vector():
    op = SparseOperator(2, {(0, 1): Radical.sqrt(2)})
    assert op.apply({1: Radical(3)}) == {0: 3 * Radical.sqrt(2)}
    assert op.apply({0: ONE}) == {}


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        SparseOperator.identity(2) + SparseOperator.identity(3)


def test_dump_format():
    op = SparseOperator(2, {(1, 0): Radical.sqrt(2), (0, 0): Radical(-1)})
    assert op.dump() == ["0 0 -1", "1 0 1*sqrt(2)"]
