from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from whg.exactnum import ONE, ZERO, Radical, radical_add, radical_mul, radical_normalize, square_free_split

RADICANDS = (1, 2, 3, 5, 6, 7, 10, 15, 30)

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
radicals = st.lists(st.tuples(st.sampled_from(RADICANDS), fractions), max_size=4).map(Radical.from_terms)


@pytest.mark.parametrize("n, expected", [
    (0, (1, 0)), (1, (1, 1)), (2, (1, 2)), (4, (2, 1)), (12, (2, 3)),
    (18, (3, 2)), (72, (6, 2)), (1000, (10, 10)), (9973, (1, 9973)),
])
def test_square_free_split_examples(n, expected):
    assert square_free_split(n) == expected


@given(st.integers(min_value=1, max_value=10**6))
def test_square_free_split_reconstructs(n):
    s, m = square_free_split(n)
    assert s * s * m == n
    assert all(m % (p * p) for p in range(2, math.isqrt(m) + 1))


def test_square_free_split_rejects_negative():
    with pytest.raises(ValueError):
        square_free_split(-3)


def test_normalize_pulls_out_squares():
    assert radical_normalize(3, 12) == Radical.from_terms({3: 6})
    assert radical_normalize(Fraction(1, 2), 8) == Radical.sqrt(2)
    assert radical_normalize(5, 49) == Radical(35)
    assert radical_normalize(0, 7) == ZERO
    assert radical_normalize(2, 0) == ZERO


def test_sqrt_of_fraction():
    # sqrt(1/2) = sqrt(2)/2
    assert Radical.sqrt(Fraction(1, 2)).terms == {2: Fraction(1, 2)}
    assert Radical.sqrt(Fraction(9, 4)) == Radical(Fraction(3, 2))
    with pytest.raises(ValueError):
        Radical.sqrt(-1)


def test_sqrt_squares_back_up_to_ten_thousand():
    for a in range(10**4 + 1):
        r = Radical.sqrt(a)
        assert r * r == a


def test_cross_radicand_product_uses_gcd():
    # sqrt(6) sqrt(10) = 2 sqrt(15)
    assert Radical.sqrt(6) * Radical.sqrt(10) == Radical.from_terms({15: 2})
    assert radical_mul(Radical.sqrt(2), Radical.sqrt(3)) == Radical.sqrt(6)


def test_add_cancels_to_zero():
    x = Radical.from_terms({2: 1, 3: Fraction(1, 2)})
    assert radical_add(x, -x) == ZERO
    assert not (x - x)


@settings(max_examples=200)
@given(radicals, radicals, radicals)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + ZERO == a
    assert a * ONE == a
    assert a - a == ZERO


@given(radicals, radicals)
def test_float_is_a_homomorphism(a, b):
    assert float(a * b) == pytest.approx(float(a) * float(b), rel=1e-9, abs=1e-9)
    assert float(a + b) == pytest.approx(float(a) + float(b), rel=1e-9, abs=1e-9)


@given(radicals)
def test_sign_matches_float_when_well_separated(a):
    f = float(a)
    if abs(f) > 1e-6:
        assert a.sign() == (1 if f > 0 else -1)
    assert abs(a).sign() >= 0


def test_sign_resolves_near_cancellation():
    # sqrt(10001) - 100 is about 0.005
    assert (Radical.sqrt(10001) - 100).sign() == 1
    # sqrt(2) + sqrt(3) vs sqrt(10): 3.1462... < 3.1623...
    assert (Radical.sqrt(2) + Radical.sqrt(3) - Radical.sqrt(10)).sign() == -1
    assert Radical.sqrt(2) + Radical.sqrt(3) < Radical.sqrt(10)


@given(radicals)
def test_text_round_trip(a):
    assert Radical.parse(a.to_text()) == a


def test_text_form():
    assert Radical(0).to_text() == "0"
    assert Radical.sqrt(Fraction(1, 2)).to_text() == "1/2*sqrt(2)"
    assert (Radical(1) - Radical.sqrt(3) * 2).to_text() == "1 + -2*sqrt(3)"


def test_division_and_inverse():
    assert Radical.sqrt(3) / Radical.sqrt(12) == Radical(Fraction(1, 2))
    assert Radical.sqrt(2).inverse() == Radical.sqrt(Fraction(1, 2))
    assert Radical.sqrt(8) / 4 == Radical.sqrt(Fraction(1, 2))
    with pytest.raises(ZeroDivisionError):
        (Radical.sqrt(2) + 1).inverse()
    with pytest.raises(ZeroDivisionError):
        Radical(1) / 0


def test_power_and_rational_view():
    assert Radical.sqrt(2) ** 4 == 4
    assert (Radical.sqrt(2) ** 4).as_fraction() == 4
    assert (1 + Radical.sqrt(2)) ** 2 == 3 + Radical.sqrt(8)
    with pytest.raises(ValueError):
        Radical.sqrt(2).as_fraction()


def test_hash_consistent_with_equality():
    assert hash(Radical(3)) == hash(Radical.sqrt(9))
    assert len({Radical.sqrt(8), 2 * Radical.sqrt(2)}) == 1
