from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from whg.exactnum import Radical
from whg.grassmann import (
    THETA,
    THETA_BAR,
    GrassmannElement,
    OrderMismatch,
    berezin,
    berezin_pairing,
    dicke_poly,
    eta,
    eta_bar,
    eta_derivative,
    format_monomial,
    g_mul,
    g_operator,
    one,
    scalar_part,
    sigma_measure,
    sym_poly,
    theta,
    theta_bar,
    theta_derivative,
    verify_grassmann,
)

K = 3


def elements(k=K):
    mono = st.tuples(st.integers(0, (1 << k) - 1), st.integers(0, (1 << k) - 1))
    return st.dictionaries(mono, st.integers(-4, 4), max_size=6).map(lambda t: GrassmannElement(k, t))


def test_nilpotent_generators():
    t = theta(3, 2)
    assert not g_mul(t, t)
    assert g_mul(theta(3, 1), theta_bar(3, 1))  # distinct kinds do not annihilate


@pytest.mark.parametrize("k", range(1, 7))
def test_eta_powers(k):
    e = eta(k)
    p = one(k)
    for n in range(k + 1):
        assert p == sym_poly(k, n).scale(factorial(n))
        p = g_mul(p, e)
    assert not p


@given(elements(), elements(), elements())
@settings(max_examples=60)
def test_product_is_commutative_and_associative(a, b, c):
    assert g_mul(a, b) == g_mul(b, a)
    assert g_mul(g_mul(a, b), c) == g_mul(a, g_mul(b, c))
    assert g_mul(a, b + c) == g_mul(a, b) + g_mul(a, c)


@given(elements())
def test_theta_derivative_undoes_multiplication(x):
    # theta_2^2 = 0 rules out the Leibniz rule; what survives is
    # d/dtheta_2 (theta_2 x) = x for x free of theta_2
    free = GrassmannElement(K, {m: c for m, c in x.terms.items() if not m[0] & 0b10})
    assert theta_derivative(g_mul(theta(K, 2), free), 2) == free
    assert not theta_derivative(free, 2)


@pytest.mark.parametrize("k", range(1, 7))
def test_eta_derivative_on_symmetric_polynomials(k):
    # every one of the n variables can be dropped, and each e_{n-1} term is hit
    # by k - (n - 1) parents: d/deta e_n = (k - n + 1) e_{n-1}
    for n in range(1, k + 1):
        assert eta_derivative(sym_poly(k, n)) == sym_poly(k, n - 1).scale(k - n + 1)


@given(elements(4))
@settings(max_examples=40)
def test_eta_derivative_powers_are_g_operators(x):
    # (d/deta)^n = n! g_n, and (d/deta)^{k+1} = 0
    y = x
    for n in range(1, 5):
        y = eta_derivative(y)
        assert y == g_operator(x, n).scale(factorial(n))
    assert not eta_derivative(y)


@pytest.mark.parametrize("k", range(1, 6))
def test_g_operator_on_eta_powers(k):
    # g_n e_n = C(k, n), so g_n eta^n = k! / (k - n)!
    p = one(k)
    for n in range(k + 1):
        assert g_operator(p, n) == one(k, Radical(Fraction(factorial(k), factorial(k - n))))
        p = g_mul(p, eta(k))


@pytest.mark.parametrize("k", range(1, 7))
def test_berezin_of_top_powers(k):
    top = g_mul(one(k), eta(k)) ** k
    assert scalar_part(berezin(top, THETA)) == factorial(k)
    assert scalar_part(berezin(eta_bar(k) ** k, THETA_BAR)) == factorial(k)
    assert not berezin(eta(k) ** (k - 1), THETA)


@given(elements(), elements())
@settings(max_examples=60)
def test_pairing_matches_full_product(a, b):
    direct = scalar_part(berezin(berezin(g_mul(a, b), THETA), THETA_BAR))
    assert berezin_pairing(a, b) == direct


def test_sigma_measure_frozen():
    assert sigma_measure(1).dump() == ["t{}tb{} 1", "t{1}tb{1} 1"]
    s2 = sigma_measure(2)
    # n=2: 1/(2! 0!), n=1: eta etabar/(2! 1!), n=0: eta^2 etabar^2/(2! 2!)
    assert s2.coefficient() == Fraction(1, 2)
    assert s2.coefficient({1}, {2}) == Fraction(1, 2)
    assert s2.coefficient({1, 2}, {1, 2}) == 1


@pytest.mark.parametrize("k", range(1, 6))
def test_sigma_moments(k):
    s = sigma_measure(k)
    for n in range(k + 1):
        probe = g_mul(eta(k) ** n, eta_bar(k) ** n)
        assert berezin_pairing(s, probe) == Fraction(factorial(k), factorial(k - n))


@pytest.mark.parametrize("k", range(1, 5))
def test_symmetric_polynomial_products(k):
    # e_n e_{k-n} = C(k, n) e_k: each top monomial splits C(k, n) ways
    for n in range(k + 1):
        en = sym_poly(k, n)
        comp = sym_poly(k, k - n, conjugate=False)
        bar = sym_poly(k, k, conjugate=True)
        assert berezin_pairing(g_mul(en, comp), bar) == comb(k, n)
    assert dicke_poly(k, 0) == one(k)


def test_format_monomial():
    assert format_monomial((0b101, 0b10)) == "t{1,3}tb{2}"
    assert format_monomial((0, 0)) == "t{}tb{}"


def test_order_mismatch():
    with pytest.raises(OrderMismatch):
        one(2) + one(3)
    with pytest.raises(ValueError):
        theta(2, 3)


@pytest.mark.parametrize("k", range(1, 7))
def test_verify_grassmann(k):
    rep = verify_grassmann(k)
    assert rep.passed, rep.to_text()
