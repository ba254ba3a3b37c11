import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linindex.exactcore import (
    MultiPolynomial, NumericalPolynomial, binomial, finite_difference, gcd_all, iterated_difference,
    multi_value_gcd, newton_coefficients, prime_to_p_part, value_gcd,
)

P = NumericalPolynomial
K3 = P((2, 0, 2))  # 2n^2 + 2


def brute_gcd(poly, lo=-10, hi=10):
    return math.gcd(*(int(poly(n)) for n in range(lo, hi + 1)))


newton_lists = st.lists(st.integers(-50, 50), min_size=1, max_size=6)


@pytest.mark.parametrize("values, expected", [([6, 10, 15], 1), ([], 0), ([-4, 6], 2), ([0, 0], 0)])
def test_gcd_all(values, expected):
    assert gcd_all(values) == expected


@pytest.mark.parametrize("n, p, expected", [(12, 2, 3), (12, 5, 12), (8, 2, 1), (1, 7, 1)])
def test_prime_to_p_part(n, p, expected):
    assert prime_to_p_part(n, p) == expected


@pytest.mark.parametrize("n, p", [(0, 2), (12, 6), (12, 1)])
def test_prime_to_p_part_rejects(n, p):
    with pytest.raises(ValueError):
        prime_to_p_part(n, p)


def test_binomial_negative_argument():
    assert binomial(-2, 3) == -4
    assert binomial(5, 3) == 10
    assert binomial(2, 3) == 0


def test_finite_difference_examples():
    assert finite_difference(P((0, 0, 1))) == P((1, 2))
    assert finite_difference(P.constant(7)) == P()
    assert finite_difference(K3) == P((2, 4))


def test_iterated_difference_examples():
    assert iterated_difference(P((0, 0, 1)), 2) == P.constant(2)
    assert iterated_difference(K3, 0) == K3
    with pytest.raises(ValueError):
        iterated_difference(K3, -1)


def test_newton_coefficients_examples():
    assert newton_coefficients(P((0, 1, 1))) == [0, 2, 2]
    assert newton_coefficients(P.constant(5)) == [5]
    assert newton_coefficients(K3) == [2, 2, 4]


def test_newton_coefficients_rejects_non_integer_valued():
    with pytest.raises(ValueError):
        newton_coefficients(P((0, Fraction(1, 3))))
    # n(n+1)/2 is integer-valued even though its coefficients are not integers
    assert newton_coefficients(P((0, Fraction(1, 2), Fraction(1, 2)))) == [0, 1, 1]


@pytest.mark.parametrize("poly, expected", [(P((0, 1, 1)), 2), (P.constant(5), 5), (K3, 2), (P(), 0)])
def test_value_gcd_matches_brute_force(poly, expected):
    assert value_gcd(poly) == expected == brute_gcd(poly)


def test_polynomial_str():
    assert str(K3) == "2*n^2 + 2"
    assert str(P((Fraction(-3, 2), 0, 1))) == "n^2 - 3/2"
    assert str(P()) == "0"


def test_float_coefficients_rejected():
    with pytest.raises(TypeError):
        P((0.5,))


@settings(max_examples=300)
@given(newton_lists, st.integers(-100, 100))
def test_window_of_consecutive_values_generates_value_ideal(newton, n):
    poly = P.from_newton(newton)
    window = [int(poly(n + k)) for k in range(poly.degree + 1)]
    assert gcd_all(window) == value_gcd(poly)


@settings(max_examples=1000)
@given(newton_lists, st.integers(-1000, 1000))
def test_value_gcd_divides_every_value(newton, n):
    poly = P.from_newton(newton)
    g = value_gcd(poly)
    v = int(poly(n))
    assert (v == 0) if g == 0 else (v % g == 0)


@settings(max_examples=1000)
@given(st.lists(st.integers(-50, 50), min_size=1, max_size=6))
def test_newton_roundtrip(newton):
    while len(newton) > 1 and newton[-1] == 0:
        newton = newton[:-1]
    poly = P.from_newton(newton)
    assert newton_coefficients(poly) == newton
    assert P.from_newton(newton_coefficients(poly)) == poly


rationals = st.fractions(max_denominator=12).filter(lambda q: abs(q) < 100)


@given(st.lists(rationals, max_size=5), st.lists(rationals, max_size=5), rationals)
def test_finite_difference_is_linear(a, b, c):
    pa, pb = P(tuple(a)), P(tuple(b))
    assert finite_difference(pa + pb) == finite_difference(pa) + finite_difference(pb)
    assert finite_difference(pa * c) == finite_difference(pa) * c


@given(st.lists(rationals, min_size=1, max_size=6))
def test_difference_past_degree_vanishes(coeffs):
    poly = P(tuple(coeffs))
    assert iterated_difference(poly, poly.degree + 1).is_zero()
    if not poly.is_zero():
        top = iterated_difference(poly, poly.degree)
        assert top == P.constant(math.factorial(poly.degree) * poly.leading_coefficient)


def test_multi_value_gcd_examples():
    quadric = MultiPolynomial.from_dict(2, {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1})
    assert multi_value_gcd(quadric) == 1
    assert multi_value_gcd(MultiPolynomial.from_dict(2, {(1, 1): 2})) == 2
    assert multi_value_gcd(MultiPolynomial.from_dict(2, {})) == 0


def test_multi_value_gcd_rejects_non_integer_valued():
    with pytest.raises(ValueError):
        multi_value_gcd(MultiPolynomial.from_dict(2, {(1, 1): Fraction(1, 2)}))


@settings(max_examples=100)
@given(st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(-20, 20), max_size=5))
def test_multi_value_gcd_matches_window(terms):
    poly = MultiPolynomial.from_dict(2, terms)
    brute = math.gcd(*(int(poly(a, b)) for a in range(-5, 6) for b in range(-5, 6)))
    assert multi_value_gcd(poly) == brute
