import galois
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.algebra.field import make_field
from src.algebra.poly import (
    NEG_INF,
    UniPoly,
    lagrange_univariate,
    poly_divmod,
    poly_mul,
    product_of_linears,
)
from src.exceptions import FieldError, PolynomialError


GF4 = galois.GF(4)
GF16 = galois.GF(16)


def P(GF, *coeffs):
    return UniPoly(GF(list(coeffs)), GF)


def polys(GF, max_len=8):
    return st.lists(st.integers(0, GF.order - 1), max_size=max_len).map(
        lambda cs: UniPoly(GF(cs) if cs else GF.Zeros(0), GF)
    )


# make_field


@pytest.mark.parametrize("q, order", [(2, 4), (4, 16), (7, 49)])
def test_make_field_sizes(q, order):
    ctx = make_field(q)
    assert ctx.order == order
    assert ctx.elements.size == order
    assert [int(e) for e in ctx.elements] == list(range(order))


@pytest.mark.parametrize("q", [1, 6, 10, 12])
def test_make_field_rejects_non_prime_powers(q):
    with pytest.raises(FieldError):
        make_field(q)


def test_make_field_rejects_oversized_field():
    with pytest.raises(FieldError):
        make_field(257)


def test_binomial_reduces_into_prime_field():
    ctx = make_field(3)
    assert int(ctx.binomial(3, 1)) == 0
    assert int(ctx.binomial(4, 2)) == 0
    assert int(ctx.binomial(4, 1)) == 1
    assert int(ctx.binomial(2, 5)) == 0


@given(st.tuples(*[st.integers(0, 15)] * 3))
def test_field_axioms(triple):
    a, b, c = GF16(list(triple))
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == 0
    if a != 0:
        assert a * a**-1 == 1


# UniPoly


def test_zero_polynomial_has_negative_infinite_degree():
    zero = UniPoly.zero(GF4)
    assert zero.degree == NEG_INF
    assert zero.is_zero
    assert P(GF4, 1, 0, 0).degree == 0


def test_poly_mul_examples():
    b = P(GF4, 3, 2, 1)
    assert poly_mul(UniPoly.zero(GF4), b).is_zero
    assert poly_mul(P(GF4, 1), b) == b
    # (x + 1)^2 = x^2 + 1 in characteristic 2
    assert poly_mul(P(GF4, 1, 1), P(GF4, 1, 1)) == P(GF4, 1, 0, 1)


def test_poly_divmod_examples():
    b = P(GF4, 2, 1, 3)
    assert poly_divmod(b, b) == (P(GF4, 1), UniPoly.zero(GF4))
    a = P(GF4, 1, 2, 3)
    assert poly_divmod(a, P(GF4, 1)) == (a, UniPoly.zero(GF4))
    # x^4 + x = x^2 * x^2 + x
    quo, rem = poly_divmod(P(GF4, 0, 1, 0, 0, 1), P(GF4, 0, 0, 1))
    assert quo == P(GF4, 0, 0, 1)
    assert rem == P(GF4, 0, 1)


def test_division_by_zero_polynomial():
    with pytest.raises(PolynomialError):
        poly_divmod(P(GF4, 1, 1), UniPoly.zero(GF4))


@given(polys(GF16), polys(GF16))
def test_divmod_round_trip(a, b):
    if b.is_zero:
        return
    quo, rem = divmod(a, b)
    assert quo * b + rem == a
    assert rem.degree < b.degree


@given(polys(GF16), polys(GF16), st.integers(0, 15))
def test_multiplication_is_evaluation_homomorphism(a, b, x):
    x = GF16(x)
    assert (a * b)(x) == a(x) * b(x)
    assert (a + b)(x) == a(x) + b(x)


@given(polys(GF16))
def test_valuation_and_shift(a):
    if a.is_zero:
        return
    shifted = a.shift(3)
    assert shifted.valuation() == a.valuation() + 3
    assert shifted.degree == a.degree + 3


def test_power_and_derivative():
    x_plus_1 = P(GF16, 1, 1)
    assert x_plus_1**4 == P(GF16, 1, 0, 0, 0, 1)
    assert P(GF16, 5, 0, 1).derivative().is_zero


# interpolation


def test_product_of_linears_vanishes_on_roots():
    roots = GF16([0, 3, 7, 9])
    p = product_of_linears(GF16, roots)
    assert p.degree == 4
    assert not np.any(p(roots).view(np.ndarray))
    assert p.leading_coefficient == 1


def test_lagrange_examples():
    everything = [(int(b), 0) for b in GF4.elements]
    assert lagrange_univariate(GF4, everything).is_zero
    constant = [(int(b), 3) for b in GF4.elements]
    assert lagrange_univariate(GF4, constant) == P(GF4, 3)
    assert lagrange_univariate(GF4, [(0, 1), (1, 0)]) == P(GF4, 1, 1)


def test_lagrange_rejects_duplicate_abscissae():
    with pytest.raises(PolynomialError):
        lagrange_univariate(GF4, [(1, 0), (1, 2)])


@given(st.lists(st.integers(0, 15), min_size=1, max_size=16, unique=True), st.data())
def test_lagrange_passes_through_points(xs, data):
    ys = data.draw(st.lists(st.integers(0, 15), min_size=len(xs), max_size=len(xs)))
    p = lagrange_univariate(GF16, zip(xs, ys))
    assert p.degree < len(xs)
    assert [int(v) for v in p(GF16(xs))] == ys
