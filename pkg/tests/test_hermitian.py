import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.algebra.poly import NEG_INF, UniPoly
from src.curve.hermitian import Place, get_curve, ring_mul, vec, vec_inv
from src.curve.zpoly import ZPoly
from src.exceptions import ParameterError
from tests.oracles import dense_interpolant


def ring_elements(q, max_x=6):
    """Random elements with x-degree below max_x."""
    curve = get_curve(q)
    order = curve.GF.order
    return st.lists(
        st.lists(st.integers(0, order - 1), max_size=max_x), min_size=q, max_size=q
    ).map(
        lambda rows: curve.from_vec(
            [UniPoly(curve.GF(r) if r else curve.GF.Zeros(0), curve.GF) for r in rows]
        )
    )


def test_curve_parameters(curve4):
    assert curve4.n == 64
    assert curve4.g == 6
    assert curve4.G.degree == 16
    assert not np.any(curve4.G(curve4.field.elements).view(np.ndarray))


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_place_count_and_membership(q):
    curve = get_curve(q)
    assert len(curve.places) == q**3
    assert len(set(curve.places)) == q**3
    alphas, betas = curve.place_alpha, curve.place_beta
    assert np.array_equal(
        (betas**q + betas).view(np.ndarray), (alphas ** (q + 1)).view(np.ndarray)
    )
    counts = np.bincount(alphas.view(np.ndarray), minlength=q * q)
    assert set(counts.tolist()) == {q}


def test_places_q2(curve2):
    assert curve2.places == [
        Place(0, 0), Place(0, 1),
        Place(1, 2), Place(1, 3),
        Place(2, 2), Place(2, 3),
        Place(3, 2), Place(3, 3),
    ]


def test_places_are_sorted(curve3):
    assert curve3.places == sorted(curve3.places)


def test_order_examples(curve4):
    assert curve4.zero().order() == NEG_INF
    assert curve4.y.order() == 5
    assert curve4.monomial(2, 3).order() == 23
    assert curve4.monomial(5, 0, 7).leading_term() == (5, 0, curve4.GF(7))


def test_monomial_rejects_large_y_exponent(curve2):
    with pytest.raises(ParameterError):
        curve2.monomial(0, 2)


def test_ring_mul_examples(curve2):
    x, y = curve2.x, curve2.y
    b = x * y + curve2.one()
    assert ring_mul(curve2.one(), b) == b
    # y^2 = x^3 - y = x^3 + y in characteristic 2
    assert y * y == curve2.from_terms({(3, 0): 1, (0, 1): 1})
    assert (x + y) * y == curve2.from_terms({(1, 1): 1, (3, 0): 1, (0, 1): 1})


def test_evaluate_examples(curve2):
    x3_plus_y = curve2.from_terms({(3, 0): 1, (0, 1): 1})
    assert curve2.zero().evaluate(Place(2, 3)) == 0
    assert curve2.x.evaluate(Place(2, 3)) == 2
    assert x3_plus_y.evaluate(Place(0, 1)) == 1


def test_vec_examples(curve2):
    assert all(c.is_zero for c in vec(curve2.zero()))
    x3_plus_y = curve2.from_terms({(3, 0): 1, (0, 1): 1})
    assert vec(x3_plus_y) == [UniPoly.monomial(curve2.GF, 3), UniPoly.constant(curve2.GF, 1)]
    assert vec_inv(curve2, vec(x3_plus_y)) == x3_plus_y


def test_mul_matrix_examples(curve2):
    GF = curve2.GF
    identity = curve2.mul_matrix(curve2.one())
    assert identity.rows() == [
        [UniPoly.constant(GF, 1), UniPoly.zero(GF)],
        [UniPoly.zero(GF), UniPoly.constant(GF, 1)],
    ]
    # row i is vec(y * y^i): (0, 1) and (x^3, -1)
    D = curve2.mul_matrix(curve2.y)
    assert D.rows() == [
        [UniPoly.zero(GF), UniPoly.constant(GF, 1)],
        [UniPoly.monomial(GF, 3), -UniPoly.constant(GF, 1)],
    ]


@pytest.mark.parametrize("q", [2, 3, 4])
def test_mul_matrix_identity(q):
    curve = get_curve(q)

    @given(ring_elements(q), ring_elements(q))
    def check(a, b):
        D = curve.mul_matrix(b)
        prod = [UniPoly.zero(curve.GF)] * q
        for i, ai in enumerate(vec(a)):
            for j in range(q):
                prod[j] = prod[j] + ai * D.entry(i, j)
        assert prod == vec(a * b)

    check()


@given(ring_elements(3, max_x=4), ring_elements(3, max_x=4))
def test_mul_matrix_is_multiplicative(a, b):
    curve = get_curve(3)
    A, B, AB = curve.mul_matrix(a), curve.mul_matrix(b), curve.mul_matrix(a * b)
    zero = UniPoly.zero(curve.GF)
    for i in range(3):
        for j in range(3):
            entry = zero
            for k in range(3):
                entry = entry + A.entry(i, k) * B.entry(k, j)
            assert entry == AB.entry(i, j)


@given(ring_elements(3), ring_elements(3))
def test_orders_add(a, b):
    if a.is_zero or b.is_zero:
        assert (a * b).is_zero
        return
    assert (a * b).order() == a.order() + b.order()


@given(ring_elements(2), ring_elements(2), st.integers(0, 7))
def test_evaluation_is_multiplicative(a, b, idx):
    curve = get_curve(2)
    pl = curve.places[idx]
    assert (a * b).evaluate(pl) == a.evaluate(pl) * b.evaluate(pl)


@given(ring_elements(3))
def test_evaluate_all_matches_pointwise(a):
    curve = get_curve(3)
    values = a.evaluate_all()
    assert [int(v) for v in values] == [int(a.evaluate(pl)) for pl in curve.places]


@pytest.mark.parametrize("q", [2, 3, 4])
def test_interpolate_round_trip(q, rng):
    curve = get_curve(q)
    for _ in range(5):
        values = curve.field.random(curve.n, rng)
        p = curve.interpolate(values)
        assert np.array_equal(p.evaluate_all().view(np.ndarray), values.view(np.ndarray))
        assert p.order() < curve.n + 2 * curve.g


def test_interpolate_examples(curve2):
    GF = curve2.GF
    assert curve2.interpolate(GF.Zeros(8)).is_zero
    ones = curve2.interpolate(GF.Ones(8))
    assert np.all(ones.evaluate_all().view(np.ndarray) == 1)
    indicator = GF.Zeros(8)
    indicator[0] = 1
    p = curve2.interpolate(indicator)
    assert p.evaluate(Place(0, 0)) == 1
    assert all(p.evaluate(pl) == 0 for pl in curve2.places[1:])


def test_interpolate_rejects_wrong_length(curve2):
    with pytest.raises(ParameterError):
        curve2.interpolate(curve2.GF.Zeros(7))


@pytest.mark.parametrize("q", [2, 3])
def test_interpolate_agrees_with_dense_solve(q, rng):
    curve = get_curve(q)
    for _ in range(3):
        values = curve.field.random(curve.n, rng)
        fast = curve.interpolate(values)
        dense = dense_interpolant(curve, values)
        assert np.array_equal(
            fast.evaluate_all().view(np.ndarray), dense.evaluate_all().view(np.ndarray)
        )


def test_reduce_mod_G_preserves_evaluations(curve3, rng):
    values = curve3.field.random(curve3.n, rng)
    p = curve3.interpolate(values) * curve3.x.shift_x(20)
    reduced = p.reduce_mod_G()
    assert reduced.x_degree() < curve3.G.degree
    assert np.array_equal(
        reduced.evaluate_all().view(np.ndarray), p.evaluate_all().view(np.ndarray)
    )


def test_zpoly_evaluate_and_orderz(curve2):
    f = curve2.x + curve2.one()
    Q = ZPoly.linear(curve2, f) * ZPoly.linear(curve2, curve2.y)
    assert Q.deg_z == 2
    assert Q.evaluate(f).is_zero
    assert Q.evaluate(curve2.y).is_zero
    assert not Q.evaluate(curve2.x).is_zero
    # orders of the coefficients: f*y -> 5, -(f + y) -> 3, 1 -> 0
    assert Q.orderz(4) == max(5, 3 + 4, 0 + 8)
    assert ZPoly.from_vecz(curve2, Q.vecz(3)) == Q
