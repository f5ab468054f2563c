import itertools

import galois
import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from src.algebra.poly import UniPoly
from src.curve.hermitian import get_curve
from src.curve.zpoly import ZPoly
from src.decoder.rootfind import RootBundle, SeriesPoly, ps_roots, roots_in_L, univariate_roots
from src.exceptions import PolynomialError
from tests.oracles import enumerate_L, ring_monomials


GF4 = galois.GF(4)


def series_poly(rows):
    return SeriesPoly(GF4(rows), GF4)


def evaluate_mod(rows, h, k):
    """sum_t Q_t h^t mod phi^k, by plain convolution."""
    acc = GF4.Zeros(k)
    power = GF4.Zeros(k)
    power[0] = 1
    for row in rows:
        acc = acc + np.convolve(GF4(row[:k]), power)[:k]
        power = np.convolve(power, h)[:k]
    return acc


def random_element(curve, bound, draw):
    monos = ring_monomials(curve, bound)
    values = draw(
        st.lists(st.integers(0, curve.GF.order - 1), min_size=len(monos), max_size=len(monos))
    )
    return curve.from_terms(dict(zip(monos, values)))


# univariate roots


def test_univariate_roots_examples():
    assert univariate_roots(galois.Poly(GF4([1, 3]))).tolist() == [3]
    assert univariate_roots(galois.Poly(GF4([1, 1, 0]))).tolist() == [0, 1]
    assert univariate_roots(galois.Poly(GF4([1, 1, 1]))).tolist() == [2, 3]
    assert univariate_roots(UniPoly(GF4([1, 0, 1]), GF4)).tolist() == [1]


def test_univariate_roots_of_zero():
    with pytest.raises(PolynomialError):
        univariate_roots(UniPoly.zero(GF4))


# power series roots


def test_linear_factor_gives_one_bundle():
    s = [2, 0, 1, 3, 1]
    k = 5
    rows = [[int(-GF4(c)) for c in s], [1, 0, 0, 0, 0]]
    bundles = ps_roots(series_poly(rows), k)
    assert len(bundles) == 1
    assert bundles[0].d == k
    assert bundles[0].h.tolist() == s


def test_zero_mod_phi_gives_universal_bundle():
    Q = series_poly([[0, 1, 1], [0, 0, 1]])
    bundles = ps_roots(Q, 1)
    assert len(bundles) == 1
    assert bundles[0].d == 0
    assert bundles[0].h.size == 0


def test_two_factors_give_two_bundles():
    k = 4
    s1 = GF4([1, 2, 0, 3])
    s2 = GF4([2, 2, 1, 1])
    # (z - s1)(z - s2) = z^2 - (s1 + s2) z + s1 s2
    rows = [
        np.convolve(s1, s2)[:k].tolist(),
        (-(s1 + s2)).tolist(),
        [1, 0, 0, 0],
    ]
    bundles = sorted(ps_roots(series_poly(rows), k), key=lambda b: b.h.tolist())
    assert [b.h.tolist() for b in bundles] == [s1.tolist(), s2.tolist()]
    assert all(b.d == k for b in bundles)


def test_bundle_contains():
    bundle = RootBundle(GF4([1, 2]), 2)
    assert bundle.contains(GF4([1, 2, 3]))
    assert not bundle.contains(GF4([1, 3, 3]))
    assert not bundle.contains(GF4([1]))


@settings(max_examples=30)
@given(st.integers(1, 4), st.integers(1, 3), st.data())
def test_ps_roots_characterise_order_k_roots(k, deg, data):
    rows = [
        data.draw(st.lists(st.integers(0, 3), min_size=k, max_size=k)) for _ in range(deg + 1)
    ]
    assume(any(any(row) for row in rows))
    bundles = ps_roots(series_poly(rows), k)

    at_zero = GF4([row[0] for row in rows])
    if at_zero.view(np.ndarray).any():
        assert len(bundles) <= galois.Poly(at_zero, order="asc").degree

    for values in itertools.product(range(4), repeat=k):
        h = GF4(list(values))
        is_root = not evaluate_mod(rows, h, k).view(np.ndarray).any()
        in_bundle = any(b.contains(h) for b in bundles)
        assert is_root == in_bundle


def test_substitute_shifts_the_root():
    # Q = z - s, shifted by h = s mod phi^2: Q(h + phi^2 z) = phi^2 z + (h - s)
    s = GF4([1, 2, 3, 1])
    Q = series_poly([(-s).tolist(), [1, 0, 0, 0]])
    shifted = Q.substitute(s[:2], 2)
    assert shifted.valuation() == 2
    assert shifted.coeffs[1].tolist() == [0, 0, 1, 0]
    assert shifted.coeffs[0].tolist() == [0, 0] + (-s[2:]).tolist()


# roots in L(m P_inf)


def test_linear_q_has_its_root(curve3):
    f = curve3.from_terms({(0, 0): 3, (1, 1): 5, (2, 0): 1})
    assert roots_in_L(ZPoly.linear(curve3, f), 7) == [f]


def test_product_of_linears_has_both_roots(curve3):
    f1 = curve3.from_terms({(0, 0): 3, (1, 1): 5})
    f2 = curve3.from_terms({(2, 0): 2, (0, 1): 7})
    Q = ZPoly.linear(curve3, f1) * ZPoly.linear(curve3, f2)
    roots = roots_in_L(Q, 7)
    assert roots == sorted([f1, f2], key=lambda f: f.sort_key())


def test_roots_beyond_m_are_not_returned(curve3):
    f = curve3.from_terms({(1, 0): 1})
    g = curve3.from_terms({(5, 0): 1})
    Q = ZPoly.linear(curve3, f) * ZPoly.linear(curve3, g)
    assert roots_in_L(Q, 9) == [f]


def test_constant_coefficient_multiple(curve4):
    f = curve4.from_terms({(1, 1): 9, (0, 0): 1})
    Q = ZPoly.linear(curve4, f) * curve4.monomial(3, 2, 5)
    assert roots_in_L(Q, 15) == [f]


def test_no_roots(curve2):
    Q = ZPoly(curve2, [curve2.one(), curve2.zero(), curve2.one()])
    # z^2 + 1 = (z + 1)^2 in characteristic 2
    assert roots_in_L(Q, 3) == [curve2.one()]
    Q = ZPoly(curve2, [curve2.x, curve2.zero(), curve2.one()])
    assert roots_in_L(Q, 3) == []


def test_roots_of_zero_polynomial(curve2):
    with pytest.raises(PolynomialError):
        roots_in_L(ZPoly(curve2, []), 3)


@settings(max_examples=40)
@given(st.integers(2, 4), st.booleans(), st.data())
def test_roots_match_exhaustive_search(m, plant, data):
    curve = get_curve(2)
    coeffs = [random_element(curve, 6, data.draw) for _ in range(3)]
    Q = ZPoly(curve, coeffs)
    if plant:
        f = random_element(curve, m, data.draw)
        Q = ZPoly.linear(curve, f) * ZPoly(curve, coeffs[:2])
    assume(not Q.is_zero)

    expected = sorted(
        (f for f in enumerate_L(curve, m) if Q.evaluate(f).is_zero), key=lambda f: f.sort_key()
    )
    assert roots_in_L(Q, m) == expected
