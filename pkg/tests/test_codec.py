import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.codec import (
    HermitianCode,
    apply_errors,
    encode,
    hamming_distance,
    message_basis,
    random_message,
)
from src.exceptions import EncodingError, ParameterError


@pytest.mark.parametrize(
    "q, m, n, k, d_star, g",
    [
        (2, 4, 8, 4, 4, 1),
        (4, 15, 64, 10, 49, 6),
        (5, 20, 125, 11, 105, 10),
        (7, 55, 343, 35, 288, 21),
    ],
)
def test_code_parameters(q, m, n, k, d_star, g):
    code = HermitianCode(q, m)
    assert (code.n, code.k, code.d_star, code.g) == (n, k, d_star, g)
    assert len(message_basis(code)) == k


@pytest.mark.parametrize("q, m", [(4, 10), (4, 64), (3, 3), (2, -1)])
def test_code_rejects_out_of_range_m(q, m):
    with pytest.raises(ParameterError):
        HermitianCode(q, m)


def test_message_basis_is_ordered(code4):
    basis = message_basis(code4)
    orders = [4 * i + 5 * j for i, j in basis]
    assert orders == sorted(orders)
    assert len(set(orders)) == len(orders)
    assert max(orders) <= code4.m
    assert basis[:4] == [(0, 0), (1, 0), (0, 1), (2, 0)]


def test_encode_examples(code2):
    curve = code2.curve
    assert not encode(code2, curve.zero()).view(np.ndarray).any()
    ones = encode(code2, curve.one())
    assert np.all(ones.view(np.ndarray) == 1)
    xs = encode(code2, curve.x)
    assert [int(v) for v in xs] == [pl.alpha for pl in curve.places]


def test_encode_rejects_high_order(code2):
    with pytest.raises(EncodingError):
        encode(code2, code2.curve.monomial(2, 1))


def test_encode_is_linear(code3, rng):
    f, h = random_message(code3, rng), random_message(code3, rng)
    a = code3.GF(5)
    assert np.array_equal(
        encode(code3, f.scale(a) + h).view(np.ndarray),
        (a * encode(code3, f) + encode(code3, h)).view(np.ndarray),
    )


def test_random_message_stays_in_space(code4, rng):
    for _ in range(10):
        assert random_message(code4, rng).order() <= code4.m


@given(st.integers(0, 64), st.integers(0, 2**32 - 1))
def test_apply_errors_has_exact_weight(t, seed):
    code = HermitianCode(4, 15)
    rng = np.random.default_rng(seed)
    c = encode(code, random_message(code, rng))
    received, positions = apply_errors(c, t, rng)
    assert len(positions) == t
    assert positions == sorted(set(positions))
    assert hamming_distance(c, received) == t
    differing = np.flatnonzero(c.view(np.ndarray) != received.view(np.ndarray)).tolist()
    assert differing == positions


def test_apply_errors_rejects_large_weight(code2, rng):
    c = code2.GF.Zeros(code2.n)
    with pytest.raises(ParameterError):
        apply_errors(c, code2.n + 1, rng)


def test_apply_errors_is_seeded(code3):
    c = code3.GF.Zeros(code3.n)
    first = apply_errors(c, 5, np.random.default_rng(7))
    second = apply_errors(c, 5, np.random.default_rng(7))
    assert first[1] == second[1]
    assert np.array_equal(first[0].view(np.ndarray), second[0].view(np.ndarray))


def test_hamming_distance(code2):
    GF = code2.GF
    assert hamming_distance(GF([0, 1, 2, 3]), GF([0, 1, 2, 3])) == 0
    assert hamming_distance(GF([0, 1, 2, 3]), GF([1, 1, 3, 3])) == 2
