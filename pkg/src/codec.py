"""One-point Hermitian codes: parameters, encoding and the error channel."""

from __future__ import annotations

from typing import List, Tuple

import galois
import numpy as np

from src.curve.hermitian import HermitianCurve, RingElement, get_curve
from src.exceptions import EncodingError, ParameterError
from src.logger import logger


class HermitianCode:
    """The code {(f(P_1), ..., f(P_n)) : f in L(m P_inf)} for 2g - 2 < m < n."""

    def __init__(self, q: int, m: int):
        self.curve: HermitianCurve = get_curve(q)
        self.q = q
        self.m = m
        if not 2 * self.g - 2 < m < self.n:
            raise ParameterError(
                f"m must satisfy {2 * self.g - 2} < m < {self.n} for q={q}, got {m}"
            )
        self._basis = None

    @property
    def n(self) -> int:
        return self.curve.n

    @property
    def g(self) -> int:
        return self.curve.g

    @property
    def k(self) -> int:
        return self.m - self.g + 1

    @property
    def d_star(self) -> int:
        return self.n - self.m

    @property
    def GF(self):
        return self.curve.GF

    def __repr__(self) -> str:
        return f"HermitianCode(q={self.q}, m={self.m}: [{self.n}, {self.k}, >={self.d_star}])"


def message_basis(code: HermitianCode) -> List[Tuple[int, int]]:
    """Exponents (i, j) of the monomials x^i y^j spanning L(m P_inf), by order."""
    if code._basis is None:
        q, m = code.q, code.m
        basis = [
            (i, j)
            for j in range(q)
            for i in range(m // q + 1)
            if q * i + (q + 1) * j <= m
        ]
        basis.sort(key=lambda ij: q * ij[0] + (q + 1) * ij[1])
        code._basis = basis
    return code._basis


def encode(code: HermitianCode, f: RingElement) -> galois.FieldArray:
    if f.order() > code.m:
        raise EncodingError(f"order(f) = {f.order()} exceeds m = {code.m}")
    return code.curve.evaluate_all(f)


def random_message(code: HermitianCode, rng: np.random.Generator) -> RingElement:
    """Independent uniform coefficients over the message basis."""
    basis = message_basis(code)
    coeffs = code.curve.field.random(len(basis), rng)
    return code.curve.from_terms(dict(zip(basis, coeffs)))


def apply_errors(
    c: galois.FieldArray, t: int, rng: np.random.Generator
) -> Tuple[galois.FieldArray, List[int]]:
    """Add an error of Hamming weight exactly t at uniformly chosen positions."""
    n = c.size
    if not 0 <= t <= n:
        raise ParameterError(f"error weight {t} outside [0, {n}]")
    GF = type(c)
    positions = np.sort(rng.choice(n, size=t, replace=False))
    received = c.copy()
    if t:
        received[positions] = received[positions] + GF(rng.integers(1, GF.order, size=t))
    logger.debug(f"applied {t} errors")
    return received, [int(p) for p in positions]


def hamming_distance(a: galois.FieldArray, b: galois.FieldArray) -> int:
    return int(np.count_nonzero(a.view(np.ndarray) != b.view(np.ndarray)))
