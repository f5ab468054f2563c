"""Dense univariate polynomials over a galois field.

Coefficients are stored lowest degree first in a 1-D ``FieldArray`` with
trailing zeros trimmed, so the zero polynomial is an empty array.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence, Tuple, Type

import galois
import numpy as np

from src.exceptions import PolynomialError


NEG_INF = -math.inf


def _trim(coeffs: galois.FieldArray) -> galois.FieldArray:
    nz = np.flatnonzero(coeffs.view(np.ndarray))
    if nz.size == 0:
        return coeffs[:0]
    return coeffs[: nz[-1] + 1]


class UniPoly:
    __slots__ = ("GF", "coeffs")

    def __init__(self, coeffs, GF: Type[galois.FieldArray] | None = None):
        if GF is None:
            if not isinstance(coeffs, galois.FieldArray):
                raise PolynomialError("UniPoly needs a FieldArray or an explicit field")
            GF = type(coeffs)
        arr = coeffs if isinstance(coeffs, GF) else GF(coeffs)
        if arr.ndim == 0:
            arr = arr.reshape(1)
        self.GF = GF
        self.coeffs = _trim(arr).copy()

    # constructors

    @classmethod
    def zero(cls, GF) -> UniPoly:
        return cls(GF.Zeros(0), GF)

    @classmethod
    def constant(cls, GF, c) -> UniPoly:
        return cls(GF([int(c)]), GF)

    @classmethod
    def monomial(cls, GF, degree: int, c=1) -> UniPoly:
        out = GF.Zeros(degree + 1)
        out[degree] = int(c) if not isinstance(c, galois.FieldArray) else c
        return cls(out, GF)

    @classmethod
    def from_galois(cls, p: galois.Poly) -> UniPoly:
        return cls(p.coeffs[::-1].copy(), type(p.coeffs))

    def to_galois(self) -> galois.Poly:
        if self.is_zero:
            return galois.Poly(self.GF.Zeros(1), order="asc")
        return galois.Poly(self.coeffs, order="asc")

    # structure

    @property
    def is_zero(self) -> bool:
        return self.coeffs.size == 0

    @property
    def degree(self):
        """Degree, with ``NEG_INF`` for the zero polynomial."""
        return self.coeffs.size - 1 if self.coeffs.size else NEG_INF

    @property
    def leading_coefficient(self):
        return self.coeffs[-1] if self.coeffs.size else self.GF(0)

    def coefficient(self, i: int):
        return self.coeffs[i] if 0 <= i < self.coeffs.size else self.GF(0)

    def valuation(self):
        """Largest k with x^k dividing self (``math.inf`` for zero)."""
        nz = np.flatnonzero(self.coeffs.view(np.ndarray))
        return int(nz[0]) if nz.size else math.inf

    # arithmetic

    def __add__(self, other: UniPoly) -> UniPoly:
        a, b = self.coeffs, other.coeffs
        if a.size < b.size:
            a, b = b, a
        out = a.copy()
        out[: b.size] = out[: b.size] + b
        return UniPoly(out, self.GF)

    def __sub__(self, other: UniPoly) -> UniPoly:
        return self + (-other)

    def __neg__(self) -> UniPoly:
        return UniPoly(-self.coeffs, self.GF)

    def __mul__(self, other) -> UniPoly:
        if isinstance(other, UniPoly):
            return poly_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c) -> UniPoly:
        if self.is_zero:
            return self
        if not isinstance(c, galois.FieldArray):
            c = self.GF(int(c))
        return UniPoly(self.coeffs * c, self.GF)

    def shift(self, k: int) -> UniPoly:
        """Multiply by x^k."""
        if self.is_zero or k == 0:
            return self
        out = self.GF.Zeros(self.coeffs.size + k)
        out[k:] = self.coeffs
        return UniPoly(out, self.GF)

    def truncate(self, k: int) -> UniPoly:
        """Reduce modulo x^k."""
        return UniPoly(self.coeffs[:k], self.GF)

    def __divmod__(self, other: UniPoly) -> Tuple[UniPoly, UniPoly]:
        return poly_divmod(self, other)

    def __mod__(self, other: UniPoly) -> UniPoly:
        return poly_divmod(self, other)[1]

    def __floordiv__(self, other: UniPoly) -> UniPoly:
        return poly_divmod(self, other)[0]

    def __pow__(self, e: int) -> UniPoly:
        out = UniPoly.constant(self.GF, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs.size == other.coeffs.size and np.array_equal(
            self.coeffs.view(np.ndarray), other.coeffs.view(np.ndarray)
        )

    def __hash__(self) -> int:
        return hash(tuple(int(c) for c in self.coeffs))

    # evaluation

    def __call__(self, x):
        """Evaluate at a field element or an array of them."""
        if self.is_zero:
            return self.GF.Zeros(np.shape(x)) if np.ndim(x) else self.GF(0)
        return self.to_galois()(x)

    def derivative(self) -> UniPoly:
        if self.coeffs.size <= 1:
            return UniPoly.zero(self.GF)
        return UniPoly.from_galois(self.to_galois().derivative())

    def __repr__(self) -> str:
        if self.is_zero:
            return "UniPoly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            ci = int(c)
            if ci:
                terms.append(f"{ci}" if i == 0 else f"{ci}*x^{i}")
        return "UniPoly(" + " + ".join(terms) + ")"


def poly_mul(a: UniPoly, b: UniPoly) -> UniPoly:
    if a.is_zero or b.is_zero:
        return UniPoly.zero(a.GF)
    return UniPoly(np.convolve(a.coeffs, b.coeffs), a.GF)


def poly_divmod(a: UniPoly, b: UniPoly) -> Tuple[UniPoly, UniPoly]:
    """Euclidean division a = q*b + r with deg r < deg b."""
    if b.is_zero:
        raise PolynomialError("division by the zero polynomial")
    if a.degree < b.degree:
        return UniPoly.zero(a.GF), a
    if b.degree == 0:
        return a.scale(b.coeffs[0] ** -1), UniPoly.zero(a.GF)
    q, r = divmod(a.to_galois(), b.to_galois())
    return UniPoly.from_galois(q), UniPoly.from_galois(r)


def product_of_linears(GF, roots: Sequence) -> UniPoly:
    """prod (x - beta) over ``roots``, built as a balanced product tree."""
    roots = GF(np.asarray(roots, dtype=np.int64)) if not isinstance(roots, galois.FieldArray) else roots
    if roots.size == 0:
        return UniPoly.constant(GF, 1)

    def _tree(lo: int, hi: int) -> UniPoly:
        if hi - lo == 1:
            lin = GF.Ones(2)
            lin[0] = -roots[lo]
            return UniPoly(lin, GF)
        mid = (lo + hi) // 2
        return _tree(lo, mid) * _tree(mid, hi)

    return _tree(0, roots.size)


def lagrange_univariate(GF, points: Iterable[Tuple[int, int]] | None = None, *, xs=None, ys=None) -> UniPoly:
    """Unique polynomial of degree < len(points) through ``points``.

    Divide and conquer: the numerator sum is recombined pairwise as
    N = N_left * M_right + N_right * M_left, where M is the subproduct of
    (x - beta) over each half.
    """
    if points is not None:
        pts = list(points)
        xs = GF([int(b) for b, _ in pts]) if pts else GF.Zeros(0)
        ys = GF([int(e) for _, e in pts]) if pts else GF.Zeros(0)
    n = xs.size
    if n == 0:
        return UniPoly.zero(GF)
    if len({int(b) for b in xs}) != n:
        raise PolynomialError("duplicate abscissae in Lagrange interpolation")

    full = product_of_linears(GF, xs)
    weights = ys / full.derivative()(xs)

    def _interp(lo: int, hi: int) -> Tuple[UniPoly, UniPoly]:
        if hi - lo == 1:
            lin = GF.Ones(2)
            lin[0] = -xs[lo]
            return UniPoly(weights[lo : lo + 1], GF), UniPoly(lin, GF)
        mid = (lo + hi) // 2
        nl, ml = _interp(lo, mid)
        nr, mr = _interp(mid, hi)
        return nl * mr + nr * ml, ml * mr

    return _interp(0, n)[0]
