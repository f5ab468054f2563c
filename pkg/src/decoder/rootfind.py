"""Roots in L(m P_inf) of Q in R[z] via power series at (0, 0).

The coefficients of Q are expanded in phi = x, the roots in F[[phi]] are
found to order orderz_m(Q) + 1 by divide and conquer on the precision,
and the resulting bundles h + phi^d F[[phi]] are converted back into ring
elements and checked exactly.
"""

from __future__ import annotations

import itertools
from contextlib import nullcontext
from math import ceil
from typing import List, NamedTuple, Optional, Sequence

import galois
import numpy as np

from src.algebra.poly import UniPoly
from src.curve.hermitian import RingElement
from src.curve.powerseries import SeriesConverter, TruncatedSeries
from src.curve.zpoly import ZPoly
from src.exceptions import PolynomialError
from src.logger import logger
from src.schema import Phase
from src.utils.timing import PhaseTimer


class SeriesPoly:
    """Polynomial in z whose coefficients are series to a common precision.

    ``coeffs[t]`` is the series of the z^t coefficient.
    """

    __slots__ = ("GF", "coeffs")

    def __init__(self, coeffs: galois.FieldArray, GF=None):
        self.GF = GF or type(coeffs)
        coeffs = coeffs if isinstance(coeffs, self.GF) else self.GF(coeffs)
        if coeffs.ndim != 2:
            raise PolynomialError("series polynomial needs a (deg_z + 1) x precision array")
        rows = coeffs.view(np.ndarray).any(axis=1)
        top = int(np.flatnonzero(rows)[-1]) + 1 if rows.any() else 0
        self.coeffs = coeffs[:top]

    @classmethod
    def from_series(cls, series: Sequence[TruncatedSeries], GF) -> SeriesPoly:
        if not series:
            return cls(GF.Zeros((0, 0)), GF)
        k = min(s.precision for s in series)
        out = GF.Zeros((len(series), k))
        for t, s in enumerate(series):
            out[t] = s.coeffs[:k]
        return cls(out, GF)

    @property
    def precision(self) -> int:
        return self.coeffs.shape[1]

    @property
    def deg_z(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def is_zero(self) -> bool:
        return self.coeffs.shape[0] == 0

    def truncate(self, k: int) -> SeriesPoly:
        return SeriesPoly(self.coeffs[:, :k].copy(), self.GF)

    def valuation(self) -> int:
        """Largest s with phi^s dividing every coefficient."""
        if self.is_zero:
            return self.precision
        cols = np.flatnonzero(self.coeffs.view(np.ndarray).any(axis=0))
        return int(cols[0])

    def divide_phi(self, s: int) -> SeriesPoly:
        return SeriesPoly(self.coeffs[:, s:].copy(), self.GF)

    def at_zero(self) -> galois.Poly:
        """Q with phi = 0, as a polynomial in z."""
        if self.is_zero or self.precision == 0:
            return galois.Poly.Zero(self.GF)
        return galois.Poly(self.coeffs[:, 0], order="asc")

    def substitute(self, h: galois.FieldArray, d: int) -> SeriesPoly:
        """Q(h + phi^d z) to the same precision, by Horner's rule."""
        GF, k = self.GF, self.precision
        rows = self.coeffs.shape[0]
        acc = GF.Zeros((rows, k))
        h = h[:k]
        for t in range(rows - 1, -1, -1):
            nxt = GF.Zeros((rows, k))
            for i in range(rows - 1):
                if not acc[i].view(np.ndarray).any():
                    continue
                if h.size:
                    nxt[i] = nxt[i] + np.convolve(acc[i], h)[:k]
                if d < k:
                    nxt[i + 1, d:] = nxt[i + 1, d:] + acc[i, : k - d]
            nxt[0] = nxt[0] + self.coeffs[t]
            acc = nxt
        return SeriesPoly(acc, GF)

    def __repr__(self) -> str:
        return f"SeriesPoly(deg_z={self.deg_z}, precision={self.precision})"


class RootBundle(NamedTuple):
    """The roots h + phi^d F[[phi]]; ``h`` has length d."""

    h: galois.FieldArray
    d: int

    def contains(self, series: galois.FieldArray) -> bool:
        if series.size < self.d:
            return False
        return np.array_equal(series[: self.d].view(np.ndarray), self.h.view(np.ndarray))


def univariate_roots(p) -> galois.FieldArray:
    """Distinct roots in F_{q^2} of a nonzero polynomial, in canonical order."""
    if isinstance(p, UniPoly):
        p = p.to_galois() if not p.is_zero else None
    if p is None or not p.coeffs.view(np.ndarray).any():
        raise PolynomialError("roots of the zero polynomial")
    GF = p.field
    elements = GF.elements
    return elements[p(elements).view(np.ndarray) == 0]


def ps_roots(Q: SeriesPoly, k: int) -> List[RootBundle]:
    """The roots of Q of order k, partitioned into bundles."""
    if k < 1:
        raise PolynomialError(f"order must be positive, got {k}")
    GF = Q.GF
    Q = Q.truncate(k)
    if k == 1:
        if Q.is_zero or not Q.coeffs[:, 0].view(np.ndarray).any():
            return [RootBundle(GF.Zeros(0), 0)]
        return [RootBundle(GF([int(z)]), 1) for z in univariate_roots(Q.at_zero())]

    bundles: List[RootBundle] = []
    for h, d in ps_roots(Q, ceil(k / 2)):
        shifted = Q.substitute(h, d)
        s = shifted.valuation()
        if s >= k:
            bundles.append(RootBundle(h, d))
            continue
        for h2, d2 in ps_roots(shifted.divide_phi(s), k - s):
            combined = GF.Zeros(d + d2)
            combined[: h.size] = h
            combined[d : d + h2.size] = h2
            bundles.append(RootBundle(combined, d + d2))
    return bundles


def _completions(
    converter: SeriesConverter, bundle: RootBundle, m: int, limit: int
) -> List[RingElement]:
    """Elements of L(m P_inf) whose series lie in the bundle."""
    if bundle.d > m:
        f = converter.from_series(TruncatedSeries(bundle.h, converter.GF), m)
        return [] if f is None else [f]

    combo = converter.back_substitute(TruncatedSeries(bundle.h, converter.GF), m)
    if combo is None:
        return []
    free = [mono for v, mono in sorted(converter.hat_basis(m).items()) if bundle.d <= v]
    field_size = converter.curve.field.order
    if free and field_size ** len(free) > limit:
        # more completions than Q can have roots, so only the zero one can survive
        free = []
    out = []
    elements = converter.curve.field.elements
    for values in itertools.product(range(field_size), repeat=len(free)):
        full = dict(combo)
        for mono, v in zip(free, values):
            if v:
                full[mono] = elements[v]
        out.append(converter.combine(full))
    return out


def roots_in_L(
    Q: ZPoly,
    m: int,
    converter: Optional[SeriesConverter] = None,
    timer: Optional[PhaseTimer] = None,
) -> List[RingElement]:
    """All f with order(f) <= m and Q(f) = 0, sorted by order then coefficients."""
    if Q.is_zero:
        raise PolynomialError("roots of the zero polynomial")
    curve = Q.curve
    converter = converter or SeriesConverter(curve)

    def _phase(phase: Phase):
        return timer.phase(phase) if timer is not None else nullcontext()

    k = int(Q.orderz(m)) + 1
    with _phase(Phase.CONVERSIONS):
        series = [converter.to_series(c, k) for c in Q.coeffs]
        sp = SeriesPoly.from_series(series, curve.GF)

    with _phase(Phase.DIVISION_ROOT_FINDING):
        bundles = ps_roots(sp, k)

    roots: List[RingElement] = []
    with _phase(Phase.CONVERSIONS):
        for bundle in bundles:
            for f in _completions(converter, bundle, m, max(Q.deg_z, 1)):
                if f in roots:
                    continue
                if Q.evaluate(f).is_zero:
                    roots.append(f)
    roots.sort(key=lambda f: f.sort_key())
    logger.debug(f"root finding at order {k}: {len(bundles)} bundles, {len(roots)} roots")
    return roots
