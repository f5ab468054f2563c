"""Truncated power series at the place (0, 0) with local parameter phi = x.

At (0, 0) the curve relation gives y = sum_b (-1)^b phi^{(q+1) q^b}, so the
series of x^i y^j is sparse. Going back from a series to the ring uses the
alternative basis of monomials x^i y^j with i <= q, whose vanishing orders
i + j(q+1) at (0, 0) are pairwise distinct.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

import galois
import numpy as np

from src.curve.hermitian import HermitianCurve, RingElement
from src.exceptions import SeriesError


class TruncatedSeries:
    """a_0 + a_1 phi + ... + a_{N-1} phi^{N-1} + O(phi^N)."""

    __slots__ = ("GF", "coeffs")

    def __init__(self, coeffs: galois.FieldArray, GF=None):
        self.GF = GF or type(coeffs)
        self.coeffs = coeffs if isinstance(coeffs, self.GF) else self.GF(coeffs)

    @classmethod
    def zero(cls, GF, N: int) -> TruncatedSeries:
        return cls(GF.Zeros(N), GF)

    @classmethod
    def one(cls, GF, N: int) -> TruncatedSeries:
        out = GF.Zeros(N)
        if N:
            out[0] = 1
        return cls(out, GF)

    @property
    def precision(self) -> int:
        return self.coeffs.size

    @property
    def is_zero(self) -> bool:
        return not self.coeffs.view(np.ndarray).any()

    def valuation(self) -> int:
        """Index of the first nonzero coefficient; the precision when none is."""
        nz = np.flatnonzero(self.coeffs.view(np.ndarray))
        return int(nz[0]) if nz.size else self.precision

    def truncate(self, N: int) -> TruncatedSeries:
        if N > self.precision:
            raise SeriesError(f"cannot raise precision {self.precision} to {N}")
        return TruncatedSeries(self.coeffs[:N].copy(), self.GF)

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        N = min(self.precision, other.precision)
        return TruncatedSeries(self.coeffs[:N] + other.coeffs[:N], self.GF)

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        N = min(self.precision, other.precision)
        return TruncatedSeries(self.coeffs[:N] - other.coeffs[:N], self.GF)

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries(-self.coeffs, self.GF)

    def __mul__(self, other) -> TruncatedSeries:
        if isinstance(other, TruncatedSeries):
            N = min(self.precision, other.precision)
            if N == 0:
                return TruncatedSeries.zero(self.GF, 0)
            return TruncatedSeries(np.convolve(self.coeffs[:N], other.coeffs[:N])[:N], self.GF)
        if not isinstance(other, galois.FieldArray):
            other = self.GF(int(other))
        return TruncatedSeries(self.coeffs * other, self.GF)

    __rmul__ = __mul__

    def shift(self, k: int) -> TruncatedSeries:
        """Multiply by phi^k keeping the precision."""
        out = self.GF.Zeros(self.precision)
        if k < self.precision:
            out[k:] = self.coeffs[: self.precision - k]
        return TruncatedSeries(out, self.GF)

    def divide_phi(self, k: int) -> TruncatedSeries:
        """Exact division by phi^k; the precision drops by k."""
        if self.valuation() < k:
            raise SeriesError(f"series is not divisible by phi^{k}")
        return TruncatedSeries(self.coeffs[k:].copy(), self.GF)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.precision == other.precision and np.array_equal(
            self.coeffs.view(np.ndarray), other.coeffs.view(np.ndarray)
        )

    def __repr__(self) -> str:
        terms = [f"{int(c)}*phi^{i}" for i, c in enumerate(self.coeffs) if int(c)]
        return f"TruncatedSeries({' + '.join(terms) or '0'} + O(phi^{self.precision}))"


def series_invert(s: TruncatedSeries, N: Optional[int] = None) -> TruncatedSeries:
    """t with s*t = 1 mod phi^N, by Newton iteration t <- t + t(1 - s t)."""
    N = s.precision if N is None else N
    if N > s.precision:
        raise SeriesError(f"series known to precision {s.precision}, inverse requested to {N}")
    GF = s.GF
    if N == 0:
        return TruncatedSeries.zero(GF, 0)
    if int(s.coeffs[0]) == 0:
        raise SeriesError("constant term is zero; strip the phi-power first")

    t = GF.Zeros(1)
    t[0] = s.coeffs[0] ** -1
    prec = 1
    while prec < N:
        prec = min(2 * prec, N)
        st = np.convolve(s.coeffs[:prec], t)[:prec]
        err = -st
        err[0] = err[0] + GF(1)
        correction = np.convolve(t, err)[:prec]
        grown = GF.Zeros(prec)
        grown[: t.size] = t
        t = grown + correction
    return TruncatedSeries(t, GF)


class SeriesConverter:
    """Conversions between R and series at (0, 0) for one curve.

    The monomial-series cache is owned by the converter; give each decoding
    session (or worker process) its own instance.
    """

    def __init__(self, curve: HermitianCurve):
        self.curve = curve
        self.GF = curve.GF
        self.q = curve.q
        self._y_powers: Dict[int, galois.FieldArray] = {}
        self._hat_bases: Dict[int, Dict[int, Tuple[int, int]]] = {}
        self._hat_terms: Dict[Tuple[int, int], List[Tuple[int, int, galois.FieldArray]]] = {}

    # forward direction

    def y_series(self, N: int) -> galois.FieldArray:
        q = self.q
        out = self.GF.Zeros(N)
        b, e = 0, q + 1
        while e < N:
            out[e] = 1 if b % 2 == 0 else -self.GF(1)
            b += 1
            e *= q
        return out

    def y_power(self, j: int, N: int) -> galois.FieldArray:
        """Series of y^j to precision N."""
        cached = self._y_powers.get(j)
        if cached is not None and cached.size >= N:
            return cached[:N]
        if j == 0:
            arr = self.GF.Zeros(N)
            arr[0] = 1
        else:
            arr = np.convolve(self.y_power(j - 1, N), self.y_series(N))[:N]
        self._y_powers[j] = arr
        return arr

    def monomial_series(self, i: int, j: int, N: int) -> galois.FieldArray:
        """Series of x^i y^j to precision N."""
        out = self.GF.Zeros(N)
        if i < N:
            out[i:] = self.y_power(j, N - i)
        return out

    def to_series(self, f: RingElement, N: int) -> TruncatedSeries:
        """Series of f, summing scaled shifts of the sparse y^j series."""
        out = self.GF.Zeros(N)
        if N == 0:
            return TruncatedSeries(out, self.GF)
        for j, g in enumerate(f.coeffs):
            if g.is_zero:
                continue
            ys = self.y_power(j, N)
            gc = g.coeffs[:N]
            for e in np.flatnonzero(ys.view(np.ndarray)):
                L = min(gc.size, N - e)
                out[e : e + L] = out[e : e + L] + ys[e] * gc[:L]
        return TruncatedSeries(out, self.GF)

    # backward direction

    def hat_basis(self, m: int) -> Dict[int, Tuple[int, int]]:
        """vanishing order at (0, 0) -> (i, j) for x^i y^j, i <= q, order <= m."""
        basis = self._hat_bases.get(m)
        if basis is None:
            q = self.q
            basis = {}
            for i in range(q + 1):
                j = 0
                while q * i + (q + 1) * j <= m:
                    basis[i + j * (q + 1)] = (i, j)
                    j += 1
            self._hat_bases[m] = basis
        return basis

    def hat_terms(self, i: int, j: int) -> List[Tuple[int, int, galois.FieldArray]]:
        """Standard-basis terms (x-exponent, y-exponent, coefficient) of x^i y^j."""
        key = (i, j)
        if key in self._hat_terms:
            return self._hat_terms[key]
        q, GF = self.q, self.GF
        field = self.curve.field
        a, b = j % q, j // q
        if b >= q:
            raise SeriesError(f"y^{j} is beyond the supported range for q={q}")

        acc: Dict[Tuple[int, int], galois.FieldArray] = {}

        def _add(xe: int, ye: int, c):
            acc[(xe, ye)] = acc.get((xe, ye), GF(0)) + c

        # y^j = y^a (x^{q+1} - y)^b
        for k in range(b + 1):
            c = field.binomial(b, k)
            if int(c) == 0:
                continue
            if k % 2:
                c = -c
            xe = i + (q + 1) * (b - k)
            ye = a + k
            if ye < q:
                _add(xe, ye, c)
            else:
                # y^{ye} = x^{q+1} y^{ye-q} - y^{ye-q+1}
                _add(xe + q + 1, ye - q, c)
                _add(xe, ye - q + 1, -c)

        terms = [(xe, ye, c) for (xe, ye), c in sorted(acc.items()) if int(c)]
        self._hat_terms[key] = terms
        return terms

    def hat_expand(self, i: int, j: int) -> RingElement:
        if not 0 <= i <= self.q:
            raise SeriesError(f"x-exponent {i} outside 0..{self.q}")
        return self.curve.from_terms({(xe, ye): c for xe, ye, c in self.hat_terms(i, j)})

    def back_substitute(
        self, s: TruncatedSeries, m: int
    ) -> Optional[Dict[Tuple[int, int], galois.FieldArray]]:
        """Coefficients over the alternative basis, or None if some term is unmatched."""
        basis = self.hat_basis(m)
        P = s.precision
        work = s.coeffs.copy()
        raw = work.view(np.ndarray)
        combo: Dict[Tuple[int, int], galois.FieldArray] = {}
        for v in range(P):
            if raw[v] == 0:
                continue
            mono = basis.get(v)
            if mono is None:
                return None
            c = self.GF(int(raw[v]))
            ser = self.monomial_series(mono[0], mono[1], P)
            work[v:] = work[v:] - c * ser[v:]
            combo[mono] = c
        return combo

    def combine(self, combo: Dict[Tuple[int, int], galois.FieldArray]) -> RingElement:
        """Convert an alternative-basis combination to the standard basis."""
        acc: Dict[Tuple[int, int], galois.FieldArray] = {}
        for (i, j), c in combo.items():
            for xe, ye, t in self.hat_terms(i, j):
                acc[(xe, ye)] = acc.get((xe, ye), self.GF(0)) + c * t
        return self.curve.from_terms(acc)

    def from_series(self, s: TruncatedSeries, m: int) -> Optional[RingElement]:
        """The f in L(m P_inf) with this series, or None when there is none."""
        if m >= self.curve.n:
            raise SeriesError(f"pole bound m={m} must be below n={self.curve.n}")
        if s.precision < m + 1:
            raise SeriesError(f"precision {s.precision} below m+1={m + 1}")
        combo = self.back_substitute(s, m)
        return None if combo is None else self.combine(combo)
