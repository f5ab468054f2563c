"""The Hermitian curve y^q + y = x^{q+1} over F_{q^2} and its coordinate ring.

Elements of R = F_{q^2}[x, y]/(y^q + y - x^{q+1}) are kept in the standard
basis {x^i y^j : j < q}, i.e. as q univariate polynomials g_0..g_{q-1}
representing sum_j y^j g_j(x).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, NamedTuple, Sequence, Tuple

import galois
import numpy as np

from src.algebra.field import FieldContext, make_field
from src.algebra.module_min import PolyMatrix
from src.algebra.poly import NEG_INF, UniPoly, lagrange_univariate
from src.exceptions import ParameterError
from src.logger import logger


class Place(NamedTuple):
    """Rational affine place (alpha, beta), both as canonical integers."""

    alpha: int
    beta: int


def enumerate_places(field: FieldContext) -> List[Place]:
    """All q^3 affine places, by alpha then beta in canonical order."""
    q = field.q
    E = field.elements
    norms = (E ** (q + 1)).view(np.ndarray)
    traces = (E**q + E).view(np.ndarray)

    places: List[Place] = []
    for a in range(E.size):
        betas = np.flatnonzero(traces == norms[a])
        if betas.size != q:
            raise ParameterError(
                f"expected {q} places above alpha={int(E[a])}, found {betas.size}"
            )
        places.extend(Place(int(E[a]), int(E[b])) for b in betas)
    return places


class HermitianCurve:
    """Curve parameters, the place list and the precomputed interpolation data."""

    def __init__(self, q: int):
        self.field = make_field(q)
        self.GF = self.field.GF
        self.q = q
        self.n = q**3
        self.g = q * (q - 1) // 2
        self.G = UniPoly.monomial(self.GF, q * q) - UniPoly.monomial(self.GF, 1)

        self.places = enumerate_places(self.field)
        self.place_alpha = self.GF([pl.alpha for pl in self.places])
        self.place_beta = self.GF([pl.beta for pl in self.places])
        self._alpha_index = np.array([pl.alpha for pl in self.places], dtype=np.int64)
        self.beta_powers = self.GF.Ones((q, self.n))
        for j in range(1, q):
            self.beta_powers[j] = self.beta_powers[j - 1] * self.place_beta

        # prod_{alpha' != alpha} (alpha - alpha') equals G'(alpha)
        self.interp_constants = self.G.derivative()(self.field.elements)
        logger.debug(f"Hermitian curve q={q}: n={self.n}, g={self.g}")

    def __repr__(self) -> str:
        return f"HermitianCurve(q={self.q})"

    # element construction

    def zero(self) -> RingElement:
        return RingElement(self, [])

    def one(self) -> RingElement:
        return self.monomial(0, 0)

    def constant(self, c) -> RingElement:
        return RingElement(self, [UniPoly.constant(self.GF, c)])

    def monomial(self, i: int, j: int, c=1) -> RingElement:
        """c * x^i y^j for j < q."""
        if not 0 <= j < self.q:
            raise ParameterError(f"y-exponent {j} outside the standard basis")
        coeffs = [UniPoly.zero(self.GF)] * self.q
        coeffs[j] = UniPoly.monomial(self.GF, i, c)
        return RingElement(self, coeffs)

    @property
    def x(self) -> RingElement:
        return self.monomial(1, 0)

    @property
    def y(self) -> RingElement:
        return self.monomial(0, 1)

    def from_vec(self, v: Sequence[UniPoly]) -> RingElement:
        """Inverse of ``RingElement.vec``."""
        if len(v) != self.q:
            raise ParameterError(f"vector of length {len(v)} is not in F[x]^{self.q}")
        return RingElement(self, list(v))

    def from_terms(self, terms: Mapping[Tuple[int, int], object]) -> RingElement:
        """Element from a {(i, j): coefficient} map with j < q."""
        by_j: Dict[int, Dict[int, object]] = {}
        for (i, j), c in terms.items():
            if not 0 <= j < self.q:
                raise ParameterError(f"y-exponent {j} outside the standard basis")
            by_j.setdefault(j, {})[i] = c
        coeffs = []
        for j in range(self.q):
            row = by_j.get(j)
            if not row:
                coeffs.append(UniPoly.zero(self.GF))
                continue
            arr = self.GF.Zeros(max(row) + 1)
            for i, c in row.items():
                arr[i] = c if isinstance(c, galois.FieldArray) else int(c)
            coeffs.append(UniPoly(arr, self.GF))
        return RingElement(self, coeffs)

    # reduction

    def reduce_y(self, h: List[UniPoly]) -> List[UniPoly]:
        """Reduce sum_j y^j h_j to y-degree < q with y^q = x^{q+1} - y."""
        q = self.q
        h = list(h)
        for j in range(len(h) - 1, q - 1, -1):
            c = h[j]
            if c.is_zero:
                continue
            h[j - q] = h[j - q] + c.shift(q + 1)
            h[j - q + 1] = h[j - q + 1] - c
        return h[:q]

    # evaluation and interpolation

    def evaluate_all(self, p: RingElement) -> galois.FieldArray:
        """Values of p at all n places in canonical order."""
        out = self.GF.Zeros(self.n)
        for j, gj in enumerate(p.coeffs):
            if gj.is_zero:
                continue
            at_alpha = gj(self.field.elements)[self._alpha_index]
            out = out + at_alpha * self.beta_powers[j]
        return out

    def interpolate(self, values) -> RingElement:
        """p in R with p(P_i) = values_i and order(p) < n + 2g.

        The alpha groups are split recursively; a single-alpha group is
        solved by Lagrange interpolation in y scaled by the constant
        prod_{alpha' != alpha}(alpha - alpha'), and halves are recombined
        with the products of (x - alpha) over the other half.
        """
        GF, q = self.GF, self.q
        vals = values if isinstance(values, GF) else GF(np.asarray(values, dtype=np.int64))
        if vals.size != self.n:
            raise ParameterError(f"expected {self.n} values, got {vals.size}")

        def _leaf(a: int):
            sl = slice(a * q, (a + 1) * q)
            scaled = vals[sl] / self.interp_constants[a]
            in_y = lagrange_univariate(GF, xs=self.place_beta[sl], ys=scaled)
            comps = [UniPoly(in_y.coeffs[j : j + 1], GF) for j in range(q)]
            lin = GF.Ones(2)
            lin[0] = -self.field.elements[a]
            return comps, UniPoly(lin, GF)

        def _rec(lo: int, hi: int):
            if hi - lo == 1:
                return _leaf(lo)
            mid = (lo + hi) // 2
            left, m_left = _rec(lo, mid)
            right, m_right = _rec(mid, hi)
            comps = [a * m_right + b * m_left for a, b in zip(left, right)]
            return comps, m_left * m_right

        comps, _ = _rec(0, self.field.order)
        return RingElement(self, comps)

    def mul_matrix(self, b: RingElement):
        """The q x q matrix D(b)Xi, so that vec(a) D(b)Xi = vec(a b).

        Row i is vec(y^i b), built by repeated multiplication by y; taken
        row by row this is exactly D(b)Xi.
        """
        rows = []
        current = b
        for _ in range(self.q):
            rows.append(current.vec())
            current = current * self.y
        return PolyMatrix.from_rows(rows, self.GF)


class RingElement:
    """sum_j y^j g_j(x) with j < q."""

    __slots__ = ("curve", "coeffs")

    def __init__(self, curve: HermitianCurve, coeffs: Iterable[UniPoly]):
        coeffs = list(coeffs)
        if len(coeffs) > curve.q:
            coeffs = curve.reduce_y(coeffs)
        coeffs += [UniPoly.zero(curve.GF)] * (curve.q - len(coeffs))
        self.curve = curve
        self.coeffs = coeffs

    # structure

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coeffs)

    def order(self):
        """Pole order at infinity, ``NEG_INF`` for zero."""
        best = NEG_INF
        q = self.curve.q
        for j, gj in enumerate(self.coeffs):
            if not gj.is_zero:
                best = max(best, q * gj.degree + (q + 1) * j)
        return best

    def leading_term(self):
        """(i, j, coefficient) of the monomial attaining the order."""
        q = self.curve.q
        best, lead = NEG_INF, None
        for j, gj in enumerate(self.coeffs):
            if gj.is_zero:
                continue
            o = q * gj.degree + (q + 1) * j
            if o > best:
                best, lead = o, (gj.degree, j, gj.leading_coefficient)
        return lead

    def leading_coefficient(self):
        lead = self.leading_term()
        return self.curve.GF(0) if lead is None else lead[2]

    def vec(self) -> List[UniPoly]:
        return list(self.coeffs)

    def x_degree(self):
        return max((c.degree for c in self.coeffs), default=NEG_INF)

    # arithmetic

    def __add__(self, other: RingElement) -> RingElement:
        return RingElement(self.curve, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: RingElement) -> RingElement:
        return RingElement(self.curve, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> RingElement:
        return RingElement(self.curve, [-a for a in self.coeffs])

    def __mul__(self, other) -> RingElement:
        if isinstance(other, RingElement):
            return ring_mul(self, other)
        if isinstance(other, UniPoly):
            return RingElement(self.curve, [a * other for a in self.coeffs])
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c) -> RingElement:
        return RingElement(self.curve, [a.scale(c) for a in self.coeffs])

    def __pow__(self, e: int) -> RingElement:
        out = self.curve.one()
        for _ in range(e):
            out = out * self
        return out

    def shift_x(self, k: int) -> RingElement:
        return RingElement(self.curve, [a.shift(k) for a in self.coeffs])

    def reduce_mod_G(self) -> RingElement:
        G = self.curve.G
        return RingElement(self.curve, [a % G for a in self.coeffs])

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.curve.q == other.curve.q and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __hash__(self) -> int:
        return hash(tuple(self.coeffs))

    # evaluation

    def evaluate(self, pl: Place):
        GF = self.curve.GF
        alpha, beta = GF(pl.alpha), GF(pl.beta)
        out = GF(0)
        power = GF(1)
        for gj in self.coeffs:
            if not gj.is_zero:
                out = out + power * gj(alpha)
            power = power * beta
        return out

    def evaluate_all(self) -> galois.FieldArray:
        return self.curve.evaluate_all(self)

    def sort_key(self):
        """Deterministic ordering: order first, then coefficients."""
        flat = []
        for c in self.coeffs:
            flat.append(c.coeffs.size)
            flat.extend(int(v) for v in c.coeffs)
        order = self.order()
        return (order if order != NEG_INF else -1, tuple(flat))

    def __repr__(self) -> str:
        terms = []
        for j, gj in enumerate(self.coeffs):
            for i, c in enumerate(gj.coeffs):
                ci = int(c)
                if ci:
                    mono = "*".join(
                        t for t in (f"x^{i}" if i else "", f"y^{j}" if j else "") if t
                    )
                    terms.append(f"{ci}*{mono}" if mono else f"{ci}")
        return "RingElement(" + (" + ".join(terms) if terms else "0") + ")"


def ring_mul(a: RingElement, b: RingElement) -> RingElement:
    """Product in R, reduced to the standard basis."""
    curve = a.curve
    if a.is_zero or b.is_zero:
        return curve.zero()
    h = [UniPoly.zero(curve.GF)] * (2 * curve.q - 1)
    for i, ai in enumerate(a.coeffs):
        if ai.is_zero:
            continue
        for j, bj in enumerate(b.coeffs):
            if bj.is_zero:
                continue
            h[i + j] = h[i + j] + ai * bj
    return RingElement(curve, curve.reduce_y(h))


def vec(p: RingElement) -> List[UniPoly]:
    return p.vec()


def vec_inv(curve: HermitianCurve, v: Sequence[UniPoly]) -> RingElement:
    return curve.from_vec(v)


@lru_cache(maxsize=8)
def get_curve(q: int) -> HermitianCurve:
    """Shared curve instance per q."""
    return HermitianCurve(q)
