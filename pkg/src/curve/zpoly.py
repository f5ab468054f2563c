"""Polynomials in z over the curve ring R."""

from __future__ import annotations

from typing import Iterable, List, Sequence

from src.algebra.poly import NEG_INF, UniPoly
from src.curve.hermitian import HermitianCurve, RingElement


class ZPoly:
    """Q = sum_t Q_t z^t with Q_t in R."""

    __slots__ = ("curve", "coeffs")

    def __init__(self, curve: HermitianCurve, coeffs: Iterable[RingElement]):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero:
            coeffs.pop()
        self.curve = curve
        self.coeffs = coeffs

    @classmethod
    def linear(cls, curve: HermitianCurve, root: RingElement) -> ZPoly:
        """z - root"""
        return cls(curve, [-root, curve.one()])

    @classmethod
    def constant(cls, curve: HermitianCurve, c: RingElement) -> ZPoly:
        return cls(curve, [c])

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def deg_z(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def coefficient(self, t: int) -> RingElement:
        return self.coeffs[t] if 0 <= t < len(self.coeffs) else self.curve.zero()

    def orderz(self, w: int):
        """max_t order(Q_t) + t*w"""
        return max(
            (c.order() + t * w for t, c in enumerate(self.coeffs) if not c.is_zero),
            default=NEG_INF,
        )

    def __add__(self, other: ZPoly) -> ZPoly:
        size = max(len(self.coeffs), len(other.coeffs))
        return ZPoly(self.curve, [self.coefficient(t) + other.coefficient(t) for t in range(size)])

    def __sub__(self, other: ZPoly) -> ZPoly:
        return self + (-other)

    def __neg__(self) -> ZPoly:
        return ZPoly(self.curve, [-c for c in self.coeffs])

    def __mul__(self, other) -> ZPoly:
        if isinstance(other, ZPoly):
            if self.is_zero or other.is_zero:
                return ZPoly(self.curve, [])
            out = [self.curve.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a.is_zero:
                    continue
                for j, b in enumerate(other.coeffs):
                    if not b.is_zero:
                        out[i + j] = out[i + j] + a * b
            return ZPoly(self.curve, out)
        return ZPoly(self.curve, [c * other for c in self.coeffs])

    __rmul__ = __mul__

    def __pow__(self, e: int) -> ZPoly:
        out = ZPoly.constant(self.curve, self.curve.one())
        for _ in range(e):
            out = out * self
        return out

    def shift_z(self, k: int) -> ZPoly:
        """Multiply by z^k."""
        if self.is_zero:
            return self
        return ZPoly(self.curve, [self.curve.zero()] * k + self.coeffs)

    def evaluate(self, f: RingElement) -> RingElement:
        """Q(f) in R by Horner's rule."""
        acc = self.curve.zero()
        for c in reversed(self.coeffs):
            acc = acc * f + c
        return acc

    def vecz(self, length: int) -> List[UniPoly]:
        """(vec Q_0 | ... | vec Q_{length-1})"""
        out: List[UniPoly] = []
        for t in range(length):
            out.extend(self.coefficient(t).vec())
        return out

    @classmethod
    def from_vecz(cls, curve: HermitianCurve, v: Sequence[UniPoly]) -> ZPoly:
        q = curve.q
        return cls(curve, [curve.from_vec(v[t : t + q]) for t in range(0, len(v), q)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, ZPoly):
            return NotImplemented
        return len(self.coeffs) == len(other.coeffs) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __repr__(self) -> str:
        return f"ZPoly(deg_z={self.deg_z}, orders={[c.order() for c in self.coeffs]})"
