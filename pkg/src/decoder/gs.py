"""Guruswami-Sudan list decoding of one-point Hermitian codes.

The interpolation step is a weighted module minimisation: the polynomials
Q in R[z] with an (P_i, r_i)-zero of multiplicity s and z-degree at most l
form an R-module with an explicit basis, which becomes an F[x]-module of
rank q(l+1) after taking vec of every coefficient. A row of minimal
(q, w)-weighted degree is an interpolant of minimal orderz_m.
"""

from __future__ import annotations

from contextlib import nullcontext
from fractions import Fraction
from math import ceil, sqrt
from typing import List, Optional, Tuple

import galois
import numpy as np
from pydantic import BaseModel, Field, model_validator

from src.algebra.module_min import PolyMatrix, ReductionStats, WeightSpec, minimize_weighted
from src.codec import HermitianCode, encode, hamming_distance
from src.curve.hermitian import Place, RingElement
from src.curve.powerseries import SeriesConverter
from src.curve.zpoly import ZPoly
from src.decoder.base import BaseDecoder
from src.decoder.rootfind import roots_in_L
from src.exceptions import ParameterError
from src.logger import logger
from src.schema import Candidate, DecodeReport, DecodeStatus, DecoderKind, Phase
from src.utils.timing import PhaseTimer


class GSParams(BaseModel):
    """Multiplicity s, list size l and decoding radius tau."""

    s: int = Field(1, ge=1)
    l: int = Field(1, ge=1)
    tau: Optional[int] = Field(None, ge=0)

    @model_validator(mode="after")
    def check_order(self) -> "GSParams":
        if self.s > self.l:
            raise ValueError(f"multiplicity s={self.s} exceeds list size l={self.l}")
        return self


# decoding radii


def count_monomials(code: HermitianCode, bound: int, l: int) -> int:
    """Number of x^i y^j z^t, j < q, t <= l, with qi + (q+1)j + tm <= bound."""
    q, m = code.q, code.m
    total = 0
    for t in range(l + 1):
        for j in range(q):
            rest = bound - t * m - (q + 1) * j
            if rest >= 0:
                total += rest // q + 1
    return total


def tau_gs_exact(code: HermitianCode, s: int, l: int) -> int:
    """Largest tau for which the unknowns outnumber the interpolation constraints."""
    if not 1 <= s <= l:
        raise ParameterError(f"need 1 <= s <= l, got s={s}, l={l}")
    n = code.n
    constraints = n * s * (s + 1) // 2
    for tau in range(n - 1, -1, -1):
        if count_monomials(code, s * (n - tau) - 1, l) > constraints:
            return tau
    raise ParameterError(f"no decoding radius for s={s}, l={l}")


def tau_gs_bound(code: HermitianCode, s: int, l: int) -> int:
    """Closed-form lower bound on the exact radius."""
    n, m, g = code.n, code.m, code.g
    value = (1 - Fraction(s + 1, 2 * (l + 1))) * n - Fraction(m, 2) * Fraction(l, s) - Fraction(g, s)
    return ceil(value) - 1


def tau_gs_extended(code: HermitianCode, s: int, l: int) -> int:
    """The radius often reached in practice, tau_GS + floor(g/s)."""
    return tau_gs_exact(code, s, l) + code.g // s


def johnson_radius(code: HermitianCode) -> float:
    n = code.n
    return n - sqrt(n * (n - code.d_star))


def best_gs_parameters(code: HermitianCode, max_l: int) -> Tuple[int, int, int]:
    """(s, l, tau) maximising tau_GS over 1 <= s <= l <= max_l."""
    best = None
    for l in range(1, max_l + 1):
        for s in range(1, l + 1):
            try:
                tau = tau_gs_exact(code, s, l)
            except ParameterError:
                continue
            if s * (code.n - tau) - l * code.m <= 0:
                continue
            if best is None or tau > best[2]:
                best = (s, l, tau)
    if best is None:
        raise ParameterError(f"no valid GS parameters with l <= {max_l}")
    return best


def _validate(code: HermitianCode, s: int, l: int, tau: int) -> None:
    GSParams(s=s, l=l, tau=tau)
    if s * (code.n - tau) - l * code.m <= 0:
        raise ParameterError(
            f"s(n - tau) - l*m must be positive, got {s * (code.n - tau) - l * code.m}"
        )


# interpolation


def gs_basis(
    code: HermitianCode, s: int, l: int, r, R: Optional[RingElement] = None
) -> List[ZPoly]:
    """H^(t) = G^(s-t) (z-R)^t for t <= s and z^(t-s) (z-R)^s for s < t <= l."""
    curve = code.curve
    if R is None:
        R = curve.interpolate(r)
    linear = ZPoly.linear(curve, R)
    powers = [ZPoly.constant(curve, curve.one())]
    for _ in range(s):
        powers.append(powers[-1] * linear)

    basis = []
    for t in range(l + 1):
        if t <= s:
            basis.append(powers[t] * (curve.G ** (s - t)))
        else:
            basis.append(powers[s].shift_z(t - s))
    return basis


def interpolation_weights(code: HermitianCode, l: int) -> WeightSpec:
    q, m = code.q, code.m
    w = tuple(t * m + (q + 1) * j for t in range(l + 1) for j in range(q))
    return WeightSpec(nu=q, w=w)


def build_interpolation_matrix(
    code: HermitianCode, s: int, l: int, r, R: Optional[RingElement] = None
) -> Tuple[PolyMatrix, WeightSpec]:
    """Rows vecz(y^j H^(t)) for t = 0..l, j = 0..q-1."""
    curve = code.curve
    rows = []
    for H in gs_basis(code, s, l, r, R):
        yj = curve.one()
        for _ in range(code.q):
            rows.append((H * yj).vecz(l + 1))
            yj = yj * curve.y
    return PolyMatrix.from_rows(rows, curve.GF), interpolation_weights(code, l)


def interpolate(
    code: HermitianCode,
    s: int,
    l: int,
    r,
    stats: Optional[ReductionStats] = None,
    timer: Optional[PhaseTimer] = None,
) -> ZPoly:
    """Q of minimal orderz_m with a zero of multiplicity s at every (P_i, r_i)."""

    def _phase(phase: Phase):
        return timer.phase(phase) if timer is not None else nullcontext()

    with _phase(Phase.PRECOMPUTATION):
        R = code.curve.interpolate(r)
    with _phase(Phase.BUILD_MATRIX):
        V, spec = build_interpolation_matrix(code, s, l, r, R)
    with _phase(Phase.MODULE_MINIMISATION):
        row = minimize_weighted(V, spec, range(len(spec.w)), stats)
    return ZPoly.from_vecz(code.curve, row)


# multiplicity verification


def _local_y(curve, alpha, N: int) -> galois.FieldArray:
    """Series of y - beta in phi = x - alpha at (alpha, beta), to precision N."""
    GF, q = curve.GF, curve.q
    target = galois.Poly(GF([1, int(alpha)])) ** (q + 1)
    target = target.coeffs[::-1].copy()
    target[0] = target[0] - alpha ** (q + 1)
    base = GF.Zeros(N)
    L = min(N, target.size)
    base[:L] = target[:L]

    u = GF.Zeros(N)
    while True:
        uq = GF.Zeros(N)
        uq[0] = 1
        for _ in range(q):
            uq = np.convolve(uq, u)[:N]
        nxt = base - uq
        if np.array_equal(nxt.view(np.ndarray), u.view(np.ndarray)):
            return u
        u = nxt


def _local_series(element: RingElement, alpha, y_local: galois.FieldArray, N: int):
    """Series of a ring element in phi = x - alpha, given y's local series."""
    GF = element.curve.GF
    out = GF.Zeros(N)
    y_power = GF.Zeros(N)
    y_power[0] = 1
    for gj in element.coeffs:
        if not gj.is_zero:
            # g(alpha + phi) by Horner's rule
            acc = GF.Zeros(N)
            for c in gj.coeffs[::-1]:
                shifted = GF.Zeros(N)
                shifted[1:] = acc[: N - 1]
                acc = acc * alpha + shifted
                acc[0] = acc[0] + c
            out = out + np.convolve(acc, y_power)[:N]
        y_power = np.convolve(y_power, y_local)[:N]
    return out


def multiplicity_coefficients(Q: ZPoly, pl: Place, z0, s: int) -> galois.FieldArray:
    """gamma[h, j] of z^h phi^j in Q(z + z0) at the place, for j + h < s (else 0)."""
    curve = Q.curve
    GF, field = curve.GF, curve.field
    alpha, beta, z0 = GF(pl.alpha), GF(pl.beta), GF(int(z0))
    y_local = _local_y(curve, alpha, s)
    y_local[0] = beta

    gamma = GF.Zeros((s, s))
    for h in range(s):
        # coefficient of z^h in Q(z + z0)
        P = curve.zero()
        for t in range(h, len(Q.coeffs)):
            c = field.binomial(t, h) * z0 ** (t - h)
            if int(c):
                P = P + Q.coeffs[t].scale(c)
        if P.is_zero:
            continue
        gamma[h, : s - h] = _local_series(P, alpha, y_local, s - h)
    return gamma


def check_multiplicity(Q: ZPoly, pl: Place, z0, s: int) -> bool:
    """Whether (pl, z0) is a zero of Q of multiplicity at least s."""
    return not multiplicity_coefficients(Q, pl, z0, s).view(np.ndarray).any()


# decoding


def gs_decode(
    code: HermitianCode,
    s: int,
    l: int,
    r,
    tau: Optional[int] = None,
    stats: Optional[ReductionStats] = None,
    timer: Optional[PhaseTimer] = None,
    counters: Optional[dict] = None,
) -> List[Tuple[RingElement, galois.FieldArray]]:
    """Messages whose codewords lie within tau of r, by order then coefficients."""
    tau = tau_gs_exact(code, s, l) if tau is None else tau
    _validate(code, s, l, tau)
    r = r if isinstance(r, code.GF) else code.GF(np.asarray(r, dtype=np.int64))

    Q = interpolate(code, s, l, r, stats, timer)
    converter = SeriesConverter(code.curve)
    roots = roots_in_L(Q, code.m, converter, timer)

    found = []
    for f in roots:
        c = encode(code, f)
        if hamming_distance(c, r) <= tau:
            found.append((f, c))
    if counters is not None:
        counters["interpolant_orderz"] = int(Q.orderz(code.m))
        counters["roots_found"] = len(roots)
        counters["list_size"] = len(found)
    logger.debug(
        f"GS(s={s}, l={l}, tau={tau}): {len(roots)} roots, {len(found)} within radius"
    )
    return found


class GSDecoder(BaseDecoder):
    """List decoder up to the exact Guruswami-Sudan radius."""

    name: str = DecoderKind.GS.value
    description: str = "Guruswami-Sudan list decoding by weighted module minimisation"
    s: int = 1
    l: int = 1
    tau: int = 0

    @classmethod
    def build(cls, code: HermitianCode, s: int = 1, l: int = 1, tau: Optional[int] = None, **_) -> GSDecoder:
        GSParams(s=s, l=l, tau=tau)
        tau = tau_gs_exact(code, s, l) if tau is None else tau
        _validate(code, s, l, tau)
        return cls(code=code, s=s, l=l, tau=tau)

    @property
    def params(self):
        return {"s": self.s, "l": self.l, "tau": self.tau}

    def decode(self, received) -> DecodeReport:
        timer = PhaseTimer()
        stats = ReductionStats()
        counters: dict = {}
        found = gs_decode(
            self.code, self.s, self.l, received, self.tau, stats, timer, counters
        )
        counters["reduction_steps"] = stats.steps
        counters["orthogonality_defect"] = stats.orthogonality_defect
        return DecodeReport(
            decoder=self.name,
            status=DecodeStatus.SUCCESS if found else DecodeStatus.FAILURE,
            candidates=[
                Candidate(message=f, codeword=[int(v) for v in c]) for f, c in found
            ],
            timings=timer.as_dict(),
            counters=counters,
            failure_reason=None if found else "empty_list",
        )
