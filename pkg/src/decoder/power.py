"""Power decoding of one-point Hermitian codes.

The powered key equations Lambda R^t = Lambda f^t mod G, t = 1..l, are
linearised by treating B_t = Lambda f^t as unknowns of bounded order. All
solutions form an F[x]-module with the explicit basis
[[I_q, T], [0, G I_{ql}]]; a minimal weighted row with leading position
among the Lambda columns gives the candidate locator. The message is then
recovered as B_1 / Lambda by power series division at (0, 0).
"""

from __future__ import annotations

from contextlib import nullcontext
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field

from src.algebra.module_min import PolyMatrix, ReductionStats, WeightSpec, minimize_weighted
from src.algebra.poly import UniPoly
from src.codec import HermitianCode, encode, hamming_distance
from src.curve.hermitian import RingElement
from src.curve.powerseries import SeriesConverter, series_invert
from src.decoder.base import BaseDecoder
from src.exceptions import ParameterError
from src.logger import logger
from src.schema import Candidate, DecodeReport, DecodeStatus, DecoderKind, Phase
from src.utils.timing import PhaseTimer


BEYOND_LIFT_RADIUS = "beyond_lift_radius"
LOCATOR_NOT_DIVIDING = "locator_not_dividing"
NOT_IN_SPACE = "not_in_space"
DISTANCE_CHECK = "distance_check"
LOCATOR_INCONSISTENT = "locator_inconsistent"


class PowerParams(BaseModel):
    l: int = Field(1, ge=1, description="Powering degree")


def _validate(code: HermitianCode, l: int) -> None:
    PowerParams(l=l)
    if l * code.m >= code.n:
        raise ParameterError(f"powering degree needs l*m < n, got {l}*{code.m} >= {code.n}")


# decoding radii


def tau_pow(code: HermitianCode, l: int) -> Fraction:
    """l/(l+1) n - l m / 2 - l/(l+1), kept exact."""
    _validate(code, l)
    return Fraction(l, l + 1) * code.n - Fraction(l * code.m, 2) - Fraction(l, l + 1)


def tau_pow_guaranteed(code: HermitianCode) -> int:
    """Radius below which the key equations always return the true locator."""
    return (code.d_star - 1 - code.g) // 2


def unique_radius(code: HermitianCode) -> int:
    return (code.d_star - 1) // 2


def best_power_l(code: HermitianCode) -> int:
    """Smallest l with l*m < n maximising floor(tau_pow)."""
    best_l, best_tau = None, None
    l = 1
    while l * code.m < code.n:
        tau = floor(tau_pow(code, l))
        if best_tau is None or tau > best_tau:
            best_l, best_tau = l, tau
        l += 1
    if best_l is None:
        raise ParameterError(f"no powering degree with l*m < n for m={code.m}")
    return best_l


# key equations


def received_powers(code: HermitianCode, r, l: int) -> List[RingElement]:
    """R^(t) interpolating r_i^t, t = 1..l."""
    GF = code.GF
    r = r if isinstance(r, GF) else GF(np.asarray(r, dtype=np.int64))
    return [code.curve.interpolate(r**t) for t in range(1, l + 1)]


def key_weights(code: HermitianCode, l: int) -> WeightSpec:
    q, m = code.q, code.m
    shift = l * m + 1
    eta = [i * (q + 1) + shift for i in range(q)]
    mu = [
        (q + 1) * ((j - 1) % q) - m * (-(-j // q)) - 1 + shift
        for j in range(1, q * l + 1)
    ]
    return WeightSpec(nu=q, w=tuple(eta + mu))


def build_key_matrix(
    code: HermitianCode, l: int, r, R_powers: Optional[List[RingElement]] = None
) -> Tuple[PolyMatrix, WeightSpec]:
    """M = [[I_q, T_1 .. T_l], [0, G I_{ql}]] with T_t = D(R^t) Xi mod G."""
    _validate(code, l)
    curve, q = code.curve, code.q
    GF, G = curve.GF, curve.G
    R_powers = R_powers or received_powers(code, r, l)
    zero, one = UniPoly.zero(GF), UniPoly.constant(GF, 1)

    size = q * (l + 1)
    rows = [[zero] * size for _ in range(size)]
    for i in range(q):
        rows[i][i] = one
    for t, Rt in enumerate(R_powers, start=1):
        block = curve.mul_matrix(Rt)
        for i in range(q):
            for j in range(q):
                rows[i][t * q + j] = block.entry(i, j) % G
    for i in range(q, size):
        rows[i][i] = G
    return PolyMatrix.from_rows(rows, GF), key_weights(code, l)


@dataclass
class KeyEqSolution:
    """Candidate locator Lambda and candidate B_t = Lambda f^t."""

    lam: RingElement
    B: List[RingElement]
    R_powers: List[RingElement] = field(default_factory=list, repr=False)

    @property
    def l(self) -> int:
        return len(self.B)

    def satisfies_congruences(self) -> bool:
        """Lambda R^t = B_t mod G for every t."""
        return all(
            (self.lam * Rt - Bt).reduce_mod_G().is_zero
            for Rt, Bt in zip(self.R_powers, self.B)
        )


def solve_key_equations(
    code: HermitianCode,
    l: int,
    r,
    stats: Optional[ReductionStats] = None,
    timer: Optional[PhaseTimer] = None,
) -> KeyEqSolution:
    """Minimal solution of the powered key equations, normalised so LC(Lambda) = 1."""

    def _phase(phase: Phase):
        return timer.phase(phase) if timer is not None else nullcontext()

    _validate(code, l)
    curve, q = code.curve, code.q
    with _phase(Phase.PRECOMPUTATION):
        R_powers = received_powers(code, r, l)
    with _phase(Phase.BUILD_MATRIX):
        M, spec = build_key_matrix(code, l, r, R_powers)
    with _phase(Phase.MODULE_MINIMISATION):
        row = minimize_weighted(M, spec, range(q), stats)

    lam = curve.from_vec(row[:q])
    B = [curve.from_vec(row[t * q : (t + 1) * q]) for t in range(1, l + 1)]
    lc = lam.leading_coefficient() ** -1
    return KeyEqSolution(lam=lam.scale(lc), B=[b.scale(lc) for b in B], R_powers=R_powers)


# message recovery


def _recover(
    sol: KeyEqSolution,
    code: HermitianCode,
    converter: SeriesConverter,
    timer: Optional[PhaseTimer],
) -> Tuple[Optional[RingElement], Optional[str], int]:
    def _phase(phase: Phase):
        return timer.phase(phase) if timer is not None else nullcontext()

    n = code.n
    N = 2 * n
    with _phase(Phase.CONVERSIONS):
        lam_s = converter.to_series(sol.lam, N)
        b_s = converter.to_series(sol.B[0], N)
    delta = lam_s.valuation()
    if delta >= N - n or b_s.valuation() < delta:
        return None, LOCATOR_NOT_DIVIDING, delta

    with _phase(Phase.DIVISION_ROOT_FINDING):
        num = b_s.divide_phi(delta)
        den = lam_s.divide_phi(delta)
        f_s = (num * series_invert(den, n)).truncate(n)
    with _phase(Phase.CONVERSIONS):
        f = converter.from_series(f_s, code.m)
    if f is None:
        return None, NOT_IN_SPACE, delta
    return f, None, delta


def recover_message(
    sol: KeyEqSolution,
    code: HermitianCode,
    converter: Optional[SeriesConverter] = None,
    timer: Optional[PhaseTimer] = None,
) -> Optional[RingElement]:
    """f = B_1 / Lambda as an element of L(m P_inf), or None."""
    f, _, _ = _recover(sol, code, converter or SeriesConverter(code.curve), timer)
    return f


def power_decode(
    code: HermitianCode,
    l: int,
    r,
    converter: Optional[SeriesConverter] = None,
    stats: Optional[ReductionStats] = None,
    timer: Optional[PhaseTimer] = None,
) -> DecodeReport:
    """Decode r, verifying the result instead of trusting the locator."""
    _validate(code, l)
    GF = code.GF
    r = r if isinstance(r, GF) else GF(np.asarray(r, dtype=np.int64))
    timer = timer or PhaseTimer()
    stats = stats or ReductionStats()
    converter = converter or SeriesConverter(code.curve)

    sol = solve_key_equations(code, l, r, stats, timer)
    locator_order = int(sol.lam.order())
    counters = {
        "locator_order": locator_order,
        "reduction_steps": stats.steps,
        "orthogonality_defect": stats.orthogonality_defect,
    }

    def _report(reason: Optional[str], f: Optional[RingElement] = None, c=None) -> DecodeReport:
        if reason is not None:
            logger.debug(f"Power(l={l}) failure: {reason}")
        return DecodeReport(
            decoder=DecoderKind.POWER.value,
            status=DecodeStatus.FAILURE if reason else DecodeStatus.SUCCESS,
            candidates=[] if f is None else [Candidate(message=f, codeword=[int(v) for v in c])],
            timings=timer.as_dict(),
            counters=counters,
            failure_reason=reason,
        )

    if locator_order + code.m >= code.n:
        return _report(BEYOND_LIFT_RADIUS)

    f, reason, delta = _recover(sol, code, converter, timer)
    counters["locator_valuation"] = delta
    if f is None:
        return _report(reason)

    c = encode(code, f)
    distance = hamming_distance(c, r)
    counters["distance"] = distance
    if not distance <= locator_order <= distance + code.g:
        return _report(DISTANCE_CHECK)

    differs = np.flatnonzero(c.view(np.ndarray) != r.view(np.ndarray))
    if differs.size and code.curve.evaluate_all(sol.lam)[differs].view(np.ndarray).any():
        return _report(LOCATOR_INCONSISTENT)
    return _report(None, f, c)


class PowerDecoder(BaseDecoder):
    """Unique decoder beyond half the minimum distance, with occasional failures."""

    name: str = DecoderKind.POWER.value
    description: str = "Power decoding by weighted module minimisation"
    l: int = 1

    @classmethod
    def build(cls, code: HermitianCode, l: int = 1, **_) -> PowerDecoder:
        _validate(code, l)
        return cls(code=code, l=l)

    @property
    def params(self):
        return {"l": self.l}

    def decode(self, received) -> DecodeReport:
        return power_decode(self.code, self.l, received)
