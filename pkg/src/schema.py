from enum import Enum
from typing import Any, Dict, List, Literal, Optional

import galois
from pydantic import BaseModel, Field, model_validator


class DecoderKind(str, Enum):
    """Decoding algorithms"""

    GS = "gs"
    POWER = "power"


DECODER_VALUES = tuple(kind.value for kind in DecoderKind)


class DecodeStatus(str, Enum):
    """Outcome of one decoding attempt"""

    SUCCESS = "success"
    FAILURE = "failure"


class Phase(str, Enum):
    """Timing categories of a decode"""

    MODULE_MINIMISATION = "module_minimisation"
    DIVISION_ROOT_FINDING = "division_root_finding"
    BUILD_MATRIX = "build_matrix"
    CONVERSIONS = "conversions"
    PRECOMPUTATION = "precomputation"

    @property
    def label(self) -> str:
        return {
            Phase.MODULE_MINIMISATION: "Module minimisation",
            Phase.DIVISION_ROOT_FINDING: "Division / Root-finding",
            Phase.BUILD_MATRIX: "Build matrix",
            Phase.CONVERSIONS: "Conversions",
            Phase.PRECOMPUTATION: "Precomputation",
        }[self]


PHASE_VALUES = tuple(phase.value for phase in Phase)


class Candidate(BaseModel):
    """A decoded message together with its codeword"""

    message: Any = Field(..., description="RingElement of order at most m")
    codeword: List[int] = Field(..., description="Evaluations in canonical place order")

    class Config:
        arbitrary_types_allowed = True


class DecodeReport(BaseModel):
    """What a decoder returns for one received word"""

    decoder: str
    status: DecodeStatus = DecodeStatus.FAILURE
    candidates: List[Candidate] = Field(default_factory=list)
    timings: Dict[str, float] = Field(default_factory=dict)
    counters: Dict[str, int] = Field(default_factory=dict)
    failure_reason: Optional[str] = None

    @property
    def success(self) -> bool:
        return self.status == DecodeStatus.SUCCESS

    @property
    def messages(self) -> List[Any]:
        return [c.message for c in self.candidates]

    def contains(self, message) -> bool:
        return any(m == message for m in self.messages)


def _is_prime_power(q: int) -> bool:
    return q >= 2 and galois.is_prime_power(q)


class SimConfig(BaseModel):
    """One Monte-Carlo campaign (also the input of a bench)"""

    q: int
    m: int
    decoder: DecoderKind
    s: int = Field(1, description="GS multiplicity")
    l: int = Field(1, description="GS list size or powering degree")
    tau: Optional[int] = Field(None, description="GS radius; defaults to the exact tau_GS")
    weights: List[int] = Field(default_factory=list)
    trials: int = Field(1000, ge=0)
    seed: int = Field(0, ge=0)
    out: Optional[str] = Field(None, description="Output stem; timestamped name when unset")
    format: Literal["csv", "json", "both"] = "both"
    workers: Optional[int] = Field(None, ge=1, description="Overrides [simulation].workers")
    companion: Optional[DecoderKind] = Field(
        None, description="Second decoder run on the same received words"
    )

    @model_validator(mode="after")
    def check_parameters(self) -> "SimConfig":
        q, m = self.q, self.m
        if not _is_prime_power(q):
            raise ValueError(f"q must be a prime power, got {q}")
        n, g = q**3, q * (q - 1) // 2
        if not 2 * g - 2 < m < n:
            raise ValueError(f"m must satisfy {2 * g - 2} < m < {n}, got {m}")
        for w in self.weights:
            if not 0 <= w <= n:
                raise ValueError(f"error weight {w} outside [0, {n}]")
        for kind in {self.decoder, self.companion} - {None}:
            if kind == DecoderKind.GS:
                if not 1 <= self.s <= self.l:
                    raise ValueError(f"GS needs 1 <= s <= l, got s={self.s}, l={self.l}")
                if self.tau is not None and self.s * (n - self.tau) - self.l * m <= 0:
                    raise ValueError("GS needs s(n - tau) - l*m > 0")
            elif self.l < 1 or self.l * m >= n:
                raise ValueError(f"Power decoding needs 1 <= l and l*m < n, got l={self.l}")
        return self


class TrialOutcome(BaseModel):
    """Raw result of one simulated transmission"""

    weight: int
    trial: int
    trial_seed: int
    success: bool
    companion_success: Optional[bool] = None
    list_size: int = 0
    locator_order: Optional[int] = None
    failure_reason: Optional[str] = None
    timings: Dict[str, float] = Field(default_factory=dict)


class SimRow(BaseModel):
    """Aggregate over all trials of one error weight"""

    q: int
    m: int
    alg: str
    s: int
    l: int
    weight: int
    trials: int
    successes: int
    rate: float
    companion_successes: Optional[int] = None
    mean_timings: Dict[str, float] = Field(default_factory=dict)


class SimReport(BaseModel):
    config: SimConfig
    rows: List[SimRow] = Field(default_factory=list)
    outcomes: List[TrialOutcome] = Field(default_factory=list)
    metadata: Dict[str, Any] = Field(default_factory=dict)


class BenchRow(BaseModel):
    """Median phase timings over successful decodes at one error weight"""

    weight: int
    runs: int
    attempts: int
    median_timings: Dict[str, float] = Field(default_factory=dict)
    total: float = 0.0

    @property
    def dominant_phase(self) -> Optional[str]:
        if not self.median_timings:
            return None
        return max(self.median_timings, key=self.median_timings.get)


class BenchReport(BaseModel):
    config: SimConfig
    rows: List[BenchRow] = Field(default_factory=list)
    metadata: Dict[str, Any] = Field(default_factory=dict)
