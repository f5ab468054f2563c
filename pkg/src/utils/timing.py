"""Per-phase wall-clock accounting for decodes."""

import time
from collections import defaultdict
from contextlib import contextmanager
from typing import Dict, Iterator

from src.schema import Phase


class PhaseTimer:
    """Accumulates elapsed seconds per ``Phase``."""

    def __init__(self):
        self._totals: Dict[Phase, float] = defaultdict(float)

    @contextmanager
    def phase(self, phase: Phase) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            self._totals[phase] += time.perf_counter() - start

    def elapsed(self, phase: Phase) -> float:
        return self._totals.get(phase, 0.0)

    @property
    def total(self) -> float:
        return sum(self._totals.values())

    def as_dict(self) -> Dict[str, float]:
        return {phase.value: self._totals.get(phase, 0.0) for phase in Phase}
