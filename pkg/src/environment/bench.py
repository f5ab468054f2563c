from datetime import datetime
from typing import Dict, List, Optional

import numpy as np
from pydantic import Field

from src import __version__
from src.config import config
from src.environment.base import BaseEnvironment
from src.environment.simulation import get_decoder, run_trial
from src.logger import logger
from src.schema import PHASE_VALUES, BenchReport, BenchRow


class BenchEnvironment(BaseEnvironment):
    """Median per-phase decode times over successful seeded instances"""

    name: str = Field(default="bench_environment")
    description: str = Field(default="Timing breakdown by decoding phase")
    runs: Optional[int] = Field(default=None, description="Successful decodes per weight")
    max_attempts: Optional[int] = Field(default=None, description="Attempt cap per weight")

    async def initialize(self) -> None:
        await super().initialize()
        cfg = self.sim_config
        get_decoder(cfg.decoder, cfg.q, cfg.m, cfg.s, cfg.l, cfg.tau)
        self.runs = self.runs or config.simulation.bench_runs
        self.max_attempts = self.max_attempts or config.simulation.bench_max_attempts

    async def run(self, **kwargs) -> BenchReport:
        cfg = self.sim_config
        rows: List[BenchRow] = []
        for weight in cfg.weights:
            timings: List[Dict[str, float]] = []
            attempts = 0
            while len(timings) < self.runs and attempts < self.max_attempts:
                outcome = run_trial(cfg, weight, attempts)
                attempts += 1
                if outcome.success:
                    timings.append(outcome.timings)
                await self.report_progress(
                    {
                        "type": "bench_progress",
                        "weight": weight,
                        "successes": len(timings),
                        "attempts": attempts,
                    }
                )

            if len(timings) < self.runs:
                logger.warning(
                    f"weight {weight}: only {len(timings)} successful decodes in {attempts} attempts"
                )
            medians = {
                phase: float(np.median([t.get(phase, 0.0) for t in timings])) if timings else 0.0
                for phase in PHASE_VALUES
            }
            total = float(np.median([sum(t.values()) for t in timings])) if timings else 0.0
            rows.append(
                BenchRow(
                    weight=weight,
                    runs=len(timings),
                    attempts=attempts,
                    median_timings=medians,
                    total=total,
                )
            )
            logger.info(f"weight {weight}: median total {total:.3f}s over {len(timings)} runs")

        return BenchReport(
            config=cfg,
            rows=rows,
            metadata={
                "seed": cfg.seed,
                "version": __version__,
                "created_at": datetime.now().isoformat(),
            },
        )
