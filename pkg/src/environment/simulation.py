import asyncio
import multiprocessing
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import Field

from src import __version__
from src.codec import HermitianCode, apply_errors, encode, random_message
from src.decoder.base import BaseDecoder, DecoderFactory
from src.decoder.gs import tau_gs_exact
from src.environment.base import BaseEnvironment
from src.logger import logger
from src.schema import PHASE_VALUES, DecoderKind, SimConfig, SimReport, SimRow, TrialOutcome


# trial workers; module level so a process pool can pickle them


@lru_cache(maxsize=8)
def get_code(q: int, m: int) -> HermitianCode:
    return HermitianCode(q, m)


@lru_cache(maxsize=16)
def get_decoder(
    kind: DecoderKind, q: int, m: int, s: int, l: int, tau: Optional[int]
) -> BaseDecoder:
    return DecoderFactory.create(kind, get_code(q, m), s=s, l=l, tau=tau)


@lru_cache(maxsize=64)
def _default_gs_radius(q: int, m: int, s: int, l: int) -> int:
    return tau_gs_exact(get_code(q, m), s, l)


def list_radius(cfg: SimConfig, kind: DecoderKind, weight: int) -> Optional[int]:
    """Radius the list is filtered at for one campaign weight.

    An explicit tau wins. Otherwise GS keeps candidates within max(tau_GS, weight),
    capped at the largest tau with s(n - tau) - l*m > 0, so campaigns above tau_GS
    still find the sent word in the list.
    """
    if cfg.tau is not None or kind != DecoderKind.GS:
        return cfg.tau
    code = get_code(cfg.q, cfg.m)
    largest = code.n - (cfg.l * cfg.m) // cfg.s - 1
    return min(max(_default_gs_radius(cfg.q, cfg.m, cfg.s, cfg.l), weight), largest)


def trial_stream(seed: int, weight: int, trial: int) -> Tuple[int, np.random.Generator]:
    """Independent RNG per (weight, trial), derived from the master seed."""
    seq = np.random.SeedSequence(seed, spawn_key=(weight, trial))
    return int(seq.generate_state(1)[0]), np.random.default_rng(seq)


def run_trial(cfg: SimConfig, weight: int, trial: int) -> TrialOutcome:
    """Encode a random message, add `weight` errors and decode."""
    code = get_code(cfg.q, cfg.m)
    trial_seed, rng = trial_stream(cfg.seed, weight, trial)
    message = random_message(code, rng)
    received, _ = apply_errors(encode(code, message), weight, rng)

    report = get_decoder(
        cfg.decoder, cfg.q, cfg.m, cfg.s, cfg.l, list_radius(cfg, cfg.decoder, weight)
    ).decode(received)
    companion_success = None
    if cfg.companion is not None:
        companion = get_decoder(
            cfg.companion, cfg.q, cfg.m, cfg.s, cfg.l, list_radius(cfg, cfg.companion, weight)
        )
        companion_success = companion.decode(received).contains(message)

    return TrialOutcome(
        weight=weight,
        trial=trial,
        trial_seed=trial_seed,
        success=report.contains(message),
        companion_success=companion_success,
        list_size=len(report.candidates),
        locator_order=report.counters.get("locator_order"),
        failure_reason=report.failure_reason,
        timings=report.timings,
    )


def aggregate(cfg: SimConfig, outcomes: List[TrialOutcome]) -> List[SimRow]:
    """One row per weight; independent of the order outcomes arrived in."""
    by_weight: Dict[int, List[TrialOutcome]] = defaultdict(list)
    for outcome in outcomes:
        by_weight[outcome.weight].append(outcome)

    rows = []
    for weight in cfg.weights:
        group = by_weight.get(weight, [])
        if not group:
            continue
        trials = len(group)
        successes = sum(o.success for o in group)
        companion = (
            sum(bool(o.companion_success) for o in group) if cfg.companion is not None else None
        )
        means = {
            phase: float(np.mean([o.timings.get(phase, 0.0) for o in group]))
            for phase in PHASE_VALUES
        }
        rows.append(
            SimRow(
                q=cfg.q,
                m=cfg.m,
                alg=cfg.decoder.value,
                s=cfg.s,
                l=cfg.l,
                weight=weight,
                trials=trials,
                successes=successes,
                rate=successes / trials,
                companion_successes=companion,
                mean_timings=means,
            )
        )
    return rows


class SimulationEnvironment(BaseEnvironment):
    """Monte-Carlo estimate of the decoding success probability per error weight"""

    name: str = Field(default="simulation_environment")
    description: str = Field(default="Success-probability campaign")
    outcomes: List[TrialOutcome] = Field(default_factory=list)

    async def initialize(self) -> None:
        await super().initialize()
        cfg = self.sim_config
        # build code and decoder once so parameter errors surface before any trial
        get_decoder(cfg.decoder, cfg.q, cfg.m, cfg.s, cfg.l, cfg.tau)
        if cfg.companion is not None:
            get_decoder(cfg.companion, cfg.q, cfg.m, cfg.s, cfg.l, cfg.tau)

    async def run(self, **kwargs) -> SimReport:
        cfg = self.sim_config
        jobs = [(w, t) for w in cfg.weights for t in range(cfg.trials)]
        total = len(jobs)
        logger.info(f"Running {total} trials over weights {cfg.weights} with {self.workers} worker(s)")

        self.outcomes = []
        if self.workers == 1 or total <= 1:
            for weight, trial in jobs:
                self.outcomes.append(run_trial(cfg, weight, trial))
                await self._progress(total)
        else:
            loop = asyncio.get_running_loop()
            # spawn: the parent already runs the numba OpenMP runtime, which does not survive fork
            context = multiprocessing.get_context("spawn")
            with ProcessPoolExecutor(max_workers=self.workers, mp_context=context) as pool:
                futures = [loop.run_in_executor(pool, run_trial, cfg, w, t) for w, t in jobs]
                for future in asyncio.as_completed(futures):
                    self.outcomes.append(await future)
                    await self._progress(total)

        self.outcomes.sort(key=lambda o: (o.weight, o.trial))
        rows = aggregate(cfg, self.outcomes)
        for row in rows:
            logger.info(f"weight {row.weight}: {row.successes}/{row.trials} ({row.rate:.1%})")
        return SimReport(
            config=cfg,
            rows=rows,
            outcomes=self.outcomes,
            metadata={
                "seed": cfg.seed,
                "version": __version__,
                "created_at": datetime.now().isoformat(),
            },
        )

    async def _progress(self, total: int) -> None:
        await self.report_progress(
            {"type": "trial_progress", "completed": len(self.outcomes), "total": total}
        )
