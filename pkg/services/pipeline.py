import logging
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np
from tenacity import Retrying, retry_if_result, stop_after_attempt

from config.run_config import RunConfig
from services.blocksim import CandidateSet, multiplier_power
from services.recovery import recover_period_and_factor
from services.reporting import (
    AttemptRecord,
    BlockRecord,
    FactoringReport,
    OutcomeRecord,
    PlanRecord,
    StitchedRecord,
)
from services.stitcher import StitchedCandidate, integrate_and_stitch
from services.windows import WindowSchedule, plan_blocks, run_all_blocks, validate_config
from utils.error_handler import SharedFactorFound
from utils.formatters import format_outcome

logger = logging.getLogger(__name__)


@dataclass
class AttemptOutcome:
    attempt: int
    base: int
    method: str
    period: Optional[int] = None
    factor: Optional[int] = None
    candidate_sets: List[CandidateSet] = field(default_factory=list)
    stitched: List[StitchedCandidate] = field(default_factory=list)


class FactoringPipeline:
    """Validate, run blocks, stitch and recover; retry with a fresh base when nothing factors"""

    def __init__(self, config: RunConfig, jobs: Optional[int] = None):
        self.config = config
        self.jobs = jobs
        self.schedule: WindowSchedule = plan_blocks(config.blocks, config.overlaps)
        # base samples for every attempt come from this one stream
        self.master_stream = np.random.default_rng(config.seed)
        self.attempts: List[AttemptOutcome] = []
        self.timings: Dict[str, float] = {}

    def _timed(self, stage: str, started: float):
        self.timings[stage] = round(self.timings.get(stage, 0.0) + time.perf_counter() - started, 6)

    def _attempt(self) -> AttemptOutcome:
        number = len(self.attempts) + 1
        config = self.config if number == 1 else self.config.model_copy(update={"base": None})
        if number > 1:
            logger.warning(f"No factor found, retrying with a fresh base (attempt {number}/{self.config.retries})")

        started = time.perf_counter()
        try:
            config = validate_config(config, rng=self.master_stream, exclude={a.base for a in self.attempts})
        except SharedFactorFound as e:
            logger.info(f"Base {e.base} shares the factor {e.factor} with {self.config.n}")
            outcome = AttemptOutcome(attempt=number, base=e.base, method="classical-gcd", factor=e.factor)
            self.attempts.append(outcome)
            return outcome
        finally:
            self._timed("validate", started)

        started = time.perf_counter()
        candidate_sets = run_all_blocks(config, self.schedule, jobs=self.jobs)
        self._timed("blocks", started)

        started = time.perf_counter()
        stitched = integrate_and_stitch(
            [cs.selected for cs in candidate_sets],
            self.schedule.sizes,
            self.schedule.overlaps,
            config.max_combos,
        )
        self._timed("stitch", started)

        started = time.perf_counter()
        result = recover_period_and_factor(stitched, config.base, config.n)
        self._timed("recover", started)

        outcome = AttemptOutcome(
            attempt=number,
            base=config.base,
            method="shor-period" if result.found else "none",
            period=result.period,
            factor=result.factor,
            candidate_sets=candidate_sets,
            stitched=stitched,
        )
        self.attempts.append(outcome)
        return outcome

    def run(self) -> FactoringReport:
        """Up to `retries` attempts; the report describes the last one"""
        retrying = Retrying(
            stop=stop_after_attempt(self.config.retries),
            retry=retry_if_result(lambda outcome: outcome.factor is None),
            retry_error_callback=lambda state: state.outcome.result(),
        )
        final = retrying(self._attempt)
        logger.info(format_outcome(final.factor, self.config.n, final.period))
        return self.build_report(final)

    def build_report(self, final: AttemptOutcome) -> FactoringReport:
        n = self.config.n
        blocks = [
            BlockRecord.from_run(plan, multiplier_power(final.base, plan.kappa, n), cs)
            for plan, cs in zip(self.schedule, final.candidate_sets)
        ]
        return FactoringReport(
            config=self.config,
            n_target=self.config.n_target,
            plans=[PlanRecord.from_plan(plan) for plan in self.schedule],
            qubit_budget=self.schedule.qubit_budget(self.config.n_target),
            attempts=[
                AttemptRecord(attempt=a.attempt, base=a.base, method=a.method, period=a.period, factor=a.factor)
                for a in self.attempts
            ],
            blocks=blocks,
            stitched=[StitchedRecord.from_candidate(c) for c in final.stitched],
            outcome=OutcomeRecord(
                method=final.method,
                base=final.base,
                period=final.period,
                factor=final.factor,
                cofactor=n // final.factor if final.factor else None,
            ),
            timings=dict(self.timings),
        )


def run_factoring(config: RunConfig, jobs: Optional[int] = None) -> FactoringReport:
    return FactoringPipeline(config, jobs=jobs).run()
