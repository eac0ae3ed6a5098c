import logging
import sys
from pathlib import Path
from typing import Dict, List, Literal, Optional

import pandas as pd
from pydantic import BaseModel

from config.run_config import RunConfig
from config.settings import settings
from services.blocksim import CandidateSet
from services.stitcher import StitchedCandidate
from services.windows import BlockPlan
from utils.error_handler import ReportWriteError
from utils.formatters import format_phase

logger = logging.getLogger(__name__)

Method = Literal["shor-period", "classical-gcd", "none"]


class PlanRecord(BaseModel):
    index: int
    m: int
    overlap: int
    kappa: int
    window: List[int]

    @classmethod
    def from_plan(cls, plan: BlockPlan) -> "PlanRecord":
        return cls(index=plan.index, m=plan.m, overlap=plan.t, kappa=plan.kappa, window=list(plan.window))


class CountRecord(BaseModel):
    bitstring: str
    count: int


class BlockRecord(BaseModel):
    index: int
    m: int
    overlap: int
    kappa: int
    multiplier: int
    total_shots: int
    exact: bool
    counts: List[CountRecord]
    selected: List[str]

    @classmethod
    def from_run(cls, plan: BlockPlan, multiplier: int, candidate_set: CandidateSet) -> "BlockRecord":
        return cls(
            index=plan.index,
            m=plan.m,
            overlap=plan.t,
            kappa=plan.kappa,
            multiplier=multiplier,
            total_shots=candidate_set.total_shots,
            exact=candidate_set.exact,
            counts=[CountRecord(bitstring=bits, count=count) for bits, count in candidate_set.entries],
            selected=list(candidate_set.selected),
        )


class StitchedRecord(BaseModel):
    bitstring: str
    integer: int
    phase: str  # "numerator/denominator"

    @classmethod
    def from_candidate(cls, candidate: StitchedCandidate) -> "StitchedRecord":
        return cls(bitstring=candidate.b_hat, integer=candidate.y_hat, phase=format_phase(candidate.phi_hat))


class AttemptRecord(BaseModel):
    attempt: int
    base: int
    method: Method
    period: Optional[int] = None
    factor: Optional[int] = None


class OutcomeRecord(BaseModel):
    method: Method
    base: Optional[int] = None
    period: Optional[int] = None
    factor: Optional[int] = None
    cofactor: Optional[int] = None


class FactoringReport(BaseModel):
    """Full provenance of one run; config + seed reproduce it"""
    config: RunConfig
    n_target: int
    plans: List[PlanRecord]
    qubit_budget: Dict[str, int]
    attempts: List[AttemptRecord]
    blocks: List[BlockRecord]
    stitched: List[StitchedRecord]
    outcome: OutcomeRecord
    timings: Optional[Dict[str, float]] = None

    @property
    def found(self) -> bool:
        return self.outcome.factor is not None

    def to_json(self, include_timings: bool = False) -> str:
        """Canonical text: declaration-order keys, exact phases, trailing newline"""
        exclude = None if include_timings else {"timings"}
        return self.model_dump_json(indent=2, exclude=exclude) + "\n"


def emit_report(report: FactoringReport, destination: Optional[Path] = None, include_timings: bool = False):
    """Write the report to a file, or stdout when no destination is given"""
    text = report.to_json(include_timings=include_timings)
    if destination is None:
        sys.stdout.write(text)
        return

    try:
        destination = Path(destination)
        destination.parent.mkdir(parents=True, exist_ok=True)
        with open(destination, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    except OSError as e:
        raise ReportWriteError(str(destination), e.strerror or str(e)) from e
    logger.info(f"Report written to {destination}")


def histogram_frame(block: BlockRecord) -> pd.DataFrame:
    """Two columns: bitstring and count (sampled) or probability (exact mode)"""
    frame = pd.DataFrame(
        [(record.bitstring, record.count) for record in block.counts],
        columns=["bitstring", "count"],
    )
    if block.exact:
        frame["probability"] = frame["count"] / settings.EXACT_MODE_RESOLUTION
        frame = frame[["bitstring", "probability"]]
    return frame


def write_histograms(report: FactoringReport, directory: Path) -> List[Path]:
    """One CSV per block, block_<index>.csv"""
    directory = Path(directory)
    written = []
    try:
        directory.mkdir(parents=True, exist_ok=True)
        for block in report.blocks:
            path = directory / f"block_{block.index}.csv"
            histogram_frame(block).to_csv(path, index=False, float_format="%.9f", lineterminator="\n")
            written.append(path)
    except OSError as e:
        raise ReportWriteError(str(directory), e.strerror or str(e)) from e
    logger.info(f"Wrote {len(written)} histograms to {directory}")
    return written
