import logging
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from config.settings import settings
from services.blocksim.base import BlockDistribution
from utils.bitstrings import to_bits, to_int
from utils.formatters import format_percent

logger = logging.getLogger(__name__)

CountEntry = Tuple[str, int]


def rank_entries(entries: List[CountEntry]) -> List[CountEntry]:
    """Descending count, ties by ascending integer value"""
    return sorted(entries, key=lambda entry: (-entry[1], to_int(entry[0])))


def sample_counts(dist: BlockDistribution, shots: int, stream: np.random.Generator) -> List[CountEntry]:
    """Multinomial shot counts; shots == 0 gives exact mode (probabilities scaled to a fixed resolution)"""
    if shots < 0:
        raise ValueError(f"shots must be >= 0, got {shots}")

    if shots == 0:
        counts = np.rint(dist.probabilities * settings.EXACT_MODE_RESOLUTION).astype(np.int64)
    else:
        probabilities = np.clip(dist.probabilities, 0.0, None)
        counts = stream.multinomial(shots, probabilities / probabilities.sum())

    entries = [
        (to_bits(int(outcome), dist.m), int(counts[outcome]))
        for outcome in np.flatnonzero(counts)
    ]
    return rank_entries(entries)


def select_top_candidates(entries: List[CountEntry], k: int) -> List[str]:
    """First k bitstrings of a ranked entry list"""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return [bits for bits, _ in rank_entries(entries)[:k]]


@dataclass
class CandidateSet:
    """Ranked outcomes of one block plus the top-k selection fed to stitching"""
    block_index: int
    entries: List[CountEntry]
    total_shots: int
    exact: bool = False
    selected: List[str] = field(default_factory=list)

    def describe(self) -> str:
        shown = ", ".join(
            f"{bits} ({format_percent(count, self.total_shots)})"
            for bits, count in self.entries
            if bits in self.selected
        )
        return f"block {self.block_index}: {shown}"
