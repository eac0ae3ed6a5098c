import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Collection, Dict, Iterator, List, Optional, Tuple

import numpy as np

from config.run_config import RunConfig
from config.settings import settings
from services.blocksim import (
    BlockCircuitParams,
    CandidateSet,
    get_simulator,
    sample_counts,
    select_top_candidates,
)
from services.validation import RunInputValidator
from utils.error_handler import ConfigurationError, SharedFactorFound
from utils.numtheory import gcd, sample_coprime_base

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BlockPlan:
    index: int  # 1-based
    m: int
    t: int  # overlap with the left neighbour
    kappa: int  # exponent offset

    @property
    def window(self) -> Tuple[int, int]:
        """1-indexed phase bit positions measured by this block"""
        return self.kappa + 1, self.kappa + self.m


@dataclass(frozen=True)
class WindowSchedule:
    """Ordered block plans with derived register sizes"""
    plans: Tuple[BlockPlan, ...]

    def __iter__(self) -> Iterator[BlockPlan]:
        return iter(self.plans)

    def __len__(self) -> int:
        return len(self.plans)

    def __getitem__(self, position: int) -> BlockPlan:
        return self.plans[position]

    @property
    def sizes(self) -> List[int]:
        return [plan.m for plan in self.plans]

    @property
    def overlaps(self) -> List[int]:
        return [plan.t for plan in self.plans]

    @property
    def n_total(self) -> int:
        """Stitched bitstring length, sum(m_i - t_i)"""
        return sum(plan.m - plan.t for plan in self.plans)

    @property
    def m_max(self) -> int:
        return max(self.sizes)

    def qubit_budget(self, n_target: int) -> Dict[str, int]:
        """Per-block register sizes next to a single-register phase estimation"""
        return {
            "n_target": n_target,
            "m_max": self.m_max,
            "max_block_qubits": self.m_max + n_target,
            "n_total": self.n_total,
            "standard_counting_qubits": 2 * n_target + 1,
        }


def plan_blocks(m: List[int], t: List[int]) -> WindowSchedule:
    """Exponent offsets: kappa_1 = 0, kappa_{i+1} = kappa_i + m_i - t_{i+1}"""
    ok, message = RunInputValidator.validate_block_sizes(m, settings.MAX_BLOCK_SIZE)
    if not ok:
        raise ConfigurationError("blocks", message)
    ok, message = RunInputValidator.validate_overlaps(m, t)
    if not ok:
        raise ConfigurationError("overlaps", message)

    plans = []
    kappa = 0
    for i, (m_i, t_i) in enumerate(zip(m, t)):
        if i > 0:
            kappa += m[i - 1] - t_i
        plans.append(BlockPlan(index=i + 1, m=m_i, t=t_i, kappa=kappa))

    schedule = WindowSchedule(plans=tuple(plans))
    logger.info(f"Planned {len(schedule)} blocks, offsets {[p.kappa for p in schedule]}, n_total={schedule.n_total}")
    return schedule


def validate_config(
    config: RunConfig, rng: Optional[np.random.Generator] = None, exclude: Collection[int] = ()
) -> RunConfig:
    """Check every input rule and fix the base.

    An absent base is sampled from `rng` (default: the seed's master stream),
    redrawing while it falls in `exclude` and untried bases remain.
    A base sharing a divisor with N raises SharedFactorFound, which callers
    treat as a classical success rather than an error.
    """
    ok, message = RunInputValidator.validate_modulus(config.n)
    if not ok:
        raise ConfigurationError("n", message)

    plan_blocks(config.blocks, config.overlaps)

    if config.base is None:
        stream = rng if rng is not None else np.random.default_rng(config.seed)
        tried = set(exclude)
        sample = sample_coprime_base(config.n, stream)
        # draws come from [2, N-2]
        while sample.base in tried and len(tried) < config.n - 3:
            sample = sample_coprime_base(config.n, stream)
        if sample.shared_factor is not None:
            raise SharedFactorFound(sample.base, sample.shared_factor)
        logger.info(f"Sampled base a={sample.base} for N={config.n}")
        return config.model_copy(update={"base": sample.base})

    ok, message = RunInputValidator.validate_base(config.base, config.n)
    if not ok:
        raise ConfigurationError("base", message)
    shared = gcd(config.base, config.n)
    if shared != 1:
        raise SharedFactorFound(config.base, shared)
    return config


def block_stream(seed: int, block_index: int) -> np.random.Generator:
    """Per-block substream, a pure function of (seed, block index)"""
    return np.random.default_rng([seed, block_index])


def run_block(config: RunConfig, plan: BlockPlan) -> CandidateSet:
    """Distribution, shots and top-k selection for one block"""
    simulator = get_simulator(config.backend)
    params = BlockCircuitParams(N=config.n, a=config.base, kappa=plan.kappa, m=plan.m)
    dist = simulator.distribution(params)

    entries = sample_counts(dist, config.shots, block_stream(config.seed, plan.index))
    exact = config.shots == 0
    candidate_set = CandidateSet(
        block_index=plan.index,
        entries=entries,
        total_shots=settings.EXACT_MODE_RESOLUTION if exact else config.shots,
        exact=exact,
        selected=select_top_candidates(entries, config.top_k),
    )
    logger.info(f"Finished {candidate_set.describe()}")
    return candidate_set


def run_all_blocks(config: RunConfig, plans: WindowSchedule, jobs: Optional[int] = None) -> List[CandidateSet]:
    """Run every block, possibly concurrently; results come back in block order"""
    if config.base is None:
        raise ConfigurationError("base", "run_all_blocks needs a validated config")
    workers = jobs or len(plans)
    if workers <= 1:
        return [run_block(config, plan) for plan in plans]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(lambda plan: run_block(config, plan), plans))
