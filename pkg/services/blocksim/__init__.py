from services.blocksim.analytic import AnalyticSimulator
from services.blocksim.base import (
    BlockCircuitParams,
    BlockDistribution,
    BlockSimulator,
    multiplier_power,
)
from services.blocksim.sampling import CandidateSet, sample_counts, select_top_candidates
from services.blocksim.statevector import StatevectorSimulator
from utils.error_handler import ConfigurationError

SIMULATORS = {
    'analytic': AnalyticSimulator,
    'statevector': StatevectorSimulator,
}


def get_simulator(backend: str) -> BlockSimulator:
    """Backend by name"""
    if backend not in SIMULATORS:
        raise ConfigurationError(
            "backend", f"unknown backend {backend!r}. Supported: {list(SIMULATORS.keys())}"
        )
    return SIMULATORS[backend]()


def block_distribution_analytic(params: BlockCircuitParams) -> BlockDistribution:
    return AnalyticSimulator().distribution(params)


def block_distribution_statevector(params: BlockCircuitParams) -> BlockDistribution:
    return StatevectorSimulator().distribution(params)
