import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from threading import Lock

import numpy as np
from cachetools import LRUCache, cached

from config.settings import settings
from utils.error_handler import ConfigurationError, DomainError

logger = logging.getLogger(__name__)


def multiplier_power(a: int, kappa: int, N: int) -> int:
    """a^(2^kappa) mod N by kappa repeated squarings"""
    if math.gcd(a, N) != 1:
        raise DomainError(f"base {a} is not coprime to {N}")
    g = a % N
    for _ in range(kappa):
        g = (g * g) % N
    return g


def target_width(N: int) -> int:
    """ceil(log2 N) work qubits"""
    return (N - 1).bit_length()


@dataclass(frozen=True)
class BlockCircuitParams:
    """Inputs of one windowed QPE block"""
    N: int
    a: int
    kappa: int
    m: int

    def __post_init__(self):
        if self.N < 3:
            raise ConfigurationError("n", f"modulus must be >= 3, got {self.N}")
        if math.gcd(self.a, self.N) != 1:
            raise DomainError(f"base {self.a} is not coprime to {self.N}")
        if self.kappa < 0:
            raise ConfigurationError("kappa", f"must be >= 0, got {self.kappa}")
        if not 1 <= self.m <= settings.MAX_BLOCK_SIZE:
            raise ConfigurationError(
                "blocks", f"block size {self.m} outside [1, {settings.MAX_BLOCK_SIZE}]"
            )

    @property
    def n_target(self) -> int:
        return target_width(self.N)

    @property
    def multiplier(self) -> int:
        return multiplier_power(self.a, self.kappa, self.N)


@dataclass(frozen=True)
class BlockDistribution:
    """Outcome law of the counting register, indexed by MSB-first integer value"""
    m: int
    probabilities: np.ndarray

    def __post_init__(self):
        if self.probabilities.shape != (1 << self.m,):
            raise ValueError(f"expected {1 << self.m} probabilities, got {self.probabilities.shape}")
        self.probabilities.setflags(write=False)

    def support(self, threshold: float = 1e-12) -> np.ndarray:
        return np.flatnonzero(self.probabilities > threshold)


class BlockSimulator(ABC):
    """Abstract base class for block measurement-law backends"""

    name: str = "abstract"

    def distribution(self, params: BlockCircuitParams) -> BlockDistribution:
        """Distribution of one block, memoised on (backend, N, g, m)"""
        self.check_limits(params)
        g = params.multiplier
        probabilities = _cached_probabilities(self, params.N, g, params.m)
        logger.debug(
            f"{self.name} block N={params.N} a={params.a} kappa={params.kappa} "
            f"m={params.m} g={g}: support={np.count_nonzero(probabilities > 1e-12)}"
        )
        return BlockDistribution(m=params.m, probabilities=probabilities)

    def check_limits(self, params: BlockCircuitParams):
        """Backend-specific size guard"""
        pass

    @abstractmethod
    def compute(self, N: int, g: int, m: int) -> np.ndarray:
        """Probabilities of the 2^m outcomes when the block multiplier is g"""
        pass


_distribution_cache = LRUCache(maxsize=settings.DISTRIBUTION_CACHE_SIZE)


@cached(_distribution_cache, key=lambda simulator, N, g, m: (simulator.name, N, g, m), lock=Lock())
def _cached_probabilities(simulator: BlockSimulator, N: int, g: int, m: int) -> np.ndarray:
    probabilities = simulator.compute(N, g, m)
    probabilities.setflags(write=False)
    return probabilities
