import logging

import numpy as np

from config.settings import settings
from services.blocksim.base import BlockCircuitParams, BlockSimulator, target_width
from utils.error_handler import ConfigurationError

logger = logging.getLogger(__name__)


def multiplication_permutation(multiplier: int, N: int, dim: int) -> np.ndarray:
    """perm[w] = w * multiplier mod N for w < N; states w >= N are fixed points"""
    perm = np.arange(dim, dtype=np.int64)
    w = np.arange(N, dtype=np.int64)
    perm[:N] = (w * multiplier) % N
    return perm


class StatevectorSimulator(BlockSimulator):
    """Dense simulation of the literal block circuit.

    State is held as a (2^m, 2^n_target) complex array indexed
    [counting value, work value]; the counting register is LSB-indexed, so
    qubit j is bit j of the row index.
    """

    name = "statevector"

    def check_limits(self, params: BlockCircuitParams):
        qubits = params.m + params.n_target
        if qubits > settings.STATEVECTOR_MAX_QUBITS:
            raise ConfigurationError(
                "backend",
                f"statevector needs {qubits} qubits (m={params.m} + n_target={params.n_target}), "
                f"limit is {settings.STATEVECTOR_MAX_QUBITS}; use the analytic backend",
            )

    def compute(self, N: int, g: int, m: int) -> np.ndarray:
        M = 1 << m
        dim = 1 << target_width(N)
        rows = np.arange(M)

        # H^m on counting, work register prepared in |1>
        state = np.zeros((M, dim), dtype=np.complex128)
        state[:, 1] = 1.0 / np.sqrt(M)

        multiplier = g % N
        for j in range(m):
            # controlled U^(2^(kappa + j)), control = counting qubit j
            perm = multiplication_permutation(multiplier, N, dim)
            controlled = ((rows >> j) & 1) == 1
            block = state[controlled]
            permuted = np.empty_like(block)
            permuted[:, perm] = block
            state[controlled] = permuted
            multiplier = (multiplier * multiplier) % N

        # QFT^-1 on counting: amplitude_b = M^-1/2 sum_x exp(-2 pi i x b / M) amplitude_x
        state = np.fft.fft(state, axis=0) / np.sqrt(M)

        probabilities = np.sum(np.abs(state) ** 2, axis=1)
        logger.debug(f"statevector N={N} g={g} m={m}: norm={probabilities.sum():.15f}")
        return probabilities
