import logging

import numpy as np

from services.blocksim.base import BlockSimulator

logger = logging.getLogger(__name__)


def orbit_length(g: int, N: int, limit: int) -> int:
    """Order of g mod N, or limit + 1 if it exceeds limit"""
    value = g % N
    for r in range(1, limit + 1):
        if value == 1:
            return r
        value = (value * g) % N
    return limit + 1


def _sin_squared(numerators: np.ndarray, M: int) -> np.ndarray:
    """sin^2(pi * k / M) for integer k, folded into [0, M/2] so symmetric bins match bit for bit"""
    k = numerators % M
    k = np.minimum(k, M - k)
    return np.sin(np.pi * k / M) ** 2


def _geometric_power(n: int, k: np.ndarray, M: int) -> np.ndarray:
    """|sum_{j<n} exp(-2 pi i j k / M)|^2 for each integer k (Fejer kernel)"""
    if n == 0:
        return np.zeros(k.shape, dtype=float)
    denominator = _sin_squared(k, M)
    resonant = (k % M) == 0
    power = np.empty(k.shape, dtype=float)
    power[resonant] = float(n * n)
    off = ~resonant
    power[off] = _sin_squared(n * k[off], M) / denominator[off]
    return power


class AnalyticSimulator(BlockSimulator):
    """Closed-form measurement law, no statevector.

    With f(x) = g^x mod N the counting outcomes x sharing a value of f are
    exactly the residues x = j mod r_g, so

        P(b) = M^-2 * sum_j |sum_{x = j mod r_g} exp(-2 pi i b x / M)|^2

    and each inner sum is a geometric series in exp(-2 pi i b r_g / M).
    For M = q * r_g + s, s residues have q + 1 terms and r_g - s have q.
    """

    name = "analytic"

    def compute(self, N: int, g: int, m: int) -> np.ndarray:
        M = 1 << m
        r_g = orbit_length(g, N, limit=M)
        if r_g > M:
            # every x gives a distinct work value
            return np.full(M, 1.0 / M)

        q, s = divmod(M, r_g)
        k = (np.arange(M, dtype=np.int64) * r_g) % M
        power = s * _geometric_power(q + 1, k, M) + (r_g - s) * _geometric_power(q, k, M)
        probabilities = power / float(M * M)
        logger.debug(f"analytic N={N} g={g} m={m}: orbit length {r_g}")
        return probabilities
