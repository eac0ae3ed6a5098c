import math

import numpy as np
import pytest

from services.blocksim import (
    AnalyticSimulator,
    BlockCircuitParams,
    BlockDistribution,
    CandidateSet,
    StatevectorSimulator,
    block_distribution_analytic,
    block_distribution_statevector,
    get_simulator,
    multiplier_power,
    sample_counts,
    select_top_candidates,
)
from utils.error_handler import ConfigurationError, DomainError


def support_of(dist: BlockDistribution, tol: float = 1e-12) -> dict:
    return {int(b): float(dist.probabilities[b]) for b in dist.support(tol)}


class TestMultiplierPower:
    @pytest.mark.parametrize("a,kappa,N,expected", [(2, 0, 15, 2), (2, 2, 15, 1), (12, 4, 221, 1), (2, 2, 21, 16)])
    def test_values(self, a, kappa, N, expected):
        assert multiplier_power(a, kappa, N) == expected

    def test_not_coprime(self):
        with pytest.raises(DomainError):
            multiplier_power(6, 1, 15)


class TestParams:
    def test_rejects_oversized_block(self):
        with pytest.raises(ConfigurationError):
            BlockCircuitParams(N=15, a=2, kappa=0, m=25)

    def test_n_target(self):
        assert BlockCircuitParams(N=15, a=2, kappa=0, m=3).n_target == 4
        assert BlockCircuitParams(N=221, a=12, kappa=0, m=3).n_target == 8


class TestSupportLaw:
    @pytest.mark.parametrize("backend", ["analytic", "statevector"])
    @pytest.mark.parametrize("kappa,m,expected", [
        (0, 3, {0: 0.25, 2: 0.25, 4: 0.25, 6: 0.25}),
        (1, 4, {0: 0.5, 8: 0.5}),
        (2, 4, {0: 1.0}),
        (4, 5, {0: 1.0}),
    ])
    def test_n15_blocks(self, backend, kappa, m, expected):
        dist = get_simulator(backend).distribution(BlockCircuitParams(N=15, a=2, kappa=kappa, m=m))
        got = support_of(dist)
        assert set(got) == set(expected)
        for outcome, probability in expected.items():
            assert got[outcome] == pytest.approx(probability, abs=1e-12)

    def test_n221_blocks(self):
        uniform4 = support_of(block_distribution_analytic(BlockCircuitParams(N=221, a=12, kappa=2, m=4)))
        assert set(uniform4) == {0b0000, 0b0100, 0b1000, 0b1100}
        point = support_of(block_distribution_statevector(BlockCircuitParams(N=221, a=12, kappa=4, m=3)))
        assert point == pytest.approx({0: 1.0})

    def test_trivial_multiplier(self):
        # 4^2 = 1 mod 15, so kappa=1 gives g=1
        dist = block_distribution_analytic(BlockCircuitParams(N=15, a=4, kappa=1, m=4))
        assert support_of(dist) == pytest.approx({0: 1.0})

    def test_symmetric_bins_match_exactly(self):
        dist = block_distribution_analytic(BlockCircuitParams(N=21, a=2, kappa=0, m=5))
        p = dist.probabilities
        M = len(p)
        for b in range(1, M):
            assert p[b] == p[M - b]

    def test_distribution_is_read_only(self):
        dist = block_distribution_analytic(BlockCircuitParams(N=15, a=2, kappa=0, m=3))
        with pytest.raises(ValueError):
            dist.probabilities[0] = 1.0


def coprime_bases(N):
    return [a for a in range(2, min(N, 30)) if math.gcd(a, N) == 1]


GRID = [
    (N, a, kappa, m)
    for N in (15, 21, 33, 35, 39, 55, 221)
    for a in coprime_bases(N)
    for kappa in range(0, 7)
    for m in range(1, 6)
]


class TestBackendEquivalence:
    @pytest.mark.parametrize("N,a,kappa,m", GRID)
    def test_analytic_matches_statevector(self, N, a, kappa, m):
        params = BlockCircuitParams(N=N, a=a, kappa=kappa, m=m)
        analytic = AnalyticSimulator().distribution(params).probabilities
        statevector = StatevectorSimulator().distribution(params).probabilities
        assert analytic.sum() == pytest.approx(1.0, abs=1e-12)
        np.testing.assert_allclose(analytic, statevector, atol=1e-12, rtol=0)

    def test_statevector_size_guard(self):
        with pytest.raises(ConfigurationError):
            StatevectorSimulator().distribution(BlockCircuitParams(N=221, a=12, kappa=0, m=17))

    def test_unknown_backend(self):
        with pytest.raises(ConfigurationError):
            get_simulator("qasm")


class TestSampling:
    def test_point_mass(self):
        dist = BlockDistribution(m=4, probabilities=np.eye(16)[0])
        assert sample_counts(dist, 100, np.random.default_rng(0)) == [("0000", 100)]

    def test_exact_mode_uniform(self):
        dist = block_distribution_analytic(BlockCircuitParams(N=15, a=2, kappa=0, m=3))
        entries = sample_counts(dist, 0, np.random.default_rng(0))
        assert entries == [("000", 250000000), ("010", 250000000), ("100", 250000000), ("110", 250000000)]

    def test_exact_mode_ignores_stream(self):
        dist = block_distribution_analytic(BlockCircuitParams(N=21, a=2, kappa=0, m=4))
        assert sample_counts(dist, 0, np.random.default_rng(1)) == sample_counts(dist, 0, np.random.default_rng(2))

    def test_sampled_support(self):
        dist = block_distribution_analytic(BlockCircuitParams(N=15, a=2, kappa=0, m=3))
        entries = sample_counts(dist, 100, np.random.default_rng(7))
        assert sum(count for _, count in entries) == 100
        assert {bits for bits, _ in entries} <= {"000", "010", "100", "110"}

    def test_frequencies_converge(self):
        shots = 10 ** 6
        dist = block_distribution_analytic(BlockCircuitParams(N=21, a=2, kappa=0, m=4))
        counts = dict(sample_counts(dist, shots, np.random.default_rng(2024)))
        for outcome, p in enumerate(dist.probabilities):
            observed = counts.get(format(outcome, "04b"), 0) / shots
            if p < 1e-12:
                assert observed == 0
                continue
            assert abs(observed - p) <= 5 * math.sqrt(p * (1 - p) / shots)

    def test_seeded_sampling_is_reproducible(self):
        dist = block_distribution_analytic(BlockCircuitParams(N=21, a=2, kappa=0, m=4))
        first = sample_counts(dist, 500, np.random.default_rng([7, 1]))
        second = sample_counts(dist, 500, np.random.default_rng([7, 1]))
        assert first == second


class TestSelection:
    def test_by_count(self):
        entries = [("110", 29), ("010", 27), ("000", 24), ("100", 20)]
        assert select_top_candidates(entries, 2) == ["110", "010"]

    def test_tie_break_ascending(self):
        entries = [("110", 25), ("100", 25), ("010", 25), ("000", 25)]
        assert select_top_candidates(entries, 2) == ["000", "010"]

    def test_fewer_than_k(self):
        assert select_top_candidates([("0000", 100)], 4) == ["0000"]

    def test_n21_exact_ranking(self):
        dist = block_distribution_analytic(BlockCircuitParams(N=21, a=2, kappa=0, m=4))
        entries = sample_counts(dist, 0, np.random.default_rng(0))
        assert select_top_candidates(entries, 4) == ["0000", "1000", "0011", "0101"]

    def test_describe(self):
        candidate_set = CandidateSet(
            block_index=1, entries=[("110", 29), ("010", 27)], total_shots=100, selected=["110"]
        )
        assert candidate_set.describe() == "block 1: 110 (29.0%)"
