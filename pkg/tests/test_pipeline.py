import pytest

from services.pipeline import FactoringPipeline, run_factoring


def stitched_bits(report):
    return {record.bitstring for record in report.stitched}


class TestWorkedRuns:
    def test_n15_four_blocks(self, make_config):
        report = run_factoring(make_config())
        # exact-mode ties resolve to the smaller outcome, so block 1 keeps 000 and 010
        assert stitched_bits(report) == {"000000000", "010000000"}
        assert report.outcome.method == "shor-period"
        assert report.outcome.period == 4
        assert report.outcome.factor in {3, 5}
        assert report.outcome.factor * report.outcome.cofactor == 15

    def test_n15_two_blocks_contains_three_quarters(self, make_config):
        report = run_factoring(make_config(blocks=[3, 4], overlaps=[0, 2], top_k=4, max_combos=16))
        assert "11000" in stitched_bits(report)
        three_quarters = next(r for r in report.stitched if r.bitstring == "11000")
        assert (three_quarters.integer, three_quarters.phase) == (24, "3/4")
        assert report.outcome.factor in {3, 5}

    def test_n15_zero_overlap(self, make_config):
        report = run_factoring(make_config(blocks=[3, 3], overlaps=[0, 0], top_k=4, max_combos=4))
        assert [r.bitstring for r in report.stitched] == ["000000", "010000", "100000", "110000"]
        assert report.outcome.factor in {3, 5}

    def test_n221(self, make_config):
        config = make_config(n=221, base=12, blocks=[3, 3, 4, 3], overlaps=[0, 2, 2, 2], top_k=4, max_combos=16)
        report = run_factoring(config)
        assert {r.integer for r in report.stitched} == {0, 8, 16, 24}
        assert report.outcome.period == 16
        assert report.outcome.factor in {13, 17}
        assert report.n_target == 8

    def test_n221_wider_selection_reaches_seven_sixteenths(self, make_config):
        config = make_config(n=221, base=12, blocks=[3, 3, 4, 3], overlaps=[0, 2, 2, 2], top_k=8, max_combos=16)
        report = run_factoring(config)
        assert len(report.stitched) == 16
        assert "0111000" in stitched_bits(report)
        assert report.outcome.period == 16

    def test_n21_nonzero_carries(self, make_config):
        config = make_config(n=21, base=2, blocks=[4, 4, 4], overlaps=[0, 2, 2], top_k=4, max_combos=32)
        report = run_factoring(config)
        assert {r.integer for r in report.stitched} == {0, 128, 85, 43}
        assert report.outcome.period == 6
        assert report.outcome.factor in {3, 7}

    def test_block_records(self, make_config):
        report = run_factoring(make_config())
        assert [b.kappa for b in report.blocks] == [0, 1, 2, 4]
        assert [b.multiplier for b in report.blocks] == [2, 4, 1, 1]
        assert report.blocks[0].selected == ["000", "010"]
        assert report.blocks[0].exact


class TestClassicalShortcut:
    def test_shared_factor_base(self, make_config):
        report = run_factoring(make_config(base=6))
        assert report.outcome.method == "classical-gcd"
        assert report.outcome.factor == 3
        assert report.blocks == []
        assert report.stitched == []
        assert len(report.attempts) == 1


class TestRetries:
    def test_attempts_are_bounded_and_reproducible(self, make_config):
        config = make_config(blocks=[3], overlaps=[0], top_k=1, retries=3)
        first = run_factoring(config)
        second = run_factoring(config)
        assert first.to_json() == second.to_json()

        assert first.attempts[0].base == 2
        assert first.attempts[0].method == "none"
        if first.found:
            assert first.outcome.method == "classical-gcd"
            assert first.outcome.factor in {3, 5}
        else:
            assert len(first.attempts) == 3
            assert first.outcome.method == "none"
        assert len({a.base for a in first.attempts}) == len(first.attempts)

    def test_single_attempt_without_retries(self, make_config):
        report = run_factoring(make_config(blocks=[3], overlaps=[0], top_k=1))
        assert not report.found
        assert len(report.attempts) == 1
        assert report.outcome.factor is None
        assert report.outcome.cofactor is None


class TestDeterminism:
    @pytest.mark.parametrize("shots", [0, 100])
    def test_worker_count_does_not_change_report(self, make_config, shots):
        config = make_config(n=21, base=2, blocks=[4, 4, 4], overlaps=[0, 2, 2], shots=shots, top_k=4, max_combos=32)
        serial = FactoringPipeline(config, jobs=1).run()
        parallel = FactoringPipeline(config, jobs=4).run()
        assert serial.to_json() == parallel.to_json()

    def test_timings_recorded(self, make_config):
        report = run_factoring(make_config())
        assert set(report.timings) == {"validate", "blocks", "stitch", "recover"}
        assert all(value >= 0 for value in report.timings.values())
