"""
Unit tests for recursive vacancy completion.
"""

import time

import numpy as np
import pytest

from shared.completion.config import CompletionSettings
from shared.completion.engine import (
    CompletionEngine,
    IntervalView,
    available_contributors,
    complete_all,
    fallback_value,
    initialize_history,
    is_calculable,
)
from shared.completion.regions import partition_regions
from shared.correlation.lag import LagEntry, LagTable
from shared.roadnet.models import RoadNet
from shared.simgen.network import generate_grid_net
from shared.speed.series import Provenance, SpeedSeries
from tests.builders import ring_net, straight_segment

W = 6
N = 10


def zero_lags(engine: CompletionEngine, n: int = N) -> LagTable:
    """Lag 0 for every upstream pair of the engine."""
    table = LagTable(window_end=n, w=engine.w)
    for r, upstream in engine.pairs().items():
        for u in upstream:
            table.add(LagEntry(u, r, 0, 1, "tracked"))
    return table


def populated(segment_ids, n_intervals=N, seed=0) -> SpeedSeries:
    """Series measured everywhere with random speeds."""
    rng = np.random.default_rng(seed)
    values = rng.uniform(5.0, 15.0, (len(segment_ids), n_intervals))
    provenance = np.full(values.shape, Provenance.MEASURED, dtype=np.int8)
    return SpeedSeries(segment_ids, n_intervals, values, provenance)


@pytest.fixture
def backwards_chain():
    """c -> b -> a, each 100 m; ids sort against the direction of travel."""
    return RoadNet.from_segments(
        [
            straight_segment("c", (0.0, 0.0), (100.0, 0.0), "v0", "v1"),
            straight_segment("b", (100.0, 0.0), (200.0, 0.0), "v1", "v2"),
            straight_segment("a", (200.0, 0.0), (300.0, 0.0), "v2", "v3"),
        ]
    )


def affine_series(net) -> SpeedSeries:
    """b = 2c + 1 and a = c + 3 at every interval, so each pair correlates perfectly."""
    rng = np.random.default_rng(4)
    base = rng.uniform(5.0, 10.0, N)
    series = SpeedSeries(net.segment_ids, N)
    for j in range(1, N + 1):
        series.set("c", j, float(base[j - 1]), Provenance.MEASURED)
        series.set("b", j, float(2 * base[j - 1] + 1), Provenance.MEASURED)
        series.set("a", j, float(base[j - 1] + 3), Provenance.MEASURED)
    return series


class TestHelpers:
    """Tests for fallback, initialization and availability."""

    def test_fallback_value(self):
        """Test the mean of earlier measured speeds, else the default."""
        series = SpeedSeries(["a", "b"], 4)
        series.set("a", 1, 4.0, Provenance.MEASURED)
        series.set("a", 2, 6.0, Provenance.MEASURED)
        series.set("a", 3, 100.0, Provenance.COMPLETED)

        assert fallback_value("a", 4, series, 16.7) == 5.0
        assert fallback_value("a", 2, series, 16.7) == 4.0
        assert fallback_value("b", 4, series, 16.7) == 16.7

    def test_initialize_history(self):
        """Test own-mean filling of the first w intervals."""
        series = SpeedSeries(["a", "b"], 5)
        series.set("a", 1, 4.0, Provenance.MEASURED)
        series.set("a", 3, 8.0, Provenance.MEASURED)

        summary = initialize_history(series, 3, default_speed=12.0)

        assert summary.measured == 2
        assert summary.initialized == 4
        assert series.value("a", 2) == 6.0
        assert series.provenance_of("a", 2) is Provenance.INITIALIZED
        assert series.provenance_of("a", 1) is Provenance.MEASURED
        assert series.value("b", 3) == 12.0
        assert series.is_vacant("a", 4)

    def test_interval_view_overrides(self):
        """Test region-local values shadow interval n only."""
        series = SpeedSeries(["a"], 3)
        series.set("a", 1, 1.0, Provenance.MEASURED)
        view = IntervalView(series, 3, {"a": 9.0})

        assert view.vector("a", 1, 3)[[0, 2]].tolist() == [1.0, 9.0]
        assert view.has_value("a")
        assert series.is_vacant("a", 3)

    def test_contributor_needs_complete_slice(self, backwards_chain):
        """Test a hole in the lagged window removes a contributor."""
        engine = CompletionEngine(backwards_chain, CompletionSettings(n_min=1), w=W)
        series = affine_series(backwards_chain)
        state = engine.state(series, zero_lags(engine))

        assert [u for u, _ in available_contributors("a", N, state)] == ["b", "c"]

        series.clear("c", N - 2)

        assert [u for u, _ in available_contributors("a", N, state)] == ["b"]
        assert is_calculable("a", N, state, CompletionSettings(n_min=1))
        assert not is_calculable("a", N, state, CompletionSettings(n_min=2))


class TestCompletionEngine:
    """Tests for CompletionEngine.complete_interval."""

    def test_recovers_affine_speeds_through_blocking_segment(self, backwards_chain):
        """Test a fills only after its vacant upstream neighbor b is completed from c."""
        settings = CompletionSettings(n_min=1, d_a=150.0)
        engine = CompletionEngine(backwards_chain, settings, w=W)
        series = affine_series(backwards_chain)
        truth = series.copy()
        series.clear("a", N)
        series.clear("b", N)

        summary = engine.complete_interval(series, N, zero_lags(engine))

        assert engine.pairs() == {"a": ["b"], "b": ["c"], "c": []}
        assert summary.completed == 2
        assert summary.fallback == 0
        assert series.provenance_of("a", N) is Provenance.COMPLETED
        assert series.value("b", N) == pytest.approx(truth.value("b", N), abs=5e-3)
        assert series.value("a", N) == pytest.approx(truth.value("a", N), abs=5e-3)

    def test_not_calculable_gets_fallback(self, backwards_chain):
        """Test a segment without enough contributors takes its own mean."""
        settings = CompletionSettings(n_min=3, d_a=150.0)
        engine = CompletionEngine(backwards_chain, settings, w=W)
        series = affine_series(backwards_chain)
        series.clear("a", N)

        summary = engine.complete_interval(series, N, zero_lags(engine))

        expected = float(np.mean(series.vector("a", 1, N - 1)))
        assert summary.fallback == 1
        assert series.provenance_of("a", N) is Provenance.FALLBACK
        assert series.value("a", N) == pytest.approx(expected)

    def test_cycle_terminates(self):
        """Test a fully vacant ring ends in fallbacks instead of looping."""
        net = ring_net(3)
        engine = CompletionEngine(net, CompletionSettings(n_min=1), w=W)
        series = populated(net.segment_ids)
        for sid in net.segment_ids:
            series.clear(sid, N)

        summary = engine.complete_interval(series, N, zero_lags(engine))

        assert summary.fallback == 3
        assert not series.vacant_segments(N)

    def test_ring_with_one_measurement(self):
        """Test one measured segment lets the rest of the ring complete."""
        net = ring_net(4)
        engine = CompletionEngine(net, CompletionSettings(n_min=1), w=W)
        series = populated(net.segment_ids, seed=3)
        for sid in ("r1", "r2", "r3"):
            series.clear(sid, N)

        summary = engine.complete_interval(series, N, zero_lags(engine))

        assert summary.measured == 1
        assert summary.completed + summary.fallback == 3
        assert summary.completed >= 1
        assert not series.vacant_segments(N)

    @staticmethod
    def _vacate(series: SpeedSeries, ratio: float, seed: int) -> list[str]:
        """Clear interval N of round(ratio * segments) segments chosen by seed."""
        rng = np.random.default_rng(seed)
        count = round(ratio * len(series.segment_ids))
        vacant = sorted(rng.choice(series.segment_ids, size=count, replace=False).tolist())
        for sid in vacant:
            series.clear(sid, N)
        return vacant

    @staticmethod
    def _assert_filled(series, summary, vacant, before, settings):
        assert summary.total == len(series.segment_ids)
        assert not series.vacant_segments(N)
        kept = ~np.isnan(before)
        np.testing.assert_array_equal(series.column(N)[kept], before[kept])
        for sid in vacant:
            assert series.provenance_of(sid, N) in (Provenance.COMPLETED, Provenance.FALLBACK)
            assert 0.0 <= series.value(sid, N) <= settings.v_max

    @pytest.mark.parametrize("ratio", [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9])
    def test_every_vacancy_filled(self, ratio):
        """Test total completion on seeded grids across vacancy ratios."""
        seed = round(ratio * 10)
        net = generate_grid_net(3 + seed % 3, 4, 150.0)
        settings = CompletionSettings(n_min=2)
        engine = CompletionEngine(net, settings, w=W)
        series = populated(net.segment_ids, seed=seed)
        vacant = self._vacate(series, ratio, seed)
        before = series.column(N).copy()

        summary = engine.complete_interval(series, N, zero_lags(engine))

        assert len(vacant) == round(ratio * len(net))
        self._assert_filled(series, summary, vacant, before, settings)

    @pytest.mark.slow
    def test_every_vacancy_filled_on_large_nets(self):
        """Test 50 seeded nets of up to 2000 segments fill within 10 s per interval."""
        settings = CompletionSettings()
        for seed in range(50):
            side = 4 + (seed * 7) % 19
            net = generate_grid_net(side, side, 150.0)
            assert len(net) <= 2000
            engine = CompletionEngine(net, settings, w=W)
            series = populated(net.segment_ids, seed=seed)
            ratio = 0.1 + 0.8 * ((seed * 3) % 10) / 9
            vacant = self._vacate(series, ratio, seed)
            before = series.column(N).copy()

            started = time.perf_counter()
            summary = engine.complete_interval(series, N, zero_lags(engine))
            elapsed = time.perf_counter() - started

            self._assert_filled(series, summary, vacant, before, settings)
            assert elapsed <= 10.0, f"seed {seed}: {len(net)} segments took {elapsed:.1f} s"

    def test_region_count_changes_cross_region_fill(self, backwards_chain):
        """Test a segment cannot use a completion made in another region."""
        truth = affine_series(backwards_chain)
        filled = {}
        for count in (1, 3):
            settings = CompletionSettings(n_min=1, d_a=150.0, region_count=count)
            engine = CompletionEngine(backwards_chain, settings, w=W)
            series = truth.copy()
            series.clear("a", N)
            series.clear("b", N)
            engine.complete_interval(series, N, zero_lags(engine))
            filled[count] = series

        single, split = filled[1], filled[3]
        assert single.provenance_of("a", N) is Provenance.COMPLETED
        assert single.value("a", N) == pytest.approx(truth.value("a", N), abs=5e-3)
        assert split.provenance_of("b", N) is Provenance.COMPLETED
        assert split.value("b", N) == pytest.approx(single.value("b", N))
        assert split.provenance_of("a", N) is Provenance.FALLBACK
        assert split.value("a", N) == pytest.approx(np.mean(truth.vector("a", 1, N - 1)))

    def test_single_region_is_default_partition(self):
        """Test region_count=1 gives the same cells as an unpartitioned fill."""
        net = generate_grid_net(4, 4, 150.0)
        base = populated(net.segment_ids, seed=11)
        self._vacate(base, 0.5, 11)
        engine = CompletionEngine(net, CompletionSettings(n_min=2, region_count=1), w=W)
        a, b = base.copy(), base.copy()

        engine.complete_interval(a, N, zero_lags(engine))
        complete_all(N, engine.state(b, zero_lags(engine)), engine.settings)

        assert engine.regions == [frozenset(net.segment_ids)]
        np.testing.assert_array_equal(a.values, b.values)
        np.testing.assert_array_equal(a.provenance, b.provenance)

    def test_parallel_regions_match_serial(self):
        """Test thread count does not change region-local results."""
        net = generate_grid_net(4, 4, 150.0)
        settings = CompletionSettings(n_min=2, region_count=4)
        serial = CompletionEngine(net, settings, w=W, jobs=1)
        parallel = CompletionEngine(net, settings, w=W, jobs=4)
        base = populated(net.segment_ids, seed=8)
        rng = np.random.default_rng(8)
        for sid in net.segment_ids:
            if rng.random() < 0.6:
                base.clear(sid, N)
        a, b = base.copy(), base.copy()

        serial.complete_interval(a, N, zero_lags(serial))
        parallel.complete_interval(b, N, zero_lags(parallel))

        np.testing.assert_array_equal(a.values, b.values)
        np.testing.assert_array_equal(a.provenance, b.provenance)


class TestRegions:
    """Tests for partition_regions."""

    @pytest.mark.parametrize("count", [1, 2, 4, 5, 7])
    def test_disjoint_and_exhaustive(self, count):
        """Test regions cover every segment exactly once."""
        net = generate_grid_net(4, 4, 100.0)

        regions = partition_regions(net, count)

        assert len(regions) == count
        assert sum(len(r) for r in regions) == len(net)
        assert frozenset().union(*regions) == frozenset(net.segment_ids)
        assert [min(r) for r in regions] == sorted(min(r) for r in regions)

    def test_more_regions_than_segments(self):
        """Test the count is capped by the number of segments."""
        net = ring_net(3)

        assert len(partition_regions(net, 10)) == 3

    def test_invalid_count(self):
        """Test a region count below one."""
        with pytest.raises(ValueError):
            partition_regions(ring_net(3), 0)
