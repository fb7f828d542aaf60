"""
Ground-truth speed fields with downstream-propagating congestion waves.

speed(s, t) = base_s(t) * (1 - drop_s(t)) + noise_s(t), clipped to [1, v_max], where
base_s follows a daily cycle, drop_s sums the congestion waves reaching s, and noise_s
is a sum of slow sinusoids. A wave starting on segment o at t0 reaches a downstream
segment s after cp_distance(o, s) / wave_speed seconds.
"""

import math
from dataclasses import dataclass

import numpy as np

from shared.ingest.intervals import IntervalIndex
from shared.roadnet.distance import cp_distance
from shared.roadnet.models import RoadNet
from shared.simgen.config import SimulationSettings
from shared.speed.series import Provenance, SpeedSeries

DAY_SECONDS = 86_400.0
NOISE_COMPONENTS = 3


@dataclass(frozen=True, slots=True)
class CongestionWave:
    """A speed drop starting on one segment and travelling downstream."""

    origin: str
    start: float
    depth: float
    duration: float


def _bump(x: np.ndarray) -> np.ndarray:
    """sin^2 pulse on [0, 1], zero elsewhere."""
    inside = (x >= 0.0) & (x <= 1.0)
    return np.where(inside, np.sin(np.pi * np.clip(x, 0.0, 1.0)) ** 2, 0.0)


class SpeedField:
    """Deterministic (seeded) speed of every segment as a function of time."""

    def __init__(self, net: RoadNet, settings: SimulationSettings):
        """
        Draw the field.

        Args:
            net: Road net
            settings: Simulation settings (seed, field shape, scenario span)
        """
        self.net = net
        self.settings = settings
        self.segment_ids = net.segment_ids
        self._row = {sid: i for i, sid in enumerate(self.segment_ids)}
        self.start_time = settings.start_time
        size = len(self.segment_ids)

        rng = np.random.default_rng(settings.seed)
        self.base = settings.base_speed * (1.0 + settings.base_spread * rng.uniform(-1, 1, size))
        amplitude = settings.noise_amplitude / NOISE_COMPONENTS
        self.noise_amp = np.full((size, NOISE_COMPONENTS), amplitude)
        self.noise_period = rng.uniform(600.0, 3600.0, (size, NOISE_COMPONENTS))
        self.noise_phase = rng.uniform(0.0, 2 * np.pi, (size, NOISE_COMPONENTS))

        span = settings.hours * 3600.0
        self.waves: list[CongestionWave] = []
        for _ in range(settings.wave_count):
            origin = self.segment_ids[int(rng.integers(size))]
            start = self.start_time + float(rng.uniform(-settings.wave_duration, span))
            self.waves.append(
                CongestionWave(origin, start, settings.wave_depth, settings.wave_duration)
            )
        self._build_reach()

    def _build_reach(self) -> None:
        wave_idx, seg_idx, delays, weights = [], [], [], []
        reach = self.settings.wave_reach
        for w_i, wave in enumerate(self.waves):
            origin = self.net.segment(wave.origin)
            lengths = self.net.vertex_distances(origin.exit)
            for seg in self.net:
                if seg.id == wave.origin:
                    distance = 0.0
                elif seg.entrance in lengths:
                    distance = origin.length / 2.0 + lengths[seg.entrance] + seg.length / 2.0
                else:
                    continue
                if distance > reach:
                    continue
                wave_idx.append(w_i)
                seg_idx.append(self._row[seg.id])
                delays.append(distance / self.settings.wave_speed)
                weights.append(1.0 - distance / reach)
        self._wave_idx = np.array(wave_idx, dtype=int)
        self._seg_idx = np.array(seg_idx, dtype=int)
        self._delay = np.array(delays, dtype=float)
        self._weight = np.array(weights, dtype=float)
        self._wave_start = np.array([w.start for w in self.waves], dtype=float)
        self._wave_depth = np.array([w.depth for w in self.waves], dtype=float)
        self._wave_duration = np.array([w.duration for w in self.waves], dtype=float)

    @classmethod
    def constant(cls, net: RoadNet, speed: float, v_max: float = 40.0) -> "SpeedField":
        """Field holding every segment at ``speed`` forever."""
        settings = SimulationSettings(
            base_speed=speed,
            base_spread=0.0,
            daily_amplitude=0.0,
            wave_count=0,
            noise_amplitude=0.0,
            v_max=max(v_max, speed),
        )
        return cls(net, settings)

    def speeds_at(self, t: float) -> np.ndarray:
        """Speeds of all segments at time t, in net order."""
        elapsed = t - self.start_time
        cycle = math.sin(2 * math.pi * elapsed / DAY_SECONDS)
        base = self.base - self.settings.daily_amplitude * cycle

        drop = np.zeros(len(self.segment_ids))
        if self._seg_idx.size:
            x = (t - self._wave_start[self._wave_idx] - self._delay) / self._wave_duration[
                self._wave_idx
            ]
            np.add.at(
                drop, self._seg_idx, self._wave_depth[self._wave_idx] * self._weight * _bump(x)
            )
        drop = np.clip(drop, 0.0, 0.9)

        noise = np.sum(
            self.noise_amp * np.sin(2 * np.pi * t / self.noise_period + self.noise_phase), axis=1
        )
        return np.clip(base * (1.0 - drop) + noise, 1.0, self.settings.v_max)

    def speed(self, segment_id: str, t: float) -> float:
        """Speed of one segment at time t."""
        return float(self.speeds_at(t)[self._row[segment_id]])

    def true_lag(self, u: str, r: str, interval_seconds: float) -> int:
        """floor(wave delay from cp(u) to cp(r) / T)."""
        delay = cp_distance(u, r, self.net) / self.settings.wave_speed
        return math.floor(delay / interval_seconds + 1e-9)

    def ground_truth(self, index: IntervalIndex, n_intervals: int) -> SpeedSeries:
        """Field sampled at every interval midpoint."""
        series = SpeedSeries(self.segment_ids, n_intervals)
        for j in range(1, n_intervals + 1):
            series.values[:, j - 1] = self.speeds_at(index.midpoint(j))
        series.provenance[:, :] = Provenance.MEASURED
        return series
