"""
Random-walk vehicle traces over a speed field.

Vehicles move along segments at the field's local speed in fixed sub-steps, turn at
intersections onto a random outward neighbor (U-turns only at dead ends), and report
position and speed every ``report_period`` seconds with Gaussian position noise.
"""

from dataclasses import dataclass

import numpy as np

from shared.config.logging import get_logger
from shared.ingest.records import Record
from shared.roadnet.geometry import point_at
from shared.roadnet.models import Point, RoadNet
from shared.simgen.config import SimulationSettings
from shared.simgen.field import SpeedField
from shared.simgen.network import generate_grid_net

logger = get_logger(__name__)

# field speeds are tabulated at this resolution (s)
FIELD_STEP = 5.0


@dataclass(frozen=True, slots=True)
class SimulatedRecord(Record):
    """A report together with where the vehicle actually was when it sent it."""

    segment_id: str
    offset: float


def _next_segment(net: RoadNet, current: str, rng: np.random.Generator) -> str:
    seg = net.segment(current)
    options = [
        sid
        for sid in net.outward_neighbors(current)
        if not (net.segment(sid).exit == seg.entrance and net.segment(sid).entrance == seg.exit)
    ]
    if not options:
        options = list(net.outward_neighbors(current))
    if not options:
        return current
    return options[int(rng.integers(len(options)))]


def generate_traces(
    net: RoadNet,
    field: SpeedField,
    n_vehicles: int,
    duration: float,
    report_period: float,
    gps_noise_sigma: float,
    seed: int,
    start_time: float = 0.0,
    speed_noise_sigma: float = 0.0,
    substep: float = FIELD_STEP,
) -> list[SimulatedRecord]:
    """
    Simulate a fleet and collect its reports.

    Args:
        net: Road net
        field: Ground-truth speed field
        n_vehicles: Fleet size
        duration: Scenario length (s)
        report_period: Seconds between reports of one vehicle
        gps_noise_sigma: Position noise standard deviation (m)
        seed: Random seed
        start_time: Epoch seconds of the scenario start
        speed_noise_sigma: Instant speed noise standard deviation (m/s)
        substep: Movement step (s)

    Returns:
        Records ordered by vehicle then time; positions in planar meters, each with the
        segment and offset it was generated on before noise
    """
    if report_period <= 0:
        raise ValueError("report_period must be positive")
    if substep <= 0:
        raise ValueError("substep must be positive")

    rng = np.random.default_rng(seed)
    end_time = start_time + duration
    steps = int(np.ceil(duration / FIELD_STEP)) + 1
    table = np.vstack([field.speeds_at(start_time + i * FIELD_STEP) for i in range(steps)])
    row = {sid: i for i, sid in enumerate(field.segment_ids)}
    ids = net.segment_ids
    width = len(str(max(n_vehicles - 1, 0)))

    records: list[SimulatedRecord] = []
    for v in range(n_vehicles):
        vehicle_id = f"veh{v:0{max(width, 5)}d}"
        current = ids[int(rng.integers(len(ids)))]
        offset = float(rng.uniform(0.0, net.segment(current).length))
        next_report = start_time + float(rng.uniform(0.0, report_period))
        t = start_time

        while t < end_time:
            speed = float(table[min(int((t - start_time) // FIELD_STEP), steps - 1), row[current]])
            while next_report <= t + substep and next_report < end_time:
                # advance to the report instant, report, continue the sub-step there
                travel = speed * (next_report - t)
                current, offset = _advance(net, current, offset, travel, rng)
                t = next_report
                p = point_at(net.segment(current), offset)
                if gps_noise_sigma > 0:
                    dx, dy = rng.normal(0.0, gps_noise_sigma, 2)
                    p = Point(p.x + dx, p.y + dy)
                reported = speed
                if speed_noise_sigma > 0:
                    reported = max(0.0, speed + float(rng.normal(0.0, speed_noise_sigma)))
                records.append(SimulatedRecord(vehicle_id, t, p, reported, current, offset))
                next_report += report_period
            step_end = min(
                start_time + (int((t - start_time) // substep) + 1) * substep, end_time
            )
            current, offset = _advance(net, current, offset, speed * (step_end - t), rng)
            t = step_end

    logger.info(
        "traces_generated",
        vehicles=n_vehicles,
        records=len(records),
        duration=duration,
        report_period=report_period,
    )
    return records


def _advance(
    net: RoadNet, current: str, offset: float, distance: float, rng: np.random.Generator
) -> tuple[str, float]:
    remaining = offset + distance
    length = net.segment(current).length
    while remaining >= length:
        remaining -= length
        current = _next_segment(net, current, rng)
        length = net.segment(current).length
    return current, remaining


@dataclass
class Scenario:
    """A generated net, its field and the fleet's records."""

    net: RoadNet
    field: SpeedField
    records: list[SimulatedRecord]
    settings: SimulationSettings

    @property
    def end_time(self) -> float:
        return self.settings.start_time + self.settings.hours * 3600.0


def build_scenario(settings: SimulationSettings) -> Scenario:
    """Generate net, field and records from one settings object."""
    net = generate_grid_net(
        settings.rows, settings.cols, settings.edge_length, settings.lane_offset, settings.setback
    )
    field = SpeedField(net, settings)
    records = generate_traces(
        net,
        field,
        settings.vehicles,
        settings.hours * 3600.0,
        settings.report_period,
        settings.gps_noise_sigma,
        settings.seed,
        settings.start_time,
        settings.speed_noise_sigma,
    )
    return Scenario(net=net, field=field, records=records, settings=settings)
