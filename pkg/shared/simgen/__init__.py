"""
Synthetic cities: grid nets, lag-correlated speed fields and vehicle traces.
"""

from shared.simgen.config import SimulationSettings, get_simulation_settings
from shared.simgen.field import CongestionWave, SpeedField
from shared.simgen.network import generate_grid_net, grid_segment_count, vertex_id
from shared.simgen.traces import Scenario, SimulatedRecord, build_scenario, generate_traces

__all__ = [
    "CongestionWave",
    "Scenario",
    "SimulatedRecord",
    "SimulationSettings",
    "SpeedField",
    "build_scenario",
    "generate_grid_net",
    "generate_traces",
    "get_simulation_settings",
    "grid_segment_count",
    "vertex_id",
]
