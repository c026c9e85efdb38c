"""Event-driven simulator of a beam-break sliding door and room-light controller."""

from .door import (DoorPlant, DoorSystem, Motion, SystemConfig, SystemSnapshot,
                   build_system, inject_person, motor_update, snapshot)
from .engine import HIGH, LOW, Circuit, Edge, Event, EventQueue, Level
from .scenario import Scenario, parse_scenario, run_scenario
from .trace import check_invariants, read_trace, write_trace

__all__ = [
    "Circuit", "DoorPlant", "DoorSystem", "Edge", "Event", "EventQueue", "HIGH",
    "LOW", "Level", "Motion", "Scenario", "SystemConfig", "SystemSnapshot",
    "build_system", "check_invariants", "inject_person", "motor_update",
    "parse_scenario", "read_trace", "run_scenario", "snapshot", "write_trace",
]
