import random
from pathlib import Path

from doorsim.scenario import PersonEvent, Scenario

ROOT = Path(__file__).resolve().parent.parent
SCENARIOS = ROOT / "scenarios"
GOLDEN = Path(__file__).resolve().parent / "golden"
FAULTS = Path(__file__).resolve().parent / "faults"

LOCKOUT_MS = 10_000


def random_occupancy_scenario(rng: random.Random, max_events: int = 20) -> Scenario:
    """People spaced beyond the lockout, never more OUT than IN, at most 99 inside."""
    events, inside, t = [], 0, rng.randint(1, 5000)
    for _ in range(rng.randint(0, max_events)):
        if inside == 0:
            direction = "IN"
        elif inside == 99:
            direction = "OUT"
        else:
            direction = rng.choice(["IN", "IN", "OUT"])
        inside += 1 if direction == "IN" else -1
        events.append(PersonEvent(direction, t, rng.randint(1, 3000)))
        t += rng.randint(LOCKOUT_MS + 1, 3 * LOCKOUT_MS)
    return Scenario(duration_ms=t + 2 * LOCKOUT_MS, events=events)


def occupancy_oracle(scenario: Scenario) -> int:
    return sum(1 if e.direction == "IN" else -1 for e in scenario.people())
