import pytest
from hypothesis import given, strategies as st

from doorsim.engine import HIGH
from doorsim.scenario import (PersonEvent, RawEvent, Scenario,
                              ScenarioParseError, format_scenario,
                              parse_scenario, run_scenario)

from helpers import SCENARIOS


def test_minimal_file():
    sc = parse_scenario("duration 60000\nperson in at=1000")
    assert sc.duration_ms == 60_000
    assert sc.events == [PersonEvent("IN", 1000, 400)]


def test_missing_duration():
    with pytest.raises(ScenarioParseError, match="duration"):
        parse_scenario("person in at=1000")


def test_events_sorted_by_time():
    sc = parse_scenario("duration 20000\nperson out at=5000 dwell=250\nperson in at=1000")
    assert sc.events == [PersonEvent("IN", 1000, 400), PersonEvent("OUT", 5000, 250)]


def test_comments_raw_events_and_config():
    text = """
    # header comment
    duration 30000   # trailing
    config door_travel_ms 4000
    set exit_blocked 1 at=2000
    set exit_blocked 0 at=2300
    """
    sc = parse_scenario(text)
    assert sc.config == {"door_travel_ms": 4000}
    assert sc.events == [RawEvent("exit_blocked", HIGH, 2000), RawEvent("exit_blocked", 0, 2300)]
    assert sc.system_config().door_travel_ms == 4000


@pytest.mark.parametrize("text,line,fragment", [
    ("duration 100\nwalk in at=5", 2, "unknown directive"),
    ("duration 100\nduration 200", 2, "duplicate"),
    ("duration 1e5", 1, "malformed integer"),
    ("duration 100\nperson in at=-5", 2, "malformed integer"),
    ("duration 100\nperson in at=500", 2, "after duration"),
    ("duration 100\nset m1_out 1 at=5", 2, "unknown net"),
    ("duration 100\nset entry_blocked 2 at=5", 2, "level"),
    ("duration 100\nperson sideways at=5", 2, "usage"),
    ("duration 100\nperson in at=5 dwell=0", 2, "dwell"),
    ("duration 100\nperson in", 2, "at="),
    ("duration 100\nconfig speed 3", 2, "unknown config key"),
])
def test_parse_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(ScenarioParseError, match=fragment) as info:
        parse_scenario(text)
    assert info.value.line == line


def test_invalid_config_values_rejected():
    with pytest.raises(ScenarioParseError, match="config"):
        parse_scenario("duration 100\nconfig door_open_mono_ms 20000")


person = st.builds(PersonEvent, st.sampled_from(["IN", "OUT"]), st.integers(0, 10**6), st.integers(1, 10**4))


@given(st.lists(person, max_size=20), st.integers(0, 10**5))
def test_format_parse_round_trip(events, extra):
    events = sorted(events, key=lambda e: e.at)
    duration = max([e.at for e in events], default=0) + extra
    sc = Scenario(duration, events, {"initial_count": 4})
    back = parse_scenario(format_scenario(sc))
    assert back.events == events and back.duration_ms == duration and back.config == sc.config


@pytest.mark.parametrize("path", sorted(SCENARIOS.glob("*.scn")), ids=lambda p: p.stem)
def test_shipped_scenarios_parse_and_run(path):
    sc = parse_scenario(path.read_text())
    system = run_scenario(sc)
    assert system.now == sc.duration_ms


def test_until_extends_run():
    sc = parse_scenario("duration 1000\nperson in at=500")
    assert run_scenario(sc, until=50_000).now == 50_000
