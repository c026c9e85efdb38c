import random

import pytest

from doorsim.engine import LOW, Event
from doorsim.scenario import parse_scenario, run_scenario
from doorsim.trace import (HazardRecord, StateRecord, TraceFormatError,
                           check_invariants, format_record, read_trace,
                           write_trace)

from helpers import FAULTS, SCENARIOS, random_occupancy_scenario


def test_state_line():
    assert format_record(StateRecord(0, 0, False, 0, "STOPPED")) == \
        "STATE 0 count=00 light=OFF door=0 motion=STOPPED"


def test_net_line():
    assert format_record(Event(1000, 3, "entry_cmp", LOW)) == "NET 1000 entry_cmp 0"


def test_hazard_line():
    assert format_record(HazardRecord(11_000, "RELAY_CONTENTION", "exit")) == \
        "HAZARD 11000 RELAY_CONTENTION exit"


def test_write_is_deterministic_and_newline_terminated():
    records = run_scenario(parse_scenario((SCENARIOS / "retrigger_hazard.scn").read_text())).records
    a, b = write_trace(records), write_trace(records)
    assert a == b and a.endswith("\n")


def test_read_write_round_trip():
    records = run_scenario(parse_scenario((SCENARIOS / "busy_evening.scn").read_text())).records
    text = write_trace(records)
    assert write_trace(read_trace(text)) == text


def test_written_records_are_time_ordered():
    records = run_scenario(parse_scenario((SCENARIOS / "retrigger_hazard.scn").read_text())).records
    times = [r.time for r in records]
    assert times == sorted(times)


@pytest.mark.parametrize("text", [
    "STATE 0 count=00 light=MAYBE door=0 motion=STOPPED\n",
    "NET 10 entry_cmp 2\n",
    "HAZARD 5 MELTDOWN now\n",
    "STATE 0 count=00 light=OFF door=0 motion=SPINNING\n",
    "STATE 0 count=00 light=OFF door=0 motion=STOPPED\nNET 100 entry_c",
    "BOGUS 1\n",
])
def test_malformed_traces(text):
    with pytest.raises(TraceFormatError):
        read_trace(text)


def test_clean_single_entry_trace():
    records = run_scenario(parse_scenario((SCENARIOS / "single_entry.scn").read_text())).records
    assert check_invariants(records).violations == []


def test_seeded_light_law_fault():
    report = check_invariants(read_trace((FAULTS / "light_law.trace").read_text()))
    assert [v.rule for v in report.violations] == ["light-law"]
    assert "count=03" in report.violations[0].message


def test_paired_contention_is_not_a_violation():
    text = ("STATE 0 count=00 light=OFF door=0 motion=STOPPED\n"
            "HAZARD 11000 RELAY_CONTENTION enter open_relay=1 close_relay=1\n"
            "STATE 11000 count=01 light=ON door=1000 motion=FAULT\n"
            "HAZARD 13000 RELAY_CONTENTION exit\n"
            "STATE 13000 count=01 light=ON door=1000 motion=STOPPED\n")
    report = check_invariants(read_trace(text))
    assert report.ok and len(report.hazards) == 2


EXPECTED_RULES = {
    "light_law": "light-law",
    "light_on_empty": "light-law",
    "count_range": "count-range",
    "door_range": "door-range",
    "fault_without_hazard": "hazard-pairing",
    "hazard_without_fault": "hazard-pairing",
    "unpaired_exit": "hazard-pairing",
    "time_reversal": "time-order",
    "underflow": "count-underflow",
}


@pytest.mark.parametrize("path", sorted(FAULTS.glob("*.trace")), ids=lambda p: p.stem)
def test_seeded_fault_corpus_rejected(path):
    report = check_invariants(read_trace(path.read_text()))
    assert EXPECTED_RULES[path.stem] in {v.rule for v in report.violations}


def test_checker_accepts_generated_traces():
    rng = random.Random(11)
    for _ in range(50):
        system = run_scenario(random_occupancy_scenario(rng))
        assert check_invariants(read_trace(write_trace(system.records))).ok
