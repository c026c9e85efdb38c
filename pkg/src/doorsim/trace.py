"""Trace records, their line format, and the trace invariant checker.

Line formats (one record per line, single-space separated)::

    NET <time> <net> <0|1>
    STATE <time> count=<NN> light=<ON|OFF> door=<0..1000> motion=<MOTION>
    HAZARD <time> <RELAY_CONTENTION|COUNT_UNDERFLOW> <detail>
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .engine import Event, Level

MOTIONS = ("STOPPED", "OPENING", "CLOSING", "FAULT")
HAZARD_KINDS = ("RELAY_CONTENTION", "COUNT_UNDERFLOW")


@dataclass(frozen=True)
class StateRecord:
    time: int
    count: int
    light: bool
    door: int
    motion: str


@dataclass(frozen=True)
class HazardRecord:
    time: int
    kind: str
    detail: str


TraceRecord = Union[Event, StateRecord, HazardRecord]


class TraceFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


def format_record(record: TraceRecord) -> str:
    if isinstance(record, Event):
        return f"NET {record.time} {record.net} {int(record.level)}"
    if isinstance(record, StateRecord):
        return (f"STATE {record.time} count={record.count:02d} "
                f"light={'ON' if record.light else 'OFF'} "
                f"door={record.door} motion={record.motion}")
    if isinstance(record, HazardRecord):
        return f"HAZARD {record.time} {record.kind} {record.detail}"
    raise TypeError(f"not a trace record: {record!r}")


def write_trace(records: Iterable[TraceRecord]) -> str:
    return "".join(format_record(r) + "\n" for r in records)


_INT = r"(0|[1-9][0-9]*)"
_NET_RE = re.compile(rf"NET {_INT} (\S+) ([01])")
_STATE_RE = re.compile(
    rf"STATE {_INT} count=([0-9]{{2,}}) light=(ON|OFF) door=(-?[0-9]+) motion=(\S+)")
_HAZARD_RE = re.compile(rf"HAZARD {_INT} (\S+) (\S.*)")


def parse_record(line: str, lineno: int | None = None, seq: int = 0) -> TraceRecord:
    if m := _NET_RE.fullmatch(line):
        return Event(int(m[1]), seq, m[2], Level(int(m[3])))
    if m := _STATE_RE.fullmatch(line):
        if m[5] not in MOTIONS:
            raise TraceFormatError(f"unknown motion {m[5]!r}", lineno)
        return StateRecord(int(m[1]), int(m[2]), m[3] == "ON", int(m[4]), m[5])
    if m := _HAZARD_RE.fullmatch(line):
        if m[2] not in HAZARD_KINDS:
            raise TraceFormatError(f"unknown hazard kind {m[2]!r}", lineno)
        return HazardRecord(int(m[1]), m[2], m[3])
    raise TraceFormatError(f"malformed record {line!r}", lineno)


def read_trace(text: str) -> list[TraceRecord]:
    if text and not text.endswith("\n"):
        raise TraceFormatError("trace is not newline-terminated (truncated?)")
    lines = text.split("\n")[:-1] if text else []
    return [parse_record(line, i, seq=i - 1) for i, line in enumerate(lines, 1)]


# -- invariant checking ------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    time: int
    rule: str
    message: str

    def __str__(self) -> str:
        return f"t={self.time} {self.rule}: {self.message}"


@dataclass
class Report:
    violations: list[Violation] = field(default_factory=list)
    hazards: list[HazardRecord] = field(default_factory=list)
    records: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        lines = [str(v) for v in self.violations]
        lines.append(f"{len(self.violations)} violations "
                     f"({len(self.hazards)} hazards, {self.records} records)")
        return "\n".join(lines)


def check_invariants(records: Sequence[TraceRecord]) -> Report:
    """Check a trace against the light law, ranges, ordering and hazard pairing.

    RELAY_CONTENTION hazards are findings, not failures, as long as each one
    matches a FAULT entry/exit in the STATE stream. A COUNT_UNDERFLOW is
    reported as a violation: the counter wrapped below an empty room.
    """
    report = Report(records=len(records))
    flag = report.violations.append

    for r in records:
        if not isinstance(r, (Event, StateRecord, HazardRecord)):
            raise TraceFormatError(f"not a trace record: {r!r}")

    groups: list[tuple[int, list]] = []
    last_time = None
    for r in records:
        if last_time is not None and r.time < last_time:
            flag(Violation(r.time, "time-order",
                           f"record at t={r.time} follows t={last_time}"))
        if not groups or groups[-1][0] != r.time:
            groups.append((r.time, []))
        groups[-1][1].append(r)
        last_time = r.time if last_time is None else max(last_time, r.time)

    in_fault = False
    for time, group in groups:
        enters = exits = 0
        fault_now = in_fault
        for r in group:
            if isinstance(r, StateRecord):
                if r.light != (r.count != 0):
                    flag(Violation(time, "light-law",
                                   f"light={'ON' if r.light else 'OFF'} with count={r.count:02d}"))
                if not 0 <= r.count <= 99:
                    flag(Violation(time, "count-range", f"count {r.count} outside [0, 99]"))
                if not 0 <= r.door <= 1000:
                    flag(Violation(time, "door-range", f"door {r.door} outside [0, 1000]"))
                fault_now = r.motion == "FAULT"
            elif isinstance(r, HazardRecord):
                report.hazards.append(r)
                if r.kind == "COUNT_UNDERFLOW":
                    flag(Violation(time, "count-underflow",
                                   f"COUNT_UNDERFLOW {r.detail}: exit counted from an empty room"))
                elif r.detail.split()[0] == "enter":
                    enters += 1
                elif r.detail.split()[0] == "exit":
                    exits += 1
                else:
                    raise TraceFormatError(f"RELAY_CONTENTION detail must start with enter/exit: {r.detail!r}")
        entered = fault_now and not in_fault
        left = in_fault and not fault_now
        if entered and not enters:
            flag(Violation(time, "hazard-pairing", "FAULT entered without RELAY_CONTENTION hazard"))
        if left and not exits:
            flag(Violation(time, "hazard-pairing", "FAULT left without RELAY_CONTENTION hazard"))
        if enters > int(entered):
            flag(Violation(time, "hazard-pairing", "RELAY_CONTENTION enter without FAULT entry"))
        if exits > int(left):
            flag(Violation(time, "hazard-pairing", "RELAY_CONTENTION exit without FAULT exit"))
        in_fault = fault_now
    return report
