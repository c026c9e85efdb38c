"""The complete door and room-light system wired onto the event engine.

Public nets (stable names used by traces and scenarios):

========================  ====================================================
entry_blocked/exit_blocked stimulus inputs, HIGH while a beam is interrupted
entry_cmp, exit_cmp       beam comparators, LOW while the beam is broken
entry_trig, exit_trig     OR(own comparator, opposite one-shot): lockout
entry_mono_out            10 s entry one-shot
exit_mono_out             10 s exit one-shot, also the counter's D/U pin
mono_any, count_en        OR of both one-shots; constant count enable
count_clk                 AND(mono_any, count_en), counter clock
ones_q0..3, tens_q0..3    cascaded BCD counter outputs
light_drive, light_relay  OR of all counter bits; lamp relay coil
door_trig                 AND(entry_cmp, exit_cmp), falls on either break
m1_out, m2_out            5 s open / 10 s close door one-shots
open_relay_drive          m1_out
close_relay_drive         XOR(m1_out, m2_out)
open_relay, close_relay   motor relay coils (polarity reversal)
========================  ====================================================
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, fields, replace

from .components import (DOOR_DRIVER, LIGHT_DRIVER, ONES_BITS, TENS_BITS,
                         Buffer, Comparator, CounterUnit, Gate,
                         MonostableUnit, Relay, SegmentPattern, TieHigh,
                         decode_7447)
from .engine import HIGH, LOW, Circuit, Event, Level, Sequential
from .trace import HazardRecord, StateRecord

FULL_OPEN = 1000
DEFAULT_DWELL_MS = 400

STIMULUS_NETS = ("entry_blocked", "exit_blocked")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SystemConfig:
    entry_lockout_ms: int = 10_000
    exit_lockout_ms: int = 10_000
    door_open_mono_ms: int = 5_000
    door_close_mono_ms: int = 10_000
    door_travel_ms: int = 5_000
    initial_count: int = 0

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise ConfigError(f"{f.name} must be an integer, got {value!r}")
            if f.name != "initial_count" and value <= 0:
                raise ConfigError(f"{f.name} must be positive, got {value}")
        if self.door_close_mono_ms <= self.door_open_mono_ms:
            raise ConfigError("door_close_mono_ms must exceed door_open_mono_ms "
                              "(the difference is the closing window)")
        if not 0 <= self.initial_count <= 99:
            raise ConfigError(f"initial_count must be in [0, 99], got {self.initial_count}")

    @classmethod
    def keys(cls) -> tuple[str, ...]:
        return tuple(f.name for f in fields(cls))


# -- door plant ----------------------------------------------------------------


class Motion(enum.Enum):
    STOPPED = "STOPPED"
    OPENING = "OPENING"
    CLOSING = "CLOSING"
    FAULT = "FAULT"


@dataclass(frozen=True)
class DoorPlant:
    """Door position in milli-travel units (0 closed, 1000 open).

    Position is recomputed from the start of the current motion segment
    (``anchor_*``) so that integer rounding never accumulates.
    """

    position: int = 0
    motion: Motion = Motion.STOPPED
    last_update: int = 0
    travel_ms: int = 5_000
    anchor_position: int = 0
    anchor_time: int = 0

    def position_at(self, now: int) -> int:
        step = (now - self.anchor_time) * FULL_OPEN // self.travel_ms
        if self.motion is Motion.OPENING:
            return min(FULL_OPEN, self.anchor_position + step)
        if self.motion is Motion.CLOSING:
            return max(0, self.anchor_position - step)
        return self.position

    def limit_time(self) -> int | None:
        """Time the current motion reaches its travel limit, if it will."""
        if self.motion is Motion.OPENING:
            remaining = FULL_OPEN - self.anchor_position
        elif self.motion is Motion.CLOSING:
            remaining = self.anchor_position
        else:
            return None
        # smallest elapsed with elapsed * 1000 // travel >= remaining
        return self.anchor_time + -(-remaining * self.travel_ms // FULL_OPEN)


def motor_update(plant: DoorPlant, open_coil: bool, close_coil: bool, now: int) -> DoorPlant:
    if now < plant.last_update:
        raise ValueError(f"motor update at t={now} ms precedes last update t={plant.last_update} ms")
    position = plant.position_at(now)
    if open_coil and close_coil:
        motion = Motion.FAULT
    elif open_coil:
        motion = Motion.OPENING
    elif close_coil:
        motion = Motion.CLOSING
    else:
        motion = Motion.STOPPED
    if motion is plant.motion:
        return replace(plant, position=position, last_update=now)
    return replace(plant, position=position, motion=motion, last_update=now,
                   anchor_position=position, anchor_time=now)


class _Timer(Sequential):
    """Wakeup target with no nets: forces the owner to re-evaluate at a time."""

    def __init__(self, name: str, on_wake=None):
        self.name = name
        self.on_wake = on_wake

    def wake(self, circuit, now):
        if self.on_wake is not None:
            self.on_wake(now)
        return {}


# -- system ----------------------------------------------------------------------


@dataclass(frozen=True)
class SystemSnapshot:
    time: int
    count: int
    light_on: bool
    door_position: int
    motion: Motion
    digits: tuple[SegmentPattern, SegmentPattern]


class DoorSystem:
    """A wired door/light circuit plus its door plant and trace log."""

    def __init__(self, config: SystemConfig | None = None):
        self.config = config or SystemConfig()
        self.circuit = c = Circuit()
        cfg = self.config

        c.add(TieHigh("count_enable", "count_en"))
        c.add(Comparator("entry_comparator", "entry_blocked", "entry_cmp"))
        c.add(Comparator("exit_comparator", "exit_blocked", "exit_cmp"))
        c.add(Gate("entry_lockout", "OR", ("entry_cmp", "exit_mono_out"), "entry_trig"))
        c.add(Gate("exit_lockout", "OR", ("exit_cmp", "entry_mono_out"), "exit_trig"))
        c.add(Gate("door_trigger", "AND", ("entry_cmp", "exit_cmp"), "door_trig"))
        c.add(Gate("mono_or", "OR", ("entry_mono_out", "exit_mono_out"), "mono_any"))
        c.add(Gate("clock_and", "AND", ("mono_any", "count_en"), "count_clk"))
        c.add(Gate("light_or", "OR", ONES_BITS + TENS_BITS, "light_drive"))
        c.add(Buffer("open_drive", "m1_out", "open_relay_drive"))
        c.add(Gate("close_xor", "XOR", ("m1_out", "m2_out"), "close_relay_drive"))
        c.add(Relay("open_relay_coil", "open_relay_drive", "open_relay", DOOR_DRIVER))
        c.add(Relay("close_relay_coil", "close_relay_drive", "close_relay", DOOR_DRIVER))
        c.add(Relay("light_relay_coil", "light_drive", "light_relay", LIGHT_DRIVER))

        self.entry_mono = c.add(MonostableUnit("entry_mono", "entry_trig", "entry_mono_out",
                                               cfg.entry_lockout_ms))
        self.exit_mono = c.add(MonostableUnit("exit_mono", "exit_trig", "exit_mono_out",
                                              cfg.exit_lockout_ms))
        self.m1 = c.add(MonostableUnit("door_mono_open", "door_trig", "m1_out",
                                       cfg.door_open_mono_ms))
        self.m2 = c.add(MonostableUnit("door_mono_close", "door_trig", "m2_out",
                                       cfg.door_close_mono_ms))
        self.counter = c.add(CounterUnit("counter", "count_clk", "exit_mono_out",
                                         initial=cfg.initial_count,
                                         on_underflow=self._underflow))

        self.plant = DoorPlant(travel_ms=cfg.door_travel_ms)
        self._travel_timer = _Timer("door_travel")
        self._sampler = _Timer("sampler", self._sample_tick)
        self._sample_interval: int | None = None
        self._sample_until = 0
        self._force_state = False
        self._last_state: StateRecord | None = None

        c.post_settle.append(self._after_settle)
        c.initialize()

    # -- hooks ---------------------------------------------------------------

    def _underflow(self, circuit, now, before, after):
        circuit.emit(HazardRecord(now, "COUNT_UNDERFLOW",
                                  f"{before.value:02d}->{after.value:02d}"))

    def _after_settle(self, circuit: Circuit, now: int) -> None:
        nets = circuit.nets
        previous = self.plant
        self.plant = motor_update(previous, nets["open_relay"] == HIGH,
                                  nets["close_relay"] == HIGH, now)
        if self.plant.motion is not previous.motion:
            if self.plant.motion is Motion.FAULT:
                circuit.emit(HazardRecord(now, "RELAY_CONTENTION",
                                          "enter open_relay=1 close_relay=1"))
            elif previous.motion is Motion.FAULT:
                circuit.emit(HazardRecord(now, "RELAY_CONTENTION", "exit"))
            limit = self.plant.limit_time()
            if limit is not None and limit > now:
                circuit.queue.wake(limit, self._travel_timer)
        state = self._state_record(now)
        if self._force_state or self._last_state is None or \
                replace(state, time=0) != replace(self._last_state, time=0):
            circuit.emit(state)
            self._last_state = state
        self._force_state = False

    def _sample_tick(self, now: int) -> None:
        self._force_state = True
        nxt = now + self._sample_interval
        if nxt <= self._sample_until:
            self.circuit.queue.wake(nxt, self._sampler)

    def _state_record(self, now: int) -> StateRecord:
        return StateRecord(now, self.counter.state.value, self.light_on,
                           self.plant.position_at(now), self.plant.motion.value)

    # -- public API ----------------------------------------------------------

    @property
    def now(self) -> int:
        return self.circuit.now

    @property
    def count(self) -> int:
        return self.counter.state.value

    @property
    def light_on(self) -> bool:
        return self.circuit.nets["light_relay"] == HIGH

    @property
    def records(self) -> list:
        return self.circuit.log

    def inject_person(self, direction: str, at: int, dwell_ms: int = DEFAULT_DWELL_MS) -> None:
        """Break the IN (entry) or OUT (exit) beam at ``at`` for ``dwell_ms``."""
        direction = direction.upper()
        if direction not in ("IN", "OUT"):
            raise ValueError(f"direction must be IN or OUT, got {direction!r}")
        if not isinstance(dwell_ms, int) or dwell_ms < 1:
            raise ValueError(f"dwell_ms must be a positive integer, got {dwell_ms!r}")
        net = "entry_blocked" if direction == "IN" else "exit_blocked"
        self.circuit.queue.check_time(at, f"person {direction}")
        self.circuit.schedule(at, net, HIGH)
        self.circuit.schedule(at + dwell_ms, net, LOW)

    def set_net(self, net: str, level: Level | int, at: int) -> Event:
        if net not in STIMULUS_NETS:
            raise ValueError(f"{net!r} is not a stimulus net (expected one of {STIMULUS_NETS})")
        return self.circuit.schedule(at, net, level)

    def enable_sampling(self, interval_ms: int, until: int) -> None:
        """Emit a STATE record every ``interval_ms`` up to ``until``."""
        if interval_ms <= 0:
            raise ValueError("sample interval must be positive")
        self._sample_interval = interval_ms
        self._sample_until = until
        first = (self.now // interval_ms + 1) * interval_ms
        if first <= until:
            self.circuit.queue.wake(first, self._sampler)

    def advance_until(self, deadline: int) -> list[Event]:
        return self.circuit.advance_until(deadline)

    def snapshot(self) -> SystemSnapshot:
        state = self.counter.state
        return SystemSnapshot(
            time=self.now,
            count=state.value,
            light_on=self.light_on,
            door_position=self.plant.position_at(self.now),
            motion=self.plant.motion,
            digits=(decode_7447(state.tens), decode_7447(state.ones)),
        )


def build_system(config: SystemConfig | None = None) -> DoorSystem:
    return DoorSystem(config)


def inject_person(system: DoorSystem, direction: str, at: int,
                  dwell_ms: int = DEFAULT_DWELL_MS) -> DoorSystem:
    system.inject_person(direction, at, dwell_ms)
    return system


def snapshot(system: DoorSystem) -> SystemSnapshot:
    return system.snapshot()
