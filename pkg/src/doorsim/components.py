"""Behavioral models of the circuit elements.

The state-transition functions (``monostable_trigger``, ``counter_clock_edge``
and friends) are pure; the ``*Unit`` classes adapt them to the event
engine as sequential components.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from functools import reduce
from typing import Sequence

from .engine import (HIGH, LOW, Circuit, Combinational, Edge, Level,
                     Sequential, edge_between)

# -- gates ----------------------------------------------------------------


class GateKind(enum.Enum):
    OR = "OR"
    AND = "AND"
    XOR = "XOR"


_GATE_OPS = {
    GateKind.OR: lambda a, b: a | b,
    GateKind.AND: lambda a, b: a & b,
    GateKind.XOR: lambda a, b: a ^ b,
}


def gate_eval(kind: GateKind | str, a: Level | int, b: Level | int) -> Level:
    kind = GateKind(kind)
    return Level(_GATE_OPS[kind](int(a), int(b)))


class Gate(Combinational):
    """N-input OR/AND/XOR, folded pairwise through :func:`gate_eval`."""

    def __init__(self, name: str, kind: GateKind | str, inputs: Sequence[str], output: str):
        if len(inputs) < 2:
            raise ValueError(f"gate {name!r} needs at least two inputs")
        super().__init__(name, inputs, (output,))
        self.kind = GateKind(kind)

    def evaluate(self, values):
        return (reduce(lambda a, b: gate_eval(self.kind, a, b), values),)


class Buffer(Combinational):
    def __init__(self, name: str, source: str, output: str):
        super().__init__(name, (source,), (output,))

    def evaluate(self, values):
        return (values[0],)


class TieHigh(Combinational):
    """Constant logic-1 source (a pull-up); goes HIGH on the t=0 settle."""

    def __init__(self, name: str, output: str):
        super().__init__(name, (), (output,))

    def evaluate(self, values):
        return (HIGH,)


# -- beam sensor + comparator ----------------------------------------------


@dataclass(frozen=True)
class BeamSensor:
    blocked: bool = False

    @property
    def comparator_out(self) -> Level:
        # photodiode divider rises above the reference when the beam is lost
        return LOW if self.blocked else HIGH


class Comparator(Combinational):
    """Beam comparator: ``blocked`` input net HIGH drives the output LOW."""

    def __init__(self, name: str, blocked_net: str, output: str):
        super().__init__(name, (blocked_net,), (output,))

    def evaluate(self, values):
        return (BeamSensor(blocked=values[0] == HIGH).comparator_out,)


# -- 555 monostable ---------------------------------------------------------


class Phase(enum.Enum):
    IDLE = "IDLE"
    TIMING = "TIMING"


@dataclass(frozen=True)
class MonostableState:
    period: int
    phase: Phase = Phase.IDLE
    expires_at: int | None = None

    def __post_init__(self):
        if self.period <= 0:
            raise ValueError(f"monostable period must be positive, got {self.period}")

    @property
    def output(self) -> Level:
        return HIGH if self.phase is Phase.TIMING else LOW


def monostable_trigger(state: MonostableState, trigger_edge: Edge, now: int) -> MonostableState:
    """Non-retriggerable one-shot: only a falling trigger while idle starts a pulse."""
    if trigger_edge is Edge.FALLING and state.phase is Phase.IDLE:
        return replace(state, phase=Phase.TIMING, expires_at=now + state.period)
    return state


def monostable_timeout(state: MonostableState, now: int) -> MonostableState:
    if state.phase is not Phase.TIMING or state.expires_at != now:
        raise RuntimeError(
            f"monostable timeout at t={now} ms inconsistent with state {state}")
    return replace(state, phase=Phase.IDLE, expires_at=None)


class MonostableUnit(Sequential):
    """555 one-shot triggered by a falling edge on its (active-low) trigger net."""

    def __init__(self, name: str, trigger: str, output: str, period: int):
        self.name = name
        self.inputs = (trigger,)
        self.outputs = (output,)
        self.state = MonostableState(period)
        self._last = LOW

    @property
    def output_net(self) -> str:
        return self.outputs[0]

    def sample(self, circuit, now):
        level = circuit.nets[self.inputs[0]]
        edge = edge_between(self._last, level)
        self._last = level
        before = self.state
        self.state = monostable_trigger(self.state, edge, now)
        if self.state is not before:
            circuit.queue.wake(self.state.expires_at, self)
            return {self.output_net: self.state.output}
        return {}

    def wake(self, circuit, now):
        self.state = monostable_timeout(self.state, now)
        return {self.output_net: self.state.output}


# -- 74190 cascade ------------------------------------------------------------


@dataclass(frozen=True)
class OccupancyCounter:
    tens: int = 0
    ones: int = 0

    def __post_init__(self):
        if not (0 <= self.tens <= 9 and 0 <= self.ones <= 9):
            raise ValueError(f"BCD digits out of range: {self.tens}{self.ones}")

    @classmethod
    def from_value(cls, value: int) -> "OccupancyCounter":
        if not 0 <= value <= 99:
            raise ValueError(f"count must be in [0, 99], got {value}")
        return cls(tens=value // 10, ones=value % 10)

    @property
    def value(self) -> int:
        return 10 * self.tens + self.ones


def _decade_step(digit: int, down: bool) -> tuple[int, bool]:
    """One 74190 decade: returns (next digit, ripple clock to the next stage)."""
    if down:
        return (9, True) if digit == 0 else (digit - 1, False)
    return (0, True) if digit == 9 else (digit + 1, False)


def counter_clock_edge(counter: OccupancyCounter, down: bool) -> OccupancyCounter:
    ones, ripple = _decade_step(counter.ones, down)
    tens = counter.tens
    if ripple:
        tens, _ = _decade_step(tens, down)
    return OccupancyCounter(tens=tens, ones=ones)


def bcd_bits(digit: int) -> tuple[Level, Level, Level, Level]:
    """Q0..Q3 (LSB first) of one BCD digit."""
    return tuple(Level((digit >> i) & 1) for i in range(4))


ONES_BITS = tuple(f"ones_q{i}" for i in range(4))
TENS_BITS = tuple(f"tens_q{i}" for i in range(4))


class CounterUnit(Sequential):
    """Two cascaded decade counters clocked on the rising edge of ``clock``.

    ``down_up`` HIGH selects count-down. Both are sampled after the
    timestamp's combinational settlement. A 00 -> 99 wrap is reported to
    ``on_underflow`` (the model itself allows it).
    """

    def __init__(self, name: str, clock: str, down_up: str, initial: int = 0,
                 on_underflow=None):
        self.name = name
        self.inputs = (clock, down_up)
        self.outputs = ONES_BITS + TENS_BITS
        self.state = OccupancyCounter.from_value(initial)
        self.on_underflow = on_underflow
        self._last_clock = LOW

    def _drive(self) -> dict[str, Level]:
        bits = bcd_bits(self.state.ones) + bcd_bits(self.state.tens)
        return dict(zip(self.outputs, bits))

    def initial_outputs(self):
        return self._drive()

    def sample(self, circuit: Circuit, now):
        clock, down_up = (circuit.nets[n] for n in self.inputs)
        edge = edge_between(self._last_clock, clock)
        self._last_clock = clock
        if edge is not Edge.RISING:
            return {}
        before = self.state
        down = down_up == HIGH
        self.state = counter_clock_edge(before, down)
        if down and before.value == 0 and self.on_underflow is not None:
            self.on_underflow(circuit, now, before, self.state)
        return self._drive()


# -- 7447 decoder ---------------------------------------------------------------

SEGMENTS = "abcdefg"

# lit segments for each numeral (6 with tail, 9 with tail, as the 7447 draws them)
_LIT = {
    0: "abcdef",
    1: "bc",
    2: "abdeg",
    3: "abcdg",
    4: "bcfg",
    5: "acdfg",
    6: "acdefg",
    7: "abc",
    8: "abcdefg",
    9: "abcdfg",
}


@dataclass(frozen=True)
class SegmentPattern:
    """Active-low segment outputs a..g (LOW = lit)."""

    a: Level
    b: Level
    c: Level
    d: Level
    e: Level
    f: Level
    g: Level

    @property
    def lit(self) -> str:
        return "".join(s for s in SEGMENTS if getattr(self, s) == LOW)


def decode_7447(digit: int) -> SegmentPattern:
    if not isinstance(digit, int) or not 0 <= digit <= 9:
        raise ValueError(f"7447 input must be a BCD digit 0-9, got {digit!r}")
    lit = _LIT[digit]
    return SegmentPattern(**{s: (LOW if s in lit else HIGH) for s in SEGMENTS})


# -- transistor switch + relay ----------------------------------------------------

SATURATION_MARGIN = 0.95


def transistor_saturated(v_in: float, v_be: float, r_b: float, h_fe: float,
                         v_supply: float, r_c: float) -> bool:
    """True if the base drive saturates the switch (within a 5% drive margin)."""
    if r_b <= 0 or r_c <= 0 or h_fe <= 0:
        raise ValueError("r_b, r_c and h_fe must be positive")
    if v_in <= v_be:
        return False
    i_b = (v_in - v_be) / r_b
    i_b_required = (v_supply / r_c) / h_fe
    return i_b >= SATURATION_MARGIN * i_b_required


@dataclass(frozen=True)
class RelayDriver:
    """Switching-transistor stage driving one relay coil."""

    v_high: float = 10.0
    v_be: float = 0.6
    r_b: float = 64_000.0
    h_fe: float = 200.0
    v_supply: float = 12.0
    coil_resistance: float = 400.0

    def energizes(self, drive: Level) -> bool:
        v_in = self.v_high if drive == HIGH else 0.0
        return transistor_saturated(v_in, self.v_be, self.r_b, self.h_fe,
                                    self.v_supply, self.coil_resistance)


# door relays: 10 V timer output, 64k base resistor, hFE 200
DOOR_DRIVER = RelayDriver()
# light relay: 12 V drive, 130k, BC337 with hFE 350
LIGHT_DRIVER = RelayDriver(v_high=12.0, r_b=130_000.0, h_fe=350.0)


@dataclass(frozen=True)
class RelayState:
    energized: bool = False
    coil_resistance: float = 400.0


class Relay(Combinational):
    """Relay coil net: HIGH iff the driver transistor saturates."""

    def __init__(self, name: str, drive: str, output: str, driver: RelayDriver = DOOR_DRIVER):
        super().__init__(name, (drive,), (output,))
        self.driver = driver

    def evaluate(self, values):
        return (HIGH if self.driver.energizes(values[0]) else LOW,)
