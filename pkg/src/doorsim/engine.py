"""Discrete-event kernel with zero-delay combinational settling.

Time is integer milliseconds. Nets are two-valued. Combinational
components are re-evaluated in delta waves until nothing changes;
edge-sensitive (sequential) components then sample the settled nets,
and the two phases alternate until the timestamp is quiescent.
"""

from __future__ import annotations

import enum
import heapq
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

__all__ = [
    "LOW",
    "HIGH",
    "Level",
    "Edge",
    "edge_between",
    "Event",
    "EventQueue",
    "Circuit",
    "Combinational",
    "Sequential",
    "SchedulingError",
    "OscillationError",
    "MAX_DELTAS",
]

MAX_DELTAS = 1000


class Level(enum.IntEnum):
    LOW = 0
    HIGH = 1

    def __str__(self) -> str:
        return str(int(self))


LOW = Level.LOW
HIGH = Level.HIGH


class Edge(enum.Enum):
    RISING = "rising"
    FALLING = "falling"
    NONE = "none"


def edge_between(previous: Level, current: Level) -> Edge:
    if previous == current:
        return Edge.NONE
    return Edge.RISING if current == HIGH else Edge.FALLING


class SchedulingError(ValueError):
    pass


class OscillationError(RuntimeError):
    def __init__(self, time: int, nets: Iterable[str]):
        self.time = time
        self.nets = sorted(set(nets))
        super().__init__(
            f"no fixpoint after {MAX_DELTAS} delta cycles at t={time} ms; "
            f"unstable nets: {', '.join(self.nets)}")


@dataclass(frozen=True, order=True)
class Event:
    """A net-value change at ``time``; ``seq`` breaks ties in insertion order."""

    time: int
    seq: int
    net: str = field(compare=False)
    level: Level = field(compare=False)


@dataclass(frozen=True)
class _Wakeup:
    time: int
    seq: int
    target: "Sequential"


class EventQueue:
    """Priority queue of pending events ordered by ``(time, seq)``.

    Besides net events it carries wakeups, self-scheduled by components
    with internal timers (one-shot expiries, motor travel limits).
    """

    def __init__(self, now: int = 0):
        self._heap: list[tuple[int, int, Event | _Wakeup]] = []
        self._seq = 0
        self.now = now

    def __len__(self) -> int:
        return len(self._heap)

    def check_time(self, time: int, what: str) -> None:
        if not isinstance(time, int) or isinstance(time, bool):
            raise SchedulingError(f"{what}: time must be an integer, got {time!r}")
        if time < self.now:
            raise SchedulingError(
                f"{what}: cannot schedule at t={time} ms, simulation is already at t={self.now} ms")

    def schedule(self, time: int, net: str, level: Level | int) -> Event:
        self.check_time(time, f"net {net!r}")
        event = Event(time, self._seq, net, Level(level))
        self._seq += 1
        heapq.heappush(self._heap, (time, event.seq, event))
        return event

    def wake(self, time: int, target: "Sequential") -> None:
        self.check_time(time, f"wakeup for {target.name!r}")
        heapq.heappush(self._heap, (time, self._seq, _Wakeup(time, self._seq, target)))
        self._seq += 1

    def peek_time(self) -> int | None:
        return self._heap[0][0] if self._heap else None

    def pop_due(self, time: int) -> list[Event | _Wakeup]:
        """Remove and return every entry scheduled exactly at ``time``."""
        due = []
        while self._heap and self._heap[0][0] == time:
            due.append(heapq.heappop(self._heap)[2])
        return due

    def pending(self) -> list[Event]:
        return sorted(e for _, _, e in self._heap if isinstance(e, Event))


class Combinational:
    """Zero-delay component: outputs are a pure function of inputs."""

    def __init__(self, name: str, inputs: Sequence[str], outputs: Sequence[str]):
        self.name = name
        self.inputs = tuple(inputs)
        self.outputs = tuple(outputs)

    def evaluate(self, values: Sequence[Level]) -> Sequence[Level]:
        raise NotImplementedError


class FunctionGate(Combinational):
    def __init__(self, name: str, inputs: Sequence[str], output: str,
                 fn: Callable[[Sequence[Level]], Level]):
        super().__init__(name, inputs, (output,))
        self.fn = fn

    def evaluate(self, values):
        return (Level(self.fn(values)),)


class Sequential:
    """Edge-sensitive or self-timed component.

    ``sample`` is called after every combinational settlement and returns
    the net changes it wants to drive. ``wake`` handles self-scheduled
    timer expiries. Subclasses keep whatever edge memory they need.
    """

    name: str = "sequential"
    inputs: tuple[str, ...] = ()
    outputs: tuple[str, ...] = ()

    def initial_outputs(self) -> dict[str, Level]:
        return {}

    def sample(self, circuit: "Circuit", now: int) -> dict[str, Level]:
        return {}

    def wake(self, circuit: "Circuit", now: int) -> dict[str, Level]:
        return {}


class Circuit:
    """A netlist plus its event queue and trace log.

    All nets start LOW; :meth:`initialize` runs the t=0 settle pass that
    establishes the powered-up steady state.
    """

    def __init__(self):
        self.nets: dict[str, Level] = {}
        self.combinational: list[Combinational] = []
        self.sequential: list[Sequential] = []
        self.queue = EventQueue()
        self.log: list = []
        self.post_settle: list[Callable[["Circuit", int], None]] = []
        self.last_deltas = 0
        self.max_deltas_seen = 0
        self._fanout: dict[str, list[int]] = {}
        self._drivers: dict[str, str] = {}
        self._initialized = False

    @property
    def now(self) -> int:
        return self.queue.now

    # -- construction ---------------------------------------------------

    def add_net(self, name: str) -> str:
        self.nets.setdefault(name, LOW)
        return name

    def _claim(self, outputs: Iterable[str], owner: str) -> None:
        for net in outputs:
            if net in self._drivers:
                raise ValueError(f"net {net!r} already driven by {self._drivers[net]!r}")
            self._drivers[net] = owner
            self.add_net(net)

    def add(self, component: Combinational | Sequential):
        if self._initialized:
            raise RuntimeError("cannot add components after initialization")
        for net in component.inputs:
            self.add_net(net)
        self._claim(component.outputs, component.name)
        if isinstance(component, Combinational):
            index = len(self.combinational)
            self.combinational.append(component)
            for net in component.inputs:
                self._fanout.setdefault(net, []).append(index)
        else:
            self.sequential.append(component)
        return component

    def is_driven(self, net: str) -> bool:
        return net in self._drivers

    def input_nets(self) -> list[str]:
        return sorted(n for n in self.nets if n not in self._drivers)

    # -- records --------------------------------------------------------

    def emit(self, record) -> None:
        self.log.append(record)

    def _set(self, net: str, level: Level, now: int, dirty: set[str]) -> None:
        if self.nets[net] != level:
            self.nets[net] = level
            self.emit(Event(now, len(self.log), net, level))
            dirty.add(net)

    # -- stepping -------------------------------------------------------

    def schedule(self, time: int, net: str, level: Level | int) -> Event:
        if net not in self.nets:
            raise KeyError(f"unknown net {net!r}")
        return self.queue.schedule(time, net, level)

    def initialize(self) -> None:
        if self._initialized:
            return
        self._initialized = True
        dirty: set[str] = set()
        for comp in self.sequential:
            for net, level in comp.initial_outputs().items():
                self._set(net, level, 0, dirty)
        self._settle(0, dirty, evaluate_all=True)
        self._finish_timestamp(0)

    def settle(self, time: int | None = None, full: bool = False) -> int:
        """Settle the circuit at the current time; return delta waves used.

        With ``full`` every combinational component is re-evaluated, which
        on an already settled circuit must change nothing.
        """
        time = self.now if time is None else time
        return self._settle(time, set(), evaluate_all=full)

    def _settle(self, now: int, dirty: set[str], evaluate_all: bool = False) -> int:
        deltas = 0
        first = evaluate_all
        while True:
            while dirty or first:
                deltas += 1
                if deltas > MAX_DELTAS:
                    raise OscillationError(now, dirty)
                if first:
                    targets = range(len(self.combinational))
                    first = False
                else:
                    targets = sorted({i for net in dirty for i in self._fanout.get(net, ())})
                # all gates in one wave see the same pre-wave values
                updates = []
                for i in targets:
                    comp = self.combinational[i]
                    values = comp.evaluate([self.nets[n] for n in comp.inputs])
                    updates.extend(zip(comp.outputs, values))
                dirty = set()
                for net, level in updates:
                    self._set(net, level, now, dirty)
            for comp in self.sequential:
                for net, level in comp.sample(self, now).items():
                    self._set(net, level, now, dirty)
            if not dirty:
                break
        self.last_deltas = deltas
        self.max_deltas_seen = max(self.max_deltas_seen, deltas)
        return deltas

    def _finish_timestamp(self, now: int) -> None:
        for hook in self.post_settle:
            hook(self, now)

    def step(self) -> int | None:
        """Process every entry at the next pending timestamp."""
        time = self.queue.peek_time()
        if time is None:
            return None
        self.queue.now = time
        dirty: set[str] = set()
        for entry in self.queue.pop_due(time):
            if isinstance(entry, Event):
                self._set(entry.net, entry.level, time, dirty)
            else:
                for net, level in entry.target.wake(self, time).items():
                    self._set(net, level, time, dirty)
        self._settle(time, dirty)
        self._finish_timestamp(time)
        return time

    def advance_until(self, deadline: int) -> list[Event]:
        """Process all entries with time <= deadline; return the net changes."""
        if deadline < self.now:
            raise SchedulingError(f"deadline t={deadline} ms is before current t={self.now} ms")
        self.initialize()
        start = len(self.log)
        while True:
            t = self.queue.peek_time()
            if t is None or t > deadline:
                break
            self.step()
        self.queue.now = deadline
        return [r for r in self.log[start:] if isinstance(r, Event)]
