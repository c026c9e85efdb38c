"""Scenario files: parsing, formatting, and running them on a door system.

Grammar (line oriented, ``#`` starts a comment, blank lines ignored)::

    duration <ms>
    person <in|out> at=<ms> [dwell=<ms>]
    set <net> <0|1> at=<ms>
    config <key> <value>
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .door import DEFAULT_DWELL_MS, STIMULUS_NETS, DoorSystem, SystemConfig
from .engine import Level


class ScenarioParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class PersonEvent:
    direction: str
    at: int
    dwell_ms: int = DEFAULT_DWELL_MS

    def __post_init__(self):
        if self.direction not in ("IN", "OUT"):
            raise ValueError(f"direction must be IN or OUT, got {self.direction!r}")
        if self.dwell_ms < 1:
            raise ValueError(f"dwell_ms must be >= 1, got {self.dwell_ms}")


@dataclass(frozen=True)
class RawEvent:
    net: str
    level: Level
    at: int


@dataclass
class Scenario:
    duration_ms: int
    events: list[PersonEvent | RawEvent] = field(default_factory=list)
    config: dict[str, int] = field(default_factory=dict)

    def system_config(self) -> SystemConfig:
        return SystemConfig(**self.config)

    def people(self) -> list[PersonEvent]:
        return [e for e in self.events if isinstance(e, PersonEvent)]


_UINT = re.compile(r"0|[1-9][0-9]*")


def _uint(text: str, what: str, lineno: int) -> int:
    if not _UINT.fullmatch(text):
        raise ScenarioParseError(f"malformed integer for {what}: {text!r}", lineno)
    return int(text)


def _options(tokens: list[str], allowed: set[str], lineno: int) -> dict[str, int]:
    opts: dict[str, int] = {}
    for tok in tokens:
        key, sep, value = tok.partition("=")
        if not sep or key not in allowed:
            raise ScenarioParseError(f"unexpected argument {tok!r}", lineno)
        if key in opts:
            raise ScenarioParseError(f"duplicate argument {key!r}", lineno)
        opts[key] = _uint(value, key, lineno)
    return opts


def parse_scenario(text: str) -> Scenario:
    duration: int | None = None
    events: list[tuple[int, int, PersonEvent | RawEvent]] = []
    config: dict[str, int] = {}
    config_keys = set(SystemConfig.keys())

    for lineno, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        directive, args = tokens[0], tokens[1:]
        if directive == "duration":
            if duration is not None:
                raise ScenarioParseError("duplicate 'duration' directive", lineno)
            if len(args) != 1:
                raise ScenarioParseError("usage: duration <ms>", lineno)
            duration = _uint(args[0], "duration", lineno)
        elif directive == "person":
            if not args or args[0].lower() not in ("in", "out"):
                raise ScenarioParseError("usage: person <in|out> at=<ms> [dwell=<ms>]", lineno)
            opts = _options(args[1:], {"at", "dwell"}, lineno)
            if "at" not in opts:
                raise ScenarioParseError("person event needs at=<ms>", lineno)
            dwell = opts.get("dwell", DEFAULT_DWELL_MS)
            if dwell < 1:
                raise ScenarioParseError("dwell must be at least 1 ms", lineno)
            events.append((lineno, opts["at"], PersonEvent(args[0].upper(), opts["at"], dwell)))
        elif directive == "set":
            if len(args) != 3:
                raise ScenarioParseError("usage: set <net> <0|1> at=<ms>", lineno)
            net, level = args[0], args[1]
            if net not in STIMULUS_NETS:
                raise ScenarioParseError(
                    f"unknown net {net!r} (settable nets: {', '.join(STIMULUS_NETS)})", lineno)
            if level not in ("0", "1"):
                raise ScenarioParseError(f"level must be 0 or 1, got {level!r}", lineno)
            opts = _options(args[2:], {"at"}, lineno)
            if "at" not in opts:
                raise ScenarioParseError("set needs at=<ms>", lineno)
            events.append((lineno, opts["at"], RawEvent(net, Level(int(level)), opts["at"])))
        elif directive == "config":
            if len(args) != 2:
                raise ScenarioParseError("usage: config <key> <value>", lineno)
            if args[0] not in config_keys:
                raise ScenarioParseError(f"unknown config key {args[0]!r}", lineno)
            config[args[0]] = _uint(args[1], args[0], lineno)
        else:
            raise ScenarioParseError(f"unknown directive {directive!r}", lineno)

    if duration is None:
        raise ScenarioParseError("missing required 'duration' directive")
    for lineno, at, _ in events:
        if at > duration:
            raise ScenarioParseError(f"event at t={at} ms is after duration {duration} ms", lineno)
    try:
        SystemConfig(**config)
    except ValueError as exc:
        raise ScenarioParseError(f"invalid config: {exc}") from None

    # stable sort keeps file order among equal times
    events.sort(key=lambda e: e[1])
    return Scenario(duration, [e for _, _, e in events], config)


def format_scenario(scenario: Scenario) -> str:
    lines = [f"duration {scenario.duration_ms}"]
    lines += [f"config {k} {v}" for k, v in scenario.config.items()]
    for e in scenario.events:
        if isinstance(e, PersonEvent):
            lines.append(f"person {e.direction.lower()} at={e.at} dwell={e.dwell_ms}")
        else:
            lines.append(f"set {e.net} {int(e.level)} at={e.at}")
    return "\n".join(lines) + "\n"


def run_scenario(scenario: Scenario, until: int | None = None,
                 sample_ms: int | None = None) -> DoorSystem:
    """Build the system, inject the scenario, and advance to the end."""
    system = DoorSystem(scenario.system_config())
    end = max(scenario.duration_ms, until or 0)
    if sample_ms:
        system.enable_sampling(sample_ms, end)
    for e in scenario.events:
        if isinstance(e, PersonEvent):
            system.inject_person(e.direction, e.at, e.dwell_ms)
        else:
            system.set_net(e.net, e.level, e.at)
    system.advance_until(end)
    return system
