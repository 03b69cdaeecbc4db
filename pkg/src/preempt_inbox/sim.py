"""Trace-driven replay of message-arrival scenarios.

A trace is a text file with one event per line::

    <tick> SETPRIO <address> HIGH|DEFAULT
    <tick> TASK <name> <priority 0-139> <duration >= 1>
    <tick> SMS <origin> <body to end of line>
    <tick> VIEW DEFAULT|PRIORITY [filter]
    <tick> ADVANCE <n >= 1>

Blank lines and lines starting with ``#`` are skipped; ticks must not
decrease. Before applying an event at tick T the scheduler is stepped to
exactly T; events sharing a tick apply in file order. After the last event
the scheduler runs until idle.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

from .errors import InvalidAddress, ParseFailure, PreemptInboxError, RuntimeFailure
from .inbox import InboxName, InboxStore, view_messages
from .registry import PriorityLevel, PriorityRegistry, set_priority, validate_address
from .router import Flashed, RawReceiveEvent, Stored, on_receive
from .sched import MAX_PRIORITY, EventKind, Scheduler, SchedulerEvent

REPORT_HEADER = "# preempt-inbox report v1"


@dataclass(frozen=True)
class SetPrio:
    addr: str
    level: PriorityLevel


@dataclass(frozen=True)
class TaskStart:
    name: str
    priority: int
    duration: int


@dataclass(frozen=True)
class Sms:
    origin: str
    body: str


@dataclass(frozen=True)
class View:
    box: InboxName
    filter: str = ""


@dataclass(frozen=True)
class Advance:
    n: int


Action = Union[SetPrio, TaskStart, Sms, View, Advance]


@dataclass(frozen=True)
class ScenarioEvent:
    tick: int
    action: Action
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Trace:
    events: tuple[ScenarioEvent, ...] = ()


_LINE_RE = re.compile(r"\s*(\S+)\s+(\S+)(?:[ \t](.*))?")
_INT_RE = re.compile(r"[0-9]+")


def _int(lineno: int, token: str, what: str) -> int:
    if not _INT_RE.fullmatch(token):
        raise ParseFailure(lineno, f"{what} must be a nonnegative integer, got {token!r}")
    return int(token)


def _addr(lineno: int, token: str) -> str:
    try:
        return validate_address(token)
    except InvalidAddress as exc:
        raise ParseFailure(lineno, str(exc)) from None


def _parse_action(lineno: int, verb: str, rest: str) -> Action:
    args = rest.split()
    if verb == "SMS":
        # the body runs to end of line, inner whitespace included
        m = re.fullmatch(r"\s*(\S+)(?: (.*))?", rest)
        if m is None:
            raise ParseFailure(lineno, "SMS needs an origin address")
        return Sms(_addr(lineno, m.group(1)), m.group(2) or "")
    if verb == "SETPRIO":
        if len(args) != 2 or args[1] not in ("HIGH", "DEFAULT"):
            raise ParseFailure(lineno, "expected SETPRIO <address> HIGH|DEFAULT")
        return SetPrio(_addr(lineno, args[0]), PriorityLevel[args[1]])
    if verb == "TASK":
        if len(args) != 3:
            raise ParseFailure(lineno, "expected TASK <name> <priority> <duration>")
        prio = _int(lineno, args[1], "priority")
        if prio > MAX_PRIORITY:
            raise ParseFailure(lineno, f"priority {prio} outside [0, {MAX_PRIORITY}]")
        duration = _int(lineno, args[2], "duration")
        if duration < 1:
            raise ParseFailure(lineno, "duration must be >= 1")
        return TaskStart(args[0], prio, duration)
    if verb == "VIEW":
        if not 1 <= len(args) <= 2 or args[0] not in ("DEFAULT", "PRIORITY"):
            raise ParseFailure(lineno, "expected VIEW DEFAULT|PRIORITY [filter]")
        return View(InboxName.parse(args[0]), args[1] if len(args) == 2 else "")
    if verb == "ADVANCE":
        if len(args) != 1:
            raise ParseFailure(lineno, "expected ADVANCE <n>")
        n = _int(lineno, args[0], "advance count")
        if n < 1:
            raise ParseFailure(lineno, "advance count must be >= 1")
        return Advance(n)
    raise ParseFailure(lineno, f"unknown verb {verb!r}")


def parse_trace(source: str) -> Trace:
    events: list[ScenarioEvent] = []
    last_tick = 0
    for lineno, line in enumerate(source.split("\n"), start=1):
        line = line.removesuffix("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        m = _LINE_RE.fullmatch(line)
        if m is None:
            raise ParseFailure(lineno, f"expected '<tick> <VERB> ...', got {line!r}")
        tick = _int(lineno, m.group(1), "tick")
        if tick < last_tick:
            raise ParseFailure(lineno, f"tick {tick} is before previous tick {last_tick}")
        last_tick = tick
        events.append(ScenarioEvent(tick, _parse_action(lineno, m.group(2), m.group(3) or ""), lineno))
    return Trace(tuple(events))


def load_trace(path: str | Path) -> Trace:
    return parse_trace(Path(path).read_text(encoding="utf-8"))


def quote(text: str) -> str:
    return json.dumps(text, ensure_ascii=False)


@dataclass
class SimReport:
    lines: list[str] = field(default_factory=list)
    registry: PriorityRegistry = field(default_factory=PriorityRegistry, compare=False)
    store: InboxStore = field(default_factory=InboxStore, compare=False)
    scheduler: Scheduler = field(default_factory=Scheduler, compare=False)


class Simulation:
    """Mutable replay state; ``run_trace`` is the usual entry point."""

    def __init__(self, registry: PriorityRegistry | None = None) -> None:
        self.registry = registry if registry is not None else PriorityRegistry()
        self.store = InboxStore()
        self.scheduler = Scheduler()
        self.lines: list[str] = []
        self._flushed = 0

    def _sched_line(self, ev: SchedulerEvent) -> str:
        name = self.scheduler.name_of(ev.subject)
        if ev.kind is EventKind.PREEMPT:
            return f"t={ev.tick} PREEMPT {name} by {self.scheduler.name_of(ev.by)}"
        return f"t={ev.tick} {ev.kind.value} {name}"

    def _flush(self) -> None:
        log = self.scheduler.event_log
        self.lines.extend(self._sched_line(ev) for ev in log[self._flushed:])
        self._flushed = len(log)

    def apply(self, ev: ScenarioEvent) -> None:
        sched = self.scheduler
        sched.advance_to(ev.tick)
        self._flush()
        action = ev.action
        if isinstance(action, SetPrio):
            self.registry = set_priority(self.registry, action.addr, action.level)
        elif isinstance(action, TaskStart):
            sched.spawn(action.name, action.priority, action.duration)
        elif isinstance(action, Sms):
            raw = RawReceiveEvent.single(ev.tick, action.origin, action.body)
            events = on_receive(raw, self.registry, sched, self.store)
            for rev in events:
                if isinstance(rev, Stored):
                    self.lines.append(f"t={rev.tick} STORE {rev.box.value} {rev.id}")
            # the flash task's Dispatch/Preempt sit between the stores and the flash
            self._flush()
            for rev in events:
                if isinstance(rev, Flashed):
                    self.lines.append(f"t={rev.tick} FLASH {quote(rev.display_text)}")
        elif isinstance(action, View):
            matches = view_messages(self.store, action.box, action.filter)
            self.lines.append(f"t={sched.clock} VIEW {action.box.value} {len(matches)}")
            self.lines.extend(f"  {m.id} {m.origin} {quote(m.display_text)}" for m in matches)
        elif isinstance(action, Advance):
            sched.step(action.n)
        self._flush()

    def finish(self) -> SimReport:
        self.scheduler.drain()
        self._flush()
        return SimReport(list(self.lines), self.registry, self.store, self.scheduler)


def run_trace(trace: Trace, registry: PriorityRegistry | None = None) -> SimReport:
    sim = Simulation(registry)
    for ev in trace.events:
        try:
            sim.apply(ev)
        except PreemptInboxError as exc:
            raise RuntimeFailure(ev.line, str(exc)) from exc
    return sim.finish()


def format_report(report: SimReport) -> bytes:
    return "".join(line + "\n" for line in [REPORT_HEADER, *report.lines]).encode("utf-8")
