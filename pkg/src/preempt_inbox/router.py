"""Incoming message handling: decode, classify by sender, route.

A message from a High contact is stored in the Priority and Default
inboxes and then flashed by enqueuing a short top-priority task, which
pre-empts whatever is running. A Default message is stored in the
Default inbox and touches nothing else.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .errors import EmptyParts, MixedOrigins
from .inbox import InboxName, InboxStore, StoredMessage
from .registry import PriorityLevel, PriorityRegistry, get_priority, validate_address
from .sched import Scheduler

FLASH_PRIORITY = 0
FLASH_TICKS = 1
DEFAULT_FOREGROUND_PRIORITY = 100

SEPARATOR = " :"


@dataclass(frozen=True)
class Part:
    origin: str
    body: str


@dataclass(frozen=True)
class RawReceiveEvent:
    tick: int
    parts: tuple[Part, ...]

    @classmethod
    def single(cls, tick: int, origin: str, body: str) -> "RawReceiveEvent":
        return cls(tick, (Part(origin, body),))


@dataclass(frozen=True)
class DecodedMessage:
    id: int
    origin: str
    body: str
    display_text: str
    tick: int

    def stored(self) -> StoredMessage:
        return StoredMessage(self.id, self.origin, self.body, self.display_text, self.tick)


@dataclass(frozen=True)
class RouteDecision:
    level: PriorityLevel
    flash: bool
    boxes: tuple[InboxName, ...]


@dataclass(frozen=True)
class Stored:
    box: InboxName
    id: int
    tick: int


@dataclass(frozen=True)
class Flashed:
    id: int
    display_text: str
    tick: int
    task_id: int


RouterEvent = Union[Stored, Flashed]


def decode_receive(raw: RawReceiveEvent, next_id: int) -> DecodedMessage:
    parts: Sequence[Part] = raw.parts
    if not parts:
        raise EmptyParts("receive event has no parts")
    origin = parts[0].origin
    if any(p.origin != origin for p in parts):
        raise MixedOrigins(f"parts disagree on origin: {sorted({p.origin for p in parts})}")
    validate_address(origin)
    body = "".join(p.body for p in parts)
    # the origin is repeated in front of every part, not just the first
    display = "".join(p.origin + SEPARATOR + p.body for p in parts)
    return DecodedMessage(next_id, origin, body, display, raw.tick)


def classify(msg: DecodedMessage, reg: PriorityRegistry) -> PriorityLevel:
    return get_priority(reg, msg.origin)


_HIGH = RouteDecision(PriorityLevel.HIGH, True, (InboxName.PRIORITY, InboxName.DEFAULT))
_DEFAULT = RouteDecision(PriorityLevel.DEFAULT, False, (InboxName.DEFAULT,))


def route(msg: DecodedMessage, level: PriorityLevel) -> RouteDecision:
    return _HIGH if level is PriorityLevel.HIGH else _DEFAULT


def on_receive(
    raw: RawReceiveEvent,
    reg: PriorityRegistry,
    sched: Scheduler,
    store: InboxStore,
    next_id: int | None = None,
) -> list[RouterEvent]:
    """Handle one incoming message, mutating ``sched`` and ``store`` in place.

    Message ids default to the store's next id. Stores are applied before
    the flash task is enqueued, so the message is durable even if flashing
    fails. Scheduler events caused by the flash go to ``sched.event_log``
    and fall between the Stored events and the Flashed event.
    """
    msg = decode_receive(raw, store.next_id() if next_id is None else next_id)
    decision = route(msg, classify(msg, reg))
    events: list[RouterEvent] = []
    record = msg.stored()
    for box in decision.boxes:
        store.check_append(box, msg.id)
    for box in decision.boxes:
        store.append(box, record)
        events.append(Stored(box, msg.id, sched.clock))
    if decision.flash:
        task = sched.spawn(f"flash:{msg.id}", FLASH_PRIORITY, FLASH_TICKS)
        events.append(Flashed(msg.id, msg.display_text, sched.clock, task.id))
    return events
