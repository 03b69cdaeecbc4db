"""Dual inbox storage: every message lands in Default, High-contact
messages are additionally copied into Priority.

The Priority inbox holds independent records that share ids with their
Default counterparts. Persistence is JSON Lines, one record per
(box, message) pair, Default box first.
"""

from __future__ import annotations

import bisect
import enum
import json
from dataclasses import dataclass, field
from typing import BinaryIO

from .errors import (
    DuplicateId,
    IndexOutOfRange,
    InvalidAddress,
    InvariantViolation,
    IoFailure,
    ParseFailure,
)
from .registry import validate_address


class InboxName(enum.Enum):
    DEFAULT = "Default"
    PRIORITY = "Priority"

    @classmethod
    def parse(cls, text: str) -> "InboxName":
        for box in cls:
            if box.value.lower() == text.lower():
                return box
        raise ValueError(f"unknown inbox {text!r}")


BOX_ORDER = (InboxName.DEFAULT, InboxName.PRIORITY)
RECORD_KEYS = ("box", "id", "origin", "body", "display_text", "tick")


@dataclass(frozen=True)
class StoredMessage:
    id: int
    origin: str
    body: str
    display_text: str
    tick: int


@dataclass
class InboxStore:
    boxes: dict[InboxName, list[StoredMessage]] = field(
        default_factory=lambda: {box: [] for box in BOX_ORDER}
    )

    def __getitem__(self, box: InboxName) -> list[StoredMessage]:
        return self.boxes[box]

    def ids(self, box: InboxName) -> list[int]:
        return [m.id for m in self.boxes[box]]

    def next_id(self) -> int:
        # every message reaches Default, so its tail holds the largest id
        default = self.boxes[InboxName.DEFAULT]
        return default[-1].id + 1 if default else 1

    def check_append(self, box: InboxName, msg_id: int) -> None:
        """Raise if ``msg_id`` cannot go at the tail of ``box``."""
        messages = self.boxes[box]
        if messages and msg_id <= messages[-1].id:
            i = bisect.bisect_left(messages, msg_id, key=lambda m: m.id)
            if i < len(messages) and messages[i].id == msg_id:
                raise DuplicateId(f"message {msg_id} already in {box.value} inbox")
            raise InvariantViolation(
                f"id {msg_id} would break increasing order in {box.value} inbox"
            )

    def append(self, box: InboxName, msg: StoredMessage) -> None:
        self.check_append(box, msg.id)
        self.boxes[box].append(msg)

    def check_invariants(self) -> None:
        for box in BOX_ORDER:
            ids = self.ids(box)
            if any(a >= b for a, b in zip(ids, ids[1:])):
                raise InvariantViolation(f"{box.value} inbox ids not strictly increasing")
        orphans = set(self.ids(InboxName.PRIORITY)) - set(self.ids(InboxName.DEFAULT))
        if orphans:
            raise InvariantViolation(f"Priority ids missing from Default: {sorted(orphans)}")


def append_message(store: InboxStore, box: InboxName, msg: StoredMessage) -> InboxStore:
    store.append(box, msg)
    return store


def view_messages(store: InboxStore, box: InboxName, contact_filter: str) -> list[StoredMessage]:
    """Messages in ``box`` whose origin contains ``contact_filter``.

    This is substring containment, not equality: "555" matches both "5554"
    and "5556", and the empty filter matches everything.
    """
    return [m for m in store.boxes[box] if contact_filter in m.origin]


def read_message(store: InboxStore, box: InboxName, index: int) -> str:
    messages = store.boxes[box]
    if not 0 <= index < len(messages):
        raise IndexOutOfRange(f"{box.value} inbox has {len(messages)} messages, no index {index}")
    return messages[index].display_text


def encode_record(box: InboxName, msg: StoredMessage) -> str:
    record = {
        "box": box.value,
        "id": msg.id,
        "origin": msg.origin,
        "body": msg.body,
        "display_text": msg.display_text,
        "tick": msg.tick,
    }
    return json.dumps(record, ensure_ascii=False, separators=(",", ":"))


def dumps_store(store: InboxStore) -> bytes:
    lines = [encode_record(box, m) + "\n" for box in BOX_ORDER for m in store.boxes[box]]
    return "".join(lines).encode("utf-8")


def _decode_record(lineno: int, line: str) -> tuple[InboxName, StoredMessage]:
    try:
        record = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ParseFailure(lineno, f"invalid JSON: {exc.msg}") from None
    if not isinstance(record, dict) or tuple(record) != RECORD_KEYS:
        raise ParseFailure(lineno, f"expected an object with keys {', '.join(RECORD_KEYS)}")
    try:
        box = InboxName(record["box"])
    except ValueError:
        raise ParseFailure(lineno, f"unknown box {record['box']!r}") from None
    for key in ("id", "tick"):
        if type(record[key]) is not int or record[key] < 0:
            raise ParseFailure(lineno, f"{key} must be a nonnegative integer")
    for key in ("origin", "body", "display_text"):
        if not isinstance(record[key], str):
            raise ParseFailure(lineno, f"{key} must be a string")
    try:
        validate_address(record["origin"])
    except InvalidAddress as exc:
        raise ParseFailure(lineno, str(exc)) from None
    msg = StoredMessage(
        record["id"], record["origin"], record["body"], record["display_text"], record["tick"]
    )
    return box, msg


def loads_store(data: bytes) -> InboxStore:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseFailure(1, f"not UTF-8: {exc}") from None
    store = InboxStore()
    seen_priority = False
    lines = text.split("\n")
    if lines[-1] == "":
        lines.pop()
    # split on LF only: JSON leaves U+2028 and friends unescaped
    for lineno, line in enumerate(lines, start=1):
        box, msg = _decode_record(lineno, line)
        if box is InboxName.PRIORITY:
            seen_priority = True
        elif seen_priority:
            raise ParseFailure(lineno, "Default record after Priority records")
        try:
            store.append(box, msg)
        except (DuplicateId, InvariantViolation) as exc:
            raise ParseFailure(lineno, str(exc)) from None
    store.check_invariants()
    return store


def save_store(store: InboxStore, sink: BinaryIO) -> None:
    try:
        sink.write(dumps_store(store))
    except OSError as exc:
        raise IoFailure(str(exc)) from exc


def load_store(source: BinaryIO) -> InboxStore:
    try:
        data = source.read()
    except OSError as exc:
        raise IoFailure(str(exc)) from exc
    return loads_store(data)
