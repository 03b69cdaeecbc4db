"""Contact priority registry.

Only High contacts are stored; any address not present is Default. The
registry is an immutable value, so every mutating operation returns a new
instance.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import BinaryIO, Iterable, Mapping

from .errors import InvalidAddress, IoFailure, ParseFailure, UnsupportedLevel


class PriorityLevel(enum.IntEnum):
    DEFAULT = 0
    HIGH = 1

    @property
    def token(self) -> str:
        return self.name

    @classmethod
    def parse(cls, text: str) -> "PriorityLevel":
        try:
            return cls[text.upper()]
        except KeyError:
            raise ValueError(f"unknown priority level {text!r}") from None


def validate_address(addr: str) -> str:
    # str.isdigit() accepts superscripts and other unicode digits
    if not isinstance(addr, str) or not addr or not all("0" <= c <= "9" for c in addr):
        raise InvalidAddress(f"contact address must be a nonempty digit string, got {addr!r}")
    return addr


@dataclass(frozen=True)
class PriorityRegistry:
    high: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        for addr in self.high:
            validate_address(addr)

    @classmethod
    def of(cls, addresses: Iterable[str]) -> "PriorityRegistry":
        return cls(frozenset(addresses))

    @property
    def entries(self) -> Mapping[str, PriorityLevel]:
        return {addr: PriorityLevel.HIGH for addr in sorted(self.high)}

    def __len__(self) -> int:
        return len(self.high)


def set_priority(reg: PriorityRegistry, addr: str, level: PriorityLevel) -> PriorityRegistry:
    validate_address(addr)
    if level is PriorityLevel.HIGH:
        return PriorityRegistry(reg.high | {addr})
    return PriorityRegistry(reg.high - {addr})


def get_priority(reg: PriorityRegistry, addr: str) -> PriorityLevel:
    validate_address(addr)
    return PriorityLevel.HIGH if addr in reg.high else PriorityLevel.DEFAULT


def list_by_level(reg: PriorityRegistry, level: PriorityLevel) -> list[str]:
    """Return every High contact in ascending lexicographic order.

    Default contacts cannot be enumerated since any address not in the
    registry is Default.
    """
    if level is not PriorityLevel.HIGH:
        raise UnsupportedLevel("only High contacts can be listed")
    return sorted(reg.high)


def dumps_registry(reg: PriorityRegistry) -> bytes:
    return "".join(f"{addr}\tHIGH\n" for addr in sorted(reg.high)).encode("utf-8")


def loads_registry(data: bytes) -> PriorityRegistry:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseFailure(1, f"not UTF-8: {exc}") from None
    if text and not text.endswith("\n"):
        raise ParseFailure(text.count("\n") + 1, "missing final newline")
    high: set[str] = set()
    for lineno, line in enumerate(text.split("\n")[:-1], start=1):
        parts = line.split("\t")
        if len(parts) != 2:
            raise ParseFailure(lineno, f"expected '<address>\\tHIGH', got {line!r}")
        addr, token = parts
        if token != "HIGH":
            raise ParseFailure(lineno, f"unknown level token {token!r}")
        try:
            validate_address(addr)
        except InvalidAddress as exc:
            raise ParseFailure(lineno, str(exc)) from None
        if addr in high:
            raise ParseFailure(lineno, f"duplicate address {addr}")
        high.add(addr)
    return PriorityRegistry(frozenset(high))


def save_registry(reg: PriorityRegistry, sink: BinaryIO) -> None:
    try:
        sink.write(dumps_registry(reg))
    except OSError as exc:
        raise IoFailure(str(exc)) from exc


def load_registry(source: BinaryIO) -> PriorityRegistry:
    try:
        data = source.read()
    except OSError as exc:
        raise IoFailure(str(exc)) from exc
    return loads_registry(data)
