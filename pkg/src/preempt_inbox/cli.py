"""Command-line front end.

Exit codes: 0 success, 1 parse failure (bad arguments or malformed input
files), 2 runtime failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import InvalidAddress, IoFailure, ParseFailure, PreemptInboxError, RuntimeFailure
from .inbox import InboxName, load_store, read_message, save_store, view_messages
from .registry import (
    PriorityLevel,
    PriorityRegistry,
    list_by_level,
    load_registry,
    save_registry,
    set_priority,
)
from .sim import format_report, load_trace, quote, run_trace

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_RUNTIME = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _read_registry(path: Path) -> PriorityRegistry:
    if not path.exists():
        return PriorityRegistry()
    with path.open("rb") as fh:
        return load_registry(fh)


def _write_registry(reg: PriorityRegistry, path: Path) -> None:
    with path.open("wb") as fh:
        save_registry(reg, fh)


def cmd_simulate(args: argparse.Namespace) -> int:
    trace = load_trace(args.trace)
    registry = _read_registry(args.registry) if args.registry else None
    report = run_trace(trace, registry)
    data = format_report(report)
    if args.report:
        args.report.write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    if args.store:
        with args.store.open("wb") as fh:
            save_store(report.store, fh)
    if args.registry:
        _write_registry(report.registry, args.registry)
    return EXIT_OK


def cmd_priority_set(args: argparse.Namespace) -> int:
    reg = _read_registry(args.registry)
    reg = set_priority(reg, args.addr, PriorityLevel.parse(args.level))
    _write_registry(reg, args.registry)
    return EXIT_OK


def cmd_priority_list(args: argparse.Namespace) -> int:
    for addr in list_by_level(_read_registry(args.registry), PriorityLevel.HIGH):
        print(addr)
    return EXIT_OK


def _open_store(path: Path):
    with path.open("rb") as fh:
        return load_store(fh)


def cmd_inbox_view(args: argparse.Namespace) -> int:
    box = InboxName.parse(args.box)
    matches = view_messages(_open_store(args.store), box, args.filter)
    print(f"VIEW {box.value} {len(matches)}")
    for m in matches:
        print(f"  {m.id} {m.origin} {quote(m.display_text)}")
    return EXIT_OK


def cmd_inbox_read(args: argparse.Namespace) -> int:
    print(read_message(_open_store(args.store), InboxName.parse(args.box), args.index))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="preempt-inbox", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("simulate", help="replay a trace file and print the event report")
    p.add_argument("trace", type=Path)
    p.add_argument("--store", type=Path, help="write the final inboxes here (JSON Lines)")
    p.add_argument(
        "--registry", type=Path,
        help="seed contact priorities from this file if it exists; the final registry is written back",
    )
    p.add_argument("--report", type=Path, help="write the report here instead of stdout")
    p.set_defaults(func=cmd_simulate)

    prio = sub.add_parser("priority", help="manage High priority contacts")
    prio_sub = prio.add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = prio_sub.add_parser("set")
    p.add_argument("addr")
    p.add_argument("level", choices=["high", "default"], type=str.lower)
    p.add_argument("--registry", type=Path, required=True)
    p.set_defaults(func=cmd_priority_set)
    p = prio_sub.add_parser("list")
    p.add_argument("--registry", type=Path, required=True)
    p.set_defaults(func=cmd_priority_list)

    inbox = sub.add_parser("inbox", help="browse a saved inbox store")
    inbox_sub = inbox.add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = inbox_sub.add_parser("view")
    p.add_argument("box", choices=["default", "priority"], type=str.lower)
    p.add_argument("--filter", default="")
    p.add_argument("--store", type=Path, required=True)
    p.set_defaults(func=cmd_inbox_view)
    p = inbox_sub.add_parser("read", help="print one message's display text by position")
    p.add_argument("box", choices=["default", "priority"], type=str.lower)
    p.add_argument("index", type=int)
    p.add_argument("--store", type=Path, required=True)
    p.set_defaults(func=cmd_inbox_read)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseFailure, InvalidAddress) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except RuntimeFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except (PreemptInboxError, IoFailure, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
