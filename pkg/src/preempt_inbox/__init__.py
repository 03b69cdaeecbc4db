"""Priority-aware message dispatch over a fixed-priority pre-emptive scheduler.

Messages from High contacts pre-empt the running task to flash on screen and
are kept in a Priority inbox alongside the Default one.
"""

from .errors import *  # noqa: F401,F403
from .inbox import (
    InboxName,
    InboxStore,
    StoredMessage,
    append_message,
    load_store,
    read_message,
    save_store,
    view_messages,
)
from .registry import (
    PriorityLevel,
    PriorityRegistry,
    get_priority,
    list_by_level,
    load_registry,
    save_registry,
    set_priority,
)
from .router import (
    FLASH_PRIORITY,
    FLASH_TICKS,
    DecodedMessage,
    Part,
    RawReceiveEvent,
    RouteDecision,
    classify,
    decode_receive,
    on_receive,
    route,
)
from .sched import BACKEND, RunQueue, Scheduler, Task, TaskState, pick_next
from .sim import Trace, format_report, parse_trace, run_trace

__version__ = "0.1.0"
