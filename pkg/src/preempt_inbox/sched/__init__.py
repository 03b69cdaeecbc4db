"""Fixed-priority pre-emptive scheduling core."""

from .runqueue import BACKEND, NUM_LEVELS, RunQueue, pick_next
from .scheduler import (
    MAX_PRIORITY,
    EventKind,
    Scheduler,
    SchedulerEvent,
    Task,
    TaskState,
)

__all__ = [
    "BACKEND",
    "MAX_PRIORITY",
    "NUM_LEVELS",
    "EventKind",
    "RunQueue",
    "Scheduler",
    "SchedulerEvent",
    "Task",
    "TaskState",
    "pick_next",
]
