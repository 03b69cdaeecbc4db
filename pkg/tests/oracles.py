"""Independent reference models used as test oracles.

None of these import the code under test beyond plain data types.
"""

from __future__ import annotations

import random

from preempt_inbox.sched import EventKind

LEVELS = 140


class LinearScanQueue:
    """Per-level Python lists; selection is a scan of levels 0..139."""

    def __init__(self) -> None:
        self.levels: list[list[int]] = [[] for _ in range(LEVELS)]

    def push(self, task_id: int, prio: int) -> None:
        self.levels[prio].append(task_id)

    def push_front(self, task_id: int, prio: int) -> None:
        self.levels[prio].insert(0, task_id)

    def peek(self):
        for level in self.levels:
            if level:
                return level[0]
        return None

    def pop(self) -> int:
        for level in self.levels:
            if level:
                return level.pop(0)
        raise IndexError

    def __len__(self) -> int:
        return sum(map(len, self.levels))


class ReferenceScheduler:
    """Tick-at-a-time fixed-priority pre-emptive scheduler.

    Pre-empted tasks go to the front of their level; equal priority does not
    pre-empt. Produces (tick, kind, subject, by) tuples.
    """

    def __init__(self) -> None:
        self.clock = 0
        self.running: int | None = None
        self.prio: dict[int, int] = {}
        self.remaining: dict[int, int] = {}
        self.suspended: set[int] = set()
        self.ready = LinearScanQueue()
        self.log: list[tuple] = []

    def add(self, task_id: int, prio: int, duration: int) -> None:
        self.prio[task_id] = prio
        self.remaining[task_id] = duration
        self.ready.push(task_id, prio)
        self._settle()

    def _settle(self) -> None:
        head = self.ready.peek()
        if head is None:
            return
        if self.running is not None and self.prio[head] >= self.prio[self.running]:
            return
        self.ready.pop()
        if self.running is not None:
            cur = self.running
            self.suspended.add(cur)
            self.ready.push_front(cur, self.prio[cur])
            self.log.append((self.clock, EventKind.PREEMPT, cur, head))
        kind = EventKind.RESUME if head in self.suspended else EventKind.DISPATCH
        self.suspended.discard(head)
        self.running = head
        self.log.append((self.clock, kind, head, None))

    def tick(self) -> None:
        self.clock += 1
        if self.running is None:
            return
        self.remaining[self.running] -= 1
        if self.remaining[self.running] == 0:
            self.log.append((self.clock, EventKind.DONE, self.running, None))
            self.running = None
            self._settle()


def executed_ticks_from_log(events) -> dict[int, int]:
    """Per-task running time from Dispatch/Resume .. Preempt/Done spans."""
    started: dict[int, int] = {}
    total: dict[int, int] = {}
    for ev in events:
        if ev.kind in (EventKind.DISPATCH, EventKind.RESUME):
            started[ev.subject] = ev.tick
        else:
            total[ev.subject] = total.get(ev.subject, 0) + ev.tick - started.pop(ev.subject)
    return total


def naive_contains(haystack: str, needle: str) -> bool:
    n = len(needle)
    return any(haystack[i:i + n] == needle for i in range(len(haystack) - n + 1))


ADDRESS_POOL = ["5554", "5556", "5558", "555", "15554", "5560", "9"]


def random_trace_text(rng: random.Random, n_events: int = 30, high_share: float = 0.5) -> str:
    """Random trace text: tasks, SETPRIO changes, SMS from a small contact pool."""
    lines = []
    tick = 0
    for i in range(n_events):
        tick += rng.choice([0, 0, 1, 2, 5])
        r = rng.random()
        addr = rng.choice(ADDRESS_POOL)
        if r < 0.15:
            level = "HIGH" if rng.random() < high_share else "DEFAULT"
            lines.append(f"{tick} SETPRIO {addr} {level}")
        elif r < 0.45:
            lines.append(f"{tick} TASK t{i} {rng.randrange(140)} {rng.randint(1, 12)}")
        elif r < 0.9:
            lines.append(f"{tick} SMS {addr} m{i} body")
        elif r < 0.95:
            lines.append(f"{tick} ADVANCE {rng.randint(1, 4)}")
        else:
            lines.append(f"{tick} VIEW {rng.choice(['DEFAULT', 'PRIORITY'])} {addr[:2]}")
    return "\n".join(lines) + "\n"
