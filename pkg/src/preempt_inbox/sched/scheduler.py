"""Fixed-priority pre-emptive scheduler over the bitmap run queue.

Priorities run 0..139 with 0 the most urgent. A task runs until it completes
or a strictly more urgent task becomes ready; a pre-empted task goes back to
the head of its level so it resumes before its same-priority peers. Time is
counted in integer ticks and there is no time slicing within a level.

A Scheduler is owned by one logical thread at a time; it carries no locks.
"""

from __future__ import annotations

import copy
import enum
from dataclasses import dataclass, field
from ..errors import DuplicateTaskId, InvariantViolation, PriorityOutOfRange
from .runqueue import NUM_LEVELS, RunQueue

MAX_PRIORITY = NUM_LEVELS - 1


class TaskState(enum.Enum):
    READY = "Ready"
    RUNNING = "Running"
    SUSPENDED = "Suspended"
    DONE = "Done"


class EventKind(enum.Enum):
    DISPATCH = "DISPATCH"
    PREEMPT = "PREEMPT"
    RESUME = "RESUME"
    DONE = "DONE"


@dataclass
class Task:
    id: int
    name: str
    priority: int
    duration: int
    remaining: int = -1
    state: TaskState = TaskState.READY
    executed: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.priority <= MAX_PRIORITY:
            raise PriorityOutOfRange(f"priority {self.priority} outside [0, {MAX_PRIORITY}]")
        if self.duration < 1:
            raise ValueError(f"duration must be >= 1, got {self.duration}")
        if self.remaining == -1:
            self.remaining = self.duration


@dataclass(frozen=True)
class SchedulerEvent:
    tick: int
    kind: EventKind
    subject: int
    by: int | None = None


@dataclass
class Scheduler:
    clock: int = 0
    running: int | None = None
    queue: RunQueue = field(default_factory=RunQueue)
    tasks: dict[int, Task] = field(default_factory=dict)
    event_log: list[SchedulerEvent] = field(default_factory=list)
    _next_id: int = 1

    def new_task(self, name: str, priority: int, duration: int) -> Task:
        """Build a Ready task with a fresh engine-assigned id (not yet queued)."""
        task = Task(self._next_id, name, priority, duration)
        self._next_id += 1
        return task

    def spawn(self, name: str, priority: int, duration: int) -> Task:
        task = self.new_task(name, priority, duration)
        self.enqueue_task(task)
        return task

    def enqueue_task(self, task: Task) -> None:
        if task.id in self.tasks:
            raise DuplicateTaskId(f"task id {task.id} already known")
        if not 0 <= task.priority <= MAX_PRIORITY:
            raise PriorityOutOfRange(f"priority {task.priority} outside [0, {MAX_PRIORITY}]")
        if task.state is not TaskState.READY:
            raise ValueError(f"only Ready tasks can be enqueued, got {task.state.value}")
        self.tasks[task.id] = task
        self._next_id = max(self._next_id, task.id + 1)
        self.queue.push(task.id, task.priority)
        self.preempt_check()

    def preempt_check(self) -> None:
        head = self.queue.peek()
        if head is None:
            return
        nxt = self.tasks[head]
        cur = self.tasks[self.running] if self.running is not None else None
        # equal priority never pre-empts
        if cur is not None and nxt.priority >= cur.priority:
            return
        self.queue.pop()
        if cur is not None:
            cur.state = TaskState.SUSPENDED
            self.queue.push_front(cur.id, cur.priority)
            self._log(EventKind.PREEMPT, cur.id, by=nxt.id)
        kind = EventKind.RESUME if nxt.state is TaskState.SUSPENDED else EventKind.DISPATCH
        nxt.state = TaskState.RUNNING
        self.running = nxt.id
        self._log(kind, nxt.id)

    def step(self, n: int = 1) -> None:
        """Advance the clock by ``n`` ticks.

        Nothing can arrive in the middle of a step, so a running task is
        fast-forwarded to min(n, remaining) in one move; the result is the
        same as n single-tick iterations.
        """
        if n < 1:
            raise ValueError(f"step count must be >= 1, got {n}")
        while n > 0:
            if self.running is None:
                self.clock += n
                return
            task = self.tasks[self.running]
            k = min(n, task.remaining)
            task.remaining -= k
            task.executed += k
            self.clock += k
            n -= k
            if task.remaining == 0:
                task.state = TaskState.DONE
                self.running = None
                self._log(EventKind.DONE, task.id)
                self.preempt_check()

    def advance_to(self, tick: int) -> None:
        if tick > self.clock:
            self.step(tick - self.clock)

    def drain(self) -> None:
        """Step until no task is running or queued."""
        while self.running is not None:
            self.step(self.tasks[self.running].remaining)

    @property
    def idle(self) -> bool:
        return self.running is None and len(self.queue) == 0

    def _log(self, kind: EventKind, subject: int, by: int | None = None) -> None:
        self.event_log.append(SchedulerEvent(self.clock, kind, subject, by))

    def name_of(self, task_id: int) -> str:
        return self.tasks[task_id].name

    def snapshot(self) -> tuple:
        """Hashable image of the whole state, for bit-identity comparisons."""
        return (
            self.clock,
            self.running,
            tuple(tuple(self.queue.level(p)) for p in range(NUM_LEVELS)),
            tuple(
                (t.id, t.name, t.priority, t.duration, t.remaining, t.state, t.executed)
                for t in sorted(self.tasks.values(), key=lambda t: t.id)
            ),
            tuple(self.event_log),
            self._next_id,
        )

    def copy(self) -> "Scheduler":
        return copy.deepcopy(self)

    def check_invariants(self) -> None:
        q = self.queue
        bitmap = q.bitmap
        queued: list[int] = []
        for p in range(NUM_LEVELS):
            level = q.level(p)
            if bool(bitmap >> p & 1) != bool(level):
                raise InvariantViolation(f"bitmap bit {p} disagrees with level occupancy")
            for tid in level:
                if self.tasks[tid].priority != p:
                    raise InvariantViolation(f"task {tid} queued at wrong level {p}")
            queued.extend(level)
        if len(queued) != len(set(queued)) or len(queued) != len(q):
            raise InvariantViolation("task queued more than once")
        for t in self.tasks.values():
            if not 0 <= t.remaining <= t.duration:
                raise InvariantViolation(f"task {t.id} remaining out of range")
            if (t.state is TaskState.DONE) != (t.remaining == 0):
                raise InvariantViolation(f"task {t.id} Done state disagrees with remaining")
            in_queue = t.id in q
            if in_queue != (t.state in (TaskState.READY, TaskState.SUSPENDED)):
                raise InvariantViolation(f"task {t.id} in state {t.state.value} queue={in_queue}")
        if self.running is not None:
            cur = self.tasks[self.running]
            if cur.state is not TaskState.RUNNING:
                raise InvariantViolation("running task not in Running state")
            top = q.top_level()
            if top != -1 and top < cur.priority:
                raise InvariantViolation("pre-emption pending")
        elif len(q):
            raise InvariantViolation("idle CPU with a nonempty run queue")
        running = [t.id for t in self.tasks.values() if t.state is TaskState.RUNNING]
        if running != ([self.running] if self.running is not None else []):
            raise InvariantViolation("Running state disagrees with the running slot")

