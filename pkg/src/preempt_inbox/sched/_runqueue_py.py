"""Pure-Python bitmap run queue.

Used when the compiled ``_runqueue`` extension is unavailable, or when
``PREEMPT_INBOX_PURE=1`` is set. Behaviour is identical to the extension.
"""

from __future__ import annotations

from collections import deque

NUM_LEVELS = 140


class RunQueue:
    """140 FIFO levels plus an occupancy bitmap held in a single int.

    Bit ``p`` of the bitmap is set iff level ``p`` is nonempty, so the most
    urgent level is the lowest set bit.
    """

    __slots__ = ("_levels", "_bitmap", "_members")

    def __init__(self) -> None:
        self._levels = [deque() for _ in range(NUM_LEVELS)]
        self._bitmap = 0
        self._members = set()

    def _check(self, task_id: int, prio: int) -> None:
        if not 0 <= prio < NUM_LEVELS:
            raise ValueError(f"priority {prio} outside [0, {NUM_LEVELS - 1}]")
        if task_id in self._members:
            raise KeyError(f"task {task_id} already queued")

    def push(self, task_id: int, prio: int) -> None:
        self._check(task_id, prio)
        self._levels[prio].append(task_id)
        self._members.add(task_id)
        self._bitmap |= 1 << prio

    def push_front(self, task_id: int, prio: int) -> None:
        self._check(task_id, prio)
        self._levels[prio].appendleft(task_id)
        self._members.add(task_id)
        self._bitmap |= 1 << prio

    def top_level(self) -> int:
        """Lowest nonempty level, or -1 when the queue is empty."""
        b = self._bitmap
        return (b & -b).bit_length() - 1

    def peek(self):
        b = self._bitmap
        if not b:
            return None
        return self._levels[(b & -b).bit_length() - 1][0]

    def pop(self) -> int:
        b = self._bitmap
        if not b:
            raise IndexError("pop from empty run queue")
        prio = (b & -b).bit_length() - 1
        level = self._levels[prio]
        task_id = level.popleft()
        if not level:
            self._bitmap = b & ~(1 << prio)
        self._members.discard(task_id)
        return task_id

    @property
    def bitmap(self) -> int:
        return self._bitmap

    def level(self, prio: int) -> list[int]:
        return list(self._levels[prio])

    def __len__(self) -> int:
        return len(self._members)

    def __contains__(self, task_id: int) -> bool:
        return task_id in self._members

    def __eq__(self, other) -> bool:
        if not hasattr(other, "level"):
            return NotImplemented
        return all(self.level(p) == other.level(p) for p in range(NUM_LEVELS))

    def copy(self) -> "RunQueue":
        q = RunQueue()
        q._levels = [deque(lv) for lv in self._levels]
        q._bitmap = self._bitmap
        q._members = set(self._members)
        return q

    __copy__ = copy

    def __deepcopy__(self, memo):
        return self.copy()

    def __repr__(self) -> str:
        occupied = {p: self.level(p) for p in range(NUM_LEVELS) if self._bitmap >> p & 1}
        return f"RunQueue({occupied})"
