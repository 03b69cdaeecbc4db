# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled bitmap run queue.

Each level is a growable ring buffer of int64 task ids; occupancy lives in
three 64-bit words and the most urgent level is found with count-trailing-
zeros. Interface matches ``_runqueue_py.RunQueue``.
"""

from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport malloc, realloc, free

cdef enum:
    NUM_LEVELS = 140
    NUM_WORDS = 3

cdef extern from *:
    int __builtin_ctzll(unsigned long long)


cdef struct Ring:
    int64_t *buf
    Py_ssize_t cap
    Py_ssize_t head
    Py_ssize_t size


cdef int ring_grow(Ring *r) except -1:
    cdef Py_ssize_t new_cap = r.cap * 2 if r.cap else 4
    cdef int64_t *nb = <int64_t *> malloc(new_cap * sizeof(int64_t))
    cdef Py_ssize_t i
    if nb == NULL:
        raise MemoryError()
    for i in range(r.size):
        nb[i] = r.buf[(r.head + i) % r.cap]
    free(r.buf)
    r.buf = nb
    r.cap = new_cap
    r.head = 0
    return 0


cdef class RunQueue:
    cdef Ring levels[NUM_LEVELS]
    cdef uint64_t words[NUM_WORDS]
    cdef set _members

    def __cinit__(self):
        cdef int i
        for i in range(NUM_LEVELS):
            self.levels[i].buf = NULL
            self.levels[i].cap = 0
            self.levels[i].head = 0
            self.levels[i].size = 0
        for i in range(NUM_WORDS):
            self.words[i] = 0
        self._members = set()

    def __dealloc__(self):
        cdef int i
        for i in range(NUM_LEVELS):
            free(self.levels[i].buf)

    cdef int _check(self, object task_id, int prio) except -1:
        if prio < 0 or prio >= NUM_LEVELS:
            raise ValueError(f"priority {prio} outside [0, {NUM_LEVELS - 1}]")
        if task_id in self._members:
            raise KeyError(f"task {task_id} already queued")
        return 0

    cdef inline void _mark(self, int prio):
        self.words[prio >> 6] |= (<uint64_t> 1) << (prio & 63)

    cpdef push(self, int64_t task_id, int prio):
        self._check(task_id, prio)
        cdef Ring *r = &self.levels[prio]
        if r.size == r.cap:
            ring_grow(r)
        r.buf[(r.head + r.size) % r.cap] = task_id
        r.size += 1
        self._members.add(task_id)
        self._mark(prio)

    cpdef push_front(self, int64_t task_id, int prio):
        self._check(task_id, prio)
        cdef Ring *r = &self.levels[prio]
        if r.size == r.cap:
            ring_grow(r)
        r.head = (r.head - 1 + r.cap) % r.cap
        r.buf[r.head] = task_id
        r.size += 1
        self._members.add(task_id)
        self._mark(prio)

    cdef inline int _top(self):
        cdef int w
        for w in range(NUM_WORDS):
            if self.words[w]:
                return (w << 6) + __builtin_ctzll(self.words[w])
        return -1

    cpdef int top_level(self):
        """Lowest nonempty level, or -1 when the queue is empty."""
        return self._top()

    cpdef object peek(self):
        cdef int prio = self._top()
        if prio < 0:
            return None
        cdef Ring *r = &self.levels[prio]
        return r.buf[r.head]

    cpdef int64_t pop(self) except? -1:
        cdef int prio = self._top()
        if prio < 0:
            raise IndexError("pop from empty run queue")
        cdef Ring *r = &self.levels[prio]
        cdef int64_t task_id = r.buf[r.head]
        r.head = (r.head + 1) % r.cap
        r.size -= 1
        if r.size == 0:
            r.head = 0
            self.words[prio >> 6] &= ~((<uint64_t> 1) << (prio & 63))
        self._members.discard(task_id)
        return task_id

    @property
    def bitmap(self):
        cdef object lo = self.words[0], mid = self.words[1], hi = self.words[2]
        return lo | mid << 64 | hi << 128

    def level(self, int prio):
        if prio < 0 or prio >= NUM_LEVELS:
            raise IndexError(prio)
        cdef Ring *r = &self.levels[prio]
        cdef Py_ssize_t i
        return [r.buf[(r.head + i) % r.cap] for i in range(r.size)]

    def __len__(self):
        return len(self._members)

    def __contains__(self, task_id):
        return task_id in self._members

    def __eq__(self, other):
        if not hasattr(other, "level"):
            return NotImplemented
        return all(self.level(p) == other.level(p) for p in range(NUM_LEVELS))

    def copy(self):
        cdef RunQueue q = RunQueue()
        cdef int p
        for p in range(NUM_LEVELS):
            for task_id in self.level(p):
                q.push(task_id, p)
        return q

    def __copy__(self):
        return self.copy()

    def __deepcopy__(self, memo):
        return self.copy()

    def __reduce__(self):
        return (_rebuild, ([self.level(p) for p in range(NUM_LEVELS)],))

    def __repr__(self):
        occupied = {p: self.level(p) for p in range(NUM_LEVELS) if self.levels[p].size}
        return f"RunQueue({occupied})"


def _rebuild(levels):
    q = RunQueue()
    for p, ids in enumerate(levels):
        for task_id in ids:
            q.push(task_id, p)
    return q
