"""Run queue backend selection.

The compiled extension is preferred; set ``PREEMPT_INBOX_PURE=1`` to force
the pure-Python implementation.
"""

from __future__ import annotations

import os

from ._runqueue_py import NUM_LEVELS
from ._runqueue_py import RunQueue as PyRunQueue

try:
    from ._runqueue import RunQueue as CRunQueue
except ImportError:  # extension not built
    CRunQueue = None

if CRunQueue is not None and os.environ.get("PREEMPT_INBOX_PURE", "") in ("", "0"):
    RunQueue = CRunQueue
    BACKEND = "cython"
else:
    RunQueue = PyRunQueue
    BACKEND = "python"


def pick_next(q) -> int | None:
    """Head of the most urgent nonempty level, without removing it."""
    return q.peek()


__all__ = ["BACKEND", "CRunQueue", "NUM_LEVELS", "PyRunQueue", "RunQueue", "pick_next"]
