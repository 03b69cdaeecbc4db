"""Compare the compiled and pure-Python run queue backends.

    python benchmarks/bench_runqueue.py [--ops N] [--repeat R]

Two workloads: raw queue churn (push / push_front / peek / pop across all
140 levels) and a full scheduler run with many pre-emptions.
"""

from __future__ import annotations

import argparse
import random
import time

from preempt_inbox.sched import Scheduler
from preempt_inbox.sched.runqueue import NUM_LEVELS, CRunQueue, PyRunQueue


def make_ops(n: int, seed: int) -> list[tuple[int, int]]:
    rng = random.Random(seed)
    ops, size = [], 0
    for _ in range(n):
        r = rng.random()
        if r < 0.45 or size == 0:
            ops.append((0, rng.randrange(NUM_LEVELS)))
            size += 1
        elif r < 0.5:
            ops.append((1, rng.randrange(NUM_LEVELS)))
            size += 1
        elif r < 0.8:
            ops.append((2, 0))
            size -= 1
        else:
            ops.append((3, 0))
    return ops


def churn(queue_cls, ops) -> float:
    q = queue_cls()
    push, push_front, pop, peek = q.push, q.push_front, q.pop, q.peek
    start = time.perf_counter()
    for i, (op, prio) in enumerate(ops):
        if op == 0:
            push(i, prio)
        elif op == 1:
            push_front(i, prio)
        elif op == 2:
            pop()
        else:
            peek()
    return time.perf_counter() - start


def scheduler_run(queue_cls, n_tasks: int, seed: int) -> float:
    rng = random.Random(seed)
    specs = [(rng.randrange(NUM_LEVELS), rng.randint(1, 5), rng.randint(1, 3)) for _ in range(n_tasks)]
    s = Scheduler(queue=queue_cls())
    start = time.perf_counter()
    for i, (prio, duration, gap) in enumerate(specs):
        s.spawn(f"t{i}", prio, duration)
        s.step(gap)
    s.drain()
    return time.perf_counter() - start


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--ops", type=int, default=1_000_000)
    parser.add_argument("--tasks", type=int, default=100_000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = [("python", PyRunQueue)]
    if CRunQueue is not None:
        backends.append(("cython", CRunQueue))
    else:
        print("compiled backend not built; showing pure Python only")

    ops = make_ops(args.ops, seed=1)
    results: dict[str, tuple[float, float]] = {}
    for name, cls in backends:
        t_churn = min(churn(cls, ops) for _ in range(args.repeat))
        t_sched = min(scheduler_run(cls, args.tasks, seed=2) for _ in range(args.repeat))
        results[name] = (t_churn, t_sched)

    print(f"{'backend':<8} {'queue ops/s':>14} {'sched tasks/s':>14}")
    for name, (t_churn, t_sched) in results.items():
        print(f"{name:<8} {args.ops / t_churn:>14,.0f} {args.tasks / t_sched:>14,.0f}")
    if len(results) == 2:
        py, cy = results["python"], results["cython"]
        print(f"speedup  {py[0] / cy[0]:>13.2f}x {py[1] / cy[1]:>13.2f}x")


if __name__ == "__main__":
    main()
