"""Deterministic chunked parallelism.

Work is split into contiguous index ranges and merged in range order,
so every result is independent of the worker count. Workers must be
module-level functions with picklable arguments (the index range is
appended last). If process pools are unavailable on the platform the
helpers silently run sequentially; outputs are identical either way.
"""

from __future__ import annotations

import multiprocessing
import sys
from typing import Callable, Optional, Sequence


def split_ranges(total: int, parts: int) -> list:
    parts = max(1, min(parts, total))
    step = -(-total // parts)
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]


def _pool(jobs: int):
    try:
        ctx = multiprocessing.get_context("fork")
        return ctx.Pool(jobs)
    except (OSError, ValueError, AttributeError):
        return None


def run_ranges(total: int, jobs: int, worker: Callable, args: tuple, chunks_per_job: int = 4) -> list:
    """``worker(*args, lo, hi)`` over a partition of [0, total); results
    returned in range order."""
    if total <= 0:
        return []
    if jobs <= 1:
        return [worker(*args, lo, hi) for lo, hi in split_ranges(total, 1)]
    ranges = split_ranges(total, jobs * chunks_per_job)
    pool = _pool(jobs)
    if pool is None:
        print("nalength: process pool unavailable, running sequentially", file=sys.stderr)
        return [worker(*args, lo, hi) for lo, hi in ranges]
    with pool:
        return pool.starmap(worker, [args + (lo, hi) for lo, hi in ranges])


def parallel_first(total: int, jobs: int, worker: Callable, args: tuple,
                   chunks_per_job: int = 4) -> Optional[object]:
    """First non-None ``worker(*args, lo, hi)`` result in index order.

    Sequentially this exits at the first hit; in parallel all chunks run
    and the earliest-range hit is returned, which is the same value.
    """
    if total <= 0:
        return None
    if jobs <= 1:
        for lo, hi in split_ranges(total, max(1, chunks_per_job)):
            hit = worker(*args, lo, hi)
            if hit is not None:
                return hit
        return None
    for hit in run_ranges(total, jobs, worker, args, chunks_per_job):
        if hit is not None:
            return hit
    return None
