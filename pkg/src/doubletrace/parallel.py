"""Process-pool helper for exact, partition-independent counting."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")

DEFAULT_BUDGET = 10**8


def default_budget() -> int:
    """State budget, overridable through ``DOUBLETRACE_BUDGET``."""
    raw = os.environ.get("DOUBLETRACE_BUDGET")
    if raw:
        return int(float(raw))
    return DEFAULT_BUDGET


def available_workers() -> int:
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:  # pragma: no cover - non-Linux
        return os.cpu_count() or 1


def parallel_sum(fn: Callable[[T], int], items: Iterable[T], workers: int | None = None) -> int:
    """``sum(map(fn, items))``, optionally over a process pool.

    Partial results are Python ints combined in submission order, so the total
    does not depend on the worker count.
    """
    items = list(items)
    if not workers or workers <= 1 or len(items) <= 1:
        return sum(fn(it) for it in items)
    with ProcessPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return sum(pool.map(fn, items))
