"""Order-preserving map over sample indices with a thread cap from the environment."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable

ENV_THREADS = "MONOPOLE_STAR_THREADS"


def thread_count() -> int:
    raw = os.environ.get(ENV_THREADS, "1")
    try:
        n = int(raw)
    except ValueError as exc:
        raise ValueError(f"{ENV_THREADS} must be a positive integer, got {raw!r}") from exc
    if n < 1:
        raise ValueError(f"{ENV_THREADS} must be a positive integer, got {raw!r}")
    return n


def map_ordered(fn: Callable, items: Iterable) -> list:
    """[fn(x) for x in items], possibly on worker threads; results keep input order."""
    items = list(items)
    n = thread_count()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
