"""
Worker module for Niemytzki Lab

This module runs independent search jobs concurrently on a bounded pool of
threads and returns their results in input order.
"""
from typing import Any, Callable, Iterable, List, Optional, TypeVar
import asyncio
import logging
import os

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

THREADS_ENV = "NIEMYTZKI_LAB_THREADS"


def thread_limit() -> int:
    """
    Read the parallelism cap from the environment

    Returns:
        Number of worker threads, at least 1
    """
    raw = os.getenv(THREADS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            logger.warning("ignoring non-integer %s=%r", THREADS_ENV, raw)
    return max(1, os.cpu_count() or 1)


async def run_jobs(fn: Callable[[T], R], items: Iterable[T],
                   limit: Optional[int] = None) -> List[R]:
    """
    Run a blocking function over items with bounded concurrency

    Args:
        fn: Blocking function applied to each item
        items: Inputs, one job each
        limit: Maximum number of jobs running at once

    Returns:
        Results in input order
    """
    semaphore = asyncio.Semaphore(limit or thread_limit())

    async def _execute(item: T) -> R:
        async with semaphore:
            return await asyncio.to_thread(fn, item)

    return list(await asyncio.gather(*(_execute(item) for item in items)))


def map_ordered(fn: Callable[[T], R], items: Iterable[T],
                limit: Optional[int] = None) -> List[R]:
    """
    Synchronous entry point for run_jobs

    Falls back to sequential execution when called from inside a running
    event loop or when the limit is 1.

    Args:
        fn: Blocking function applied to each item
        items: Inputs, one job each
        limit: Maximum number of jobs running at once

    Returns:
        Results in input order
    """
    items = list(items)
    limit = limit or thread_limit()
    try:
        asyncio.get_running_loop()
        in_loop = True
    except RuntimeError:
        in_loop = False
    if in_loop or limit == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    return asyncio.run(run_jobs(fn, items, limit))
