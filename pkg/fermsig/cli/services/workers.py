"""
Worker pool for (lambda, m) grids.

Tasks run in threads via asyncio.to_thread, bounded by a semaphore of size
`threads`. Results come back sorted by task key, independent of completion
order.
"""

import asyncio
import logging
from typing import Any, Callable, Hashable, List, Sequence, Tuple

logger = logging.getLogger(__name__)

Task = Tuple[Hashable, Callable[[], Any]]


async def run_grid(tasks: Sequence[Task], threads: int) -> List[Tuple[Hashable, Any]]:
    """Run all tasks concurrently (at most `threads` at a time) and return (key, result) sorted by key."""
    if threads < 1:
        raise ValueError(f"threads must be positive, got {threads}")
    semaphore = asyncio.Semaphore(threads)

    async def run_one(key: Hashable, fn: Callable[[], Any]):
        async with semaphore:
            logger.debug(f"Task {key} started")
            result = await asyncio.to_thread(fn)
            logger.debug(f"Task {key} finished")
            return key, result

    results = await asyncio.gather(*(run_one(key, fn) for key, fn in tasks))
    return sorted(results, key=lambda item: item[0])


def run_tasks(tasks: Sequence[Task], threads: int) -> List[Tuple[Hashable, Any]]:
    """Synchronous entry point for run_grid."""
    if not tasks:
        return []
    return asyncio.run(run_grid(tasks, threads))
