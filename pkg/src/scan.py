"""
Concurrent evaluation of independent grid points.

Each point runs on a worker thread (asyncio.to_thread) under a semaphore; all
results pass through a single asyncio.Queue consumer that files them by grid
index, so the returned list follows the grid order whatever the completion order.
"""
from __future__ import annotations

import asyncio
import logging
from typing import Any, Callable, Sequence

logger = logging.getLogger(__name__)


async def _evaluate_one(index: int, point: Any, func: Callable, semaphore: asyncio.Semaphore,
                        queue: asyncio.Queue):
    async with semaphore:
        try:
            value = await asyncio.to_thread(func, point)
            await queue.put(("result", index, value))
        except Exception as e:
            logger.debug(f"grid point {index} failed: {e}")
            await queue.put(("error", index, e))


async def _collector(queue: asyncio.Queue, results: list, errors: dict):
    """Single consumer filing results by index."""
    while True:
        msg = await queue.get()
        if msg is None:
            queue.task_done()
            break
        kind, index, payload = msg
        try:
            if kind == "result":
                results[index] = payload
            else:
                errors[index] = payload
        finally:
            queue.task_done()


async def _run(func: Callable, points: Sequence, workers: int) -> list:
    results: list = [None] * len(points)
    errors: dict = {}
    queue: asyncio.Queue = asyncio.Queue()
    semaphore = asyncio.Semaphore(workers)

    collector = asyncio.create_task(_collector(queue, results, errors))
    await asyncio.gather(*(
        _evaluate_one(i, point, func, semaphore, queue) for i, point in enumerate(points)
    ))
    await queue.join()
    await queue.put(None)
    await collector

    if errors:
        first = min(errors)
        logger.warning(f"{len(errors)} of {len(points)} grid points failed; first at index {first}")
        raise errors[first]
    return results


def run_grid(func: Callable, points: Sequence, workers: int = 1) -> list:
    """
    Evaluate func at every point and return the values in grid order.

    workers=1 runs inline on the calling thread. If any point raises, the
    exception of the lowest failing index is re-raised after all points finish.
    """
    if workers < 1:
        raise ValueError(f"workers must be at least 1, got {workers}")
    points = list(points)
    if workers == 1 or len(points) <= 1:
        return [func(point) for point in points]
    logger.info(f"Scanning {len(points)} grid points on {workers} workers")
    return asyncio.run(_run(func, points, workers))
