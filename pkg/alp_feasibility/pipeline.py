"""
Case evaluation in waves.

Tasks are run ``jobs`` at a time on a thread pool; results are merged by
lowest index, so the outcome never depends on the number of workers.
"""
import asyncio
from concurrent.futures import ThreadPoolExecutor
from functools import partial
from typing import Callable, List, Optional, Sequence, Tuple, TypeVar

from .logger import logger
from .model import AlpProblem, Status

T = TypeVar("T")


async def _run_wave(tasks: Sequence[Callable[[], T]], jobs: int) -> List[T]:
    loop = asyncio.get_running_loop()
    semaphore = asyncio.Semaphore(jobs)
    with ThreadPoolExecutor(max_workers=jobs) as executor:

        async def run(task: Callable[[], T]) -> T:
            async with semaphore:
                return await loop.run_in_executor(executor, task)

        return await asyncio.gather(*(run(t) for t in tasks))


def first_success(
    tasks: Sequence[Callable[[], T]],
    accept: Callable[[T], bool],
    jobs: int = 1,
) -> Optional[Tuple[int, T]]:
    """Index and result of the first accepted task in task order."""
    if jobs <= 1:
        for i, task in enumerate(tasks):
            result = task()
            if accept(result):
                return i, result
        return None

    for start in range(0, len(tasks), jobs):
        wave = tasks[start:start + jobs]
        logger.log_debug(f"wave {start // jobs + 1}: tasks {start + 1}..{start + len(wave)}")
        results = asyncio.run(_run_wave(wave, jobs))
        for offset, result in enumerate(results):
            if accept(result):
                return start + offset, result
    return None


def first_feasible(alps: Sequence[AlpProblem], jobs: int = 1):
    """(alp, symbolic witness) of the lowest-index feasible ALP, or None."""
    from .alp_solver import alp_feasible

    tasks = [partial(alp_feasible, alp) for alp in alps]
    hit = first_success(tasks, lambda r: r[0] is Status.FEASIBLE, jobs)
    if hit is None:
        return None
    i, (_, witness) = hit
    return alps[i], witness
