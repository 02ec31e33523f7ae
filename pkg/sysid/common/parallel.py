"""
Ordered fan-out over a thread or process pool.

Results always come back in input order, so any reduction over them is
independent of scheduling.
"""

from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from sysid.config import settings

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(
    func: Callable[[T], R],
    items: Iterable[T],
    *,
    max_workers: Optional[int] = None,
    processes: bool = False,
) -> List[R]:
    """
    Apply ``func`` to every item, possibly concurrently.

    Args:
        func (Callable[[T], R]): Pure function of one item. With
            ``processes`` it must be picklable (module-level or a partial).
        items (Iterable[T]): Work items.
        max_workers (Optional[int]): Pool size; ``settings.MAX_WORKERS`` when None.
        processes (bool): Use worker processes instead of threads. Pays off
            for coarse, Python-heavy work such as whole benchmark runs.

    Returns:
        List[R]: ``[func(item) for item in items]`` in input order.
    """
    work = list(items)
    workers = max_workers or settings.MAX_WORKERS

    if workers <= 1 or len(work) <= 1:
        return [func(item) for item in work]

    pool: Executor
    if processes:
        pool = ProcessPoolExecutor(max_workers=min(workers, len(work)))
    else:
        pool = ThreadPoolExecutor(max_workers=workers)
    with pool:
        return list(pool.map(func, work))
