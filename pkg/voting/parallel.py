"""Process-pool mapping for batch drivers; ordered results, serial when one worker."""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

from voting import conf

logger = logging.getLogger(__name__)

T = TypeVar('T')
R = TypeVar('R')


def parallel_map(func: Callable[[T], R], items: Iterable[T], workers: int | None = None) -> list[R]:
    """Map `func` over `items` keeping input order; `func` must be picklable."""
    items = list(items)
    workers = workers if workers is not None else conf.get('POWERPOLY_THREADS')
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    logger.info('Distributing %d tasks over %d worker processes', len(items), workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
