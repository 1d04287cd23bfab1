"""Breakable parallel for-each over a sequence, backed by shared thread pools."""

from __future__ import annotations

import os
import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")

_pools: dict[int, ThreadPoolExecutor] = {}
_pools_lock = threading.Lock()


def default_workers() -> int:
    return os.cpu_count() or 1


def _pool(size: int) -> ThreadPoolExecutor:
    with _pools_lock:
        pool = _pools.get(size)
        if pool is None:
            pool = ThreadPoolExecutor(max_workers=size, thread_name_prefix="chunklist")
            _pools[size] = pool
        return pool


class LoopState:
    """Shared stop signal for one parallel loop.

    Any body may call ``stop()``; every worker checks ``stopped`` before
    starting its next item, so in-flight items finish but no new ones start.
    """

    __slots__ = ("_event",)

    def __init__(self) -> None:
        self._event = threading.Event()

    def stop(self) -> None:
        self._event.set()

    @property
    def stopped(self) -> bool:
        return self._event.is_set()


def for_each(
    items: Sequence[T],
    body: Callable[[int, T, LoopState], None],
    workers: int,
) -> LoopState:
    """Run ``body(index, item, state)`` for every item on ``workers`` threads.

    Items are dealt out round-robin, so worker ``w`` handles indices
    ``w, w + workers, ...``. The calling thread takes share 0 and the rest go
    to a pool of ``workers - 1`` threads. Exceptions raised by a body are
    re-raised here after all shares have finished.
    """
    state = LoopState()
    n = len(items)
    workers = max(1, min(workers, n))

    def share(start: int) -> None:
        for i in range(start, n, workers):
            if state.stopped:
                return
            body(i, items[i], state)

    if workers == 1:
        share(0)
        return state

    pool = _pool(workers - 1)
    futures = [pool.submit(share, w) for w in range(1, workers)]
    error: BaseException | None = None
    try:
        share(0)
    except BaseException as exc:  # noqa: BLE001 - re-raised after join
        state.stop()
        error = exc
    for fut in futures:
        exc = fut.exception()
        if exc is not None and error is None:
            state.stop()
            error = exc
    if error is not None:
        raise error
    return state
