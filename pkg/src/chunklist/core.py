"""The chunk list: a dynamic list of capacity-bounded inner lists.

Elements live in ``chunks``, plain Python lists that never hold more than
``chunk_size`` items. New elements go into the first chunk with spare room.
Removals shift items left inside their own chunk only, so a chunk may end up
partly filled (or empty) in the middle of the list. Index-based access copes
with these holes by falling forward to the next occupied slot.

Membership tests and removals by value fan out across chunks on a thread
pool and stop early once a worker finds what it is looking for.

A ``ChunkList`` is not safe for concurrent external mutation: one writer at
a time, readers only while no writer is active.
"""

from __future__ import annotations

import bisect
import enum
import itertools
import math
import threading
from dataclasses import dataclass, field
from typing import Any, Generic, Iterable, Iterator, Protocol, TypeVar

from . import _parallel

DEFAULT_CHUNK_SIZE = 1000


class _Comparable(Protocol):
    def __lt__(self, other: Any, /) -> bool: ...


T = TypeVar("T", bound=_Comparable)


class SearchStrategy(enum.Enum):
    """How ``remove`` looks for its target inside one chunk.

    ``BINARY_WITHIN_CHUNK`` bisects each chunk and is only correct while every
    chunk is internally sorted, e.g. right after ``sort()`` with no
    intervening ``add`` or ``set``.
    """

    LINEAR_SCAN = "linear"
    BINARY_WITHIN_CHUNK = "binary"


@dataclass(frozen=True)
class ParallelConfig:
    """Execution knobs for the internally parallel operations.

    Attributes:
        enabled: turn the thread fan-out on or off.
        workers: worker count; ``None`` means one per available processor.
        threshold: below this many chunks the work runs on the calling thread.
        strategy: within-chunk search used by ``remove``.
    """

    enabled: bool = True
    workers: int | None = None
    threshold: int = 4
    strategy: SearchStrategy = SearchStrategy.LINEAR_SCAN

    def __post_init__(self) -> None:
        if self.workers is not None and self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        if self.threshold < 0:
            raise ValueError(f"threshold must be >= 0, got {self.threshold}")

    def effective_workers(self, n_chunks: int) -> int:
        """Number of threads to use for ``n_chunks`` chunks (1 = sequential)."""
        if not self.enabled or n_chunks < self.threshold:
            return 1
        workers = self.workers if self.workers is not None else _parallel.default_workers()
        return max(1, min(workers, n_chunks))


SEQUENTIAL = ParallelConfig(enabled=False)


def recommended_chunk_size(expected_count: int) -> int:
    """Square-root chunk size for a list expected to hold ``expected_count`` items."""
    if expected_count < 0:
        raise ValueError(f"expected_count must be >= 0, got {expected_count}")
    return max(1, math.isqrt(expected_count))


def _check_chunk_size(chunk_size: int) -> int:
    if isinstance(chunk_size, bool) or not isinstance(chunk_size, int):
        raise TypeError(f"chunk size must be an int, got {type(chunk_size).__name__}")
    if chunk_size < 1:
        raise ValueError(f"chunk size must be >= 1, got {chunk_size}")
    return chunk_size


@dataclass
class _RemoveClaim:
    # Only the first worker to take the lock may delete.
    lock: threading.Lock = field(default_factory=threading.Lock)
    chunk: int = -1


class ChunkList(Generic[T]):
    """A list of elements stored in chunks of at most ``chunk_size`` items.

    >>> cl = ChunkList(5)
    >>> cl.extend(range(11))
    >>> cl.chunks
    ((0, 1, 2, 3, 4), (5, 6, 7, 8, 9), (10,))
    >>> cl.get(8)
    8
    """

    def __init__(
        self,
        chunk_size: int = DEFAULT_CHUNK_SIZE,
        items: Iterable[T] = (),
        *,
        config: ParallelConfig | None = None,
    ) -> None:
        self._chunk_size = _check_chunk_size(chunk_size)
        self._chunks: list[list[T]] = []
        # Every chunk before this index is known to be full.
        self._open_hint = 0
        self.config = config if config is not None else ParallelConfig()
        self.extend(items)

    @classmethod
    def for_expected_count(
        cls, expected_count: int, *, config: ParallelConfig | None = None
    ) -> ChunkList[T]:
        return cls(recommended_chunk_size(expected_count), config=config)

    # -- layout -----------------------------------------------------------

    @property
    def chunk_size(self) -> int:
        return self._chunk_size

    @property
    def chunks(self) -> tuple[tuple[T, ...], ...]:
        """Snapshot of the chunk layout."""
        return tuple(tuple(c) for c in self._chunks)

    @property
    def chunk_count(self) -> int:
        return len(self._chunks)

    def convert_index_to_chunk(self, index: int) -> int:
        return index // self._chunk_size

    def convert_index_to_chunk_pos(self, index: int) -> int:
        return index % self._chunk_size

    def _resolve(self, index: int) -> tuple[int, int]:
        """Map ``index`` to an occupied (chunk, position), falling forward past holes."""
        if index < 0 or index >= self.size():
            raise IndexError(f"index {index} out of range for size {self.size()}")
        chunks = self._chunks
        c = self.convert_index_to_chunk(index)
        p = self.convert_index_to_chunk_pos(index)
        # Terminates: the last non-empty chunk's last slot sits at or after size() - 1.
        while p >= len(chunks[c]):
            # Every later position in this chunk is missing as well.
            c += 1
            p = 0
        return c, p

    # -- element access ---------------------------------------------------

    def size(self) -> int:
        return sum(map(len, self._chunks))

    def add(self, item: T) -> None:
        """Put ``item`` into the first chunk that is not at capacity."""
        chunks = self._chunks
        cap = self._chunk_size
        i = self._open_hint
        n = len(chunks)
        while i < n and len(chunks[i]) >= cap:
            i += 1
        self._open_hint = i
        if i == n:
            chunks.append([item])
        else:
            chunks[i].append(item)

    def extend(self, items: Iterable[T]) -> None:
        for item in items:
            self.add(item)

    def get(self, index: int) -> T:
        c, p = self._resolve(index)
        return self._chunks[c][p]

    def set(self, index: int, item: T) -> None:
        c, p = self._resolve(index)
        self._chunks[c][p] = item

    def remove_at(self, index: int) -> T:
        """Delete the element ``get(index)`` would return and return it.

        Later items in the same chunk shift left; other chunks are untouched.
        """
        c, p = self._resolve(index)
        item = self._chunks[c].pop(p)
        self._open_hint = min(self._open_hint, c)
        return item

    def contains(self, item: T) -> bool:
        chunks = self._chunks
        workers = self.config.effective_workers(len(chunks))
        if workers == 1:
            return any(item in chunk for chunk in chunks)

        def probe(_: int, chunk: list[T], state: _parallel.LoopState) -> None:
            if item in chunk:
                state.stop()

        return _parallel.for_each(chunks, probe, workers).stopped

    def _find_in_chunk(self, chunk: list[T], item: T) -> int:
        if self.config.strategy is SearchStrategy.BINARY_WITHIN_CHUNK:
            i = bisect.bisect_left(chunk, item)
            if i < len(chunk) and chunk[i] == item:
                return i
            return -1
        try:
            return chunk.index(item)
        except ValueError:
            return -1

    def remove(self, item: T) -> bool:
        """Delete one occurrence of ``item``; return whether one was found.

        When copies sit in several chunks, which one goes is up to the
        worker schedule. Within one chunk the first copy goes.
        """
        chunks = self._chunks
        workers = self.config.effective_workers(len(chunks))
        if workers == 1:
            for c, chunk in enumerate(chunks):
                p = self._find_in_chunk(chunk, item)
                if p >= 0:
                    del chunk[p]
                    self._open_hint = min(self._open_hint, c)
                    return True
            return False

        claim = _RemoveClaim()

        def seek(c: int, chunk: list[T], state: _parallel.LoopState) -> None:
            p = self._find_in_chunk(chunk, item)
            if p < 0:
                return
            with claim.lock:
                if claim.chunk >= 0:
                    return
                claim.chunk = c
                del chunk[p]
            state.stop()

        _parallel.for_each(chunks, seek, workers)
        if claim.chunk < 0:
            return False
        self._open_hint = min(self._open_hint, claim.chunk)
        return True

    def remove_all(self, item: T) -> int:
        """Delete every occurrence of ``item``; return how many were deleted.

        Emptied chunks stay in place and are refilled by later adds.
        """
        chunks = self._chunks
        removed = [0] * len(chunks)

        def purge(c: int, chunk: list[T], _state: _parallel.LoopState) -> None:
            kept = [x for x in chunk if x != item]
            if len(kept) != len(chunk):
                removed[c] = len(chunk) - len(kept)
                chunk[:] = kept

        workers = self.config.effective_workers(len(chunks))
        if workers == 1:
            for c, chunk in enumerate(chunks):
                purge(c, chunk, _parallel.LoopState())
        else:
            _parallel.for_each(chunks, purge, workers)
        for c, n in enumerate(removed):
            if n:
                self._open_hint = min(self._open_hint, c)
                break
        return sum(removed)

    def clear(self) -> None:
        self._chunks.clear()
        self._open_hint = 0

    def get_list(self) -> list[T]:
        """Flat copy of all elements, chunk by chunk."""
        return list(itertools.chain.from_iterable(self._chunks))

    # -- bulk -------------------------------------------------------------

    def _reflow(self, items: list[T]) -> None:
        # Same layout as clear() followed by add() of each item in order.
        cap = self._chunk_size
        self._chunks = [items[i : i + cap] for i in range(0, len(items), cap)]
        self._open_hint = max(0, len(self._chunks) - 1)

    def set_chunk_size(self, new_chunk_size: int) -> None:
        """Change the capacity bound.

        Growing keeps the current chunks as they are; later adds fill them up
        to the new bound. Shrinking (or keeping the size) rebuilds the list
        with every chunk full except possibly the last.
        """
        new_chunk_size = _check_chunk_size(new_chunk_size)
        if new_chunk_size > self._chunk_size:
            self._chunk_size = new_chunk_size
            self._open_hint = 0
            return
        items = self.get_list()
        self._chunk_size = new_chunk_size
        self._reflow(items)

    def sort(self) -> None:
        items = self.get_list()
        items.sort()
        self._reflow(items)

    def copy(self) -> ChunkList[T]:
        """Copy with the same chunk layout, chunk size and config."""
        new: ChunkList[T] = ChunkList(self._chunk_size, config=self.config)
        new._chunks = [list(c) for c in self._chunks]
        new._open_hint = self._open_hint
        return new

    # -- Python protocol --------------------------------------------------

    def __len__(self) -> int:
        return self.size()

    def __contains__(self, item: object) -> bool:
        return self.contains(item)  # type: ignore[arg-type]

    def __iter__(self) -> Iterator[T]:
        return iter(self.get_list())

    def __repr__(self) -> str:
        return f"ChunkList(chunk_size={self._chunk_size}, chunks={[list(c) for c in self._chunks]!r})"
