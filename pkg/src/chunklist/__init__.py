"""Chunk list: a list of capacity-bounded chunks with parallel search and removal."""

from .core import (
    DEFAULT_CHUNK_SIZE,
    SEQUENTIAL,
    ChunkList,
    ParallelConfig,
    SearchStrategy,
    recommended_chunk_size,
)

__all__ = [
    "DEFAULT_CHUNK_SIZE",
    "SEQUENTIAL",
    "ChunkList",
    "ParallelConfig",
    "SearchStrategy",
    "recommended_chunk_size",
]
