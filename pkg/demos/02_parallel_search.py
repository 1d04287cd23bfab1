"""Parallel membership tests and removals.

``contains``, ``remove`` and ``remove_all`` hand chunks out to a thread pool
once the list has at least ``threshold`` chunks. The first worker to find a
match stops the others.
"""

import random
import time

from chunklist import ChunkList, ParallelConfig, SearchStrategy

rng = random.Random(0)
data = [rng.randrange(10_000) for _ in range(200_000)]

par = ChunkList(1000, data, config=ParallelConfig(workers=4))
seq = ChunkList(1000, data, config=ParallelConfig(enabled=False))

for label, cl in (("parallel", par), ("sequential", seq)):
    start = time.perf_counter()
    hit = cl.contains(data[123_456])
    miss = cl.contains(-1)
    ms = (time.perf_counter() - start) * 1e3
    print(f"{label:10}  contains hit={hit} miss={miss}  {ms:.2f} ms")

# remove deletes exactly one copy even when several workers find one at once.
value = data[0]
before = par.get_list().count(value)
par.remove(value)
print(f"copies of {value}: {before} -> {par.get_list().count(value)}")

# remove_all leaves emptied chunks in place; adds refill them later.
small = ChunkList(3, [7, 7, 7, 1, 2, 3, 7, 7, 7], config=ParallelConfig(workers=4, threshold=1))
print("removed", small.remove_all(7), "->", small.chunks)
small.add(4)
print("after add(4):", small.chunks)

# Bisection inside each chunk is opt-in and only correct on sorted chunks.
fast = ChunkList(4, [9, 3, 7, 1, 5, 3], config=ParallelConfig(strategy=SearchStrategy.BINARY_WITHIN_CHUNK))
fast.sort()
print("binary remove(3):", fast.remove(3), fast.chunks)
