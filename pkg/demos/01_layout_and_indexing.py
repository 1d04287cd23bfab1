"""Layout and index resolution in a chunk list.

Run with ``python demos/01_layout_and_indexing.py``.
"""

from chunklist import ChunkList, recommended_chunk_size

# Eleven numbers at chunk size 5 land in three chunks, filled front to back.
cl = ChunkList(5, range(11))
print("chunks:", cl.chunks)

# A flat index splits into (chunk, position) by division and remainder.
i = 8
print(f"index {i} -> chunk {cl.convert_index_to_chunk(i)}, position {cl.convert_index_to_chunk_pos(i)}")
print("get(8) =", cl.get(8))

# Removing shifts items left inside their own chunk only; nothing migrates
# across chunks, so chunk 0 now has a hole at its tail.
cl.remove_at(2)
print("after remove_at(2):", cl.chunks)

# Index 4 maps to that missing slot, so lookup falls forward to index 5.
print("get(4) =", cl.get(4), "  get(5) =", cl.get(5))

# The next add fills the first chunk with spare room, not the last chunk.
cl.add(99)
print("after add(99):", cl.chunks)

# A square-root chunk size is the suggested starting point for a known count.
for n in (50, 10_000, 1_000_000):
    print(f"recommended_chunk_size({n}) = {recommended_chunk_size(n)}")

# Shrinking the chunk size rebuilds the list; growing just raises the bound.
cl.set_chunk_size(3)
print("after set_chunk_size(3):", cl.chunks)
cl.set_chunk_size(10)
cl.add(100)
print("after set_chunk_size(10), add(100):", cl.chunks)

cl.sort()
print("after sort():", cl.chunks)
