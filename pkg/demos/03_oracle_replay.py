"""Differential testing against a flat reference list.

A seeded trace of random operations is replayed on a chunk list and on a
plain ``OracleList``; the final multisets must match.
"""

from chunklist import ChunkList, ParallelConfig
from chunklist.oracle import (
    INDEXED_OP_MIX,
    OpTrace,
    OracleList,
    differential_replay,
    generate_trace,
    replay,
)

trace = generate_trace(seed=1, length=5000, domain=32)
print("first ops:", *trace.ops[:5], sep="\n  ")

got = replay(trace, ChunkList(16, config=ParallelConfig(workers=4)))
want = replay(trace, OracleList(16))
print("multisets equal:", got.counts == want.counts, " size:", len(got.items))

# Traces serialize one op per line, handy for saving a failing case.
text = trace.dumps()
assert OpTrace.loads(text) == trace
print(f"serialized trace: {len(text.splitlines())} lines")

# Index-based ops need lockstep replay, since a chunk list index stops
# matching a flat position once removals leave holes.
indexed = generate_trace(seed=2, length=3000, op_mix=INDEXED_OP_MIX, domain=8, chunk_size=5)
violations = differential_replay(indexed, ChunkList(5, config=ParallelConfig(workers=4)), check_remove_counts=True)
print("lockstep violations:", violations or "none")
