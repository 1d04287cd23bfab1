"""Timing the chunk list against a flat list.

The same run is available from the shell:

    chunklist-bench --sizes 10000,100000 --chunk-sizes sqrt,1000 \
        --ops contains-hit,contains-miss,remove,sort --reps 5 --format markdown
"""

from chunklist.bench import BenchConfig, emit_report, run_bench

config = BenchConfig(
    sizes=[10_000, 100_000],
    chunk_sizes=["sqrt", 1000],
    operations=["contains-hit", "contains-miss", "remove", "sort"],
    repetitions=5,
)
report = run_bench(config)
emit_report(report, "markdown")
