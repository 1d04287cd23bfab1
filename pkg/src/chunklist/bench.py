"""Timing harness: chunk list vs. square-root chunk list vs. flat list.

Run ``python -m chunklist.bench --help`` (or ``chunklist-bench``) for the
command line. Each (structure, size, operation) cell is populated once with
seeded random integers, warmed up with one untimed run, then timed over
``repetitions`` runs. Mutating operations get a fresh copy of the populated
structure for every run; copying is not timed.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import platform
import random
import statistics
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Sequence, Union

from .core import ChunkList, ParallelConfig, recommended_chunk_size

OPERATIONS = ("add", "contains-hit", "contains-miss", "remove", "removeAll", "sort", "get")
MUTATING = frozenset({"add", "remove", "removeAll", "sort"})
CSV_COLUMNS = (
    "structure",
    "n",
    "chunk_size",
    "operation",
    "median_ns",
    "min_ns",
    "max_ns",
    "speedup",
)
FLAT = "flat_list"
CHUNKED = "chunk_list"
CHUNKED_SQRT = "chunk_list_sqrt"
# Populated values are drawn from [0, DOMAIN); MISSING is never among them.
DOMAIN = 2**31
MISSING = -1
PAPER_CLAIM = "20x-300x faster than a flat list (reported, not asserted)"

ChunkSizeSpec = Union[int, str]


class BenchConfigError(ValueError):
    pass


@dataclass
class BenchConfig:
    sizes: list[int]
    chunk_sizes: list[ChunkSizeSpec] = field(default_factory=lambda: ["sqrt", 1000])
    operations: list[str] = field(
        default_factory=lambda: ["add", "contains-hit", "contains-miss", "remove", "sort"]
    )
    repetitions: int = 7
    seed: int = 42
    parallel: bool = True
    workers: int | None = None
    output_path: Path | None = None
    format: str = "csv"

    def validate(self) -> None:
        if not self.sizes:
            raise BenchConfigError("at least one size is required")
        if any(n < 1 for n in self.sizes):
            raise BenchConfigError(f"sizes must be positive, got {self.sizes}")
        if not self.operations:
            raise BenchConfigError("at least one operation is required")
        unknown = [op for op in self.operations if op not in OPERATIONS]
        if unknown:
            raise BenchConfigError(f"unknown operation(s) {unknown}; choose from {OPERATIONS}")
        for cs in self.chunk_sizes:
            if cs != "sqrt" and (not isinstance(cs, int) or isinstance(cs, bool) or cs < 1):
                raise BenchConfigError(f"chunk size must be a positive int or 'sqrt', got {cs!r}")
        if self.repetitions < 1:
            raise BenchConfigError(f"repetitions must be >= 1, got {self.repetitions}")
        if self.workers is not None and self.workers < 1:
            raise BenchConfigError(f"workers must be >= 1, got {self.workers}")
        if self.format not in ("csv", "markdown"):
            raise BenchConfigError(f"format must be 'csv' or 'markdown', got {self.format!r}")


@dataclass
class BenchRow:
    structure: str
    n: int
    chunk_size: int | None
    operation: str
    median_ns: int
    min_ns: int
    max_ns: int
    speedup: float = 1.0

    def cells(self) -> list[str]:
        return [
            self.structure,
            str(self.n),
            "" if self.chunk_size is None else str(self.chunk_size),
            self.operation,
            str(self.median_ns),
            str(self.min_ns),
            str(self.max_ns),
            f"{self.speedup:.2f}",
        ]


@dataclass
class BenchReport:
    rows: list[BenchRow] = field(default_factory=list)
    metadata: dict[str, str] = field(default_factory=dict)

    def find(self, structure: str, n: int, operation: str) -> BenchRow:
        for row in self.rows:
            if (row.structure, row.n, row.operation) == (structure, n, operation):
                return row
        raise KeyError((structure, n, operation))


def _structures(config: BenchConfig, n: int) -> list[tuple[str, int | None]]:
    out: list[tuple[str, int | None]] = []
    for cs in config.chunk_sizes:
        if cs == "sqrt":
            out.append((CHUNKED_SQRT, recommended_chunk_size(n)))
        else:
            out.append((CHUNKED, int(cs)))
    out.append((FLAT, None))
    return out


def _make_op(name: str, data: Sequence[int], rng: random.Random) -> Callable[[Any], Any]:
    """Build a zero-setup callable for one timed run; operands are drawn here."""
    if name == "add":
        v = rng.randrange(DOMAIN)
        return lambda s: s.add(v) if isinstance(s, ChunkList) else s.append(v)
    if name == "contains-hit":
        v = data[rng.randrange(len(data))]
        return lambda s: s.contains(v) if isinstance(s, ChunkList) else v in s
    if name == "contains-miss":
        return lambda s: s.contains(MISSING) if isinstance(s, ChunkList) else MISSING in s
    if name == "remove":
        v = data[rng.randrange(len(data))]
        return lambda s: s.remove(v)
    if name == "removeAll":
        v = data[rng.randrange(len(data))]

        def remove_all(s):
            if isinstance(s, ChunkList):
                return s.remove_all(v)
            s[:] = [x for x in s if x != v]

        return remove_all
    if name == "sort":
        return lambda s: s.sort()
    if name == "get":
        i = rng.randrange(len(data))
        return lambda s: s.get(i) if isinstance(s, ChunkList) else s[i]
    raise BenchConfigError(f"unknown operation {name!r}")


def _time_cell(structure: Any, op_name: str, data: Sequence[int], reps: int, seed: int) -> list[int]:
    rng = random.Random(seed)
    fresh = op_name in MUTATING

    def one_run() -> int:
        target = structure.copy() if fresh else structure
        op = _make_op(op_name, data, rng)
        start = time.perf_counter_ns()
        op(target)
        return time.perf_counter_ns() - start

    one_run()  # warm-up
    return [one_run() for _ in range(reps)]


def run_bench(config: BenchConfig, progress: Callable[[str], None] | None = None) -> BenchReport:
    config.validate()
    par = ParallelConfig(enabled=config.parallel, workers=config.workers)
    report = BenchReport(
        metadata={
            "cpu_count": str(os.cpu_count()),
            "python": platform.python_version(),
            "parallel": "on" if config.parallel else "off",
            "workers": str(par.workers or os.cpu_count()),
            "repetitions": str(config.repetitions),
            "seed": str(config.seed),
            "paper_claim": PAPER_CLAIM,
        }
    )
    for n in config.sizes:
        rng = random.Random(config.seed * 1_000_003 + n)
        data = [rng.randrange(DOMAIN) for _ in range(n)]
        cells: list[BenchRow] = []
        for label, cs in _structures(config, n):
            structure: Any = list(data) if cs is None else ChunkList(cs, data, config=par)
            for op_idx, op_name in enumerate(config.operations):
                if progress:
                    progress(f"{label} n={n} chunk_size={cs} {op_name}")
                # Same operand stream for every structure in the cell.
                times = _time_cell(structure, op_name, data, config.repetitions, config.seed + op_idx)
                cells.append(
                    BenchRow(
                        label,
                        n,
                        cs,
                        op_name,
                        int(statistics.median(times)),
                        min(times),
                        max(times),
                    )
                )
            del structure
        baseline = {r.operation: r.median_ns for r in cells if r.structure == FLAT}
        for row in cells:
            row.speedup = baseline[row.operation] / max(row.median_ns, 1)
            if row.structure == FLAT:
                row.speedup = 1.0
        report.rows.extend(cells)
    return report


def format_csv(report: BenchReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in report.rows:
        writer.writerow(row.cells())
    if report.metadata:
        buf.write("# " + "; ".join(f"{k}={v}" for k, v in report.metadata.items()) + "\n")
    return buf.getvalue()


def format_markdown(report: BenchReport) -> str:
    lines = [
        "| " + " | ".join(CSV_COLUMNS) + " |",
        "|" + "---|" * len(CSV_COLUMNS),
    ]
    lines += ["| " + " | ".join(row.cells()) + " |" for row in report.rows]
    if report.metadata:
        lines.append("")
        lines += [f"- {k}: {v}" for k, v in report.metadata.items()]
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> list[BenchRow]:
    """Read rows back from ``format_csv`` output; comment lines are skipped."""
    body = [line for line in text.splitlines() if line and not line.startswith("#")]
    reader = csv.DictReader(body)
    if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    return [
        BenchRow(
            r["structure"],
            int(r["n"]),
            int(r["chunk_size"]) if r["chunk_size"] else None,
            r["operation"],
            int(r["median_ns"]),
            int(r["min_ns"]),
            int(r["max_ns"]),
            float(r["speedup"]),
        )
        for r in reader
    ]


def emit_report(report: BenchReport, format: str = "csv", path: str | Path | None = None) -> str:
    """Render ``report`` and write it to ``path`` (stdout when ``None``)."""
    if not report.rows:
        raise ValueError("refusing to emit an empty report")
    if format == "csv":
        text = format_csv(report)
    elif format == "markdown":
        text = format_markdown(report)
    else:
        raise ValueError(f"unknown format {format!r}")
    if path is None:
        sys.stdout.write(text)
    else:
        try:
            Path(path).write_text(text)
        except OSError as exc:
            raise OSError(f"cannot write report to {path}: {exc.strerror or exc}") from exc
    return text


def _check_writable(path: Path) -> None:
    parent = path.resolve().parent
    if not parent.is_dir():
        raise OSError(f"cannot write report to {path}: directory {parent} does not exist")
    if path.is_dir() or not os.access(parent, os.W_OK):
        raise OSError(f"cannot write report to {path}: not writable")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _chunk_sizes(text: str) -> list[ChunkSizeSpec]:
    out: list[ChunkSizeSpec] = []
    for tok in (t.strip() for t in text.split(",")):
        if not tok:
            continue
        if tok == "sqrt":
            out.append(tok)
            continue
        try:
            out.append(int(tok))
        except ValueError:
            raise argparse.ArgumentTypeError(f"chunk size must be an int or 'sqrt', got {tok!r}")
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="chunklist-bench",
        description="Time chunk list operations against a flat Python list.",
    )
    p.add_argument("--sizes", type=_int_list, default=[10_000, 100_000, 1_000_000])
    p.add_argument("--chunk-sizes", type=_chunk_sizes, default=["sqrt", 1000])
    p.add_argument(
        "--ops",
        type=lambda s: [x.strip() for x in s.split(",") if x.strip()],
        default=["add", "contains-hit", "contains-miss", "remove", "sort"],
        help=f"comma-separated subset of {','.join(OPERATIONS)}",
    )
    p.add_argument("--reps", type=int, default=7)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--parallel", choices=("on", "off"), default="on")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--format", choices=("csv", "markdown"), default="csv")
    p.add_argument("--out", type=Path, default=None, help="output file (default: stdout)")
    p.add_argument("--quiet", action="store_true", help="no progress on stderr")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    config = BenchConfig(
        sizes=args.sizes,
        chunk_sizes=args.chunk_sizes,
        operations=args.ops,
        repetitions=args.reps,
        seed=args.seed,
        parallel=args.parallel == "on",
        workers=args.workers,
        output_path=args.out,
        format=args.format,
    )
    try:
        config.validate()
        if config.output_path is not None:
            _check_writable(config.output_path)
        progress = None if args.quiet else (lambda msg: print(msg, file=sys.stderr))
        report = run_bench(config, progress)
        emit_report(report, config.format, config.output_path)
    except BenchConfigError as exc:
        print(f"chunklist-bench: config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"chunklist-bench: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
