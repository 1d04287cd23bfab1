"""Sequential reference list, operation traces and differential replay.

``OracleList`` is a plain flat list with the same operation names as
``ChunkList``. Random ``OpTrace`` objects drive both through identical
operations so their contents can be compared afterwards.

Because ``ChunkList.remove`` may delete any one of several equal copies,
contents are compared as multisets, except right after a sort, when both
sides must agree element for element.
"""

from __future__ import annotations

import enum
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

from .core import DEFAULT_CHUNK_SIZE, SEQUENTIAL, ChunkList


class TraceError(ValueError):
    """A trace that cannot be parsed or replayed as written."""


class Opcode(enum.Enum):
    ADD = "ADD"
    REMOVE = "REMOVE"
    REMOVE_ALL = "REMOVE_ALL"
    REMOVE_AT = "REMOVE_AT"
    SET = "SET"
    CLEAR = "CLEAR"
    SORT = "SORT"
    SET_CHUNK_SIZE = "SET_CHUNK_SIZE"


_ARITY = {
    Opcode.ADD: 1,
    Opcode.REMOVE: 1,
    Opcode.REMOVE_ALL: 1,
    Opcode.REMOVE_AT: 1,
    Opcode.SET: 2,
    Opcode.CLEAR: 0,
    Opcode.SORT: 0,
    Opcode.SET_CHUNK_SIZE: 1,
}

#: Index-free operations: replaying these on both sides keeps multisets equal.
DEFAULT_OP_MIX: dict[Opcode, float] = {
    Opcode.ADD: 60.0,
    Opcode.REMOVE: 25.0,
    Opcode.REMOVE_ALL: 3.0,
    Opcode.CLEAR: 0.3,
    Opcode.SORT: 1.0,
    Opcode.SET_CHUNK_SIZE: 2.0,
}

#: Adds index-based operations; replay these with ``differential_replay``.
INDEXED_OP_MIX: dict[Opcode, float] = {
    **DEFAULT_OP_MIX,
    Opcode.REMOVE_AT: 8.0,
    Opcode.SET: 8.0,
}


@dataclass(frozen=True)
class Op:
    code: Opcode
    args: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if len(self.args) != _ARITY[self.code]:
            raise TraceError(
                f"{self.code.value} takes {_ARITY[self.code]} operand(s), got {len(self.args)}"
            )

    def __str__(self) -> str:
        return " ".join([self.code.value, *map(str, self.args)])


@dataclass
class OpTrace:
    ops: list[Op] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)

    def dumps(self) -> str:
        """One op per line: ``OPCODE operand [operand]``."""
        return "".join(f"{op}\n" for op in self.ops)

    @classmethod
    def loads(cls, text: str) -> OpTrace:
        ops = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            name, *rest = line.split()
            try:
                code = Opcode(name)
            except ValueError:
                raise TraceError(f"line {lineno}: unknown opcode {name!r}") from None
            try:
                args = tuple(int(a) for a in rest)
            except ValueError:
                raise TraceError(f"line {lineno}: non-integer operand in {line!r}") from None
            try:
                ops.append(Op(code, args))
            except TraceError as exc:
                raise TraceError(f"line {lineno}: {exc}") from None
        return cls(ops)


class OracleList:
    """Flat dynamic array with ``ChunkList``'s operation names.

    It also tracks ``aligned``: whether the chunk list it shadows is known to
    be canonically filled (every chunk full except possibly the last) and to
    hold the same sequence. Only then do chunk-list indices coincide with
    flat positions. Removals clear the flag because the chunk list leaves a
    hole that later adds fill out of order; sort and clear set it again.
    """

    def __init__(self, chunk_size: int = DEFAULT_CHUNK_SIZE, items: Iterable = ()) -> None:
        self.items: list = list(items)
        self.chunk_size = chunk_size
        self.aligned = True

    def size(self) -> int:
        return len(self.items)

    def add(self, item) -> None:
        self.items.append(item)

    def get(self, index: int):
        self._check(index)
        return self.items[index]

    def set(self, index: int, item) -> None:
        self._check(index)
        self.items[index] = item

    def remove_at(self, index: int):
        self._check(index)
        self.aligned = False
        return self.items.pop(index)

    def remove(self, item) -> bool:
        try:
            self.items.remove(item)
        except ValueError:
            return False
        self.aligned = False
        return True

    def remove_all(self, item) -> int:
        kept = [x for x in self.items if x != item]
        removed = len(self.items) - len(kept)
        if removed:
            self.items = kept
            self.aligned = False
        return removed

    def contains(self, item) -> bool:
        return item in self.items

    def clear(self) -> None:
        self.items = []
        self.aligned = True

    def sort(self) -> None:
        self.items.sort()
        self.aligned = True

    def set_chunk_size(self, new_chunk_size: int) -> None:
        if new_chunk_size < 1:
            raise ValueError(f"chunk size must be >= 1, got {new_chunk_size}")
        # Shrinking reflows in the current order, so alignment carries over.
        # Growing leaves old full chunks short of the new bound.
        if new_chunk_size > self.chunk_size and len(self.items) > self.chunk_size:
            self.aligned = False
        self.chunk_size = new_chunk_size

    def get_list(self) -> list:
        return list(self.items)

    def _check(self, index: int) -> None:
        if index < 0 or index >= len(self.items):
            raise IndexError(f"index {index} out of range for size {len(self.items)}")


Target = Union[ChunkList, OracleList]


def is_canonical(chunk_list: ChunkList) -> bool:
    """True when every chunk is full except possibly the last."""
    cap = chunk_list.chunk_size
    return all(len(c) == cap for c in chunk_list.chunks[:-1])


@dataclass
class Snapshot:
    """Final contents after a replay plus the return value of each REMOVE."""

    items: list
    remove_results: list[bool] = field(default_factory=list)

    @property
    def counts(self) -> Counter:
        return Counter(self.items)


def _apply(op: Op, target: Target):
    code, args = op.code, op.args
    if code is Opcode.ADD:
        return target.add(args[0])
    if code is Opcode.REMOVE:
        return target.remove(args[0])
    if code is Opcode.REMOVE_ALL:
        return target.remove_all(args[0])
    if code is Opcode.REMOVE_AT:
        return target.remove_at(args[0])
    if code is Opcode.SET:
        return target.set(args[0], args[1])
    if code is Opcode.CLEAR:
        return target.clear()
    if code is Opcode.SORT:
        return target.sort()
    if code is Opcode.SET_CHUNK_SIZE:
        return target.set_chunk_size(args[0])
    raise TraceError(f"unhandled opcode {code!r}")


def replay(trace: OpTrace | Iterable[Op], target: Target) -> Snapshot:
    """Apply every op in order to ``target`` and return its final contents.

    Index operands are taken literally. On an ``OracleList`` they address flat
    positions, which match the chunk list's only while the two are aligned
    (see ``OracleList``); use ``differential_replay`` for traces with REMOVE_AT or SET.
    """
    results = []
    for op in trace:
        if not isinstance(op, Op):
            raise TraceError(f"not an Op: {op!r}")
        out = _apply(op, target)
        if op.code is Opcode.REMOVE:
            results.append(out)
    return Snapshot(target.get_list(), results)


@dataclass
class Violation:
    step: int
    op: Op | None
    message: str

    def __str__(self) -> str:
        return f"step {self.step} ({self.op}): {self.message}"


def differential_replay(
    trace: OpTrace | Iterable[Op],
    chunk_list: ChunkList,
    oracle: OracleList | None = None,
    *,
    check_remove_counts: bool = False,
) -> list[Violation]:
    """Replay ``trace`` on both structures in lockstep; return every disagreement.

    REMOVE_AT and SET address whatever slot the chunk list resolves the index
    to. While the oracle is aligned it must hold the same element at
    that flat position. Otherwise the oracle mirrors the change by value
    (drop or replace one copy of the element the chunk list touched), so only
    the multiset is checked.

    An index operand past the current end wraps around modulo the size (and
    the op is skipped on an empty list). This only happens when a parallel
    REMOVE deleted a different copy than the sequential model the trace was
    generated against, which changes later sizes.

    With ``check_remove_counts`` every successful REMOVE must lower the
    target's count in the chunk list by exactly one.
    """
    if oracle is None:
        oracle = OracleList(chunk_size=chunk_list.chunk_size, items=chunk_list.get_list())
        oracle.aligned = is_canonical(chunk_list)
    violations: list[Violation] = []
    steps = 0
    for step, op in enumerate(trace):
        steps = step + 1
        code, args = op.code, op.args
        if code is Opcode.REMOVE_AT or code is Opcode.SET:
            size = chunk_list.size()
            if size == 0:
                continue
            op = Op(code, (args[0] % size, *args[1:]))
            index = op.args[0]
            current = chunk_list.get(index)
            if oracle.aligned:
                expected = oracle.get(index)
                if current != expected:
                    violations.append(
                        Violation(step, op, f"index resolves to {current!r}, oracle has {expected!r}")
                    )
                _apply(op, oracle)
            elif code is Opcode.REMOVE_AT:
                oracle.remove(current)
            else:
                oracle.items[oracle.items.index(current)] = args[1]
            _apply(op, chunk_list)
            if code is Opcode.REMOVE_AT:
                oracle.aligned = False
            continue

        if code is Opcode.REMOVE and check_remove_counts:
            before = chunk_list.get_list().count(args[0])
        got = _apply(op, chunk_list)
        want = _apply(op, oracle)
        if got != want and code in (Opcode.REMOVE, Opcode.REMOVE_ALL):
            violations.append(Violation(step, op, f"chunk list returned {got!r}, oracle {want!r}"))
        if code is Opcode.REMOVE and check_remove_counts:
            after = chunk_list.get_list().count(args[0])
            if before - after != (1 if before else 0):
                violations.append(
                    Violation(step, op, f"count of {args[0]} went {before} -> {after}")
                )

    final = chunk_list.get_list()
    if Counter(final) != Counter(oracle.items):
        violations.append(Violation(steps, None, "final multisets differ"))
    if chunk_list.size() != oracle.size():
        violations.append(
            Violation(steps, None, f"size {chunk_list.size()} != oracle {oracle.size()}")
        )
    if any(len(c) > chunk_list.chunk_size for c in chunk_list.chunks):
        violations.append(Violation(steps, None, "a chunk exceeds the chunk size"))
    return violations


def generate_trace(
    seed: int,
    length: int,
    op_mix: Mapping[Opcode, float] | None = None,
    *,
    domain: int = 256,
    chunk_size: int = 16,
    max_chunk_size: int = 64,
) -> OpTrace:
    """Deterministic random trace.

    Element operands come from ``range(domain)``; a small domain makes
    duplicates likely. The trace is generated against a sequential chunk
    list starting at ``chunk_size``, and index operands always fall inside
    that model's current size.
    """
    mix = dict(DEFAULT_OP_MIX if op_mix is None else op_mix)
    if any(w < 0 for w in mix.values()) or not any(w > 0 for w in mix.values()):
        raise ValueError("op_mix weights must be nonnegative and not all zero")
    if domain < 1 or max_chunk_size < 1:
        raise ValueError("domain and max_chunk_size must be >= 1")
    indexed = (Opcode.REMOVE_AT, Opcode.SET)
    if all(w == 0 for c, w in mix.items() if c not in indexed):
        raise ValueError("op_mix needs some weight on an op that does not take an index")

    rng = random.Random(seed)
    codes = list(mix)
    weights = [mix[c] for c in codes]
    model: ChunkList = ChunkList(chunk_size, config=SEQUENTIAL)
    ops: list[Op] = []
    while len(ops) < length:
        code = rng.choices(codes, weights)[0]
        size = model.size()
        if code in indexed:
            if size == 0:
                continue
            args: tuple[int, ...] = (rng.randrange(size),)
            if code is Opcode.SET:
                args += (rng.randrange(domain),)
        elif code is Opcode.SET_CHUNK_SIZE:
            args = (rng.randint(1, max_chunk_size),)
        elif code in (Opcode.CLEAR, Opcode.SORT):
            args = ()
        else:
            args = (rng.randrange(domain),)
        op = Op(code, args)
        _apply(op, model)
        ops.append(op)
    return OpTrace(ops)
