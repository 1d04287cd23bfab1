from collections import Counter

import pytest

from chunklist import SEQUENTIAL, ChunkList, ParallelConfig
from chunklist.oracle import (
    DEFAULT_OP_MIX,
    INDEXED_OP_MIX,
    Op,
    Opcode,
    OpTrace,
    OracleList,
    TraceError,
    differential_replay,
    generate_trace,
    is_canonical,
    replay,
)

PAR = ParallelConfig(workers=4, threshold=1)


def test_replay_hand_trace():
    trace = OpTrace([Op(Opcode.ADD, (1,)), Op(Opcode.ADD, (2,)), Op(Opcode.REMOVE, (1,))])
    for target in (ChunkList(4), OracleList()):
        snap = replay(trace, target)
        assert snap.counts == Counter({2: 1})
        assert snap.remove_results == [True]


def test_replay_empty_trace():
    assert replay(OpTrace(), ChunkList()).items == []
    assert replay([], OracleList()).items == []


def test_replay_rejects_non_ops():
    with pytest.raises(TraceError):
        replay([("ADD", 1)], OracleList())


def test_op_arity_checked():
    with pytest.raises(TraceError):
        Op(Opcode.SET, (1,))
    with pytest.raises(TraceError):
        Op(Opcode.CLEAR, (1,))


def test_trace_text_round_trip():
    trace = generate_trace(3, 300, INDEXED_OP_MIX)
    text = trace.dumps()
    assert text.splitlines()[0].split()[0] in {c.value for c in Opcode}
    assert OpTrace.loads(text) == trace


def test_trace_text_format():
    trace = OpTrace([Op(Opcode.ADD, (5,)), Op(Opcode.SET, (0, 7)), Op(Opcode.SORT)])
    assert trace.dumps() == "ADD 5\nSET 0 7\nSORT\n"
    assert OpTrace.loads("# header\n\nADD 5  # trailing\nSET 0 7\nSORT\n") == trace


@pytest.mark.parametrize(
    "text", ["PUSH 1", "ADD", "ADD x", "SET 1", "CLEAR 3", "REMOVE 1 2"]
)
def test_malformed_trace_text(text):
    with pytest.raises(TraceError):
        OpTrace.loads(text)


def test_generate_is_deterministic():
    assert generate_trace(11, 500) == generate_trace(11, 500)
    assert generate_trace(11, 500) != generate_trace(12, 500)


def test_generate_add_only():
    trace = generate_trace(0, 40, {Opcode.ADD: 1})
    assert len(trace) == 40
    assert all(op.code is Opcode.ADD for op in trace)


def test_generate_validates_mix():
    with pytest.raises(ValueError):
        generate_trace(0, 10, {Opcode.ADD: 0})
    with pytest.raises(ValueError):
        generate_trace(0, 10, {Opcode.ADD: -1, Opcode.SORT: 2})
    with pytest.raises(ValueError):
        generate_trace(0, 10, {Opcode.REMOVE_AT: 1})


def test_generate_domain_and_index_bounds():
    trace = generate_trace(5, 3000, INDEXED_OP_MIX, domain=10, chunk_size=4)
    model = ChunkList(4, config=SEQUENTIAL)
    for op in trace:
        if op.code in (Opcode.ADD, Opcode.REMOVE, Opcode.REMOVE_ALL):
            assert 0 <= op.args[0] < 10
        if op.code in (Opcode.REMOVE_AT, Opcode.SET):
            assert 0 <= op.args[0] < model.size()
        replay([op], model)


def test_default_mix_has_no_index_ops():
    assert Opcode.REMOVE_AT not in DEFAULT_OP_MIX
    assert Opcode.SET not in DEFAULT_OP_MIX


@pytest.mark.parametrize("seed", range(10))
def test_independent_replays_agree(seed):
    trace = generate_trace(seed, 2000)
    got = replay(trace, ChunkList(16, config=PAR))
    want = replay(trace, OracleList(16))
    assert got.counts == want.counts
    assert got.remove_results == want.remove_results


def test_sequences_match_after_trailing_sort():
    trace = generate_trace(1, 1500)
    trace.ops.append(Op(Opcode.SORT))
    assert replay(trace, ChunkList(8, config=PAR)).items == replay(trace, OracleList(8)).items


@pytest.mark.parametrize("seed", range(10))
def test_differential_with_index_ops(seed):
    trace = generate_trace(seed, 2000, INDEXED_OP_MIX, domain=16, chunk_size=5)
    assert differential_replay(trace, ChunkList(5, config=PAR), check_remove_counts=True) == []


def test_differential_sequential_model_matches_exactly():
    # Against the same sequential semantics the generator used, no index wraps.
    trace = generate_trace(4, 2000, INDEXED_OP_MIX, domain=8, chunk_size=3)
    assert differential_replay(trace, ChunkList(3, config=SEQUENTIAL)) == []


def test_differential_reports_a_broken_structure():
    class DropsAdds(ChunkList):
        def add(self, item):
            if item != 3:
                super().add(item)

    trace = OpTrace([Op(Opcode.ADD, (v,)) for v in (1, 3, 5)])
    violations = differential_replay(trace, DropsAdds(4))
    assert violations
    assert "multisets differ" in str(violations[0])


def test_differential_catches_index_mismatch_when_aligned():
    class OffByOne(ChunkList):
        def get(self, index):
            return super().get(min(index + 1, self.size() - 1))

    trace = OpTrace([Op(Opcode.ADD, (v,)) for v in range(5)] + [Op(Opcode.SET, (0, 9))])
    violations = differential_replay(trace, OffByOne(4))
    assert any("index resolves" in str(v) for v in violations)


def test_oracle_list_alignment_tracking():
    o = OracleList(3, range(7))
    assert o.aligned
    o.set_chunk_size(2)
    assert o.aligned
    o.set_chunk_size(5)
    assert not o.aligned
    o.sort()
    assert o.aligned
    o.remove(2)
    assert not o.aligned
    o.set_chunk_size(2)
    assert not o.aligned
    o.clear()
    assert o.aligned
    with pytest.raises(IndexError):
        o.get(0)


def test_is_canonical():
    assert is_canonical(ChunkList(3, range(7)))
    cl = ChunkList(3, range(7))
    cl.remove(1)
    assert not is_canonical(cl)
    assert is_canonical(ChunkList(3))
