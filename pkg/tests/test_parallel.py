import random
import threading
import time
from collections import Counter
from functools import total_ordering

import pytest

from chunklist import SEQUENTIAL, ChunkList, ParallelConfig
from chunklist._parallel import LoopState, for_each

PAR = ParallelConfig(workers=4, threshold=1)


def test_for_each_visits_every_item_once():
    seen = []
    lock = threading.Lock()

    def body(i, item, state):
        with lock:
            seen.append((i, item))

    for_each(list("abcdefghij"), body, workers=4)
    assert sorted(seen) == list(enumerate("abcdefghij"))


def test_for_each_uses_several_threads():
    names = set()
    barrier = threading.Barrier(3, timeout=5)

    def body(i, item, state):
        names.add(threading.current_thread().name)
        barrier.wait()

    for_each([0, 1, 2], body, workers=3)
    assert len(names) == 3


def test_stop_prevents_new_items():
    visited = []

    def body(i, item, state):
        visited.append(i)
        state.stop()

    state = for_each(list(range(100)), body, workers=1)
    assert state.stopped
    assert visited == [0]


def test_stop_halts_all_workers():
    visited = []
    lock = threading.Lock()

    def body(i, item, state):
        with lock:
            visited.append(i)
        if i == 0:
            state.stop()
        time.sleep(0.001)

    for_each(list(range(400)), body, workers=4)
    assert len(visited) < 400


def test_exception_propagates():
    def body(i, item, state):
        if i == 5:
            raise RuntimeError("boom")

    with pytest.raises(RuntimeError, match="boom"):
        for_each(list(range(20)), body, workers=4)


def test_empty_input():
    assert not for_each([], lambda *a: None, workers=4).stopped
    s = LoopState()
    assert not s.stopped
    s.stop()
    assert s.stopped


@total_ordering
class Slow:
    """Value whose equality test yields the GIL, so matches overlap in time."""

    def __init__(self, v):
        self.v = v

    def __eq__(self, other):
        time.sleep(0.0005)
        return isinstance(other, Slow) and self.v == other.v

    def __lt__(self, other):
        return self.v < other.v

    def __hash__(self):
        return hash(self.v)


def test_remove_deletes_exactly_one_under_contention():
    target = Slow(1)
    for _ in range(20):
        # A copy of the target at the head of every chunk: all workers hit at once.
        items = [x for _ in range(8) for x in (Slow(1), Slow(2), Slow(3))]
        cl = ChunkList(3, items, config=ParallelConfig(workers=8, threshold=1))
        assert cl.remove(target)
        assert [x.v for x in cl.get_list()].count(1) == 7
        assert cl.size() == 23


def test_contains_early_exit_with_slow_elements():
    items = [Slow(i) for i in range(200)]
    cl = ChunkList(10, items, config=PAR)
    assert cl.contains(Slow(0))
    assert not cl.contains(Slow(-1))


def _random_list(rng, config):
    cs = rng.randint(1, 12)
    cl = ChunkList(cs, [rng.randrange(20) for _ in range(rng.randrange(200))], config=config)
    for _ in range(rng.randrange(30)):
        cl.remove(rng.randrange(20))
    return cl


def test_parallel_matches_sequential_on_random_lists():
    rng = random.Random(7)
    for _ in range(200):
        base = _random_list(rng, SEQUENTIAL)
        probe = rng.randrange(25)
        seq, par = base.copy(), base.copy()
        par.config = PAR
        assert seq.contains(probe) == par.contains(probe)
        assert seq.remove(probe) == par.remove(probe)
        assert Counter(seq.get_list()) == Counter(par.get_list())
        assert seq.remove_all(probe) == par.remove_all(probe)
        assert Counter(seq.get_list()) == Counter(par.get_list())
        # remove_all has no race: layouts match exactly.
        assert seq.chunk_count == par.chunk_count
