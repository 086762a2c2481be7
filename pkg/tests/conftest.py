from __future__ import annotations

import itertools
import random

import pytest

from tsuic import Instance

ACCEPTANCE_LOG: list[tuple[int, bool, str]] = []


def make_instance(n, arcs, sender1, sender2):
    side = [set() for _ in range(n)]
    for i, j in arcs:
        side[i - 1].add(j)
    return Instance(n, side, frozenset(sender1), frozenset(sender2))


def cycle_instance(n, sender1=None, sender2=None):
    everything = range(1, n + 1)
    arcs = [(i, i % n + 1) for i in everything]
    return make_instance(n, arcs, sender1 or everything, sender2 or everything)


def random_instance(rng: random.Random, n: int, density: float | None = None) -> Instance:
    """Arcs i.i.d.; each message private to 1, private to 2 or common."""
    p = rng.choice([0.2, 0.4, 0.6, 0.8]) if density is None else density
    side = [{j for j in range(1, n + 1) if j != i and rng.random() < p} for i in range(1, n + 1)]
    s1, s2 = set(), set()
    for m in range(1, n + 1):
        where = rng.randrange(3)
        if where != 1:
            s1.add(m)
        if where != 0:
            s2.add(m)
    return Instance(n, side, frozenset(s1), frozenset(s2))


def set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[head]] + part
        for k in range(len(part)):
            yield part[:k] + [[head] + part[k]] + part[k + 1:]


def all_digraphs(n):
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        yield [p for p, b in zip(pairs, bits) if b]


@pytest.fixture
def rng():
    return random.Random(20261015)


@pytest.fixture
def criterion():
    """Record an acceptance criterion's outcome for the terminal summary."""

    class Recorder:
        def __init__(self):
            self.num = None

        def __call__(self, num, desc):
            self.num, self.desc = num, desc
            return self

        def __enter__(self):
            return self

        def __exit__(self, exc_type, exc, tb):
            ACCEPTANCE_LOG.append((self.num, exc_type is None, self.desc))
            return False

    return Recorder()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LOG:
        return
    terminalreporter.section("acceptance criteria")
    for num, ok, desc in sorted(ACCEPTANCE_LOG):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {num:>2}: {desc}")
