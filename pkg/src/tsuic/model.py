"""Two-sender unicast instances and the graphs derived from them.

Messages and receivers share the labels ``1..n``: receiver ``r`` requests
message ``r``.  Vertex sets are frequently carried as int bitmasks where
vertex ``v`` is bit ``v`` (bit 0 is never set).
"""

from __future__ import annotations

import json
from importlib import resources
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .errors import InstanceError


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def members(mask: int) -> Iterator[int]:
    """Vertices in ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Instance:
    """A TSUIC instance.

    ``side_info[r - 1]`` is the set of messages receiver ``r`` already holds;
    ``sender1``/``sender2`` are the message sets available at each sender.
    """

    n: int
    side_info: tuple[frozenset[int], ...]
    sender1: frozenset[int]
    sender2: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "side_info", tuple(frozenset(h) for h in self.side_info))
        object.__setattr__(self, "sender1", frozenset(self.sender1))
        object.__setattr__(self, "sender2", frozenset(self.sender2))
        self._validate()

    def _validate(self) -> None:
        n = self.n
        if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
            raise InstanceError(f"n must be a positive integer, got {n!r}")
        if len(self.side_info) != n:
            raise InstanceError(f"side_info has {len(self.side_info)} entries, expected n={n}")
        universe = range(1, n + 1)
        for name, group in (("sender1", self.sender1), ("sender2", self.sender2)):
            for m in group:
                if m not in universe:
                    raise InstanceError(f"{name} holds out-of-range message {m}")
        for r, h in enumerate(self.side_info, start=1):
            for m in h:
                if m not in universe:
                    raise InstanceError(f"receiver {r} side information has out-of-range message {m}")
            if r in h:
                raise InstanceError(f"receiver knows own message (receiver {r})")
        for m in universe:
            if m not in self.sender1 and m not in self.sender2:
                raise InstanceError(f"message {m} at no sender")

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def private1(self) -> frozenset[int]:
        return self.sender1 - self.sender2

    @property
    def private2(self) -> frozenset[int]:
        return self.sender2 - self.sender1

    @property
    def common(self) -> frozenset[int]:
        return self.sender1 & self.sender2

    def knows(self, r: int, m: int) -> bool:
        return m in self.side_info[r - 1]

    def digraph(self) -> SideInfoDigraph:
        return SideInfoDigraph(self.n, tuple(mask_of(h) for h in self.side_info))

    def restrict(self, vertices: Iterable[int]) -> tuple[Instance, tuple[int, ...]]:
        """Induced sub-instance on ``vertices``, relabelled ``1..k`` in ascending order.

        Returns the sub-instance and the tuple mapping new label ``i`` to the
        original label ``labels[i - 1]``.
        """
        labels = tuple(sorted(set(vertices)))
        if not labels:
            raise InstanceError("cannot restrict to an empty vertex set")
        new = {old: i for i, old in enumerate(labels, start=1)}
        side = [frozenset(new[m] for m in self.side_info[v - 1] if m in new) for v in labels]
        s1 = frozenset(new[m] for m in self.sender1 if m in new)
        s2 = frozenset(new[m] for m in self.sender2 if m in new)
        return Instance(len(labels), tuple(side), s1, s2), labels

    def with_senders(self, sender1: Iterable[int], sender2: Iterable[int]) -> Instance:
        return Instance(self.n, self.side_info, frozenset(sender1), frozenset(sender2))

    def to_dict(self) -> dict:
        return {
            "n": int(self.n),
            "side_info": [sorted(h) for h in self.side_info],
            "sender1": sorted(self.sender1),
            "sender2": sorted(self.sender2),
        }


@dataclass(frozen=True)
class SideInfoDigraph:
    """Digraph on ``1..n``; ``out[i - 1]`` is the bitmask of out-neighbours of ``i``."""

    n: int
    out: tuple[int, ...]

    def __post_init__(self):
        for i, m in enumerate(self.out, start=1):
            if m >> i & 1:
                raise ValueError(f"self-loop at vertex {i}")
            if m & 1 or m >> (self.n + 1):
                raise ValueError(f"arc from {i} leaves the vertex range")

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> SideInfoDigraph:
        out = [0] * n
        for i, j in arcs:
            out[i - 1] |= 1 << j
        return cls(n, tuple(out))

    def has_arc(self, i: int, j: int) -> bool:
        return bool(self.out[i - 1] >> j & 1)

    def successors(self, i: int) -> list[int]:
        return list(members(self.out[i - 1]))

    @property
    def arcs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(1, self.n + 1) for j in members(self.out[i - 1])]

    @property
    def vertex_mask(self) -> int:
        return ((1 << (self.n + 1)) - 1) ^ 1


@dataclass(frozen=True)
class UGraph:
    """Simple undirected graph on ``1..n`` held as neighbour bitmasks."""

    n: int
    adj: tuple[int, ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> UGraph:
        adj = [0] * n
        for i, j in edges:
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            adj[i - 1] |= 1 << j
            adj[j - 1] |= 1 << i
        return cls(n, tuple(adj))

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i - 1] >> j & 1)

    def neighbors(self, i: int) -> list[int]:
        return list(members(self.adj[i - 1]))

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(1, self.n + 1) for j in members(self.adj[i - 1]) if i < j]

    def complement(self) -> UGraph:
        full = ((1 << (self.n + 1)) - 1) ^ 1
        return UGraph(self.n, tuple(full & ~m & ~(1 << i) for i, m in enumerate(self.adj, start=1)))


# The sender-constraint graph and the union graph are plain undirected graphs;
# the aliases keep signatures readable.
SenderConstraintGraph = UGraph
UnionGraph = UGraph


def derive_sender_constraint_graph(inst: Instance) -> SenderConstraintGraph:
    """Complete bipartite graph between the two senders' private messages."""
    return UGraph.from_edges(inst.n, ((i, j) for i in inst.private1 for j in inst.private2))


def build_union_graph(inst: Instance) -> UnionGraph:
    """Underlying undirected graph of the complement of D, joined with G_o.

    ``i`` and ``j`` are adjacent unless each already knows the other's
    message and they are not constrained apart by the senders.
    """
    d = inst.digraph()
    g = derive_sender_constraint_graph(inst)
    full = d.vertex_mask
    adj = []
    for i in range(1, inst.n + 1):
        missing_out = full & ~d.out[i - 1] & ~(1 << i)
        missing_in = 0
        for j in range(1, inst.n + 1):
            if j != i and not d.out[j - 1] >> i & 1:
                missing_in |= 1 << j
        adj.append(missing_out | missing_in | g.adj[i - 1])
    return UGraph(inst.n, tuple(adj))


def load_instance(text: str) -> Instance:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"parse error: {exc}") from exc
    if not isinstance(data, dict):
        raise InstanceError("parse error: top level must be a JSON object")
    for key in ("n", "side_info", "sender1", "sender2"):
        if key not in data:
            raise InstanceError(f"parse error: missing key {key!r}")
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise InstanceError("parse error: n must be an integer")

    def int_list(value, what):
        if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
            raise InstanceError(f"parse error: {what} must be a list of integers")
        return value

    side = data["side_info"]
    if not isinstance(side, list):
        raise InstanceError("parse error: side_info must be a list of lists")
    side_sets = tuple(frozenset(int_list(h, f"side_info[{k}]")) for k, h in enumerate(side))
    return Instance(
        n,
        side_sets,
        frozenset(int_list(data["sender1"], "sender1")),
        frozenset(int_list(data["sender2"], "sender2")),
    )


def dump_instance(inst: Instance) -> str:
    """Serialise with one key per line and inline arrays (sorted ascending)."""
    body = ",\n".join(f"  {json.dumps(k)}: {json.dumps(v)}" for k, v in inst.to_dict().items())
    return "{\n" + body + "\n}\n"


def load_example(name: str) -> Instance:
    """One of the bundled instances: ``four_cycle``, ``five_cycle`` or ``two_triangles``."""
    try:
        text = resources.files("tsuic.data").joinpath(f"{name}.json").read_text(encoding="utf-8")
    except FileNotFoundError:
        raise InstanceError(f"no bundled instance named {name!r}") from None
    return load_instance(text)


def parse_split(split: str) -> tuple[str, int]:
    """``'disjoint'``, ``'one-covers-all'`` or ``'overlap:k'`` -> (policy, k)."""
    if split in ("disjoint", "one-covers-all"):
        return split, 0
    if split.startswith("overlap"):
        _, _, k = split.partition(":")
        if not k:
            k = split[len("overlap"):].strip("()")
        try:
            return "overlap", int(k)
        except ValueError:
            pass
    raise InstanceError(f"unknown split policy {split!r}")


def generate_random_instance(n: int, arc_density: float, split: str = "overlap:1", seed: int = 0) -> Instance:
    """Random instance with i.i.d. arcs and a sender split drawn by ``split``.

    Split policies: ``disjoint`` (no common message), ``overlap:k`` (exactly
    ``k`` common messages) and ``one-covers-all`` (sender 1 holds everything,
    sender 2 a random subset).
    """
    if n < 1:
        raise InstanceError("n must be at least 1")
    if not 0.0 <= arc_density <= 1.0:
        raise InstanceError("arc density must lie in [0, 1]")
    policy, k = parse_split(split)
    if policy == "overlap" and not 0 <= k <= n:
        raise InstanceError(f"overlap of {k} common messages infeasible for n={n}")

    rng = np.random.default_rng(seed)
    arcs = rng.random((n, n)) < arc_density
    side = tuple(frozenset(j + 1 for j in range(n) if j != i and arcs[i, j]) for i in range(n))

    msgs = np.arange(1, n + 1)
    if policy == "one-covers-all":
        s1 = set(msgs.tolist())
        s2 = {int(m) for m in msgs[rng.random(n) < 0.5]}
    else:
        common = set(rng.choice(msgs, size=k, replace=False).tolist()) if policy == "overlap" else set()
        to_first = rng.random(n) < 0.5
        s1, s2 = set(common), set(common)
        for m, first in zip(msgs.tolist(), to_first):
            if m in common:
                continue
            (s1 if first else s2).add(m)
    return Instance(n, side, frozenset(s1), frozenset(s2))
