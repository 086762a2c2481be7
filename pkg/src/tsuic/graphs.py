"""Exact graph routines used by the coding schemes.

Everything here is exponential in the worst case; each search carries an
explicit cap and raises :class:`CapExceeded` rather than degrade silently.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .errors import CapExceeded
from .model import Instance, SideInfoDigraph, UGraph, mask_of, members

DEFAULT_MAX_CYCLES = 10_000
DEFAULT_MAIS_CAP = 20
DEFAULT_COLOR_CAP = 12


@dataclass(frozen=True)
class Cycle:
    """Directed cycle ``v1 -> v2 -> ... -> vk -> v1`` listed from its smallest vertex."""

    vertices: tuple[int, ...]

    def __len__(self):
        return len(self.vertices)

    @property
    def vertex_mask(self) -> int:
        return mask_of(self.vertices)

    def arcs(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [(vs[k], vs[(k + 1) % len(vs)]) for k in range(len(vs))]


@dataclass(frozen=True)
class Coloring:
    """Proper coloring in canonical form.

    ``assignment[v - 1]`` is the color of vertex ``v``; colors are numbered
    ``0..k-1`` in order of first appearance, so that color classes are
    ordered by their smallest member.
    """

    assignment: tuple[int, ...]

    @classmethod
    def from_classes(cls, n: int, classes: Iterable[Iterable[int]]) -> Coloring:
        raw = [-1] * n
        for c, cls_ in enumerate(classes):
            for v in cls_:
                raw[v - 1] = c
        if -1 in raw:
            raise ValueError("classes do not cover every vertex")
        return cls(canonical_assignment(raw))

    @property
    def num_colors(self) -> int:
        return max(self.assignment, default=-1) + 1

    def color_of(self, v: int) -> int:
        return self.assignment[v - 1]

    @property
    def classes(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.num_colors)]
        for v, c in enumerate(self.assignment, start=1):
            out[c].append(v)
        return tuple(tuple(c) for c in out)

    def is_proper(self, g: UGraph) -> bool:
        return all(self.assignment[i - 1] != self.assignment[j - 1] for i, j in g.edges)


def canonical_assignment(raw: Iterable[int]) -> tuple[int, ...]:
    relabel: dict[int, int] = {}
    return tuple(relabel.setdefault(c, len(relabel)) for c in raw)


def complement_digraph(d: SideInfoDigraph) -> SideInfoDigraph:
    full = d.vertex_mask
    return SideInfoDigraph(d.n, tuple(full & ~m & ~(1 << i) for i, m in enumerate(d.out, start=1)))


def enumerate_simple_cycles(d: SideInfoDigraph, max_count: int = DEFAULT_MAX_CYCLES) -> list[Cycle]:
    """All simple directed cycles, each once, rotated to start at its smallest vertex.

    Raises CapExceeded as soon as more than ``max_count`` cycles exist.
    """
    found: list[Cycle] = []
    for start in range(1, d.n + 1):
        # only vertices above ``start`` may appear after it
        allowed = d.vertex_mask & ~((1 << (start + 1)) - 1)
        path = [start]
        on_path = 1 << start
        stack = [iter(members(d.out[start - 1] & (allowed | 1 << start)))]
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                stack.pop()
                on_path &= ~(1 << path.pop())
                continue
            if nxt == start:
                found.append(Cycle(tuple(path)))
                if len(found) > max_count:
                    raise CapExceeded("cycle enumeration", max_count, len(found))
                continue
            if on_path >> nxt & 1:
                continue
            path.append(nxt)
            on_path |= 1 << nxt
            stack.append(iter(members(d.out[nxt - 1] & (allowed | 1 << start))))
    return found


def _private_side(inst: Instance, v: int) -> int:
    if v in inst.private1:
        return 1
    if v in inst.private2:
        return 2
    return 0


def _gbar_adjacent(inst: Instance, i: int, j: int) -> bool:
    si, sj = _private_side(inst, i), _private_side(inst, j)
    return not (si and sj and si != sj)


def is_message_connected(cycle: Cycle | Iterable[int], inst: Instance) -> bool:
    """Whether the cycle's vertices induce a connected subgraph of the complement of G_o."""
    vs = list(cycle.vertices) if isinstance(cycle, Cycle) else sorted(cycle)
    if any(v in inst.common for v in vs):
        return True
    todo = set(vs)
    queue = deque([vs[0]])
    todo.discard(vs[0])
    while queue:
        u = queue.popleft()
        for w in [w for w in todo if _gbar_adjacent(inst, u, w)]:
            todo.discard(w)
            queue.append(w)
    return not todo


def spanning_tree(g: UGraph, vertices: Iterable[int]) -> list[tuple[int, int]]:
    """Lexicographically smallest spanning tree of ``g[vertices]`` (Kruskal on sorted edges)."""
    vs = sorted(set(vertices))
    parent = {v: v for v in vs}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree = []
    for a, b in combinations(vs, 2):
        if not g.has_edge(a, b):
            continue
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra
            tree.append((a, b))
    if len(tree) != len(vs) - 1:
        raise ValueError(f"induced subgraph on {vs} is disconnected")
    return tree


def _reach(d: SideInfoDigraph, v: int, within: int) -> int:
    seen = 1 << v
    frontier = seen
    while frontier:
        nxt = 0
        for u in members(frontier):
            nxt |= d.out[u - 1]
        nxt &= within & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def strongly_connected_components(d: SideInfoDigraph) -> list[int]:
    """SCCs as vertex bitmasks, ordered by smallest member."""
    full = d.vertex_mask
    rev = [0] * d.n
    for i, j in d.arcs:
        rev[j - 1] |= 1 << i
    rd = SideInfoDigraph(d.n, tuple(rev))
    left, comps = full, []
    while left:
        v = (left & -left).bit_length() - 1
        comp = _reach(d, v, left) & _reach(rd, v, left)
        comps.append(comp)
        left &= ~comp
    return comps


def is_acyclic(d: SideInfoDigraph, within: int | None = None) -> bool:
    """Acyclicity of the sub-digraph induced by ``within`` (peels off sinks)."""
    left = d.vertex_mask if within is None else within
    while left:
        sinks = 0
        for v in members(left):
            if not d.out[v - 1] & left:
                sinks |= 1 << v
        if not sinks:
            return False
        left &= ~sinks
    return True


def mais(d: SideInfoDigraph, cap: int = DEFAULT_MAIS_CAP) -> int:
    """Order of a maximum acyclic induced sub-digraph.

    Computed per strongly connected component (every cycle lives inside one),
    each by removing vertex subsets of increasing size until acyclic.
    """
    if d.n > cap:
        raise CapExceeded("MAIS vertex count", cap, d.n)
    total = 0
    for comp in strongly_connected_components(d):
        vs = list(members(comp))
        if len(vs) == 1:
            total += 1
            continue
        for k in range(1, len(vs)):
            if any(is_acyclic(d, comp & ~mask_of(rm)) for rm in combinations(vs, k)):
                total += len(vs) - k
                break
    return total


def _max_clique_size(g: UGraph) -> int:
    best = 0

    def grow(size, cand):
        nonlocal best
        if not cand:
            best = max(best, size)
            return
        if size + cand.bit_count() <= best:
            return
        for v in members(cand):
            grow(size + 1, cand & g.adj[v - 1])
            cand &= ~(1 << v)
            if size + cand.bit_count() <= best:
                return

    grow(0, ((1 << (g.n + 1)) - 1) ^ 1)
    return best


def _greedy_colors(g: UGraph) -> int:
    colors: dict[int, int] = {}
    for v in sorted(range(1, g.n + 1), key=lambda x: -g.adj[x - 1].bit_count()):
        used = {colors[u] for u in members(g.adj[v - 1]) if u in colors}
        colors[v] = next(c for c in range(g.n) if c not in used)
    return max(colors.values(), default=-1) + 1


def _canonical_colorings(g: UGraph, max_colors: int) -> Iterator[tuple[int, ...]]:
    """Restricted-growth strings of proper colorings, in lexicographic order."""
    n = g.n
    if n == 0:
        yield ()
        return
    assign = [0] * n
    class_mask: list[int] = []

    def rec(v):
        if v > n:
            yield tuple(assign)
            return
        nbrs = g.adj[v - 1]
        for c in range(len(class_mask)):
            if not class_mask[c] & nbrs:
                assign[v - 1] = c
                class_mask[c] |= 1 << v
                yield from rec(v + 1)
                class_mask[c] &= ~(1 << v)
        if len(class_mask) < max_colors:
            assign[v - 1] = len(class_mask)
            class_mask.append(1 << v)
            yield from rec(v + 1)
            class_mask.pop()

    yield from rec(1)


def enumerate_colorings(g: UGraph, max_colors: int | None = None, cap: int = DEFAULT_COLOR_CAP) -> Iterator[Coloring]:
    """Every proper coloring up to renaming of colors, once each.

    Equivalently, every partition of the vertices into at most
    ``max_colors`` independent sets (default: ``n``).
    """
    if g.n > cap:
        raise CapExceeded("coloring enumeration vertex count", cap, g.n)
    k = g.n if max_colors is None else max_colors
    for a in _canonical_colorings(g, k):
        yield Coloring(a)


def chromatic_number(g: UGraph, cap: int = DEFAULT_COLOR_CAP) -> tuple[int, Coloring]:
    """Exact chromatic number with the lexicographically first optimal canonical coloring."""
    if g.n > cap:
        raise CapExceeded("chromatic number vertex count", cap, g.n)
    if g.n == 0:
        return 0, Coloring(())
    lo, hi = _max_clique_size(g), _greedy_colors(g)
    for k in range(lo, hi + 1):
        first = next(_canonical_colorings(g, k), None)
        if first is not None:
            return k, Coloring(first)
    raise AssertionError("greedy bound not attained")  # pragma: no cover
