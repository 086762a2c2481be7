"""Achievable two-sender index codes: cycle cover, clique cover, local chromatic.

Each scheme returns a :class:`SchemeResult` carrying the achieved length and
an explicit :class:`IndexCode` that :mod:`tsuic.verify` can check.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from .errors import CapExceeded, InstanceError
from .gf import make_field, smallest_prime_at_least, systematic_mds_generator
from .graphs import (
    DEFAULT_COLOR_CAP,
    DEFAULT_MAX_CYCLES,
    Coloring,
    chromatic_number,
    complement_digraph,
    enumerate_simple_cycles,
    is_message_connected,
    spanning_tree,
)
from .model import Instance, build_union_graph, derive_sender_constraint_graph, mask_of, members

DEFAULT_PARTITION_CAP = 10
SCHEME_NAMES = ("cycle", "clique", "local", "plocal", "trivial:cycle", "trivial:clique", "trivial:local")


@dataclass(frozen=True)
class CodeRow:
    sender: int
    coeffs: tuple[tuple[int, int], ...]  # (message, nonzero coefficient), ascending

    @property
    def support(self) -> frozenset[int]:
        return frozenset(m for m, _ in self.coeffs)


@dataclass(frozen=True)
class IndexCode:
    q: int
    rows: tuple[CodeRow, ...]

    @property
    def length(self) -> int:
        return len(self.rows)

    def sender_lengths(self) -> tuple[int, int]:
        l1 = sum(1 for r in self.rows if r.sender == 1)
        return l1, self.length - l1

    def matrix(self, n: int) -> np.ndarray:
        g = np.zeros((self.length, n), dtype=np.int64)
        for k, row in enumerate(self.rows):
            for m, c in row.coeffs:
                g[k, m - 1] = c % self.q
        return g

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "rows": [{"sender": r.sender, "coeffs": [[m, c] for m, c in r.coeffs]} for r in self.rows],
        }


def make_row(sender: int, coeffs: dict[int, int] | list[tuple[int, int]], q: int) -> CodeRow:
    items = coeffs.items() if isinstance(coeffs, dict) else coeffs
    merged: dict[int, int] = {}
    for m, c in items:
        merged[int(m)] = (merged.get(int(m), 0) + int(c)) % q
    return CodeRow(sender, tuple(sorted((m, c) for m, c in merged.items() if c)))


def dump_code(code: IndexCode) -> str:
    """Serialise with one row per line."""
    rows = [f"    {json.dumps(r)}" for r in code.to_dict()["rows"]]
    body = "[\n" + ",\n".join(rows) + "\n  ]" if rows else "[]"
    return f'{{\n  "q": {code.q},\n  "rows": {body}\n}}\n'


def load_code(text: str) -> IndexCode:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"parse error: {exc}") from exc
    if not isinstance(data, dict) or "q" not in data or "rows" not in data:
        raise InstanceError("parse error: code file needs keys 'q' and 'rows'")
    q = data["q"]
    if not isinstance(q, int) or q < 2:
        raise InstanceError("parse error: q must be an integer >= 2")
    rows = []
    for k, row in enumerate(data["rows"]):
        try:
            sender = row["sender"]
            pairs = [(int(m), int(c)) for m, c in row["coeffs"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InstanceError(f"parse error in row {k}: {exc}") from exc
        if sender not in (1, 2):
            raise InstanceError(f"row {k}: sender must be 1 or 2")
        rows.append(make_row(sender, pairs, q))
    return IndexCode(q, tuple(rows))


@dataclass
class SchemeResult:
    scheme: str
    length: int
    code: IndexCode
    details: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"scheme": self.scheme, "length": self.length, "code": self.code.to_dict(), "details": self.details}


def covering_sender(inst: Instance, support) -> int | None:
    """1 if sender 1 holds every message in ``support``, else 2 if sender 2 does, else None."""
    s = frozenset(support)
    if s <= inst.sender1:
        return 1
    if s <= inst.sender2:
        return 2
    return None


def _relabel(code: IndexCode, labels: tuple[int, ...], sender: int | None = None) -> list[CodeRow]:
    return [
        CodeRow(row.sender if sender is None else sender, tuple((labels[m - 1], c) for m, c in row.coeffs))
        for row in code.rows
    ]


# --- cycle cover -------------------------------------------------------------


def _max_disjoint_packing(sets: list[int], universe: int) -> list[int]:
    """Maximum number of pairwise disjoint masks from ``sets`` inside ``universe``."""
    by_low: dict[int, list[int]] = {}
    for s in sets:
        by_low.setdefault(s & -s, []).append(s)
    memo: dict[int, tuple[int, tuple[int, ...]]] = {0: (0, ())}

    def best(mask):
        hit = memo.get(mask)
        if hit is not None:
            return hit
        low = mask & -mask
        cnt, chosen = best(mask ^ low)
        for s in by_low.get(low, ()):
            if s & mask == s:
                c2, ch2 = best(mask & ~s)
                if c2 + 1 > cnt:
                    cnt, chosen = c2 + 1, (s,) + ch2
        memo[mask] = (cnt, chosen)
        return memo[mask]

    return list(best(universe)[1])


def cycle_cover(inst: Instance, max_cycles: int = DEFAULT_MAX_CYCLES) -> SchemeResult:
    """Two-sender cycle cover: pack disjoint message-connected cycles, one tree code per cycle."""
    cycles = enumerate_simple_cycles(inst.digraph(), max_cycles)
    by_set: dict[int, Any] = {}
    for c in cycles:
        m = c.vertex_mask
        if m not in by_set and is_message_connected(c, inst):
            by_set[m] = c
    chosen = sorted(_max_disjoint_packing(list(by_set), inst.digraph().vertex_mask))

    gbar = derive_sender_constraint_graph(inst).complement()
    rows = []
    covered = 0
    for m in chosen:
        covered |= m
        for i, j in spanning_tree(gbar, members(m)):
            rows.append(make_row(covering_sender(inst, (i, j)), {i: 1, j: 1}, 2))
    for v in inst.vertices:
        if not covered >> v & 1:
            rows.append(make_row(covering_sender(inst, (v,)), {v: 1}, 2))
    return SchemeResult(
        "cycle",
        inst.n - len(chosen),
        IndexCode(2, tuple(rows)),
        {"cycles": [list(by_set[m].vertices) for m in chosen]},
    )


# --- clique cover ------------------------------------------------------------


def clique_cover(inst: Instance, cap: int = DEFAULT_COLOR_CAP) -> SchemeResult:
    """One summed row per color class of an optimal coloring of the union graph."""
    chi, col = chromatic_number(build_union_graph(inst), cap)
    rows = []
    for cls in col.classes:
        sender = covering_sender(inst, cls)
        if sender is None:
            raise RuntimeError(f"color class {cls} is not a two-sender clique")
        rows.append(make_row(sender, {v: 1 for v in cls}, 2))
    return SchemeResult("clique", chi, IndexCode(2, tuple(rows)), {"cliques": [list(c) for c in col.classes]})


# --- local chromatic ---------------------------------------------------------


def _best_local_coloring(inst: Instance, count_sender_colors: bool, cap: int) -> tuple[int, Coloring]:
    """Minimise over proper colorings of the union graph.

    Objective is N_l (largest closed out-neighbourhood color count in the
    complement digraph), or max(N_l, |J_o|) when ``count_sender_colors``.
    Both only grow as vertices are colored, which drives the pruning. Ties go
    to the first coloring in canonical order.
    """
    n = inst.n
    if n > cap:
        raise CapExceeded("local-chromatic vertex count", cap, n)
    u = build_union_graph(inst).adj
    dbar = complement_digraph(inst.digraph())
    preds = [0] * (n + 1)  # preds[v]: vertices i with arc i -> v in the complement
    for i, j in dbar.arcs:
        preds[j] |= 1 << i
    go = derive_sender_constraint_graph(inst).adj
    touched = [bool(go[v - 1]) and count_sender_colors for v in range(1, n + 1)]

    assign = [0] * n
    class_mask: list[int] = []
    outcol = [0] * (n + 1)
    best_val = n + 1
    best_assign: tuple[int, ...] | None = None

    def rec(v, cur, jo):
        nonlocal best_val, best_assign
        if cur >= best_val:
            return
        if v > n:
            best_val, best_assign = cur, tuple(assign)
            return
        nbrs = u[v - 1]
        k = len(class_mask)
        for c in range(k + 1):
            if c < k and class_mask[c] & nbrs:
                continue
            if c == k:
                class_mask.append(0)
            class_mask[c] |= 1 << v
            assign[v - 1] = c
            bit = 1 << c
            saved = []
            new = cur
            for i in members(preds[v]):
                old = outcol[i]
                if not old & bit:
                    saved.append((i, old))
                    outcol[i] = old | bit
                    new = max(new, (old | bit).bit_count() + 1)
            jo2 = jo | bit if touched[v - 1] else jo
            new = max(new, jo2.bit_count())
            rec(v + 1, new, jo2)
            for i, old in saved:
                outcol[i] = old
            class_mask[c] &= ~(1 << v)
            if c == k:
                class_mask.pop()

    rec(1, 1, 0)
    assert best_assign is not None
    return best_val, Coloring(best_assign)


def local_measures(inst: Instance, col: Coloring) -> tuple[int, tuple[int, ...]]:
    """(N_l, sorted J_o colors) of a coloring."""
    dbar = complement_digraph(inst.digraph())
    nl = max(len({col.color_of(u) for u in dbar.successors(i)}) + 1 for i in inst.vertices)
    go = derive_sender_constraint_graph(inst)
    jo = sorted({col.color_of(i) for i, j in go.edges} | {col.color_of(j) for i, j in go.edges})
    return nl, tuple(jo)


def two_sender_local_chromatic_number(inst: Instance, cap: int = DEFAULT_COLOR_CAP) -> int:
    return _best_local_coloring(inst, False, cap)[0]


def _mds_code(inst: Instance, col: Coloring, alpha: int, q: int | None) -> IndexCode:
    _, jo = local_measures(inst, col)
    k = col.num_colors
    q = smallest_prime_at_least(k) if q is None else q
    gen = systematic_mds_generator(alpha, k, make_field(q))
    # J_o colors take the leading identity columns; the rest follow in color order
    order = list(jo) + [c for c in range(k) if c not in jo]
    column = {c: pos for pos, c in enumerate(order)}
    gn = np.stack([gen[:, column[col.color_of(v)]] for v in inst.vertices], axis=1)
    rows = []
    for r in range(alpha):
        coeffs = {v: int(gn[r, v - 1]) for v in inst.vertices if gn[r, v - 1]}
        sender = covering_sender(inst, coeffs)
        if sender is None:
            raise RuntimeError(f"local-chromatic row {r} mixes private messages of both senders")
        rows.append(make_row(sender, coeffs, q))
    return IndexCode(q, tuple(rows))


def local_chromatic_code(inst: Instance, cap: int = DEFAULT_COLOR_CAP, q: int | None = None) -> SchemeResult:
    """MDS-based code of length alpha = min over colorings of max(N_l, |J_o|).

    ``q`` overrides the field (must be a prime at least the color count);
    by default the smallest such prime is used.
    """
    alpha, col = _best_local_coloring(inst, True, cap)
    nl, jo = local_measures(inst, col)
    code = _mds_code(inst, col, alpha, q)
    return SchemeResult(
        "local",
        alpha,
        code,
        {"coloring": [list(c) for c in col.classes], "N_l": nl, "J_o": list(jo), "colors": col.num_colors, "q": code.q},
    )


# --- partition searches ------------------------------------------------------


def _subsets_min_partition(universe: int, cost: dict[int, int]) -> list[int]:
    """Minimum-cost partition of ``universe`` into masks that have a ``cost`` entry."""
    best: dict[int, tuple[int, int]] = {0: (0, 0)}
    inf = float("inf")
    for mask in _masks_by_popcount(universe):
        low = mask & -mask
        rest = mask ^ low
        val, arg = inf, 0
        sub = rest
        while True:
            part = sub | low
            c = cost.get(part)
            if c is not None:
                tot = c + best[mask ^ part][0]
                if tot < val:
                    val, arg = tot, part
            if sub == 0:
                break
            sub = (sub - 1) & rest
        best[mask] = (val, arg)
    parts, mask = [], universe
    while mask:
        part = best[mask][1]
        if not part:
            raise ValueError("no admissible partition")
        parts.append(part)
        mask ^= part
    return sorted(parts, key=lambda p: p & -p)


def _masks_by_popcount(universe: int) -> list[int]:
    vs = list(members(universe))
    out = []
    for bits in range(1, 1 << len(vs)):
        out.append(mask_of(vs[k] for k in range(len(vs)) if bits >> k & 1))
    out.sort(key=lambda m: (m.bit_count(), m))
    return out


def partitioned_local_chromatic(
    inst: Instance, partition_cap: int = DEFAULT_PARTITION_CAP, cap: int = DEFAULT_COLOR_CAP
) -> SchemeResult:
    """Minimum over vertex partitions of the summed per-part alpha, with the concatenated code."""
    if inst.n > partition_cap:
        raise CapExceeded("partition search vertex count", partition_cap, inst.n)
    universe = inst.digraph().vertex_mask
    alpha: dict[int, int] = {}
    for part in _masks_by_popcount(universe):
        sub, _ = inst.restrict(members(part))
        alpha[part] = _best_local_coloring(sub, True, cap)[0]
    parts = _subsets_min_partition(universe, alpha)

    solved = []
    for part in parts:
        sub, labels = inst.restrict(members(part))
        a, col = _best_local_coloring(sub, True, cap)
        solved.append((sub, labels, a, col))
    q = smallest_prime_at_least(max(col.num_colors for *_, col in solved))
    rows: list[CodeRow] = []
    for sub, labels, a, col in solved:
        rows.extend(_relabel(_mds_code(sub, col, a, q), labels))
    return SchemeResult(
        "plocal",
        sum(s[2] for s in solved),
        IndexCode(q, tuple(rows)),
        {"parts": [list(s[1]) for s in solved], "alphas": [s[2] for s in solved], "unpartitioned_alpha": alpha[universe], "q": q},
    )


def _single_sender_length(sub: Instance, base: str, cap: int) -> int:
    if base == "cycle":
        return cycle_cover(sub).length
    if base == "clique":
        return chromatic_number(build_union_graph(sub), cap)[0]
    return _best_local_coloring(sub, True, cap)[0]


def trivial_partition_scheme(
    inst: Instance, base: str = "cycle", partition_cap: int = DEFAULT_PARTITION_CAP, cap: int = DEFAULT_COLOR_CAP
) -> SchemeResult:
    """Single-sender scheme ``base`` applied to parts that one sender fully covers."""
    if base not in ("cycle", "clique", "local"):
        raise ValueError(f"unknown base scheme {base!r}")
    if inst.n > partition_cap:
        raise CapExceeded("partition search vertex count", partition_cap, inst.n)
    universe = inst.digraph().vertex_mask
    v1, v2 = mask_of(inst.sender1), mask_of(inst.sender2)
    cost: dict[int, int] = {}
    for part in _masks_by_popcount(universe):
        if part & v1 == part or part & v2 == part:
            sub, _ = inst.restrict(members(part))
            everything = range(1, sub.n + 1)
            cost[part] = _single_sender_length(sub.with_senders(everything, everything), base, cap)
    parts = _subsets_min_partition(universe, cost)

    solos = []
    for part in parts:
        sub, labels = inst.restrict(members(part))
        everything = range(1, sub.n + 1)
        solos.append((part, labels, sub.with_senders(everything, everything)))
    if base == "local":
        # one field for the whole concatenated code
        q = smallest_prime_at_least(max(_best_local_coloring(s, True, cap)[1].num_colors for *_, s in solos))
        solved = [(part, labels, local_chromatic_code(s, cap, q)) for part, labels, s in solos]
    else:
        scheme = cycle_cover if base == "cycle" else (lambda s: clique_cover(s, cap))
        solved = [(part, labels, scheme(s)) for part, labels, s in solos]
        q = 2
    rows: list[CodeRow] = []
    for part, labels, res in solved:
        sender = 1 if part & v1 == part else 2
        rows.extend(make_row(sender, dict(r.coeffs), q) for r in _relabel(res.code, labels))
    return SchemeResult(
        f"trivial:{base}",
        sum(res.length for *_, res in solved),
        IndexCode(q, tuple(rows)),
        {"parts": [list(labels) for _, labels, _ in solved], "lengths": [res.length for *_, res in solved], "q": q},
    )


def run_scheme(inst: Instance, name: str, caps: dict[str, int] | None = None) -> SchemeResult:
    """Dispatch by CLI-style scheme name (``cycle``, ``clique``, ``local``, ``plocal``, ``trivial:<base>``)."""
    caps = caps or {}
    color = caps.get("color", DEFAULT_COLOR_CAP)
    partition = caps.get("partition", DEFAULT_PARTITION_CAP)
    table: dict[str, Callable[[], SchemeResult]] = {
        "cycle": lambda: cycle_cover(inst, caps.get("cycles", DEFAULT_MAX_CYCLES)),
        "clique": lambda: clique_cover(inst, color),
        "local": lambda: local_chromatic_code(inst, color),
        "plocal": lambda: partitioned_local_chromatic(inst, partition, color),
    }
    if name.startswith("trivial:"):
        return trivial_partition_scheme(inst, name.split(":", 1)[1], partition, color)
    if name not in table:
        raise ValueError(f"unknown scheme {name!r}")
    return table[name]()
