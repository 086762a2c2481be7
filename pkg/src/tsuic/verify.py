"""Checking codes, exact small-instance optimum, reductions and the bounds report."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np

from .errors import CapExceeded, InstanceError
from .gf import in_span, make_field
from .graphs import DEFAULT_COLOR_CAP, DEFAULT_MAIS_CAP, DEFAULT_MAX_CYCLES, mais
from .model import Instance, mask_of, members
from .schemes import (
    DEFAULT_PARTITION_CAP,
    IndexCode,
    clique_cover,
    cycle_cover,
    local_chromatic_code,
    partitioned_local_chromatic,
    two_sender_local_chromatic_number,
)

DEFAULT_ORACLE_CAP = 6


@dataclass
class VerifyReport:
    """Per-row sender verdicts and/or per-receiver decoding verdicts.

    A ``None`` field means that check was not run.
    """

    length: int
    rows_ok: tuple[bool, ...] | None = None
    receivers_ok: tuple[bool, ...] | None = None

    @property
    def passed(self) -> bool:
        return all(self.rows_ok or ()) and all(self.receivers_ok or ())

    @property
    def failing_rows(self) -> list[int]:
        """0-based indices of rows that break the two-sender constraint."""
        return [k for k, ok in enumerate(self.rows_ok or ()) if not ok]

    @property
    def failing_receivers(self) -> list[int]:
        return [r for r, ok in enumerate(self.receivers_ok or (), start=1) if not ok]

    def merge(self, other: VerifyReport) -> VerifyReport:
        return VerifyReport(
            self.length,
            self.rows_ok if self.rows_ok is not None else other.rows_ok,
            self.receivers_ok if self.receivers_ok is not None else other.receivers_ok,
        )

    def to_dict(self) -> dict:
        return {
            "pass": self.passed,
            "length": self.length,
            "rows_ok": None if self.rows_ok is None else list(self.rows_ok),
            "receivers_ok": None if self.receivers_ok is None else list(self.receivers_ok),
            "failing_rows": self.failing_rows,
            "failing_receivers": self.failing_receivers,
        }


def _check_indices(inst: Instance, code: IndexCode) -> None:
    for k, row in enumerate(code.rows):
        for m, _ in row.coeffs:
            if not 1 <= m <= inst.n:
                raise InstanceError(f"row {k} references message {m} outside 1..{inst.n}")


def check_sender_constraint(inst: Instance, code: IndexCode) -> VerifyReport:
    """A row passes iff its tagged sender holds every message in its support."""
    _check_indices(inst, code)
    held = {1: inst.sender1, 2: inst.sender2}
    return VerifyReport(code.length, rows_ok=tuple(row.support <= held[row.sender] for row in code.rows))


def check_decodability(inst: Instance, code: IndexCode) -> VerifyReport:
    """Receiver r passes iff e_r lies in span(code rows, e_j for j in H_r)."""
    _check_indices(inst, code)
    f = make_field(code.q)
    g = code.matrix(inst.n)
    verdicts = []
    for r in inst.vertices:
        unknown = [j - 1 for j in inst.vertices if j not in inst.side_info[r - 1]]
        # side information clears the known columns
        proj = g[:, unknown]
        target = np.zeros(len(unknown), dtype=np.int64)
        target[unknown.index(r - 1)] = 1
        verdicts.append(bool(in_span(proj, target, f)))
    return VerifyReport(code.length, receivers_ok=tuple(verdicts))


def verify_code(inst: Instance, code: IndexCode) -> VerifyReport:
    return check_sender_constraint(inst, code).merge(check_decodability(inst, code))


# --- exact scalar-linear optimum over GF(2) -----------------------------------


def _insert(basis: tuple[int, ...], v: int) -> tuple[int, ...] | None:
    """Fully reduced echelon basis of span(basis, v); None if v is already inside."""
    for b in basis:
        if v ^ b < v:  # b's pivot (its top bit) is set in v
            v ^= b
    if not v:
        return None
    top = 1 << (v.bit_length() - 1)
    rows = [b ^ v if b & top else b for b in basis]
    rows.append(v)
    return tuple(sorted(rows, reverse=True))


def _decodes_all(basis: tuple[int, ...], keep: list[int], targets: list[int]) -> bool:
    for keep_mask, target in zip(keep, targets):
        piv: list[int] = []
        for b in basis:
            w = b & keep_mask
            for p in piv:
                if w ^ p < w:
                    w ^= p
            if w:
                piv.append(w)
                piv.sort(reverse=True)
        t = target
        for p in piv:
            if t ^ p < t:
                t ^= p
        if t:
            return False
    return True


def oracle_beta1_linear(inst: Instance, max_length: int | None = None, cap: int = DEFAULT_ORACLE_CAP) -> int | None:
    """Shortest scalar-linear GF(2) two-sender code, by breadth-first search over row spaces.

    Level k holds every k-dimensional space spanned by k rows, each row
    supported inside one sender's message set. Returns None if nothing of
    length <= ``max_length`` decodes.
    """
    n = inst.n
    if n > cap:
        raise CapExceeded("oracle vertex count", cap, n)
    limit = n if max_length is None else max_length
    candidates: set[int] = set()
    for held in (mask_of(inst.sender1), mask_of(inst.sender2)):
        sub = held
        while sub:
            candidates.add(sub)
            sub = (sub - 1) & held
    cands = sorted(candidates)
    keep = [((1 << (n + 1)) - 2) & ~mask_of(inst.side_info[r - 1]) for r in inst.vertices]
    targets = [1 << r for r in inst.vertices]

    level: set[tuple[int, ...]] = {()}
    for length in range(1, limit + 1):
        nxt: set[tuple[int, ...]] = set()
        for basis in level:
            for v in cands:
                grown = _insert(basis, v)
                if grown is not None:
                    nxt.add(grown)
        for basis in sorted(nxt):
            if _decodes_all(basis, keep, targets):
                return length
        level = nxt
    return None


# --- reductions ---------------------------------------------------------------


@dataclass
class ReductionReport:
    kind: str  # "single-sender", "decomposable" or "irreducible"
    parts: list[tuple[Instance, tuple[int, ...]]] = field(default_factory=list)
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "note": self.note,
            "parts": [{"vertices": list(labels), "instance": sub.to_dict()} for sub, labels in self.parts],
        }


def reduce_instance(inst: Instance) -> ReductionReport:
    everything = frozenset(inst.vertices)
    for s, held in ((1, inst.sender1), (2, inst.sender2)):
        if held == everything:
            return ReductionReport("single-sender", [], f"sender {s} holds every message; equivalent to a single-sender problem")
    if not inst.common:
        parts = []
        for held in (inst.sender1, inst.sender2):
            sub, labels = inst.restrict(held)
            k = range(1, sub.n + 1)
            parts.append((sub.with_senders(k, k), labels))
        return ReductionReport(
            "decomposable", parts, "no common message; optimum is the sum over the two single-sender sub-problems"
        )
    return ReductionReport("irreducible", [], "common messages present and neither sender holds everything")


# --- bounds report ------------------------------------------------------------

FIELDS = (
    "mais",
    "cycle_cover",
    "clique_cover",
    "local_chromatic_number",
    "local_chromatic_code",
    "partitioned_local",
    "linear_optimal",
)
SCHEME_FIELDS = {
    "cycle": ("cycle_cover",),
    "clique": ("clique_cover",),
    "local": ("local_chromatic_number", "local_chromatic_code"),
    "plocal": ("partitioned_local",),
}
DEFAULT_CAPS = {
    "mais": DEFAULT_MAIS_CAP,
    "cycles": DEFAULT_MAX_CYCLES,
    "color": DEFAULT_COLOR_CAP,
    "partition": DEFAULT_PARTITION_CAP,
    "oracle": DEFAULT_ORACLE_CAP,
}


@dataclass
class BoundsReport:
    """Lower/upper bounds on the optimal broadcast rate of one instance.

    ``linear_optimal`` is the shortest scalar-linear GF(2) code, not the
    true rate. ``pinned`` is set when MAIS meets an achievable length.
    """

    n: int
    mais: int | None = None
    cycle_cover: int | None = None
    clique_cover: int | None = None
    local_chromatic_number: int | None = None
    local_chromatic_code: int | None = None
    partitioned_local: int | None = None
    linear_optimal: int | None = None
    missing: dict[str, str] = field(default_factory=dict)
    violations: list[str] = field(default_factory=list)
    reduction: str = ""
    pinned: int | None = None

    @property
    def ordering_violated(self) -> bool:
        return bool(self.violations)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["ordering_violated"] = self.ordering_violated
        return d


def _compute(name: str, inst: Instance, caps: dict[str, int]) -> int | None:
    if name == "mais":
        return mais(inst.digraph(), caps["mais"])
    if name == "cycle_cover":
        return cycle_cover(inst, caps["cycles"]).length
    if name == "clique_cover":
        return clique_cover(inst, caps["color"]).length
    if name == "local_chromatic_number":
        return two_sender_local_chromatic_number(inst, caps["color"])
    if name == "local_chromatic_code":
        return local_chromatic_code(inst, caps["color"]).length
    if name == "partitioned_local":
        return partitioned_local_chromatic(inst, caps["partition"], caps["color"]).length
    if name == "linear_optimal":
        return oracle_beta1_linear(inst, cap=caps["oracle"])
    raise ValueError(name)


def _guarded(args):
    name, inst, caps = args
    try:
        return name, _compute(name, inst, caps), None
    except CapExceeded as exc:
        return name, None, str(exc)


def ordering_violations(rep: BoundsReport) -> list[str]:
    v = []

    def need(lo: str, hi: str):
        a, b = getattr(rep, lo), getattr(rep, hi)
        if a is not None and b is not None and a > b:
            v.append(f"{lo}={a} > {hi}={b}")

    for upper in ("cycle_cover", "clique_cover", "local_chromatic_code", "partitioned_local", "linear_optimal"):
        need("mais", upper)
    need("partitioned_local", "local_chromatic_code")
    need("local_chromatic_code", "clique_cover")
    need("local_chromatic_number", "clique_cover")
    need("linear_optimal", "partitioned_local")
    need("linear_optimal", "cycle_cover")
    need("linear_optimal", "clique_cover")
    for name in FIELDS[1:]:
        val = getattr(rep, name)
        if val is not None and val > rep.n:
            v.append(f"{name}={val} > n={rep.n}")
    return v


def bounds_report(
    inst: Instance,
    include_oracle: bool = False,
    schemes: tuple[str, ...] = ("cycle", "clique", "local", "plocal"),
    caps: dict[str, int] | None = None,
    workers: int = 1,
) -> BoundsReport:
    """Assemble every requested bound; a capped field is left None with its reason in ``missing``."""
    caps = {**DEFAULT_CAPS, **(caps or {})}
    names = ["mais"]
    for s in schemes:
        if s not in SCHEME_FIELDS:
            raise ValueError(f"unknown scheme {s!r}")
        names.extend(SCHEME_FIELDS[s])
    if include_oracle:
        names.append("linear_optimal")
    jobs = [(name, inst, caps) for name in names]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
            results = list(pool.map(_guarded, jobs))
    else:
        results = [_guarded(j) for j in jobs]

    rep = BoundsReport(inst.n, reduction=reduce_instance(inst).kind)
    for name, value, why in results:
        setattr(rep, name, value)
        if why is not None:
            rep.missing[name] = why
    rep.violations = ordering_violations(rep)
    if rep.mais is not None:
        for name in ("cycle_cover", "clique_cover", "local_chromatic_code", "partitioned_local"):
            if getattr(rep, name) == rep.mais:
                rep.pinned = rep.mais
                break
    return rep


def default_workers() -> int:
    env = os.environ.get("ICX_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


__all__: list[Any] = [
    "BoundsReport",
    "ReductionReport",
    "VerifyReport",
    "bounds_report",
    "check_decodability",
    "check_sender_constraint",
    "oracle_beta1_linear",
    "reduce_instance",
    "verify_code",
]
