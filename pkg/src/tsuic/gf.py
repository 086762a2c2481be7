"""Prime-field linear algebra and systematic MDS generators.

Matrices are plain ``numpy`` integer arrays with entries in ``0..q-1``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import FieldError


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    f = 3
    while f * f <= q:
        if q % f == 0:
            return False
        f += 2
    return True


def smallest_prime_at_least(k: int) -> int:
    q = max(2, k)
    while not is_prime(q):
        q += 1
    return q


@dataclass(frozen=True)
class Field:
    q: int

    def __post_init__(self):
        if not is_prime(self.q):
            raise FieldError(f"q={self.q} is not prime (only prime fields are supported)")

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.q

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.q

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.q

    def inv(self, a: int) -> int:
        a %= self.q
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(a, self.q - 2, self.q)

    def array(self, data) -> np.ndarray:
        return np.asarray(data, dtype=np.int64) % self.q


def make_field(q: int) -> Field:
    return Field(int(q))


def rref(mat, f: Field) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form over ``f`` and the pivot columns."""
    a = f.array(mat).copy()
    if a.ndim != 2:
        raise ValueError("expected a 2-D matrix")
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            a[[r, p]] = a[[p, r]]
        a[r] = (a[r] * f.inv(int(a[r, c]))) % f.q
        others = np.nonzero(a[:, c])[0]
        for o in others:
            if o != r:
                a[o] = (a[o] - a[o, c] * a[r]) % f.q
        pivots.append(c)
        r += 1
    return a, pivots


def rank(mat, f: Field) -> int:
    a = np.asarray(mat)
    if a.size == 0:
        return 0
    return len(rref(a, f)[1])


def in_span(rows, target, f: Field) -> bool:
    """Whether ``target`` is an ``f``-linear combination of ``rows``."""
    t = f.array(target).reshape(-1)
    if not t.any():
        return True
    r = np.asarray(rows)
    if r.size == 0:
        return False
    r = f.array(r).reshape(-1, t.size)
    return rank(np.vstack([r, t]), f) == rank(r, f)


def cauchy_block(alpha: int, extra: int, f: Field) -> np.ndarray:
    """``alpha x extra`` Cauchy matrix ``1 / (x_i - y_j)`` with ``x_i = i``, ``y_j = alpha + j``."""
    if alpha + extra > f.q:
        raise FieldError(f"field of size {f.q} too small for {alpha + extra} distinct Cauchy points")
    p = np.zeros((alpha, extra), dtype=np.int64)
    for i in range(alpha):
        for j in range(extra):
            p[i, j] = f.inv(i - (alpha + j))
    return p


def systematic_mds_generator(alpha: int, total_cols: int, f: Field) -> np.ndarray:
    """Generator ``[I_alpha | P]`` of a ``(total_cols, alpha)`` MDS code over ``f``.

    ``P`` is Cauchy, so every square submatrix of it is nonsingular and any
    ``alpha`` columns of the result are linearly independent.
    """
    if not 1 <= alpha <= total_cols:
        raise ValueError(f"need 1 <= alpha <= total_cols, got alpha={alpha}, total_cols={total_cols}")
    p = cauchy_block(alpha, total_cols - alpha, f)
    return np.hstack([np.eye(alpha, dtype=np.int64), p])
