"""Closed-form and generating-function counts."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np


def weak_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def _shift(a: np.ndarray, offsets: tuple[int, ...]) -> np.ndarray:
    """Translate ``a`` by non-negative ``offsets`` with zero fill."""
    out = np.zeros_like(a)
    dst, src = [], []
    for off, size in zip(offsets, a.shape):
        if off >= size:
            return out
        dst.append(slice(off, None))
        src.append(slice(0, size - off))
    out[tuple(dst)] = a[tuple(src)]
    return out


def count_weight_arrays(rows: int, cols: int, row_sum: int, col_sum: int) -> int:
    """Non-negative rows x cols arrays with the given row and column sums,
    counted up to permutation of the columns.

    Equivalently the number of multisets of ``cols`` column vectors (weak
    compositions of ``col_sum`` into ``rows`` parts) whose entries add up to
    ``row_sum`` in every row.  DP over column types; the state keeps the
    partial sums of all rows but the last (capped at ``row_sum``) and the
    number of columns used, the last row being fixed by the totals.
    """
    if min(rows, cols, row_sum, col_sum) < 1:
        raise ValueError("all arguments must be >= 1")
    if rows * row_sum != cols * col_sum:
        return 0
    types = list(weak_compositions(col_sum, rows))
    shape = (row_sum + 1,) * (rows - 1) + (cols + 1,)
    # multisets of at most `cols` items from len(types) kinds bound every entry
    dtype = np.int64 if math.comb(len(types) + cols, cols) < 2 ** 62 else object
    dp = np.zeros(shape, dtype=dtype)
    dp[(0,) * len(shape)] = 1
    for t in types:
        step = t[:-1] + (1,)
        if any(x > row_sum for x in t[:-1]):
            continue
        new = dp.copy()
        cur = dp
        for _ in range(cols):
            cur = _shift(cur, step)
            if not cur.any():
                break
            new += cur
        dp = new
    return int(dp[(row_sum,) * (rows - 1) + (cols,)])


def count_total_monomials(num_vars: int, degree: int) -> int:
    """Monomials of the given degree in ``num_vars`` variables."""
    if num_vars < 1 or degree < 0:
        raise ValueError("need num_vars >= 1 and degree >= 0")
    return math.comb(num_vars + degree - 1, degree)


def covering_bound(m: int) -> int:
    """ceil(m * ceil((m-1)/4) / 5), the lower bound for covering pairs by 5-sets."""
    if m < 1:
        raise ValueError("m must be >= 1")
    inner = -(-(m - 1) // 4)
    return -(-(m * inner) // 5)


@dataclass(frozen=True)
class AHTriple:
    k: int
    d: int
    n: int

    def __post_init__(self) -> None:
        if min(self.k, self.d, self.n) < 1:
            raise ValueError("k, d, n must be positive")

    @property
    def N(self) -> int:
        return math.comb(self.n + self.d, self.d) - 1


def ah_codimension(t: AHTriple) -> int:
    """Codimension of the k-th secant variety of the degree-d Veronese of P^n."""
    k, d, n = t.k, t.d, t.n
    if d == 2 and 2 <= k <= n:
        return math.comb(n - k + 2, 2)
    if d == 4 and n in (2, 3, 4) and 2 * k == n * (n + 3):
        return 1
    if d == 3 and n == 4 and k == 7:
        return 1
    return max(t.N + 1 - (n + 1) * k, 0)


def is_ah_ordinary(t: AHTriple) -> bool:
    return math.comb(t.n + t.d, t.d) == (t.n + 1) * t.k + 1
