"""Exact evaluation of a design's invariant at F = L_1^d + ... + L_r^d.

The value is the sum, over proper colourings c of the collinearity graph with
colours 0..r-1, of the product over blocks B of det(L_{c(v)} : v in B) with rows
in block order.  Determinants of every ordered colour tuple are tabulated once.
The compiled kernel sums products modulo several primes; the number of primes
is chosen from a magnitude bound so the CRT lift is the exact integer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Iterable, Sequence

import numpy as np

from .design import BlockDesign, collinearity, permutation_parity


class FormError(ValueError):
    """Malformed or incompatible form set."""


@dataclass(frozen=True)
class FormSet:
    forms: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        forms = tuple(tuple(int(x) for x in f) for f in self.forms)
        object.__setattr__(self, "forms", forms)
        if forms and len({len(f) for f in forms}) != 1:
            raise FormError("forms have different lengths")

    @property
    def dim(self) -> int:
        return len(self.forms[0]) if self.forms else 0

    def __len__(self) -> int:
        return len(self.forms)

    def take(self, k: int) -> "FormSet":
        return FormSet(self.forms[:k])

    def transform(self, matrix: Sequence[Sequence[int]]) -> "FormSet":
        """Row vectors times ``matrix``: L -> L M."""
        m = [list(row) for row in matrix]
        return FormSet(tuple(
            tuple(sum(f[i] * m[i][j] for i in range(len(f))) for j in range(len(m[0])))
            for f in self.forms))

    def scale(self, t: int) -> "FormSet":
        return FormSet(tuple(tuple(t * x for x in f) for f in self.forms))


def parse_forms(text: str) -> FormSet:
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        try:
            rows.append(tuple(int(tok) for tok in s.replace(" ", "").split(",")))
        except ValueError:
            raise FormError(f"line {lineno}: non-integer entry in {s!r}") from None
    return FormSet(tuple(rows))


# -- determinants -----------------------------------------------------------

def _laplace(m: list[list[int]]) -> int:
    k = len(m)
    if k == 1:
        return m[0][0]
    if k == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = 0
    rest = m[1:]
    for j, a in enumerate(m[0]):
        if a:
            minor = [row[:j] + row[j + 1:] for row in rest]
            total += -a * _laplace(minor) if j % 2 else a * _laplace(minor)
    return total


def _bareiss(m: list[list[int]]) -> int:
    a = [list(row) for row in m]
    k = len(a)
    sign = 1
    prev = 1
    for i in range(k - 1):
        if a[i][i] == 0:
            for j in range(i + 1, k):
                if a[j][i]:
                    a[i], a[j] = a[j], a[i]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[i][i]
        for j in range(i + 1, k):
            for l in range(i + 1, k):
                a[j][l] = (a[j][l] * piv - a[j][i] * a[i][l]) // prev
            a[j][i] = 0
        prev = piv
    return sign * a[k - 1][k - 1]


def det(rows: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant (cofactor expansion up to 5x5, Bareiss above)."""
    m = [list(r) for r in rows]
    k = len(m)
    if any(len(r) != k for r in m):
        raise ValueError("determinant of a non-square matrix")
    if k == 0:
        return 1
    if k <= 5:
        return _laplace(m)
    return _bareiss(m)


def det_table(forms: FormSet, size: int) -> list[int]:
    """Determinants for all ordered colour tuples of length ``size``.

    Entry ``sum(t_i * r**(size-1-i))`` holds det(forms[t_0], ..., forms[t_{size-1}]);
    tuples with a repeated colour are zero.
    """
    r = len(forms)
    table = [0] * (r ** size)
    for combo in combinations(range(r), size):
        value = det([forms.forms[c] for c in combo])
        if value == 0:
            continue
        for perm in permutations(combo):
            idx = 0
            for c in perm:
                idx = idx * r + c
            table[idx] = permutation_parity(perm) * value
    return table


# -- modular plumbing -------------------------------------------------------

def _primes_below(limit: int, count: int) -> list[int]:
    out = []
    p = limit - 1
    while len(out) < count:
        if p % 2 and all(p % q for q in range(3, math.isqrt(p) + 1, 2)):
            out.append(p)
        p -= 1
    return out


_PRIMES: list[int] = []


def _primes(count: int) -> list[int]:
    if len(_PRIMES) < count:
        _PRIMES[:] = _primes_below(2 ** 31, count)
    return _PRIMES[:count]


def _crt(residues: Sequence[int], moduli: Sequence[int]) -> int:
    """Symmetric CRT lift into (-M/2, M/2]."""
    total, modulus = 0, 1
    for a, p in zip(residues, moduli):
        t = ((a - total) * pow(modulus, -1, p)) % p
        total += modulus * t
        modulus *= p
    if total > modulus // 2:
        total -= modulus
    return total


def magnitude_bound(design: BlockDesign, table: Sequence[int], r: int) -> int:
    """Upper bound on |sum of products| over all r**num_points colour maps."""
    biggest = max((abs(x) for x in table), default=0)
    return r ** design.num_points * biggest ** design.num_blocks


# -- evaluation -------------------------------------------------------------

@dataclass
class Evaluation:
    value: int
    colorings: int


def _check(design: BlockDesign, forms: FormSet) -> None:
    if len(forms) and forms.dim != design.block_size:
        raise FormError(
            f"forms have {forms.dim} entries, blocks have size {design.block_size}")


class _Evaluator:
    def __init__(self, design: BlockDesign, forms: FormSet, tie_break: str = "low"):
        from ._kernel import Problem

        self.design = design
        self.graph = collinearity(design)
        self.r = len(forms)
        self.tie_break = tie_break
        self.table = det_table(forms, design.block_size)
        bound = magnitude_bound(design, self.table, self.r)
        need = 2 * bound + 1
        k = 1
        while math.prod(_primes(k)) <= need:
            k += 1
        self.primes = _primes(k)
        parr = np.array(self.primes, np.int64)
        res = np.empty((k, len(self.table)), np.int64)
        for i, p in enumerate(self.primes):
            res[i] = [x % p for x in self.table]
        self.problem = Problem(self.graph, self.r, design.blocks, res, parr, tie_break)

    def run(self, parts: int = 1, workers: int | None = None) -> Evaluation:
        if parts == 1:
            count, sums = self.problem.run()
            return Evaluation(_crt([int(s) for s in sums], self.primes), count)
        from .chroma import split_search

        groups = split_search(self.graph, self.r, parts, tie_break=self.tie_break)
        partials = self.problem.run_groups(groups, workers=workers or parts)
        # each partial is bounded like the whole sum, so each lifts exactly
        value = sum(_crt(acc, self.primes) for _, acc in partials)
        return Evaluation(value, sum(c for c, _ in partials))


def evaluate_full(design: BlockDesign, forms: FormSet, *, parts: int = 1,
                  tie_break: str = "low", backend: str = "kernel") -> Evaluation:
    """Value and number of proper colourings visited."""
    _check(design, forms)
    if parts < 1:
        raise ValueError("parts must be >= 1")
    if len(forms) == 0:
        return Evaluation(0, 0)
    if backend == "python":
        return _evaluate_python(design, forms, tie_break)
    if backend != "kernel":
        raise ValueError(f"unknown backend {backend!r}")
    return _Evaluator(design, forms, tie_break).run(parts)


def evaluate(design: BlockDesign, forms: FormSet, **kwargs) -> int:
    return evaluate_full(design, forms, **kwargs).value


def parallel_evaluate(design: BlockDesign, forms: FormSet, parts: int) -> int:
    return evaluate_full(design, forms, parts=parts).value


def _evaluate_python(design: BlockDesign, forms: FormSet, tie_break: str) -> Evaluation:
    from .chroma import iter_proper_colorings

    r = len(forms)
    table = det_table(forms, design.block_size)
    index_weights = [r ** (design.block_size - 1 - i) for i in range(design.block_size)]
    blocks = design.blocks
    total = 0
    count = 0
    for col in iter_proper_colorings(collinearity(design), r, tie_break=tie_break):
        term = 1
        for b in blocks:
            term *= table[sum(col[p] * w for p, w in zip(b, index_weights))]
        total += term
        count += 1
    return Evaluation(total, count)


def brute_force_evaluate(design: BlockDesign, forms: FormSet) -> int:
    """Sum over all r**num_points colour maps, determinants computed directly.

    Improper maps contribute zero because some block sees a repeated row.
    Only practical for a few million maps.
    """
    _check(design, forms)
    total = 0
    vecs = forms.forms
    for col in product(range(len(vecs)), repeat=design.num_points):
        term = 1
        for b in design.blocks:
            term *= det([vecs[col[p]] for p in b])
            if term == 0:
                break
        total += term
    return total


@dataclass
class BatchResult:
    values: list[int]
    gcd: int
    normalized: list[int]


def evaluate_batch(designs: Iterable[BlockDesign], forms: FormSet,
                   divisor: int | None = None) -> BatchResult:
    """Raw values, gcd of the nonzero ones, and values divided by the gcd.

    With ``divisor`` the quotients use that number instead (it must divide
    every value exactly).
    """
    values = [evaluate(d, forms) for d in designs]
    g = 0
    for v in values:
        g = math.gcd(g, v)
    div = g if divisor is None else divisor
    if div == 0:
        normalized = list(values)
    else:
        for v in values:
            if v % div:
                raise ValueError(f"{v} is not divisible by {div}")
        normalized = [v // div for v in values]
    return BatchResult(values, g, normalized)
