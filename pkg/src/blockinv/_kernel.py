"""Compiled colouring search: counts colourings and sums determinant products.

The kernel walks the same tree as :func:`blockinv.chroma.iter_proper_colorings`
(smallest remaining domain, ties by vertex index) with an explicit stack.
Products of block determinants are accumulated modulo a handful of 31-bit
primes; :mod:`blockinv.evaluate` chooses enough primes from a magnitude bound
and lifts the residues back to an exact integer by CRT.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numba as nb
import numpy as np

from .design import CollinearityGraph


@nb.njit(cache=True, nogil=True)
def _search(n, r, nbr, nbr_len, vblocks, vblocks_len, blocks, table, primes,
            prefix_v, prefix_c, high_tie):
    k = primes.shape[0]
    nblocks = blocks.shape[0]
    bs = blocks.shape[1]
    colour = np.full(n, -1, np.int64)
    forb = np.zeros((n, r), np.int32)
    dom = np.full(n, r, np.int64)
    bcount = np.zeros(nblocks, np.int64)
    prod = np.ones((n + 1, k), np.int64)
    vtx = np.zeros(n, np.int64)
    nextc = np.zeros(n, np.int64)
    sums = np.zeros(k, np.int64)
    count = 0

    # apply the prefix (already validated by the caller)
    base = 0
    for i in range(prefix_v.shape[0]):
        v = prefix_v[i]
        c = prefix_c[i]
        if colour[v] >= 0 or forb[v, c] != 0:
            return 0, sums
        colour[v] = c
        for j in range(nbr_len[v]):
            u = nbr[v, j]
            if forb[u, c] == 0:
                dom[u] -= 1
            forb[u, c] += 1
        for j in range(k):
            prod[base + 1, j] = prod[base, j]
        for j in range(vblocks_len[v]):
            b = vblocks[v, j]
            bcount[b] += 1
            if bcount[b] == bs and k > 0:
                idx = 0
                for t in range(bs):
                    idx = idx * r + colour[blocks[b, t]]
                for q in range(k):
                    prod[base + 1, q] = prod[base + 1, q] * table[q, idx] % primes[q]
        base += 1

    if base == n:
        for q in range(k):
            sums[q] = prod[base, q] % primes[q]
        return 1, sums

    # choose the first branching vertex
    sel = -1
    best = r + 1
    for t in range(n):
        u = n - 1 - t if high_tie else t
        if colour[u] < 0 and dom[u] < best:
            sel = u
            best = dom[u]
    if best == 0:
        return 0, sums
    d = 0
    vtx[0] = sel
    nextc[0] = 0

    while d >= 0:
        v = vtx[d]
        if colour[v] >= 0:
            c = colour[v]
            colour[v] = -1
            for j in range(nbr_len[v]):
                u = nbr[v, j]
                forb[u, c] -= 1
                if forb[u, c] == 0:
                    dom[u] += 1
            for j in range(vblocks_len[v]):
                bcount[vblocks[v, j]] -= 1
        c = nextc[d]
        while c < r and forb[v, c] != 0:
            c += 1
        if c == r:
            d -= 1
            continue
        nextc[d] = c + 1
        colour[v] = c
        for j in range(nbr_len[v]):
            u = nbr[v, j]
            if forb[u, c] == 0:
                dom[u] -= 1
            forb[u, c] += 1
        lvl = base + d
        for q in range(k):
            prod[lvl + 1, q] = prod[lvl, q]
        for j in range(vblocks_len[v]):
            b = vblocks[v, j]
            bcount[b] += 1
            if bcount[b] == bs and k > 0:
                idx = 0
                for t in range(bs):
                    idx = idx * r + colour[blocks[b, t]]
                for q in range(k):
                    prod[lvl + 1, q] = prod[lvl + 1, q] * table[q, idx] % primes[q]
        if lvl + 1 == n:
            count += 1
            for q in range(k):
                sums[q] = (sums[q] + prod[lvl + 1, q]) % primes[q]
            continue
        sel = -1
        best = r + 1
        for t in range(n):
            u = n - 1 - t if high_tie else t
            if colour[u] < 0 and dom[u] < best:
                sel = u
                best = dom[u]
                if best == 0:
                    break
        if best == 0:
            continue
        d += 1
        vtx[d] = sel
        nextc[d] = 0
    return count, sums


def _ragged(rows: list[list[int]]) -> tuple[np.ndarray, np.ndarray]:
    width = max((len(x) for x in rows), default=0)
    arr = np.zeros((len(rows), max(width, 1)), np.int64)
    lens = np.zeros(len(rows), np.int64)
    for i, x in enumerate(rows):
        arr[i, :len(x)] = x
        lens[i] = len(x)
    return arr, lens


class Problem:
    """Arrays for one (graph, blocks, table) search, shared by all subtrees."""

    def __init__(self, graph: CollinearityGraph, r: int,
                 blocks: tuple[tuple[int, ...], ...] = (),
                 table: np.ndarray | None = None,
                 primes: np.ndarray | None = None,
                 tie_break: str = "low"):
        n = graph.num_vertices
        self.n, self.r = n, r
        self.nbr, self.nbr_len = _ragged([sorted(graph.adj[v]) for v in range(n)])
        vb: list[list[int]] = [[] for _ in range(n)]
        for i, b in enumerate(blocks):
            for p in b:
                vb[p].append(i)
        self.vblocks, self.vblocks_len = _ragged(vb)
        if blocks:
            self.blocks = np.array(blocks, np.int64)
        else:
            self.blocks = np.zeros((0, 1), np.int64)
        self.primes = np.zeros(0, np.int64) if primes is None else primes
        self.table = np.zeros((0, 1), np.int64) if table is None else table
        self.high_tie = tie_break == "high"

    def run(self, prefix: tuple[tuple[int, int], ...] = ()) -> tuple[int, np.ndarray]:
        pv = np.array([v for v, _ in prefix], np.int64)
        pc = np.array([c for _, c in prefix], np.int64)
        count, sums = _search(self.n, self.r, self.nbr, self.nbr_len,
                              self.vblocks, self.vblocks_len, self.blocks,
                              self.table, self.primes, pv, pc, self.high_tie)
        return int(count), sums

    def run_groups(self, groups: list[list[tuple[tuple[int, int], ...]]],
                   workers: int | None = None) -> list[tuple[int, list[int]]]:
        """Run each group of prefixes; returns per-group (count, residue sums)."""

        def one(group):
            total = 0
            acc = [0] * len(self.primes)
            for pre in group:
                c, s = self.run(pre)
                total += c
                acc = [(a + int(x)) % int(p) for a, x, p in zip(acc, s, self.primes)]
            return total, acc

        if workers is None or workers <= 1 or len(groups) <= 1:
            return [one(g) for g in groups]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, groups))


def count_colorings(graph: CollinearityGraph, r: int, *, tie_break: str = "low",
                    parts: int = 1) -> int:
    if r < 0:
        raise ValueError("r must be >= 0")
    if graph.num_vertices == 0:
        return 1
    if r == 0:
        return 0
    prob = Problem(graph, r, tie_break=tie_break)
    if parts == 1:
        return prob.run()[0]
    from .chroma import split_search

    groups = split_search(graph, r, parts, tie_break=tie_break)
    return sum(c for c, _ in prob.run_groups(groups, workers=parts))
