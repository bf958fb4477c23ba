"""Automorphisms of designs and graphs, and a canonical key for designs.

Both structures are handled through a symmetric integer "weight" matrix on
the points: co-occurrence counts for a design, adjacency for a graph.  A
permutation preserving the weights preserves the collinearity structure;
for designs the block multiset is checked at the leaves.  Points are first
split into classes by iterated profile refinement and may only map within
their class.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Sequence

from .design import BlockDesign, CollinearityGraph


@dataclass(frozen=True)
class PointPermutation:
    image: tuple[int, ...]

    def __post_init__(self) -> None:
        image = tuple(int(x) for x in self.image)
        object.__setattr__(self, "image", image)
        if sorted(image) != list(range(len(image))):
            raise ValueError(f"not a permutation: {image}")

    @classmethod
    def identity(cls, n: int) -> "PointPermutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, text: str, n: int) -> "PointPermutation":
        """Parse cycle notation such as ``"(2 3)(7 8)"``; fixed points omitted."""
        image = list(range(n))
        body = text.strip()
        if body in ("", "()"):
            return cls(tuple(image))
        pos = 0
        seen: set[int] = set()
        for m in re.finditer(r"\s*\(([^()]*)\)\s*", body):
            if m.start() != pos:
                raise ValueError(f"bad cycle notation near {body[pos:]!r}")
            pos = m.end()
            items = [int(t) for t in re.split(r"[\s,]+", m.group(1).strip()) if t]
            for x in items:
                if not 0 <= x < n:
                    raise ValueError(f"point {x} outside [0, {n})")
                if x in seen:
                    raise ValueError(f"point {x} appears twice")
                seen.add(x)
            for a, b in zip(items, items[1:] + items[:1]):
                image[a] = b
        if pos != len(body):
            raise ValueError(f"bad cycle notation near {body[pos:]!r}")
        return cls(tuple(image))

    def __len__(self) -> int:
        return len(self.image)

    def __call__(self, p: int) -> int:
        return self.image[p]

    def __mul__(self, other: "PointPermutation") -> "PointPermutation":
        """Composition ``self * other``: apply ``other`` first, then ``self``."""
        return PointPermutation(tuple(self.image[other.image[p]] for p in range(len(self))))

    def inverse(self) -> "PointPermutation":
        inv = [0] * len(self)
        for p, q in enumerate(self.image):
            inv[q] = p
        return PointPermutation(tuple(inv))

    def __pow__(self, k: int) -> "PointPermutation":
        result = PointPermutation.identity(len(self))
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            result = result * base
        return result

    def is_identity(self) -> bool:
        return all(p == q for p, q in enumerate(self.image))

    def cycles(self) -> str:
        seen = [False] * len(self)
        out = []
        for p in range(len(self)):
            if seen[p] or self.image[p] == p:
                continue
            cyc = []
            q = p
            while not seen[q]:
                seen[q] = True
                cyc.append(q)
                q = self.image[q]
            out.append("(" + " ".join(map(str, cyc)) + ")")
        return "".join(out) or "()"


def is_design_automorphism(design: BlockDesign, perm: PointPermutation) -> bool:
    if len(perm) != design.num_points:
        raise ValueError("permutation size differs from the number of points")
    return design.relabel(perm.image).block_sets() == design.block_sets()


def is_graph_automorphism(graph: CollinearityGraph, perm: PointPermutation) -> bool:
    if len(perm) != graph.num_vertices:
        raise ValueError("permutation size differs from the number of vertices")
    return all(graph.has_edge(perm(u), perm(v)) for u, v in graph.edges)


# -- refinement ---------------------------------------------------------------

def _rank(sigs: Sequence) -> list[int]:
    order = {s: i for i, s in enumerate(sorted(set(sigs)))}
    return [order[s] for s in sigs]


def refine_weights(weights: Sequence[Sequence[int]], colors: Sequence[int]) -> list[int]:
    """Iterate colour := (colour, sorted (neighbour colour, weight)) to stability."""
    n = len(colors)
    cur = _rank(list(colors))
    while True:
        sigs = [(cur[v], tuple(sorted((cur[u], weights[v][u])
                                      for u in range(n) if u != v and weights[v][u])))
                for v in range(n)]
        nxt = _rank(sigs)
        if len(set(nxt)) == len(set(cur)):
            return nxt
        cur = nxt


def _design_weights(design: BlockDesign) -> list[list[int]]:
    n = design.num_points
    w = [[0] * n for _ in range(n)]
    for b in design.blocks:
        for u in b:
            for v in b:
                if u != v:
                    w[u][v] += 1
    return w


def _design_profile(design: BlockDesign) -> list[tuple]:
    """Degree, block sizes met, and the degree multiset of co-block partners."""
    degs = design.degrees()
    prof = []
    for p in range(design.num_points):
        sizes = sorted(len(b) for b in design.blocks if p in b)
        partners = sorted(degs[q] for b in design.blocks if p in b for q in b if q != p)
        prof.append((degs[p], tuple(sizes), tuple(partners)))
    return prof


# -- automorphism search -----------------------------------------------------

class _AutSearch:
    def __init__(self, weights: list[list[int]], colors: list[int],
                 leaf_ok: Callable[[list[int]], bool] | None = None):
        self.n = len(weights)
        self.w = weights
        self.colors = refine_weights(weights, colors)
        self.leaf_ok = leaf_ok

    def _candidates(self, v: int, image: list[int], used: list[bool]) -> list[int]:
        w = self.w
        out = []
        for x in range(self.n):
            if used[x] or self.colors[x] != self.colors[v]:
                continue
            if all(w[v][u] == w[x][image[u]] for u in range(self.n) if image[u] >= 0):
                out.append(x)
        return out

    def _walk(self, image: list[int], used: list[bool], first_only: bool) -> int:
        v = next((u for u in range(self.n) if image[u] < 0), -1)
        if v < 0:
            return 1 if self.leaf_ok is None or self.leaf_ok(image) else 0
        total = 0
        for x in self._candidates(v, image, used):
            image[v] = x
            used[x] = True
            total += self._walk(image, used, first_only)
            image[v] = -1
            used[x] = False
            if first_only and total:
                return total
        return total

    def _start(self, fixed: dict[int, int]) -> tuple[list[int], list[bool]] | None:
        image = [-1] * self.n
        used = [False] * self.n
        for v, x in fixed.items():
            if used[x] or self.colors[v] != self.colors[x]:
                return None
            if any(self.w[v][u] != self.w[x][image[u]] for u in range(self.n) if image[u] >= 0):
                return None
            image[v] = x
            used[x] = True
        return image, used

    def exists(self, fixed: dict[int, int]) -> bool:
        st = self._start(fixed)
        return st is not None and self._walk(*st, first_only=True) > 0

    def count_leaves(self) -> int:
        return self._walk([-1] * self.n, [False] * self.n, first_only=False)

    def order(self) -> int:
        """Group order as a product of orbit lengths along a point stabiliser chain."""
        fixed: dict[int, int] = {}
        total = 1
        for v in range(self.n):
            orbit = 1  # v itself
            for x in range(self.n):
                if x != v and self.colors[x] == self.colors[v] and x not in fixed.values():
                    trial = dict(fixed)
                    trial[v] = x
                    if self.exists(trial):
                        orbit += 1
            total *= orbit
            fixed[v] = v
        return total


def _design_search(design: BlockDesign) -> _AutSearch:
    target = design.block_sets()
    colors = _rank(_design_profile(design))

    def leaf_ok(image: list[int]) -> bool:
        return design.relabel(image).block_sets() == target

    return _AutSearch(_design_weights(design), colors, leaf_ok)


def _graph_search(graph: CollinearityGraph) -> _AutSearch:
    n = graph.num_vertices
    w = [[1 if graph.has_edge(u, v) else 0 for v in range(n)] for u in range(n)]
    return _AutSearch(w, [graph.degree(v) for v in range(n)])


def design_aut_order(design: BlockDesign, method: str = "chain") -> int:
    search = _design_search(design)
    return search.order() if method == "chain" else search.count_leaves()


def graph_aut_order(graph: CollinearityGraph, method: str = "chain") -> int:
    search = _graph_search(graph)
    return search.order() if method == "chain" else search.count_leaves()


# -- canonical key -------------------------------------------------------------

def _refine_incidence(design: BlockDesign, pcol: list[int]) -> list[int]:
    blocks = design.blocks
    member: list[list[int]] = [[] for _ in range(design.num_points)]
    for i, b in enumerate(blocks):
        for p in b:
            member[p].append(i)
    pcol = _rank(pcol)
    bcol = [0] * len(blocks)
    while True:
        bcol = _rank([(bcol[i], tuple(sorted(pcol[p] for p in b)))
                      for i, b in enumerate(blocks)])
        nxt = _rank([(pcol[p], tuple(sorted(bcol[i] for i in member[p])))
                     for p in range(design.num_points)])
        if len(set(nxt)) == len(set(pcol)):
            return nxt
        pcol = nxt


def canonical_key(design: BlockDesign) -> tuple:
    """Invariant of the design up to point relabelling and block/entry order.

    Exhaustive individualisation-refinement: every leaf of the search tree
    gives a labelling, and the key is the smallest relabelled block multiset.
    Two designs get equal keys exactly when they are isomorphic.
    """
    n = design.num_points
    best: tuple | None = None
    # points in exactly the same blocks can be swapped by an automorphism that
    # fixes every colouring in the tree, so one branch per twin class suffices
    twin = _rank([tuple(sorted(i for i, b in enumerate(design.blocks) if p in b))
                  for p in range(n)])

    def form(labels: list[int]) -> tuple:
        return tuple(sorted(tuple(sorted(labels[p] for p in b)) for b in design.blocks))

    def walk(pcol: list[int]) -> None:
        nonlocal best
        pcol = _refine_incidence(design, pcol)
        if len(set(pcol)) == n:
            key = form(pcol)
            if best is None or key < best:
                best = key
            return
        sizes: dict[int, int] = {}
        for c in pcol:
            sizes[c] = sizes.get(c, 0) + 1
        target = min((s, c) for c, s in sizes.items() if s > 1)[1]
        tried: set[int] = set()
        for v in range(n):
            if pcol[v] == target and twin[v] not in tried:
                tried.add(twin[v])
                child = list(pcol)
                child[v] = -1
                walk(child)

    walk([0] * n)
    return (n, len(design.blocks), best)
