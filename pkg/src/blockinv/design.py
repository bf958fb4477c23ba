"""Block designs: ordered blocks of points, parsing, validation, collinearity.

A design is a list of blocks, each block an ordered tuple of distinct point
indices.  Block order inside the list carries no meaning for the encoded
invariant, but the order of points inside a block fixes the sign of the
corresponding determinant factor, so both are preserved exactly as parsed.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence


class DesignError(ValueError):
    """Malformed design text or structurally invalid design."""


@dataclass(frozen=True)
class BlockDesign:
    blocks: tuple[tuple[int, ...], ...]
    num_points: int

    def __post_init__(self) -> None:
        blocks = tuple(tuple(int(p) for p in b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if not blocks:
            raise DesignError("design has no blocks")
        size = len(blocks[0])
        for i, b in enumerate(blocks):
            if len(b) != size:
                raise DesignError(
                    f"block {i} has {len(b)} entries, expected {size}")
            if len(set(b)) != len(b):
                raise DesignError(f"block {i} repeats a point: {b}")
            for p in b:
                if not 0 <= p < self.num_points:
                    raise DesignError(
                        f"point {p} in block {i} outside [0, {self.num_points})")

    @classmethod
    def from_blocks(cls, blocks: Iterable[Sequence[int]],
                    num_points: int | None = None) -> "BlockDesign":
        blocks = tuple(tuple(b) for b in blocks)
        if num_points is None:
            num_points = 1 + max((p for b in blocks for p in b), default=-1)
        return cls(blocks, num_points)

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    @property
    def block_size(self) -> int:
        return len(self.blocks[0])

    def degrees(self) -> list[int]:
        deg = [0] * self.num_points
        for b in self.blocks:
            for p in b:
                deg[p] += 1
        return deg

    @property
    def point_degree(self) -> int:
        """Common point degree; raises if the design is not biregular."""
        degs = set(self.degrees())
        if len(degs) != 1:
            raise DesignError(f"points have unequal degrees {sorted(degs)}")
        return degs.pop()

    def memberships(self) -> list[frozenset[int]]:
        """For each point, the set of block indices containing it."""
        mem: list[set[int]] = [set() for _ in range(self.num_points)]
        for i, b in enumerate(self.blocks):
            for p in b:
                mem[p].add(i)
        return [frozenset(m) for m in mem]

    def relabel(self, image: Sequence[int]) -> "BlockDesign":
        """Apply the point map p -> image[p], keeping block and entry order."""
        return BlockDesign(tuple(tuple(image[p] for p in b) for b in self.blocks),
                           self.num_points)

    def block_sets(self) -> Counter:
        return Counter(tuple(sorted(b)) for b in self.blocks)

    def __str__(self) -> str:
        return serialize(self)


@dataclass(frozen=True)
class CollinearityGraph:
    num_vertices: int
    edges: frozenset[tuple[int, int]]
    adj: tuple[frozenset[int], ...] = field(compare=False, repr=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "CollinearityGraph":
        es = set()
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) outside vertex range")
            u, v = min(u, v), max(u, v)
            es.add((u, v))
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, frozenset(es), tuple(frozenset(s) for s in nbrs))

    @classmethod
    def complete(cls, n: int) -> "CollinearityGraph":
        return cls.from_edges(n, combinations(range(n), 2))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def masks(self) -> list[int]:
        """Neighbourhood bitmasks."""
        return [sum(1 << u for u in self.adj[v]) for v in range(self.num_vertices)]

    def delete_vertex(self, v: int) -> "CollinearityGraph":
        keep = [u for u in range(self.num_vertices) if u != v]
        index = {u: i for i, u in enumerate(keep)}
        return self.from_edges(
            len(keep),
            ((index[a], index[b]) for a, b in self.edges if v not in (a, b)))

    def is_complete(self) -> bool:
        n = self.num_vertices
        return self.num_edges == n * (n - 1) // 2


@dataclass(frozen=True)
class ValidationReport:
    is_biregular: bool
    observed_degrees: tuple[int, ...]
    has_repeated_vertices: bool
    has_repeated_blocks: bool
    repeated_vertex_pairs: tuple[tuple[int, int], ...] = ()

    @property
    def vanishes_by_swap(self) -> bool:
        """Two points with equal membership and odd degree force a zero invariant."""
        return (self.has_repeated_vertices and self.is_biregular
                and self.observed_degrees[0] % 2 == 1)


_WS = re.compile(r"\s+")
_INT = re.compile(r"[+-]?\d+")


def parse_block_list(text: str, num_points: int | None = None) -> BlockDesign:
    """Parse ``"1,3,2,0,4; 6,0,5,8,7; ..."`` into a design.

    Whitespace anywhere is ignored; a trailing ``;`` is tolerated.
    """
    body = _WS.sub("", text)
    if body.endswith(";"):
        body = body[:-1]
    if not body:
        raise DesignError("empty block list")
    blocks = []
    for chunk in body.split(";"):
        entries = []
        for tok in chunk.split(","):
            if not _INT.fullmatch(tok):
                raise DesignError(f"non-integer token {tok!r}")
            v = int(tok)
            if v < 0:
                raise DesignError(f"negative point index {v}")
            entries.append(v)
        blocks.append(tuple(entries))
    return BlockDesign.from_blocks(blocks, num_points)


_TERM = re.compile(r"\(([^()]*)\)(?:\^(\d+))?")


def parse_symbolic(text: str, num_points: int | None = None) -> BlockDesign:
    """Parse a bracket monomial such as ``"(abc)^2(ade)(adf)"``.

    Letters a..z are points 0..25; an exponent repeats the bracket.
    """
    body = _WS.sub("", text)
    if not body:
        raise DesignError("empty symbolic expression")
    if body.count("(") != body.count(")"):
        raise DesignError("unbalanced parentheses")
    blocks = []
    pos = 0
    while pos < len(body):
        m = _TERM.match(body, pos)
        if m is None:
            if body[pos] in "()":
                raise DesignError(f"unbalanced parentheses near position {pos}")
            raise DesignError(f"unexpected character {body[pos]!r} at position {pos}")
        letters, exp = m.group(1), m.group(2)
        if not letters:
            raise DesignError("empty bracket")
        for ch in letters:
            if not ("a" <= ch <= "z"):
                raise DesignError(f"non-letter {ch!r} inside bracket")
        times = 1 if exp is None else int(exp)
        if times == 0:
            raise DesignError("exponent must be positive")
        block = tuple(ord(ch) - ord("a") for ch in letters)
        blocks.extend([block] * times)
        pos = m.end()
    return BlockDesign.from_blocks(blocks, num_points)


def parse_design(text: str) -> BlockDesign:
    """Dispatch on syntax: symbolic if it contains '(', else block list."""
    if "(" in text:
        return parse_symbolic(text)
    return parse_block_list(text)


def serialize(design: BlockDesign) -> str:
    return "; ".join(",".join(str(p) for p in b) for b in design.blocks)


def read_graph_list(lines: Iterable[str]) -> Iterator[BlockDesign]:
    """One design per non-blank, non-comment line."""
    for lineno, line in enumerate(lines, 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        try:
            yield parse_design(s)
        except DesignError as exc:
            raise DesignError(f"line {lineno}: {exc}") from None


def validate(design: BlockDesign) -> ValidationReport:
    degs = tuple(design.degrees())
    mem = design.memberships()
    seen: dict[frozenset[int], int] = {}
    pairs = []
    for p, m in enumerate(mem):
        if m in seen:
            pairs.append((seen[m], p))
        else:
            seen[m] = p
    sets = design.block_sets()
    return ValidationReport(
        is_biregular=len(set(degs)) == 1 and degs[0] > 0,
        observed_degrees=degs,
        has_repeated_vertices=bool(pairs),
        has_repeated_blocks=any(c > 1 for c in sets.values()),
        repeated_vertex_pairs=tuple(pairs),
    )


def collinearity(design: BlockDesign) -> CollinearityGraph:
    return CollinearityGraph.from_edges(
        design.num_points,
        (e for b in design.blocks for e in combinations(b, 2)))


def permutation_parity(seq: Sequence[int]) -> int:
    """Sign (+1/-1) of the permutation that sorts ``seq`` (distinct items)."""
    rank = {v: i for i, v in enumerate(sorted(seq))}
    perm = [rank[v] for v in seq]
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def reorder_sign(design_a: BlockDesign, design_b: BlockDesign) -> int:
    """Relative sign of two within-block orderings of the same block multiset.

    Each block's sign is taken against sorted order, so equal blocks in a
    multiset can be matched arbitrarily without changing the product.
    """
    if design_a.block_sets() != design_b.block_sets():
        raise DesignError("designs differ as multisets of blocks")
    sign = 1
    for b in design_a.blocks:
        sign *= permutation_parity(b)
    for b in design_b.blocks:
        sign *= permutation_parity(b)
    return sign
