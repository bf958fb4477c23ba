"""Graph colouring: decision, chromatic number, criticality, cliques, enumeration.

Graphs here are small (tens of vertices), so everything works on Python-int
bitmasks.  The proper-colouring enumerator picks, at each step, an uncoloured
vertex with the fewest remaining colours (ties to the lowest index by default)
and backtracks on wipe-out.  Counting and evaluation over large trees go
through the compiled kernel in :mod:`blockinv._kernel`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Iterator, Sequence

from .design import CollinearityGraph

Coloring = tuple[int, ...]
Prefix = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class ChromaReport:
    chi: int
    is_vertex_critical: bool
    max_clique_lower_bound: int
    has_clique_of: int | None = None
    clique_found: bool | None = None


def is_proper(graph: CollinearityGraph, coloring: Sequence[int]) -> bool:
    return all(coloring[u] != coloring[v] for u, v in graph.edges)


# -- cliques -----------------------------------------------------------------

def max_clique(graph: CollinearityGraph, stop_at: int | None = None) -> int:
    """Size of a maximum clique (branch and bound with greedy-colouring bounds).

    With ``stop_at`` the search returns as soon as a clique of that size is seen.
    """
    masks = graph.masks()
    best = 0

    def colour_bound(cand: int) -> list[tuple[int, int]]:
        # greedy colouring of the candidate set; colour index bounds clique size
        order = []
        colour = 0
        rest = cand
        while rest:
            colour += 1
            avail = rest
            while avail:
                v = (avail & -avail).bit_length() - 1
                avail &= ~(1 << v) & ~masks[v]
                rest &= ~(1 << v)
                order.append((v, colour))
        return order

    def expand(size: int, cand: int) -> bool:
        nonlocal best
        for v, bound in reversed(colour_bound(cand)):
            if size + bound <= best:
                return False
            new_size = size + 1
            new_cand = cand & masks[v]
            if new_size > best:
                best = new_size
                if stop_at is not None and best >= stop_at:
                    return True
            if new_cand and expand(new_size, new_cand):
                return True
            cand &= ~(1 << v)
        return False

    if graph.num_vertices:
        expand(0, (1 << graph.num_vertices) - 1)
    return best


def has_clique(graph: CollinearityGraph, s: int) -> bool:
    if s < 1:
        raise ValueError("clique size must be >= 1")
    if s > graph.num_vertices:
        return False
    return max_clique(graph, stop_at=s) >= s


# -- decision and chromatic number --------------------------------------------

def greedy_upper_bound(graph: CollinearityGraph) -> int:
    """Colours used by a DSATUR greedy pass."""
    n = graph.num_vertices
    if n == 0:
        return 0
    colour = [-1] * n
    seen = [0] * n  # bitmask of neighbour colours
    used = 0
    for _ in range(n):
        v = max((u for u in range(n) if colour[u] < 0),
                key=lambda u: (bin(seen[u]).count("1"), graph.degree(u), -u))
        c = 0
        while seen[v] >> c & 1:
            c += 1
        colour[v] = c
        used = max(used, c + 1)
        for u in graph.adj[v]:
            seen[u] |= 1 << c
    return used


def find_coloring(graph: CollinearityGraph, q: int) -> Coloring | None:
    """A proper q-colouring, or None.

    Forward-checking backtracking on smallest domain; a vertex may open at
    most one colour beyond those already in use (colour-symmetry breaking).
    """
    n = graph.num_vertices
    if n == 0:
        return ()
    if q <= 0:
        return None
    adj = [list(graph.adj[v]) for v in range(n)]
    full = (1 << q) - 1
    domain = [full] * n
    colour = [-1] * n

    def solve(assigned: int, used: int) -> bool:
        if assigned == n:
            return True
        v, best = -1, q + 1
        for u in range(n):
            if colour[u] < 0:
                size = bin(domain[u]).count("1")
                if size < best:
                    v, best = u, size
                    if size == 0:
                        return False
        options = domain[v] & ((1 << min(used + 1, q)) - 1)
        while options:
            c = (options & -options).bit_length() - 1
            options &= options - 1
            bit = 1 << c
            colour[v] = c
            touched = []
            wiped = False
            for u in adj[v]:
                if colour[u] < 0 and domain[u] & bit:
                    domain[u] &= ~bit
                    touched.append(u)
                    if not domain[u]:
                        wiped = True
            if not wiped and solve(assigned + 1, max(used, c + 1)):
                return True
            for u in touched:
                domain[u] |= bit
            colour[v] = -1
        return False

    return tuple(colour) if solve(0, 0) else None


def is_q_colorable(graph: CollinearityGraph, q: int) -> bool:
    if q < 0:
        raise ValueError("q must be >= 0")
    return find_coloring(graph, q) is not None


def chromatic_number(graph: CollinearityGraph) -> int:
    if graph.num_vertices == 0:
        return 0
    lower = max_clique(graph)
    upper = greedy_upper_bound(graph)
    for q in range(lower, upper):
        if is_q_colorable(graph, q):
            return q
    return upper


def is_vertex_critical(graph: CollinearityGraph, q: int) -> bool:
    chi = chromatic_number(graph)
    if chi != q:
        raise ValueError(f"chromatic number is {chi}, not {q}")
    return all(is_q_colorable(graph.delete_vertex(v), q - 1)
               for v in range(graph.num_vertices))


def report(graph: CollinearityGraph, clique_query: int | None = None) -> ChromaReport:
    chi = chromatic_number(graph)
    return ChromaReport(
        chi=chi,
        is_vertex_critical=is_vertex_critical(graph, chi),
        max_clique_lower_bound=max_clique(graph),
        has_clique_of=clique_query,
        clique_found=None if clique_query is None else has_clique(graph, clique_query),
    )


# -- enumeration ------------------------------------------------------------

class _SearchState:
    """Incremental domains for the smallest-domain colouring search."""

    def __init__(self, graph: CollinearityGraph, r: int, tie_break: str):
        if tie_break not in ("low", "high"):
            raise ValueError("tie_break must be 'low' or 'high'")
        self.n = graph.num_vertices
        self.r = r
        self.adj = [tuple(sorted(graph.adj[v])) for v in range(self.n)]
        self.colour = [-1] * self.n
        self.forb = [[0] * r for _ in range(self.n)]
        self.dom = [r] * self.n
        self.assigned = 0
        self.order = range(self.n) if tie_break == "low" else range(self.n - 1, -1, -1)

    def assign(self, v: int, c: int) -> None:
        self.colour[v] = c
        self.assigned += 1
        for u in self.adj[v]:
            row = self.forb[u]
            if row[c] == 0:
                self.dom[u] -= 1
            row[c] += 1

    def unassign(self, v: int) -> None:
        c = self.colour[v]
        self.colour[v] = -1
        self.assigned -= 1
        for u in self.adj[v]:
            row = self.forb[u]
            row[c] -= 1
            if row[c] == 0:
                self.dom[u] += 1

    def select(self) -> int:
        """Uncoloured vertex with the smallest domain; -1 if all coloured."""
        best, size = -1, self.r + 1
        colour, dom = self.colour, self.dom
        for u in self.order:
            if colour[u] < 0 and dom[u] < size:
                best, size = u, dom[u]
                if size == 0:
                    break
        return best

    def options(self, v: int) -> list[int]:
        row = self.forb[v]
        return [c for c in range(self.r) if row[c] == 0]

    def apply_prefix(self, prefix: Prefix) -> bool:
        for v, c in prefix:
            if self.colour[v] >= 0 or self.forb[v][c]:
                return False
            self.assign(v, c)
        return True


def iter_proper_colorings(graph: CollinearityGraph, r: int, *,
                          tie_break: str = "low",
                          prefix: Prefix = ()) -> Iterator[Coloring]:
    """Yield every proper r-colouring (colours 0..r-1) exactly once.

    With ``prefix`` only the subtree below that partial assignment is walked;
    prefixes returned by :func:`split_search` partition the whole tree.
    """
    if r < 0:
        raise ValueError("r must be >= 0")
    st = _SearchState(graph, r, tie_break)
    if not st.apply_prefix(prefix):
        return
    n = st.n

    def walk() -> Iterator[Coloring]:
        if st.assigned == n:
            yield tuple(st.colour)
            return
        v = st.select()
        for c in st.options(v):
            st.assign(v, c)
            yield from walk()
            st.unassign(v)

    yield from walk()


def enumerate_proper_colorings(graph: CollinearityGraph, r: int,
                               fold: Callable[[Any, Coloring], Any] | None = None,
                               init: Any = 0, *, tie_break: str = "low",
                               prefix: Prefix = ()) -> Any:
    """Fold ``fold(acc, colouring)`` over all proper r-colourings.

    Without ``fold`` this counts them.
    """
    acc = init
    if fold is None:
        for _ in iter_proper_colorings(graph, r, tie_break=tie_break, prefix=prefix):
            acc += 1
        return acc
    for col in iter_proper_colorings(graph, r, tie_break=tie_break, prefix=prefix):
        acc = fold(acc, col)
    return acc


def split_search(graph: CollinearityGraph, r: int, parts: int, *,
                 tie_break: str = "low") -> list[list[Prefix]]:
    """Partition the colouring search tree into ``parts`` groups of subtrees.

    The tree is expanded breadth-first, following the same vertex choices as
    the enumerator, until there are at least ``parts`` open nodes (or the tree
    is exhausted).  Nodes are dealt round-robin, so some groups may be empty
    when the tree is small.  Every proper colouring lies below exactly one
    returned prefix.
    """
    if parts < 1:
        raise ValueError("parts must be >= 1")
    frontier: list[Prefix] = [()]
    while len(frontier) < parts:
        grown: list[Prefix] = []
        changed = False
        for pre in frontier:
            st = _SearchState(graph, r, tie_break)
            st.apply_prefix(pre)
            if st.assigned == st.n:
                grown.append(pre)
                continue
            v = st.select()
            grown.extend(pre + ((v, c),) for c in st.options(v))
            changed = True
        frontier = grown
        if not changed or not frontier:
            break
    groups: list[list[Prefix]] = [[] for _ in range(parts)]
    for i, pre in enumerate(frontier):
        groups[i % parts].append(pre)
    return groups


def count_proper_colorings(graph: CollinearityGraph, r: int, *,
                           tie_break: str = "low", parts: int = 1) -> int:
    """Number of proper r-colourings, computed by the compiled kernel."""
    from . import _kernel

    return _kernel.count_colorings(graph, r, tie_break=tie_break, parts=parts)
