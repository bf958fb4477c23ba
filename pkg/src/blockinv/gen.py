"""Isomorph-free generation of biregular designs and the viability pipeline."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from pathlib import Path
from typing import Iterator

from . import chroma
from .design import BlockDesign, collinearity, read_graph_list, serialize, validate
from .symmetry import canonical_key

log = logging.getLogger(__name__)


class GuardExceeded(RuntimeError):
    """A search exceeded its configured size limit."""


@dataclass(frozen=True)
class GenParams:
    num_points: int
    num_blocks: int
    block_size: int
    point_degree: int
    allow_repeated_blocks: bool = True

    def __post_init__(self) -> None:
        if min(self.num_points, self.num_blocks, self.block_size, self.point_degree) < 1:
            raise ValueError("all parameters must be positive")
        if self.num_blocks * self.block_size != self.num_points * self.point_degree:
            raise ValueError(
                f"{self.num_blocks}*{self.block_size} != {self.num_points}*{self.point_degree}")
        if self.block_size > self.num_points:
            raise ValueError("block size exceeds number of points")


def _extensions(design_blocks: tuple[tuple[int, ...], ...], params: GenParams
                ) -> Iterator[tuple[int, ...]]:
    """Blocks that may be added: they contain the first point still short of
    its degree, use only points with spare degree, and leave every point
    completable with the blocks that remain."""
    deg = [0] * params.num_points
    for b in design_blocks:
        for p in b:
            deg[p] += 1
    spare = [params.point_degree - x for x in deg]
    first = next(p for p in range(params.num_points) if spare[p] > 0)
    others = [p for p in range(params.num_points) if spare[p] > 0 and p != first]
    left_after = params.num_blocks - len(design_blocks) - 1
    existing = set(design_blocks)
    for rest in combinations(others, params.block_size - 1):
        block = (first,) + rest
        if not params.allow_repeated_blocks and block in existing:
            continue
        chosen = set(block)
        if any(spare[p] - (p in chosen) > left_after for p in range(params.num_points)):
            continue
        yield block


def _level_path(directory: Path, level: int) -> Path:
    return directory / f"level_{level:03d}.txt"


def generate(params: GenParams, *, max_nodes: int | None = None,
             checkpoint_dir: str | Path | None = None) -> Iterator[BlockDesign]:
    """One design per isomorphism class, built block by block.

    After each block is added the partial designs are reduced to one per
    canonical key; every complete design is reachable because any partial
    design isomorphic to one of its prefixes extends to an isomorphic copy.
    ``max_nodes`` bounds the number of partial designs examined.
    ``checkpoint_dir`` stores each finished level and resumes from the last.
    """
    ckpt = Path(checkpoint_dir) if checkpoint_dir is not None else None
    level = 1
    frontier = [(tuple(range(params.block_size)),)]
    if ckpt is not None:
        ckpt.mkdir(parents=True, exist_ok=True)
        done = sorted(ckpt.glob("level_*.txt"))
        if done:
            last = done[-1]
            level = int(last.stem.split("_")[1])
            with last.open() as fh:
                frontier = [d.blocks for d in read_graph_list(fh)]
            log.info("resuming at level %d with %d partial designs", level, len(frontier))
    examined = 0
    while level < params.num_blocks:
        seen: dict[tuple, tuple[tuple[int, ...], ...]] = {}
        for blocks in frontier:
            for block in _extensions(blocks, params):
                examined += 1
                if max_nodes is not None and examined > max_nodes:
                    raise GuardExceeded(f"more than {max_nodes} partial designs examined")
                child = blocks + (block,)
                key = canonical_key(BlockDesign(child, params.num_points))
                seen.setdefault(key, child)
        frontier = list(seen.values())
        level += 1
        log.info("level %d: %d classes (%d examined)", level, len(frontier), examined)
        if ckpt is not None:
            tmp = _level_path(ckpt, level).with_suffix(".tmp")
            with tmp.open("w") as fh:
                for blocks in frontier:
                    fh.write(serialize(BlockDesign(blocks, params.num_points)) + "\n")
            tmp.replace(_level_path(ckpt, level))
    for blocks in frontier:
        yield BlockDesign(blocks, params.num_points)


def brute_force_generate(params: GenParams, limit: int = 10 ** 7) -> list[BlockDesign]:
    """All block multisets with the right degrees, one per isomorphism class."""
    subsets = list(combinations(range(params.num_points), params.block_size))
    space = math.comb(len(subsets) + params.num_blocks - 1, params.num_blocks)
    if space > limit:
        raise GuardExceeded(f"{space} raw candidates exceed the limit {limit}")
    reps: dict[tuple, BlockDesign] = {}
    for blocks in combinations_with_replacement(subsets, params.num_blocks):
        if not params.allow_repeated_blocks and len(set(blocks)) < len(blocks):
            continue
        deg = [0] * params.num_points
        for b in blocks:
            for p in b:
                deg[p] += 1
        if any(x != params.point_degree for x in deg):
            continue
        d = BlockDesign(blocks, params.num_points)
        reps.setdefault(canonical_key(d), d)
    return list(reps.values())


# -- pipeline -----------------------------------------------------------------

VERDICTS = ("rejected_repeated_vertices", "rejected_chi", "rejected_has_clique",
            "rejected_not_vertex_critical", "viable")


@dataclass(frozen=True)
class PipelineVerdict:
    outcome: str
    chi: int | None = None

    def __str__(self) -> str:
        return self.outcome if self.chi is None else f"{self.outcome} chi={self.chi}"


def pipeline_filter(design: BlockDesign, target_colors: int) -> PipelineVerdict:
    """Screen a design for a nonzero invariant vanishing on sums of
    ``target_colors - 1`` powers.

    In order: two points with the same blocks and odd degree (the invariant
    is its own negative); chromatic number different from the target; a
    clique of the target size plus further vertices; a vertex whose deletion
    keeps the chromatic number.
    """
    if validate(design).vanishes_by_swap:
        return PipelineVerdict("rejected_repeated_vertices")
    g = collinearity(design)
    chi = chroma.chromatic_number(g)
    if chi != target_colors:
        return PipelineVerdict("rejected_chi", chi)
    # a target-size clique leaves some other vertex deletable without lowering chi
    if g.num_vertices > target_colors and chroma.has_clique(g, target_colors):
        return PipelineVerdict("rejected_has_clique", chi)
    if not chroma.is_vertex_critical(g, chi):
        return PipelineVerdict("rejected_not_vertex_critical", chi)
    return PipelineVerdict("viable", chi)
