"""Partitions of a finite sample space with join, meet and the richer order.

A partition stands for an information element (the sigma-algebra its blocks
generate); join is the common refinement, meet the coarsest common
coarsening.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import entropy_bits
from .core_prob import MASS_TOL, PMFValidationError, clamp_info


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class SampleSpace:
    """Ordered finite set of point labels with an optional probability weight."""

    points: tuple[str, ...]
    weight: np.ndarray | None = None

    def __post_init__(self):
        if not self.points:
            raise LatticeError("sample space must be non-empty")
        if len(set(self.points)) != len(self.points):
            raise LatticeError("sample-space points must be unique")
        object.__setattr__(self, "points", tuple(self.points))
        if self.weight is not None:
            w = np.asarray(self.weight, dtype=np.float64)
            if w.shape != (len(self.points),):
                raise LatticeError("weight length must match point count")
            if w.min() < 0:
                raise LatticeError("weights must be nonnegative")
            if abs(w.sum() - 1.0) > MASS_TOL:
                raise LatticeError(f"weights sum to {w.sum()}, not 1")
            w.flags.writeable = False
            object.__setattr__(self, "weight", w)

    def __len__(self):
        return len(self.points)


def _canonicalize(labels):
    """Renumber block ids by order of first appearance."""
    remap = {}
    out = []
    for lab in labels:
        if lab not in remap:
            remap[lab] = len(remap)
        out.append(remap[lab])
    return tuple(out)


@dataclass(frozen=True)
class Partition:
    """Canonical partition: block_of[i] is the block id of space.points[i]."""

    space: SampleSpace
    block_of: tuple[int, ...]

    def __post_init__(self):
        if len(self.block_of) != len(self.space):
            raise LatticeError("block assignment length must match space size")
        object.__setattr__(self, "block_of", _canonicalize(self.block_of))

    @property
    def num_blocks(self) -> int:
        return max(self.block_of) + 1

    def blocks(self) -> list[tuple[str, ...]]:
        out = [[] for _ in range(self.num_blocks)]
        for pt, b in zip(self.space.points, self.block_of):
            out[b].append(pt)
        return [tuple(b) for b in out]

    def block_masses(self) -> np.ndarray:
        if self.space.weight is None:
            raise LatticeError("sample space has no weights")
        masses = np.zeros(self.num_blocks)
        for i, b in enumerate(self.block_of):
            masses[b] += self.space.weight[i]
        return masses

    def notation(self) -> str:
        """Block notation like '01|23|45' (comma-joined for multi-char labels)."""
        sep = "" if all(len(pt) == 1 for pt in self.space.points) else ","
        return "|".join(sep.join(b) for b in self.blocks())

    @classmethod
    def from_blocks(cls, space: SampleSpace, blocks) -> "Partition":
        pos = {pt: i for i, pt in enumerate(space.points)}
        assign = [-1] * len(space)
        for b, blk in enumerate(blocks):
            for pt in blk:
                if pt not in pos:
                    raise LatticeError(f"unknown point {pt!r}")
                if assign[pos[pt]] != -1:
                    raise LatticeError(f"point {pt!r} assigned twice")
                assign[pos[pt]] = b
        if any(a == -1 for a in assign):
            missing = [pt for pt, i in pos.items() if assign[i] == -1]
            raise LatticeError(f"points not covered: {missing}")
        return cls(space, tuple(assign))

    @classmethod
    def from_notation(cls, space: SampleSpace, text: str) -> "Partition":
        """Parse '01|23|45'; multi-char point labels must be comma-separated."""
        single = all(len(pt) == 1 for pt in space.points)
        blocks = []
        for chunk in text.split("|"):
            chunk = chunk.strip()
            if "," in chunk or not single:
                blocks.append([s.strip() for s in chunk.split(",") if s.strip()])
            else:
                blocks.append(list(chunk))
        return cls.from_blocks(space, blocks)


def singletons(space: SampleSpace) -> Partition:
    return Partition(space, tuple(range(len(space))))


def one_block(space: SampleSpace) -> Partition:
    return Partition(space, (0,) * len(space))


def _require_same_space(p: Partition, q: Partition):
    if p.space.points != q.space.points:
        raise LatticeError("partitions live on different sample spaces")


def join(p: Partition, q: Partition) -> Partition:
    """Common refinement: X v Y, the joint information element."""
    _require_same_space(p, q)
    return Partition(p.space, tuple(zip(p.block_of, q.block_of)))  # type: ignore[arg-type]


def meet(p: Partition, q: Partition) -> Partition:
    """Coarsest partition refined by both: the common RV X ^ Y.

    Computed by union-find over the block-overlap graph: points sharing a
    P-block or a Q-block end up in the same meet block.
    """
    _require_same_space(p, q)
    n = len(p.space)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[rj] = ri

    first_p: dict[int, int] = {}
    first_q: dict[int, int] = {}
    for i in range(n):
        bp, bq = p.block_of[i], q.block_of[i]
        if bp in first_p:
            union(first_p[bp], i)
        else:
            first_p[bp] = i
        if bq in first_q:
            union(first_q[bq], i)
        else:
            first_q[bq] = i
    return Partition(p.space, tuple(find(i) for i in range(n)))


def is_richer(p: Partition, q: Partition) -> bool:
    """P >= Q in the information order: every P-block lies inside a Q-block."""
    _require_same_space(p, q)
    seen: dict[int, int] = {}
    for bp, bq in zip(p.block_of, q.block_of):
        if bp in seen:
            if seen[bp] != bq:
                return False
        else:
            seen[bp] = bq
    return True


def equivalent(p: Partition, q: Partition) -> bool:
    """Informational equivalence; ignores zero-weight points when weighted."""
    _require_same_space(p, q)
    if p.space.weight is None:
        return p.block_of == q.block_of
    keep = [i for i in range(len(p.space)) if p.space.weight[i] > 0]
    bp = _canonicalize(p.block_of[i] for i in keep)
    bq = _canonicalize(q.block_of[i] for i in keep)
    return bp == bq


def partition_entropy(p: Partition) -> float:
    """Entropy in bits of the block-mass distribution."""
    return clamp_info(float(entropy_bits(p.block_masses())), "partition entropy")


def check_distributivity(x: Partition, y: Partition, z: Partition) -> dict:
    """Compare (Z^Y) v (Z^X) against Z ^ (X v Y)."""
    lhs = join(meet(z, y), meet(z, x))
    rhs = meet(z, join(x, y))
    return {"lhs": lhs, "rhs": rhs, "equal": lhs.block_of == rhs.block_of}


def pmf_to_partitions(p, axes=None):
    """View a joint pmf as coordinate partitions of its support.

    The sample space is the set of positive-mass cells (weighted by their
    masses); axis k induces the partition grouping cells by their k-th
    symbol.  Returns (space, [partition per axis]).
    """
    cells = p.support()
    if not cells:
        raise PMFValidationError("pmf has empty support")
    labels = tuple(
        ",".join(p.alphabets[k].labels[i] for k, i in enumerate(cell))
        for cell in cells)
    w = np.array([p.mass[cell] for cell in cells])
    space = SampleSpace(labels, w / w.sum())
    if axes is None:
        axes = range(p.arity)
    parts = [Partition(space, tuple(cell[k] for cell in cells)) for k in axes]
    return space, parts
