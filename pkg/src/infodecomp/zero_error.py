"""Zero-error private information.

Witsenhausen's characteristic graph with exact chromatic coloring, and the
Hexner-Yo private-information partitions over the partition lattice.  Both
constructions expose their non-uniqueness by returning all minimal solutions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core_prob import Alphabet, JointPMF, PMFValidationError
from .info_lattice import (LatticeError, Partition, SampleSpace, equivalent,
                           join, meet, pmf_to_partitions)

EXACT_VERTEX_CAP = 24
HY_POINT_CAP = 10


@dataclass(frozen=True)
class CharacteristicGraph:
    """Confusability graph over the X alphabet (edges by vertex index)."""

    vertices: Alphabet
    edges: frozenset

    def neighbors(self):
        adj = [set() for _ in range(len(self.vertices))]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def edge_labels(self):
        return sorted((self.vertices.labels[a], self.vertices.labels[b])
                      for a, b in self.edges)


@dataclass(frozen=True)
class Coloring:
    """Proper coloring; colors are 0..num_colors-1, all used."""

    color_of: tuple
    num_colors: int


def characteristic_graph(p: JointPMF) -> CharacteristicGraph:
    """Distinct x1, x2 are adjacent iff some y supports both."""
    if p.arity != 2:
        raise PMFValidationError("characteristic_graph expects a two-variable pmf")
    nx, ny = p.shape
    edges = set()
    for y in range(ny):
        xs = np.where(p.mass[:, y] > p.support_eps)[0]
        for i in range(len(xs)):
            for j in range(i + 1, len(xs)):
                edges.add((int(xs[i]), int(xs[j])))
    return CharacteristicGraph(p.alphabets[0], frozenset(edges))


def _greedy_upper_bound(adj):
    order = sorted(range(len(adj)), key=lambda v: -len(adj[v]))
    colors = [-1] * len(adj)
    for v in order:
        used = {colors[u] for u in adj[v] if colors[u] != -1}
        c = 0
        while c in used:
            c += 1
        colors[v] = c
    return max(colors) + 1 if colors else 1


def _greedy_clique_lower_bound(adj):
    n = len(adj)
    best = 1 if n else 0
    for start in range(n):
        clique = [start]
        for v in sorted(range(n), key=lambda v: -len(adj[v])):
            if v != start and all(v in adj[u] for u in clique):
                clique.append(v)
        best = max(best, len(clique))
    return best


def _colorable(adj, k):
    """Backtracking k-colorability in canonical (first-use) color order."""
    n = len(adj)
    colors = [-1] * n

    def rec(v, max_used):
        if v == n:
            return True
        forbidden = {colors[u] for u in adj[v] if colors[u] != -1}
        for c in range(min(max_used + 1, k - 1) + 1):
            if c not in forbidden:
                colors[v] = c
                if rec(v + 1, max(max_used, c)):
                    return True
                colors[v] = -1
        return False

    if rec(0, -1):
        return tuple(colors)
    return None


def _enumerate_colorings(adj, k, limit):
    """All proper k-colorings in canonical form (dedupes color relabeling)."""
    n = len(adj)
    colors = [-1] * n
    out = []

    def rec(v, max_used):
        if len(out) >= limit:
            return
        if v == n:
            if max_used + 1 == k:
                out.append(tuple(colors))
            return
        forbidden = {colors[u] for u in adj[v] if colors[u] != -1}
        for c in range(min(max_used + 1, k - 1) + 1):
            if c not in forbidden:
                colors[v] = c
                rec(v + 1, max(max_used, c))
                colors[v] = -1

    rec(0, -1)
    return out


def chromatic_number(g: CharacteristicGraph) -> int:
    n = len(g.vertices)
    if n > EXACT_VERTEX_CAP:
        raise PMFValidationError(
            f"{n} vertices exceeds exact-mode cap {EXACT_VERTEX_CAP}; "
            "use greedy_color for an upper bound")
    if not g.edges:
        return 1
    adj = g.neighbors()
    lo = _greedy_clique_lower_bound(adj)
    hi = _greedy_upper_bound(adj)
    for k in range(lo, hi):
        if _colorable(adj, k) is not None:
            return k
    return hi


def chromatic_color(g: CharacteristicGraph, enumerate_all: bool = False,
                    limit: int = 10000):
    """Exact minimal coloring; canonical (lexicographically smallest under
    vertex order).  With enumerate_all, also returns every optimal coloring
    up to color relabeling."""
    k = chromatic_number(g)
    adj = g.neighbors()
    assignment = _colorable(adj, k)
    if assignment is None:  # pragma: no cover - chromatic_number guarantees it
        raise RuntimeError("internal error: chromatic number not achievable")
    coloring = Coloring(assignment, k)
    if not enumerate_all:
        return coloring
    all_colorings = [Coloring(c, k) for c in _enumerate_colorings(adj, k, limit)]
    return coloring, all_colorings


def greedy_color(g: CharacteristicGraph) -> Coloring:
    """Greedy upper-bound coloring for graphs beyond the exact-mode cap."""
    adj = g.neighbors()
    order = sorted(range(len(adj)), key=lambda v: -len(adj[v]))
    colors = [-1] * len(adj)
    for v in order:
        used = {colors[u] for u in adj[v] if colors[u] != -1}
        c = 0
        while c in used:
            c += 1
        colors[v] = c
    ncol = max(colors) + 1 if colors else 1
    # canonical first-use renumbering
    remap = {}
    canon = []
    for c in colors:
        if c not in remap:
            remap[c] = len(remap)
        canon.append(remap[c])
    return Coloring(tuple(canon), ncol)


def is_proper(g: CharacteristicGraph, color_of) -> bool:
    return all(color_of[a] != color_of[b] for a, b in g.edges)


def _coloring_to_partition(g: CharacteristicGraph, color_of,
                           weights=None) -> Partition:
    space = SampleSpace(g.vertices.labels, weights)
    return Partition(space, tuple(color_of))


def witsenhausen_private(p: JointPMF, enumerate_all: bool = True,
                         limit: int = 10000) -> dict:
    """Minimal-coloring private information of X with respect to Y.

    Returns the canonical color-class partition of the X alphabet plus all
    minimal solutions; each is verified to satisfy PI_w v Y = X v Y on the
    support (a structural check, no tolerance).
    """
    g = characteristic_graph(p)
    px = p.mass.sum(axis=1)
    result = chromatic_color(g, enumerate_all=enumerate_all, limit=limit)
    if enumerate_all:
        coloring, all_colorings = result
    else:
        coloring, all_colorings = result, [result]

    space, (part_x, part_y) = pmf_to_partitions(p)
    cells = p.support()
    join_xy = join(part_x, part_y)

    def verify(c: Coloring):
        part_c = Partition(space, tuple(c.color_of[cell[0]] for cell in cells))
        if not equivalent(join(part_c, part_y), join_xy):
            raise RuntimeError(
                "coloring partition fails PI_w v Y = X v Y; graph or "
                "coloring bug")

    verify(coloring)
    partitions = []
    for c in all_colorings:
        verify(c)
        partitions.append(_coloring_to_partition(g, c.color_of, px / px.sum()))
    return {
        "partition": _coloring_to_partition(g, coloring.color_of, px / px.sum()),
        "num_colors": coloring.num_colors,
        "all_minimal": partitions,
    }


def _restricted_growth_strings(n):
    """All set partitions of n points, as restricted growth strings in
    lexicographic order."""
    rgs = [0] * n
    maxes = [0] * n

    while True:
        yield tuple(rgs)
        i = n - 1
        while i > 0 and rgs[i] == maxes[i - 1] + 1:
            i -= 1
        if i == 0:
            return
        rgs[i] += 1
        maxes[i] = max(maxes[i - 1], rgs[i])
        for j in range(i + 1, n):
            rgs[j] = 0
            maxes[j] = maxes[i]


def hexner_yo_private(x: Partition, y: Partition) -> list[Partition]:
    """All minimal-block-count partitions P with P v (X ^ Y) = X.

    Exhaustive over the full partition lattice; non-uniqueness shows up as a
    returned list with more than one entry.
    """
    if x.space.points != y.space.points:
        raise LatticeError("partitions live on different sample spaces")
    n = len(x.space)
    if n > HY_POINT_CAP:
        raise LatticeError(
            f"space has {n} points, exceeding enumeration cap {HY_POINT_CAP}")
    common = meet(x, y)
    best_blocks = None
    solutions: list[Partition] = []
    for rgs in _restricted_growth_strings(n):
        nblocks = max(rgs) + 1
        if best_blocks is not None and nblocks > best_blocks:
            continue
        cand = Partition(x.space, rgs)
        if join(cand, common).block_of != x.block_of:
            continue
        if best_blocks is None or nblocks < best_blocks:
            best_blocks = nblocks
            solutions = [cand]
        else:
            solutions.append(cand)
    return solutions
