"""Canonical labeling of small graphs by partition refinement.

The search follows the usual individualise-and-refine scheme: an equitable
ordered partition is refined, a vertex of the first non-singleton cell is
individualised, and so on down to discrete partitions (leaves).  The
certificate is the least permuted adjacency matrix over all leaves.
Automorphisms discovered at equal leaves prune sibling branches (orbits of
the pointwise stabiliser of the current prefix) and trigger a jump back to
the node where the two equivalent leaves diverge.

Graphs are passed as ``(n, adj)`` with ``adj`` a sequence of neighbour
bitmasks, which keeps the hot loops free of object overhead.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class Labeling:
    """Result of a canonical labeling run.

    ``position[v]`` is the canonical index of vertex ``v``; ``certificate``
    encodes the canonically relabeled adjacency rows (row 0 most
    significant).  ``generators`` generate the full automorphism group.
    """

    n: int
    certificate: int
    position: tuple[int, ...]
    generators: tuple[tuple[int, ...], ...]

    def canonical_adj(self) -> tuple[int, ...]:
        n = self.n
        mask = (1 << n) - 1
        return tuple((self.certificate >> (n * (n - 1 - i))) & mask for i in range(n))

    def orbits(self) -> list[int]:
        """Orbit representative (least vertex) for each vertex."""
        return orbit_map(self.n, self.generators)


def orbit_map(n: int, generators: Sequence[Sequence[int]]) -> list[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in generators:
        for v in range(n):
            a, b = find(v), find(g[v])
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    return [find(v) for v in range(n)]


def refine(adj: Sequence[int], cells: list[list[int]], splitters: list[int]) -> list[list[int]]:
    """Equitable refinement of an ordered partition.

    ``splitters`` are bitmasks, each a union of current cells.  Cells are split
    by neighbour count into each splitter, sub-cells ordered by increasing
    count; every new sub-cell is queued as a further splitter.
    """
    n = len(adj)
    queue = deque(splitters)
    ncells = len(cells)
    while queue and ncells < n:
        w = queue.popleft()
        new_cells = []
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            groups: dict[int, list[int]] = {}
            for v in cell:
                c = (adj[v] & w).bit_count()
                g = groups.get(c)
                if g is None:
                    groups[c] = [v]
                else:
                    g.append(v)
            if len(groups) == 1:
                new_cells.append(cell)
                continue
            for c in sorted(groups):
                piece = groups[c]
                new_cells.append(piece)
                m = 0
                for v in piece:
                    m |= 1 << v
                queue.append(m)
            ncells += len(groups) - 1
        cells = new_cells
    return cells


def _leaf_certificate(n: int, adj: Sequence[int], order: Sequence[int]) -> tuple[int, list[int]]:
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    cert = 0
    for v in order:
        row = 0
        a = adj[v]
        while a:
            low = a & -a
            row |= 1 << pos[low.bit_length() - 1]
            a ^= low
        cert = (cert << n) | row
    return cert, pos


def canonical_labeling(n: int, adj: Sequence[int], cells: list[list[int]] | None = None) -> Labeling:
    """Canonical labeling with automorphism group generators.

    ``cells`` optionally gives an initial ordered colouring; the result is then
    canonical for coloured graphs (isomorphisms must preserve cell order).
    """
    if n == 0:
        return Labeling(0, 0, (), ())
    if cells is None:
        cells = [list(range(n))]
        splitters = [(1 << n) - 1]
    else:
        cells = [list(c) for c in cells]
        splitters = []
        for c in cells:
            m = 0
            for v in c:
                m |= 1 << v
            splitters.append(m)
    root = refine(adj, cells, splitters)

    generators: list[tuple[int, ...]] = []
    # first leaf: (cert, order, prefix); best leaf likewise
    state: dict = {"first": None, "best": None}

    def common_prefix(p: list[int], q: list[int]) -> int:
        k = 0
        for a, b in zip(p, q):
            if a != b:
                break
            k += 1
        return k

    def leaf(cells: list[list[int]], prefix: list[int]) -> int | None:
        order = [c[0] for c in cells]
        cert, pos = _leaf_certificate(n, adj, order)
        first = state["first"]
        if first is None:
            state["first"] = state["best"] = (cert, order, pos, list(prefix))
            return None
        for ref in (first, state["best"]):
            if cert == ref[0]:
                ref_order = ref[1]
                gamma = tuple(ref_order[pos[v]] for v in range(n))
                generators.append(gamma)
                return common_prefix(prefix, ref[3])
        if cert < state["best"][0]:
            state["best"] = (cert, order, pos, list(prefix))
        return None

    def search(cells: list[list[int]], prefix: list[int]) -> int | None:
        if len(cells) == n:
            return leaf(cells, prefix)
        level = len(prefix)
        t = 0
        while len(cells[t]) == 1:
            t += 1
        target = cells[t]
        explored: list[int] = []
        seen_gens = -1
        orbit = None
        for v in sorted(target):
            if explored:
                if len(generators) != seen_gens:
                    seen_gens = len(generators)
                    stab = [g for g in generators if all(g[p] == p for p in prefix)]
                    orbit = orbit_map(n, stab) if stab else None
                if orbit is not None:
                    ov = orbit[v]
                    if any(orbit[u] == ov for u in explored):
                        continue
            explored.append(v)
            rest = [u for u in target if u != v]
            child = cells[:t] + [[v], rest] + cells[t + 1:]
            child = refine(adj, child, [1 << v])
            prefix.append(v)
            jump = search(child, prefix)
            prefix.pop()
            if jump is not None and jump < level:
                return jump
        return None

    search(root, [])
    cert, _order, pos, _prefix = state["best"]
    return Labeling(n, cert, tuple(pos), tuple(generators))

