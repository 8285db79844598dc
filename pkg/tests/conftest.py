from __future__ import annotations

import os
from itertools import combinations

import numpy as np
import pytest

from orthospace.core import OrthoSpace, from_maximal_cliques, new_space
from orthospace.enumeration import enumerate_adj

EXTENDED = os.environ.get("ORTHOSPACE_EXTENDED") == "1"


def windmill(pairs: list[tuple[int, int]], hub: int, n: int) -> OrthoSpace:
    """Triangles {hub, a, b} for each pair."""
    return from_maximal_cliques(n, [(hub, a, b) for a, b in pairs])[0]


def matching(k: int) -> OrthoSpace:
    """2(A, B, φ) with A = {0..k-1}, φ(a) = a + k."""
    return new_space(2 * k, [(a, a + k) for a in range(k)])


def complete(n: int) -> OrthoSpace:
    return new_space(n, list(combinations(range(n), 2)))


# the two counterexample spaces, the 8-point (L2) space, and the windmill
# figures (the 5- and 9-point figures skip label 4; relabeled 5 -> 4 and 9 -> 4)
L1_NOT_L2 = from_maximal_cliques(6, [(0, 1, 2, 3), (0, 1, 4, 5)])[0]
L2_NOT_L1 = from_maximal_cliques(7, [(0, 4), (0, 6), (5, 1), (5, 2), (5, 3), (6, 1), (6, 2)])[0]
L2_EIGHT = from_maximal_cliques(8, [(0, 4), (0, 7), (1, 5, 7), (1, 6), (2, 5), (3, 6)])[0]
WINDMILL_5 = windmill([(0, 2), (1, 3)], hub=4, n=5)
WINDMILL_7 = windmill([(0, 2), (1, 3), (4, 6)], hub=5, n=7)
WINDMILL_9 = windmill([(0, 2), (1, 3), (6, 7), (8, 4)], hub=5, n=9)


@pytest.fixture(scope="session")
def catalogue():
    """Isomorphism-class representatives as raw adjacency tuples, keyed by n."""
    cache: dict[int, list[tuple[int, ...]]] = {}

    def get(n: int) -> list[tuple[int, ...]]:
        if n not in cache:
            cache[n] = list(enumerate_adj(n))
        return cache[n]

    return get


# --- independent oracles (plain sets, no bit tricks) ---------------------------

def nbrs(space: OrthoSpace) -> list[set[int]]:
    return [{j for j in range(space.n) if space.adj[i] >> j & 1} for i in range(space.n)]


def oracle_perp(space: OrthoSpace, a: set[int]) -> set[int]:
    nb = nbrs(space)
    return {x for x in range(space.n) if all(x in nb[y] for y in a)}


def oracle_pair_perp(nb: list[set[int]], n: int, e: int, f: int) -> frozenset[int]:
    return frozenset(x for x in range(n) if x in nb[e] and x in nb[f])


def oracle_l1(space: OrthoSpace) -> bool:
    n, nb = space.n, nbrs(space)
    for e in range(n):
        for f in range(n):
            if e != f and f not in nb[e]:
                t = oracle_pair_perp(nb, n, e, f)
                if not any(g in nb[e] and oracle_pair_perp(nb, n, e, g) == t for g in range(n)):
                    return False
    return True


def oracle_l2(space: OrthoSpace) -> bool:
    n, nb = space.n, nbrs(space)
    for e in range(n):
        for f in range(n):
            if e != f and f in nb[e]:
                t = oracle_pair_perp(nb, n, e, f)
                if not any(g != e and g not in nb[e] and oracle_pair_perp(nb, n, e, g) == t for g in range(n)):
                    return False
    return True


def oracle_cliques(space: OrthoSpace) -> list[frozenset[int]]:
    """Maximal cliques by scanning all subsets."""
    n, nb = space.n, nbrs(space)
    cliques = []
    for mask in range(1, 1 << n):
        pts = [i for i in range(n) if mask >> i & 1]
        if all(b in nb[a] for a, b in combinations(pts, 2)):
            cliques.append(frozenset(pts))
    return [c for c in cliques if not any(c < d for d in cliques)]


def degree_sorted_labelings(n):
    """Labeled graphs whose degree sequence is non-increasing.

    Every isomorphism class has at least one such labeling.
    """
    pairs = [(i, j) for j in range(n) for i in range(j)]
    codes = np.arange(1 << len(pairs), dtype=np.int64)
    deg = np.zeros((n, codes.size), dtype=np.int8)
    for k, (i, j) in enumerate(pairs):
        bit = ((codes >> k) & 1).astype(np.int8)
        deg[i] += bit
        deg[j] += bit
    keep = np.all(deg[:-1] >= deg[1:], axis=0) if n > 1 else np.ones(codes.size, bool)
    for code in codes[keep].tolist():
        yield new_space(n, [p for k, p in enumerate(pairs) if code >> k & 1])


def to_set(mask: int) -> frozenset[int]:
    return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
