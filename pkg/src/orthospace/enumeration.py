"""Isomorph-free generation of orthogonality spaces and the census tables.

Generation is by canonical augmentation (vertex addition).  A child ``H`` of
a parent ``G`` on ``n`` points is ``G`` plus a new point ``n`` joined to a
set ``S``.  ``S`` ranges over orbit representatives of subsets under
Aut(G), and ``H`` is kept iff the new point lies in the Aut(H)-orbit of the
canonical deletion point: among points maximising (degree, sum of neighbour
degrees), the one with the largest canonical index.  Most children are
decided by the invariant alone; canonical labeling runs only on ties.
"""
from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .canon import Labeling, canonical_labeling
from .core import OrthoSpace, iter_bits
from . import graph6

MAX_ENUMERATION = 12


class EnumerationError(ValueError):
    pass


# --- canonical form ----------------------------------------------------------

@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Isomorphism-class certificate: graph6 bytes of the canonical relabeling."""

    data: bytes

    def __str__(self) -> str:
        return self.data.decode("ascii")


def canonical_form(space: OrthoSpace) -> CanonicalForm:
    lab = canonical_labeling(space.n, space.adj)
    return CanonicalForm(graph6.encode_adj(space.n, lab.canonical_adj()).encode("ascii"))


def canonical_space(space: OrthoSpace) -> OrthoSpace:
    lab = canonical_labeling(space.n, space.adj)
    return OrthoSpace(space.n, lab.canonical_adj())


# --- augmentation ------------------------------------------------------------

@lru_cache(maxsize=None)
def _subsets_by_size(n: int) -> tuple[tuple[int, ...], ...]:
    out: list[list[int]] = [[] for _ in range(n + 1)]
    for s in range(1 << n):
        out[s.bit_count()].append(s)
    return tuple(tuple(x) for x in out)


def _orbit_min_check(s: int, gens: Sequence[Sequence[int]]) -> bool:
    seen = {s}
    stack = [s]
    while stack:
        cur = stack.pop()
        for g in gens:
            img = 0
            t = cur
            while t:
                low = t & -t
                img |= 1 << g[low.bit_length() - 1]
                t ^= low
            if img < s:
                return False
            if img not in seen:
                seen.add(img)
                stack.append(img)
    return True


def children(n: int, adj: Sequence[int], gens: Sequence[Sequence[int]]) -> Iterator[tuple[tuple[int, ...], Labeling | None]]:
    """Accepted one-point extensions of the parent ``(n, adj)``.

    Yields ``(child_adj, labeling)`` where ``labeling`` is the child's
    canonical labeling when it had to be computed, else None.
    """
    deg = [a.bit_count() for a in adj]
    maxdeg = max(deg) if n else 0
    below = 0
    for u in range(n):
        if deg[u] < maxdeg:
            below |= 1 << u
    nds = [sum(deg[w] for w in iter_bits(adj[u])) for u in range(n)]
    by_size = _subsets_by_size(n)
    vbit = 1 << n
    top = [u for u in range(n) if deg[u] == maxdeg]
    for k in range(maxdeg, n + 1):
        for s in by_size[k]:
            if k == maxdeg:
                if s & ~below:
                    continue
                tied = top + [u for u in iter_bits(s) if deg[u] == k - 1]
            else:
                tied = [u for u in iter_bits(s) if deg[u] == k - 1]
            if tied:
                nds_v = k
                for w in iter_bits(s):
                    nds_v += deg[w]
                still = []
                reject = False
                for u in tied:
                    inv = nds[u] + (adj[u] & s).bit_count()
                    if s >> u & 1:
                        inv += k
                    if inv > nds_v:
                        reject = True
                        break
                    if inv == nds_v:
                        still.append(u)
                if reject:
                    continue
                tied = still
            if gens and not _orbit_min_check(s, gens):
                continue
            child = list(adj)
            for u in iter_bits(s):
                child[u] |= vbit
            child.append(s)
            child_t = tuple(child)
            if not tied:
                yield child_t, None
                continue
            lab = canonical_labeling(n + 1, child_t)
            pos = lab.position
            w = max(tied, key=pos.__getitem__)
            if pos[n] > pos[w]:
                yield child_t, lab
                continue
            orbit = lab.orbits()
            if orbit[w] == orbit[n]:
                yield child_t, lab


def _extend(n: int, adj: tuple[int, ...], gens, target: int) -> Iterator[tuple[int, ...]]:
    if n == target:
        yield adj
        return
    last = n + 1 == target
    for child, lab in children(n, adj, gens):
        if last:
            yield child
        else:
            if lab is None:
                lab = canonical_labeling(n + 1, child)
            yield from _extend(n + 1, child, lab.generators, target)


def _check_bound(n: int) -> None:
    if not 1 <= n <= MAX_ENUMERATION:
        raise EnumerationError(f"bound exceeded: n must be in [1, {MAX_ENUMERATION}], got {n}")


def enumerate_adj(n: int) -> Iterator[tuple[int, ...]]:
    """Adjacency tuples, one per isomorphism class on ``n`` points."""
    _check_bound(n)
    yield from _extend(1, (0,), (), n)


def enumerate_spaces(n: int) -> Iterator[OrthoSpace]:
    """One representative per isomorphism class of spaces on ``n`` points."""
    for adj in enumerate_adj(n):
        yield OrthoSpace(n, adj)


def work_units(n: int, depth: int | None = None) -> list[tuple[int, tuple[int, ...], tuple]]:
    """Roots of independent generation subtrees for an ``n``-point run."""
    _check_bound(n)
    if depth is None:
        depth = max(1, n - 2)
    depth = min(max(depth, 1), n)
    units = []
    for adj in _extend(1, (0,), (), depth):
        lab = canonical_labeling(depth, adj)
        units.append((depth, adj, lab.generators))
    return units


# --- census ------------------------------------------------------------------

class Predicate(str, enum.Enum):
    ALL = "all"
    L1 = "l1"
    L2 = "l2"
    LINEAR = "linear"


@dataclass(frozen=True)
class CensusFilter:
    predicate: Predicate = Predicate.ALL
    connected_only: bool = False


@dataclass(frozen=True)
class CountsRow:
    n: int
    total: int
    filtered: int


@dataclass
class CensusStats:
    """All per-size counts gathered in a single pass over the catalogue."""

    n: int
    total: int = 0
    connected: int = 0
    l1: int = 0
    l1_connected: int = 0
    l2: int = 0
    l2_connected: int = 0
    linear: int = 0
    linear_connected: int = 0

    def add(self, other: CensusStats) -> None:
        for name in _COUNT_FIELDS:
            setattr(self, name, getattr(self, name) + getattr(other, name))

    def row(self, flt: CensusFilter) -> CountsRow:
        pred = flt.predicate
        suffix = "_connected" if flt.connected_only else ""
        total = self.connected if flt.connected_only else self.total
        if pred is Predicate.ALL:
            return CountsRow(self.n, total, total)
        return CountsRow(self.n, total, getattr(self, pred.value + suffix))


_COUNT_FIELDS = ("total", "connected", "l1", "l1_connected", "l2", "l2_connected", "linear", "linear_connected")


def _connected_adj(n: int, adj: Sequence[int]) -> bool:
    full = (1 << n) - 1
    seen = frontier = 1
    while frontier:
        nxt = 0
        while frontier:
            low = frontier & -frontier
            nxt |= adj[low.bit_length() - 1]
            frontier ^= low
        frontier = nxt & ~seen
        seen |= frontier
    return seen == full


def _tally(stats: CensusStats, n: int, adj: Sequence[int]) -> None:
    from .properties import linearity_flags

    conn = _connected_adj(n, adj)
    l1, l2 = linearity_flags(n, adj)
    stats.total += 1
    if conn:
        stats.connected += 1
    if l1:
        stats.l1 += 1
        stats.l1_connected += conn
    if l2:
        stats.l2 += 1
        stats.l2_connected += conn
    if l1 and l2:
        stats.linear += 1
        stats.linear_connected += conn


def _unit_stats(args) -> CensusStats:
    n, (depth, adj, gens) = args
    stats = CensusStats(n)
    for child in _extend(depth, adj, gens, n):
        _tally(stats, n, child)
    return stats


_CENSUS_CACHE: dict[int, CensusStats] = {}


def census(n: int, jobs: int = 1) -> CensusStats:
    """Counts of all / connected spaces on ``n`` points with (L1), (L2), linear.

    The generation tree is cut at depth ``n - 2`` and subtrees are processed
    independently (in a process pool when ``jobs > 1``); totals are summed, so
    the result does not depend on scheduling.
    """
    _check_bound(n)
    if n in _CENSUS_CACHE:
        return _CENSUS_CACHE[n]
    units = [(n, u) for u in work_units(n)]
    stats = CensusStats(n)
    if jobs > 1 and len(units) > 1:
        import multiprocessing as mp

        with mp.get_context("spawn" if os.name == "nt" else "fork").Pool(jobs) as pool:
            for part in pool.imap(_unit_stats, units, chunksize=max(1, len(units) // (jobs * 16))):
                stats.add(part)
    else:
        for u in units:
            stats.add(_unit_stats(u))
    _CENSUS_CACHE[n] = stats
    return stats


def count_census(n: int, flt: CensusFilter = CensusFilter(), jobs: int = 1) -> CountsRow:
    return census(n, jobs).row(flt)


def filtered_spaces(n: int, flt: CensusFilter) -> Iterator[OrthoSpace]:
    """Catalogue on ``n`` points restricted by ``flt``, in generation order."""
    from .properties import linearity_flags

    for adj in enumerate_adj(n):
        if flt.connected_only and not _connected_adj(n, adj):
            continue
        if flt.predicate is not Predicate.ALL:
            l1, l2 = linearity_flags(n, adj)
            ok = {Predicate.L1: l1, Predicate.L2: l2, Predicate.LINEAR: l1 and l2}[flt.predicate]
            if not ok:
                continue
        yield OrthoSpace(n, adj)


# --- labeled rank-2 (L1) spaces ----------------------------------------------

def _perfect_matchings(points: list[int]) -> Iterator[list[tuple[int, int]]]:
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for i, partner in enumerate(rest):
        for m in _perfect_matchings(rest[:i] + rest[i + 1:]):
            yield [(first, partner)] + m


def count_labeled_rank2_l1(two_n: int, method: str = "matching") -> int:
    """Number of labeled spaces on 2n points of rank 2 satisfying (L1).

    ``method="matching"`` counts perfect matchings recursively;
    ``method="brute"`` filters every labeled graph (feasible for 2n <= 6).
    """
    if two_n < 2 or two_n % 2:
        raise ValueError(f"no perfect matching on odd sets: 2n={two_n}")
    if method == "matching":
        return sum(1 for _ in _perfect_matchings(list(range(two_n))))
    if method == "brute":
        return _brute_rank2_l1(two_n)
    raise ValueError(f"unknown method {method!r}")


def _brute_rank2_l1(n: int) -> int:
    from .core import rank
    from .properties import linearity_flags

    pairs = [(i, j) for j in range(n) for i in range(j)]
    count = 0
    for code in range(1 << len(pairs)):
        adj = [0] * n
        for k, (i, j) in enumerate(pairs):
            if code >> k & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
        if not linearity_flags(n, adj)[0]:
            continue
        if rank(OrthoSpace(n, tuple(adj))) == 2:
            count += 1
    return count


def double_factorial_count(two_n: int) -> int:
    n = two_n // 2
    return math.factorial(two_n) // (math.factorial(n) * 2 ** n)


# --- golden tables -----------------------------------------------------------

# Published reference counts: (|X|, all, predicate, connected all, connected predicate).
GOLDEN = {
    "I": [
        (2, 2, 1, 1, 1),
        (3, 4, 1, 2, 1),
        (4, 11, 2, 6, 1),
        (5, 34, 2, 21, 2),
        (6, 156, 3, 112, 2),
        (7, 1044, 3, 853, 3),
        (8, 12346, 5, 11117, 4),
        (9, 274668, 5, 261080, 5),
        (10, 12005168, 7, 11716571, 6),
    ],
    "II": [
        (2, 2, 1, 1, 0),
        (3, 4, 2, 2, 0),
        (4, 11, 4, 6, 0),
        (5, 34, 8, 21, 0),
        (6, 156, 21, 112, 2),
        (7, 1044, 57, 853, 8),
        (8, 12346, 220, 11117, 70),
        (9, 274668, 1056, 261080, 490),
        (10, 12005168, 7301, 11716571, 4577),
    ],
    "III": [
        (3, 4, 0, 2, 0),
        (4, 11, 1, 6, 0),
        (5, 34, 0, 21, 0),
        (6, 156, 1, 112, 0),
        (7, 1044, 0, 853, 0),
        (8, 12346, 1, 11117, 0),
        (9, 274668, 0, 261080, 0),
        (10, 12005168, 1, 11716571, 0),
    ],
}

TABLE_PREDICATE = {"I": Predicate.L1, "II": Predicate.L2, "III": Predicate.LINEAR}
TABLE_COLUMNS = ("n", "total", "filtered", "connected_total", "connected_filtered")


@dataclass
class TableReport:
    table: str
    rows: list[tuple[int, int, int, int, int]]
    expected: list[tuple[int, int, int, int, int]]
    mismatch: tuple[int, str, int, int] | None = None

    @property
    def passed(self) -> bool:
        return self.mismatch is None

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "table": self.table,
            "columns": list(TABLE_COLUMNS),
            "rows": [list(r) for r in self.rows],
            "pass": self.passed,
            "mismatch": None if self.mismatch is None else dict(zip(("n", "column", "got", "expected"), self.mismatch)),
        }

    def to_csv(self) -> str:
        lines = [",".join(TABLE_COLUMNS)]
        lines += [",".join(map(str, r)) for r in self.rows]
        return "\n".join(lines) + "\n"


def table_row(table_id: str, n: int, jobs: int = 1) -> tuple[int, int, int, int, int]:
    pred = TABLE_PREDICATE[table_id]
    st = census(n, jobs)
    a = st.row(CensusFilter(pred, False))
    c = st.row(CensusFilter(pred, True))
    return (n, a.total, a.filtered, c.total, c.filtered)


def verify_table(table_id: str, n_max: int, jobs: int = 1) -> TableReport:
    """Recompute a census table up to ``n_max`` and diff against the reference."""
    if table_id not in GOLDEN:
        raise ValueError(f"unknown table {table_id!r}; expected one of I, II, III")
    expected = [r for r in GOLDEN[table_id] if r[0] <= n_max]
    rows = []
    mismatch = None
    for exp in expected:
        got = table_row(table_id, exp[0], jobs)
        rows.append(got)
        if mismatch is None:
            for col, g, e in zip(TABLE_COLUMNS[1:], got[1:], exp[1:]):
                if g != e:
                    mismatch = (exp[0], col, g, e)
                    break
    return TableReport(table_id, rows, expected, mismatch)
