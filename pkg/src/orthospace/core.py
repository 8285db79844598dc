"""Finite orthogonality spaces as bitset graphs.

A space on ``n`` points is stored as a tuple of ``n`` integers; bit ``j`` of
``adj[i]`` is set iff ``i`` and ``j`` are orthogonal.  Subsets of points
(``VertexSet``) are plain Python ints used as bit vectors.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 64

VertexSet = int


class SpaceError(ValueError):
    """Raised when input does not describe a valid orthogonality space."""


@functools.total_ordering
class _Infinite:
    """Distance between points in different components.

    Compares greater than every integer; arithmetic is deliberately
    unsupported.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITE"

    def __eq__(self, other) -> bool:
        return other is self

    def __lt__(self, other) -> bool:
        if other is self or isinstance(other, int):
            return False
        return NotImplemented

    def __hash__(self) -> int:
        return hash("orthospace.INFINITE")

    def __reduce__(self):
        return (_Infinite, ())


INFINITE = _Infinite()


def vset(items: Iterable[int]) -> VertexSet:
    """Build a vertex set from an iterable of indices."""
    mask = 0
    for i in items:
        mask |= 1 << i
    return mask


def members(mask: VertexSet) -> list[int]:
    """Indices in ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def iter_bits(mask: VertexSet) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def full_set(n: int) -> VertexSet:
    return (1 << n) - 1


@dataclass(frozen=True)
class OrthoSpace:
    """An orthogonality space (X, ⊥) with X = {0, ..., n-1}.

    ``adj[i]`` is the bit vector of points orthogonal to ``i``.  Instances are
    validated on construction and never mutated afterwards.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.n
        if n < 1:
            raise SpaceError("empty carrier: an orthogonality space needs n >= 1")
        if n > MAX_VERTICES:
            raise SpaceError(f"capacity exceeded: n={n} > {MAX_VERTICES}")
        if len(self.adj) != n:
            raise SpaceError(f"expected {n} adjacency rows, got {len(self.adj)}")
        full = full_set(n)
        for i, row in enumerate(self.adj):
            if row & ~full:
                raise SpaceError(f"row {i} has bits outside range(0, {n})")
            if row >> i & 1:
                raise SpaceError(f"irreflexivity violated at vertex {i}")
            for j in iter_bits(row):
                if not self.adj[j] >> i & 1:
                    raise SpaceError(f"symmetry violated: {i}~{j} but not {j}~{i}")

    @property
    def full(self) -> VertexSet:
        return full_set(self.n)

    def orthogonal(self, a: int, b: int) -> bool:
        return bool(self.adj[a] >> b & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in iter_bits(self.adj[i]) if i < j]

    def degree(self, a: int) -> int:
        return self.adj[a].bit_count()

    def relabel(self, perm: Sequence[int]) -> OrthoSpace:
        """Image of the space under ``i -> perm[i]``."""
        new = [0] * self.n
        for i in range(self.n):
            row = 0
            for j in iter_bits(self.adj[i]):
                row |= 1 << perm[j]
            new[perm[i]] = row
        return OrthoSpace(self.n, tuple(new))

    def induced(self, mask: VertexSet) -> tuple[OrthoSpace, list[int]]:
        """Induced subspace on ``mask``, reindexed; also returns the old indices."""
        old = members(mask)
        if not old:
            raise SpaceError("empty carrier: induced subspace on the empty set")
        new_index = {v: k for k, v in enumerate(old)}
        rows = []
        for v in old:
            row = 0
            for w in iter_bits(self.adj[v] & mask):
                row |= 1 << new_index[w]
            rows.append(row)
        return OrthoSpace(len(old), tuple(rows)), old

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges()]}


def new_space(n: int, edges: Iterable[Sequence[int]]) -> OrthoSpace:
    """Space on ``n`` points with the symmetric closure of ``edges``."""
    if n < 1:
        raise SpaceError("empty carrier: an orthogonality space needs n >= 1")
    if n > MAX_VERTICES:
        raise SpaceError(f"capacity exceeded: n={n} > {MAX_VERTICES}")
    adj = [0] * n
    for pair in edges:
        i, j = pair
        if not (0 <= i < n and 0 <= j < n):
            raise SpaceError(f"vertex out of range in edge ({i}, {j}) for n={n}")
        if i == j:
            raise SpaceError(f"irreflexivity violated: self-loop at {i}")
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    return OrthoSpace(n, tuple(adj))


def from_maximal_cliques(n: int, cliques: Iterable[Iterable[int] | VertexSet]) -> tuple[OrthoSpace, bool]:
    """Space whose orthogonality is generated by the given cliques.

    Returns ``(space, exact)`` where ``exact`` tells whether every listed set
    is indeed a maximal orthogonal subset of the result (the input may be a
    mere generating family).
    """
    masks = []
    for c in cliques:
        mask = c if isinstance(c, int) else vset(c)
        if mask >> n:
            raise SpaceError(f"vertex out of range in clique {members(mask)} for n={n}")
        masks.append(mask)
    if not masks:
        raise SpaceError("at least one clique is required")
    edges = []
    for mask in masks:
        pts = members(mask)
        edges.extend((a, b) for k, a in enumerate(pts) for b in pts[k + 1:])
    space = new_space(n, edges)
    found = set(maximal_orthogonal_sets(space))
    return space, all(m in found for m in masks)


def from_json(data: dict) -> OrthoSpace:
    """Accepts ``{"n", "edges"}`` or ``{"n", "cliques"}``."""
    try:
        n = int(data["n"])
    except (KeyError, TypeError, ValueError) as exc:
        raise SpaceError("JSON input needs an integer field 'n'") from exc
    if "edges" in data:
        return new_space(n, [tuple(e) for e in data["edges"]])
    if "cliques" in data:
        return from_maximal_cliques(n, data["cliques"])[0]
    raise SpaceError("JSON input needs 'edges' or 'cliques'")


# --- complements and closure -------------------------------------------------

def _complement(adj: Sequence[int], full: int, a: VertexSet) -> VertexSet:
    out = full
    while a:
        low = a & -a
        out &= adj[low.bit_length() - 1]
        a ^= low
    return out


def ortho_complement(space: OrthoSpace, a: VertexSet) -> VertexSet:
    """A⊥: points orthogonal to every point of ``a`` (all of X when a is empty)."""
    return _complement(space.adj, space.full, a)


def closure(space: OrthoSpace, a: VertexSet) -> VertexSet:
    """A⊥⊥."""
    adj, full = space.adj, space.full
    return _complement(adj, full, _complement(adj, full, a))


def is_orthoclosed(space: OrthoSpace, a: VertexSet) -> bool:
    return closure(space, a) == a


# --- cliques -----------------------------------------------------------------

def _bron_kerbosch(adj: Sequence[int], r: int, p: int, x: int, out: list[int]) -> None:
    if not p:
        if not x:
            out.append(r)
        return
    # pivot maximising |P ∩ N(u)|
    pivot_nbrs = max((adj[u] for u in iter_bits(p | x)), key=lambda m: (m & p).bit_count())
    for v in iter_bits(p & ~pivot_nbrs):
        bit = 1 << v
        _bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], out)
        p &= ~bit
        x |= bit


def maximal_orthogonal_sets(space: OrthoSpace) -> list[VertexSet]:
    """All maximal cliques, sorted lexicographically by their member lists.

    An isolated point forms the maximal clique {v}.
    """
    out: list[int] = []
    _bron_kerbosch(space.adj, 0, space.full, 0, out)
    out.sort(key=members)
    return out


def rank(space: OrthoSpace) -> int:
    """Size of a largest set of mutually orthogonal points."""
    return max(m.bit_count() for m in maximal_orthogonal_sets(space))


# --- metric ------------------------------------------------------------------

def _bfs_layers(adj: Sequence[int], start: int):
    seen = frontier = 1 << start
    depth = 0
    while frontier:
        yield depth, frontier
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= adj[v]
        frontier = nxt & ~seen
        seen |= frontier
        depth += 1


def distance(space: OrthoSpace, a: int, b: int):
    """Length of a shortest a-b path, or ``INFINITE``."""
    for v in (a, b):
        if not 0 <= v < space.n:
            raise SpaceError(f"vertex {v} out of range for n={space.n}")
    target = 1 << b
    for depth, layer in _bfs_layers(space.adj, a):
        if layer & target:
            return depth
    return INFINITE


def _component(adj: Sequence[int], start: int) -> int:
    seen = frontier = 1 << start
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= adj[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def is_connected(space: OrthoSpace) -> bool:
    return _component(space.adj, 0) == space.full


def connected_components(space: OrthoSpace) -> list[VertexSet]:
    rest, out = space.full, []
    while rest:
        comp = _component(space.adj, (rest & -rest).bit_length() - 1)
        out.append(comp)
        rest &= ~comp
    return out


def eccentricity(space: OrthoSpace, a: int):
    depth = 0
    seen = 0
    for depth, layer in _bfs_layers(space.adj, a):
        seen |= layer
    return depth if seen == space.full else INFINITE


def diameter(space: OrthoSpace):
    """Largest distance between two distinct points; ``INFINITE`` if disconnected."""
    if space.n < 2:
        raise SpaceError("diameter undefined for trivial space (n = 1)")
    if not is_connected(space):
        return INFINITE
    return max(eccentricity(space, a) for a in range(space.n))


# --- apexes and reducibility -------------------------------------------------

def apex_vertices(space: OrthoSpace) -> VertexSet:
    """Points ``a`` with {a}⊥ = X \\ {a}."""
    full = space.full
    out = 0
    for a, row in enumerate(space.adj):
        if row == full ^ (1 << a):
            out |= 1 << a
    return out


def reducing_partition(space: OrthoSpace) -> tuple[VertexSet, VertexSet] | None:
    """A bipartition (A, B) with every a ⊥ b, or None if the space is irreducible.

    Such a split exists iff the complement graph is disconnected; A is the
    complement-component containing point 0.
    """
    full = space.full
    co_adj = [full & ~row & ~(1 << i) for i, row in enumerate(space.adj)]
    a = _component(co_adj, 0)
    if a == full:
        return None
    return a, full & ~a


def is_irreducible(space: OrthoSpace) -> bool:
    return reducing_partition(space) is None
