"""Linearity conditions, irredundancy, structural classifiers and reports."""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Sequence

from .core import (
    INFINITE,
    MAX_VERTICES,
    OrthoSpace,
    SpaceError,
    VertexSet,
    apex_vertices,
    diameter,
    full_set,
    is_connected,
    is_irreducible,
    iter_bits,
    maximal_orthogonal_sets,
    members,
    new_space,
    rank,
)


class WitnessKind(str, enum.Enum):
    L1_FAIL = "L1_FAIL"
    L2_FAIL = "L2_FAIL"
    IRREDUNDANCY_FAIL = "IRREDUNDANCY_FAIL"
    STRONG_IRREDUNDANCY_FAIL = "STRONG_IRREDUNDANCY_FAIL"
    DACEY_FAIL = "DACEY_FAIL"
    DIFFERENCE_SINGLETON = "DIFFERENCE_SINGLETON"


@dataclass(frozen=True)
class Witness:
    """Counterexample to one of the predicates.

    ``vertices`` holds the offending points (e.g. the pair (e, f)); ``sets``
    holds vertex sets involved (e.g. {e, f}⊥, or (A, D) for Dacey).
    """

    kind: WitnessKind
    vertices: tuple[int, ...] = ()
    sets: tuple[VertexSet, ...] = ()

    def replay(self, space: OrthoSpace) -> bool:
        """True iff the witness still exhibits a violation in ``space``."""
        k = self.kind
        adj = space.adj
        if k in (WitnessKind.L1_FAIL, WitnessKind.L2_FAIL):
            e, f = self.vertices
            want_orth = k is WitnessKind.L1_FAIL
            if space.orthogonal(e, f) == want_orth or e == f:
                return False
            target = adj[e] & adj[f]
            return not any(
                g not in (e, f) and space.orthogonal(e, g) == want_orth and adj[e] & adj[g] == target
                for g in range(space.n)
            )
        if k is WitnessKind.IRREDUNDANCY_FAIL:
            a, b = self.vertices
            return a != b and adj[a] == adj[b]
        if k is WitnessKind.STRONG_IRREDUNDANCY_FAIL:
            a, b = self.vertices
            return a != b and adj[a] & ~adj[b] == 0
        if k is WitnessKind.DACEY_FAIL:
            from .lattice import dacey_pair_fails

            a, d = self.sets
            return dacey_pair_fails(space, a, d)
        if k is WitnessKind.DIFFERENCE_SINGLETON:
            d1, d2 = self.sets
            found = set(maximal_orthogonal_sets(space))
            return d1 in found and d2 in found and (d1 & ~d2).bit_count() == 1
        raise ValueError(f"unknown witness kind {k}")

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "vertices": list(self.vertices), "sets": [members(s) for s in self.sets]}


# --- (L1) / (L2) -------------------------------------------------------------
#
# For a fixed e, let orth(e) = { {e,g}⊥ : g ⊥ e } and non(e) = { {e,g}⊥ : g ̸⊥ e, g ≠ e }.
# (L1) holds at e iff non(e) ⊆ orth(e); (L2) holds at e iff orth(e) ⊆ non(e).

def linearity_flags(n: int, adj: Sequence[int]) -> tuple[bool, bool]:
    """(L1, L2) verdicts for a raw adjacency tuple; the census hot path."""
    l1 = l2 = True
    for e in range(n):
        ae = adj[e]
        orth = set()
        non = set()
        for g in range(n):
            if g == e:
                continue
            if ae >> g & 1:
                orth.add(ae & adj[g])
            else:
                non.add(ae & adj[g])
        if l1 and not non <= orth:
            l1 = False
        if l2 and not orth <= non:
            l2 = False
        if not (l1 or l2):
            break
    return l1, l2


def _find_violation(space: OrthoSpace, orthogonal_pairs: bool) -> Witness | None:
    adj, n = space.adj, space.n
    kind = WitnessKind.L2_FAIL if orthogonal_pairs else WitnessKind.L1_FAIL
    for e in range(n):
        ae = adj[e]
        pool = set()
        for g in range(n):
            if g != e and bool(ae >> g & 1) != orthogonal_pairs:
                pool.add(ae & adj[g])
        for f in range(n):
            if f == e or bool(ae >> f & 1) != orthogonal_pairs:
                continue
            target = ae & adj[f]
            if target not in pool:
                return Witness(kind, (e, f), (target,))
    return None


def l1_violation(space: OrthoSpace) -> Witness | None:
    """First (e, f), e ̸⊥ f, with no g ⊥ e such that {e,f}⊥ = {e,g}⊥."""
    return _find_violation(space, orthogonal_pairs=False)


def l2_violation(space: OrthoSpace) -> Witness | None:
    """First (e, f), e ⊥ f, with no g ̸⊥ e such that {e,f}⊥ = {e,g}⊥."""
    return _find_violation(space, orthogonal_pairs=True)


def check_l1(space: OrthoSpace) -> bool:
    return l1_violation(space) is None


def check_l2(space: OrthoSpace) -> bool:
    return l2_violation(space) is None


def is_linear(space: OrthoSpace) -> bool:
    l1, l2 = linearity_flags(space.n, space.adj)
    linear = l1 and l2
    # a non-trivial linear space has at least three points
    assert not (linear and space.n == 2)
    return linear


# --- irredundancy ------------------------------------------------------------

def irredundancy_violation(space: OrthoSpace) -> Witness | None:
    seen: dict[int, int] = {}
    for a, row in enumerate(space.adj):
        if row in seen:
            return Witness(WitnessKind.IRREDUNDANCY_FAIL, (seen[row], a), (row,))
        seen[row] = a
    return None


def strong_irredundancy_violation(space: OrthoSpace) -> Witness | None:
    """First (a, b), a ≠ b, with {a}⊥ ⊆ {b}⊥."""
    adj = space.adj
    for a in range(space.n):
        for b in range(space.n):
            if a != b and adj[a] & ~adj[b] == 0:
                return Witness(WitnessKind.STRONG_IRREDUNDANCY_FAIL, (a, b), (adj[a], adj[b]))
    return None


def is_irredundant(space: OrthoSpace) -> bool:
    return irredundancy_violation(space) is None


def is_strongly_irredundant(space: OrthoSpace) -> bool:
    return strong_irredundancy_violation(space) is None


def difference_singleton_violation(space: OrthoSpace) -> Witness | None:
    """Two maximal orthogonal sets whose difference is a single point."""
    cliques = maximal_orthogonal_sets(space)
    for d1 in cliques:
        for d2 in cliques:
            if d1 != d2 and (d1 & ~d2).bit_count() == 1:
                return Witness(WitnessKind.DIFFERENCE_SINGLETON, (), (d1, d2))
    return None


# --- rank-2 and rank-3 structure ---------------------------------------------

@dataclass(frozen=True)
class MatchingStructure:
    """The space 2(A, B, φ): a perfect matching pairing each a with φ(a)."""

    a_side: VertexSet
    b_side: VertexSet
    phi: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return len(self.phi)

    def to_space(self, n: int | None = None) -> OrthoSpace:
        if n is None:
            n = (self.a_side | self.b_side).bit_length()
        return new_space(n, self.phi)

    def to_json(self) -> dict:
        return {"A": members(self.a_side), "B": members(self.b_side), "phi": [list(p) for p in self.phi]}


@dataclass(frozen=True)
class WindmillStructure:
    """The space 3(A, B, φ): a hub orthogonal to everything plus a matching."""

    hub: int
    matching: MatchingStructure

    def to_space(self, n: int) -> OrthoSpace:
        others = [(self.hub, v) for v in range(n) if v != self.hub]
        return new_space(n, list(self.matching.phi) + others)

    def to_json(self) -> dict:
        return {"hub": self.hub, **self.matching.to_json()}


def _matching_of(adj: Sequence[int], verts: VertexSet) -> MatchingStructure | None:
    a_side = b_side = 0
    phi = []
    for v in iter_bits(verts):
        nb = adj[v] & verts
        if nb.bit_count() != 1:
            return None
        w = nb.bit_length() - 1
        if v < w:
            a_side |= 1 << v
            b_side |= 1 << w
            phi.append((v, w))
    return MatchingStructure(a_side, b_side, tuple(phi))


def classify_rank2(space: OrthoSpace) -> MatchingStructure | None:
    """Decompose as 2(A, B, φ) if every point has exactly one orthogonal partner."""
    return _matching_of(space.adj, space.full)


def classify_rank3(space: OrthoSpace) -> WindmillStructure | None:
    """Decompose as 3(A, B, φ): lowest-index apex whose removal leaves a perfect matching."""
    if space.n < 3:
        return None
    full = space.full
    for hub in iter_bits(apex_vertices(space)):
        m = _matching_of(space.adj, full & ~(1 << hub))
        if m is not None:
            return WindmillStructure(hub, m)
    return None


def extend_with_apexes(space: OrthoSpace, l: int) -> OrthoSpace:
    """Add ``l`` new points orthogonal to every other point (old and new)."""
    if l < 1:
        raise SpaceError("l must be a positive integer")
    n = space.n + l
    if n > MAX_VERTICES:
        raise SpaceError(f"capacity exceeded: n={n} > {MAX_VERTICES}")
    full = full_set(n)
    new_bits = full & ~space.full
    adj = [row | new_bits for row in space.adj]
    adj += [full & ~(1 << v) for v in range(space.n, n)]
    return OrthoSpace(n, tuple(adj))


def strip_common_core(space: OrthoSpace) -> OrthoSpace:
    """Remove the intersection of all maximal orthogonal sets and reindex."""
    core = apex_vertices(space)
    if core == space.full:
        raise SpaceError("would produce empty space: every point is an apex")
    return space.induced(space.full & ~core)[0]


# --- report ------------------------------------------------------------------

class Classification(str, enum.Enum):
    MATCHING_2ABPHI = "MATCHING_2ABPHI"
    WINDMILL_3ABPHI = "WINDMILL_3ABPHI"
    OTHER = "OTHER"


def classify(space: OrthoSpace):
    """(Classification, structure-or-None); matching takes precedence."""
    m = classify_rank2(space)
    if m is not None:
        return Classification.MATCHING_2ABPHI, m
    w = classify_rank3(space)
    if w is not None:
        return Classification.WINDMILL_3ABPHI, w
    return Classification.OTHER, None


UNKNOWN = "unknown"


@dataclass
class PropertyReport:
    n: int
    rank: int
    connected: bool
    diameter: object
    l1: bool
    l2: bool
    linear: bool
    irredundant: bool
    strongly_irredundant: bool
    irreducible: bool
    dacey: object
    mo_index: object
    classification: Classification
    witnesses: list[Witness] = field(default_factory=list)

    def to_json(self) -> dict:
        def enc(v):
            if v is INFINITE:
                return "INFINITE"
            return v

        return {
            "schema": 1,
            "n": self.n,
            "rank": self.rank,
            "connected": self.connected,
            "diameter": enc(self.diameter),
            "l1": self.l1,
            "l2": self.l2,
            "linear": self.linear,
            "irredundant": self.irredundant,
            "strongly_irredundant": self.strongly_irredundant,
            "irreducible": self.irreducible,
            "dacey": self.dacey,
            "mo_index": self.mo_index,
            "classification": self.classification.value,
            "witnesses": [w.to_json() for w in self.witnesses],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def full_report(space: OrthoSpace, lattice_cap: int | None = None) -> PropertyReport:
    """Every verdict for ``space``; lattice overflow yields ``"unknown"`` fields."""
    from .lattice import LatticeTooLarge, compute_lattice, dacey_violation, match_mo

    witnesses = []
    w1 = l1_violation(space)
    w2 = l2_violation(space)
    wi = irredundancy_violation(space)
    ws = strong_irredundancy_violation(space)
    for w in (w1, w2, wi, ws):
        if w is not None:
            witnesses.append(w)
    try:
        lat = compute_lattice(space, cap=lattice_cap)
        wd = dacey_violation(space, lat)
        dacey = wd is None
        if wd is not None:
            witnesses.append(wd)
        mo = match_mo(lat)
    except LatticeTooLarge:
        dacey = mo = UNKNOWN
    if w1 is None:
        wds = difference_singleton_violation(space)
        if wds is not None:
            witnesses.append(wds)
    kind, _ = classify(space)
    return PropertyReport(
        n=space.n,
        rank=rank(space),
        connected=is_connected(space),
        diameter=diameter(space) if space.n > 1 else None,
        l1=w1 is None,
        l2=w2 is None,
        linear=w1 is None and w2 is None,
        irredundant=wi is None,
        strongly_irredundant=ws is None,
        irreducible=is_irreducible(space),
        dacey=dacey,
        mo_index=mo,
        classification=kind,
        witnesses=witnesses,
    )
