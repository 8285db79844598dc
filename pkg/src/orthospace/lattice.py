"""The lattice C(X, ⊥) of orthoclosed sets and its lattice-theoretic predicates."""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .core import (
    OrthoSpace,
    VertexSet,
    _bron_kerbosch,
    _complement,
    closure,
    members,
)
from .properties import Witness, WitnessKind

DEFAULT_CAP = 1 << 20
LEQ_MATRIX_LIMIT = 4096


class LatticeTooLarge(RuntimeError):
    def __init__(self, reached: int, cap: int):
        super().__init__(f"lattice too large: reached {reached} elements (cap {cap})")
        self.reached = reached
        self.cap = cap


class NotAnOrtholattice(ValueError):
    pass


def lattice_cap() -> int:
    env = os.environ.get("ORTHOSPACE_LATTICE_CAP")
    return int(env) if env else DEFAULT_CAP


def _sort_key(mask: int) -> tuple[int, int]:
    return (mask.bit_count(), mask)


@dataclass(frozen=True)
class ClosureLattice:
    """A finite family of subsets closed under intersection, ordered by inclusion.

    ``elements`` are sorted by (cardinality, bits), which fixes the index of
    every element.  ``ortho[i]`` is the index of the orthocomplement of
    element ``i`` (None for lattices without one).  When ``space`` is given
    joins are computed as closures of unions; otherwise as the least element
    containing the union.
    """

    elements: tuple[VertexSet, ...]
    ortho: tuple[int, ...] | None = None
    space: OrthoSpace | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if list(self.elements) != sorted(self.elements, key=_sort_key):
            raise ValueError("elements must be sorted by (cardinality, bits)")

    @cached_property
    def index(self) -> dict[int, int]:
        return {e: i for i, e in enumerate(self.elements)}

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.elements) - 1

    def leq(self, i: int, j: int) -> bool:
        if len(self.elements) <= LEQ_MATRIX_LIMIT:
            return bool(self.leq_matrix[i, j])
        a = self.elements[i]
        return a & ~self.elements[j] == 0

    @cached_property
    def leq_matrix(self) -> np.ndarray:
        el = self.elements
        m = np.zeros((len(el), len(el)), dtype=bool)
        for i, a in enumerate(el):
            for j in range(i, len(el)):
                if a & ~el[j] == 0:
                    m[i, j] = True
        return m

    def meet(self, i: int, j: int) -> int:
        return self.index[self.elements[i] & self.elements[j]]

    def join_set(self, mask: int) -> int:
        """Index of the least element containing ``mask``."""
        if self.space is not None:
            return self.index[closure(self.space, mask)]
        for k, e in enumerate(self.elements):
            if mask & ~e == 0:
                return k
        raise ValueError("family has no element containing the union")

    def join(self, i: int, j: int) -> int:
        return self.join_set(self.elements[i] | self.elements[j])

    @cached_property
    def meet_table(self) -> np.ndarray:
        el, idx = self.elements, self.index
        size = len(el)
        t = np.empty((size, size), dtype=np.int64)
        for i, a in enumerate(el):
            for j in range(i, size):
                t[i, j] = t[j, i] = idx[a & el[j]]
        return t

    @cached_property
    def join_table(self) -> np.ndarray:
        el = self.elements
        size = len(el)
        t = np.empty((size, size), dtype=np.int64)
        for i, a in enumerate(el):
            for j in range(i, size):
                t[i, j] = t[j, i] = self.join_set(a | el[j])
        return t

    @cached_property
    def atoms(self) -> list[int]:
        """Elements covering the bottom."""
        return [j for j, _ in enumerate(self.elements) if j and self.lower_covers[j] == [0]]

    @cached_property
    def lower_covers(self) -> list[list[int]]:
        el = self.elements
        out: list[list[int]] = []
        for j, b in enumerate(el):
            below = [i for i in range(j) if el[i] & ~b == 0 and el[i] != b]
            covers = []
            for i in reversed(below):
                a = el[i]
                if not any(a & ~el[k] == 0 for k in covers):
                    covers.append(i)
            out.append(sorted(covers))
        return out

    def covers(self) -> list[tuple[int, int]]:
        """Pairs (i, j) with element i covered by element j."""
        return [(i, j) for j, low in enumerate(self.lower_covers) for i in low]

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "elements": [members(e) for e in self.elements],
            "covers": [list(c) for c in self.covers()],
            "ortho": list(self.ortho) if self.ortho is not None else None,
        }

    def to_dot(self, name: str = "lattice") -> str:
        """Hasse diagram in Graphviz DOT; atoms filled, ortho pairs dashed."""
        atoms = set(self.atoms)
        lines = [f"graph {name} {{", "  rankdir=BT;", "  node [shape=box, fontname=monospace];"]
        for i, e in enumerate(self.elements):
            label = "{" + ",".join(map(str, members(e))) + "}"
            style = ', style=filled, fillcolor="lightblue"' if i in atoms else ""
            lines.append(f'  n{i} [label="{label}"{style}];')
        for i, j in self.covers():
            lines.append(f"  n{i} -- n{j};")
        if self.ortho is not None:
            for i, j in enumerate(self.ortho):
                if i < j:
                    lines.append(f'  n{i} -- n{j} [style=dashed, color=gray, constraint=false, label="⊥"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def compute_lattice(space: OrthoSpace, cap: int | None = None) -> ClosureLattice:
    """C(X, ⊥) as the intersection closure of X and all {a}⊥."""
    if cap is None:
        cap = lattice_cap()
    full = space.full
    family = {full}
    for row in space.adj:
        new = {e & row for e in family}
        family |= new
        if len(family) > cap:
            raise LatticeTooLarge(len(family), cap)
    adj = space.adj
    # every A⊥ is an intersection of point complements, so this is already
    # closed under ⊥; the loop guards that claim
    for e in list(family):
        c = _complement(adj, full, e)
        if c not in family:
            family.add(c)
            if len(family) > cap:
                raise LatticeTooLarge(len(family), cap)
    elements = tuple(sorted(family, key=_sort_key))
    idx = {e: i for i, e in enumerate(elements)}
    ortho = tuple(idx[_complement(adj, full, e)] for e in elements)
    return ClosureLattice(elements, ortho, space)


def brute_force_closed_sets(space: OrthoSpace) -> set[int]:
    """{A⊥⊥ : A ⊆ X} by scanning all 2^n subsets."""
    return {closure(space, a) for a in range(1 << space.n)}


# --- predicates --------------------------------------------------------------

def ortholattice_violation(lat: ClosureLattice) -> tuple[str, tuple[int, ...]] | None:
    if lat.ortho is None:
        return ("no orthocomplement", ())
    o = lat.ortho
    size = len(lat)
    for i in range(size):
        if o[o[i]] != i:
            return ("not involutive", (i,))
    leq = lat.leq
    for i in range(size):
        for j in range(size):
            if leq(i, j) and not leq(o[j], o[i]):
                return ("not order-reversing", (i, j))
    for i in range(size):
        if lat.meet(i, o[i]) != lat.bottom:
            return ("A ∧ A⊥ ≠ 0", (i,))
        if lat.join(i, o[i]) != lat.top:
            return ("A ∨ A⊥ ≠ 1", (i,))
    return None


def is_ortholattice(lat: ClosureLattice) -> bool:
    return ortholattice_violation(lat) is None


def orthomodular_violation(lat: ClosureLattice) -> tuple[int, int] | None:
    """First (A, B) with A ≤ B and B ≠ A ∨ (A⊥ ∧ B)."""
    if not is_ortholattice(lat):
        raise NotAnOrtholattice("orthomodularity requires an ortholattice")
    M, J, leq = lat.meet_table, lat.join_table, lat.leq_matrix
    o = np.asarray(lat.ortho)
    for a in range(len(lat)):
        bs = np.nonzero(leq[a])[0]
        rhs = J[a, M[o[a], bs]]
        bad = np.nonzero(rhs != bs)[0]
        if bad.size:
            return a, int(bs[bad[0]])
    return None


def is_orthomodular(lat: ClosureLattice) -> bool:
    return orthomodular_violation(lat) is None


def modular_violation(lat: ClosureLattice) -> tuple[int, int, int] | None:
    """First (A, B, C) with A ≤ C and A ∨ (B ∧ C) ≠ (A ∨ B) ∧ C."""
    M, J, leq = lat.meet_table, lat.join_table, lat.leq_matrix
    for a in range(len(lat)):
        cs = np.nonzero(leq[a])[0]
        lhs = J[a][M[:, cs]]
        rhs = M[J[a][:, None], cs[None, :]]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            b, c = bad[0]
            return a, int(b), int(cs[c])
    return None


def is_modular(lat: ClosureLattice) -> bool:
    return modular_violation(lat) is None


def is_atomistic(lat: ClosureLattice) -> bool:
    """Every element is the join of the atoms below it."""
    atoms = lat.atoms
    el = lat.elements
    for j, b in enumerate(el):
        acc = 0
        for a in atoms:
            if el[a] & ~b == 0:
                acc |= el[a]
        if lat.join_set(acc) != j:
            return False
    return True


def lattice_length(lat: ClosureLattice) -> int:
    """Number of covering steps in a longest chain from bottom to top."""
    longest = [0] * len(lat)
    for j, low in enumerate(lat.lower_covers):
        if low:
            longest[j] = max(longest[i] for i in low) + 1
    return longest[lat.top]


def match_mo(lat: ClosureLattice) -> int | None:
    """k if the lattice is MO(k) (2k atoms, length 2, fixed-point-free ortho), else None."""
    size = len(lat)
    if size < 4 or size % 2:
        return None
    k = (size - 2) // 2
    atoms = lat.atoms
    if len(atoms) != 2 * k or lattice_length(lat) != 2:
        return None
    if lat.ortho is None:
        return None
    atom_set = set(atoms)
    for a in atoms:
        b = lat.ortho[a]
        if b == a or b not in atom_set:
            return None
    return k


# --- Dacey -------------------------------------------------------------------

def _maximal_cliques_within(space: OrthoSpace, mask: int) -> list[int]:
    out: list[int] = []
    _bron_kerbosch(space.adj, 0, mask, 0, out)
    out.sort(key=members)
    return out


def dacey_pair_fails(space: OrthoSpace, a: int, d: int) -> bool:
    if closure(space, a) != a or d & ~a:
        return False
    if d not in _maximal_cliques_within(space, a):
        return False
    return closure(space, d) != a


def dacey_violation(space: OrthoSpace, lat: ClosureLattice | None = None) -> Witness | None:
    """First orthoclosed A with a maximal orthogonal D ⊆ A such that D⊥⊥ ≠ A."""
    if lat is None:
        lat = compute_lattice(space)
    for a in lat.elements:
        if not a:
            continue
        for d in _maximal_cliques_within(space, a):
            if closure(space, d) != a:
                return Witness(WitnessKind.DACEY_FAIL, (), (a, d))
    return None


def is_dacey(space: OrthoSpace, lat: ClosureLattice | None = None) -> bool:
    return dacey_violation(space, lat) is None


def summary(lat: ClosureLattice) -> dict:
    ortho = is_ortholattice(lat)
    return {
        "elements": len(lat),
        "ortholattice": ortho,
        "orthomodular": is_orthomodular(lat) if ortho else False,
        "modular": is_modular(lat),
        "atomistic": is_atomistic(lat),
        "length": lattice_length(lat),
        "mo_index": match_mo(lat),
    }
