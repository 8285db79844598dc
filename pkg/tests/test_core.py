from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from orthospace.core import (
    INFINITE,
    OrthoSpace,
    SpaceError,
    apex_vertices,
    closure,
    connected_components,
    diameter,
    distance,
    from_json,
    from_maximal_cliques,
    is_connected,
    is_irreducible,
    maximal_orthogonal_sets,
    members,
    new_space,
    ortho_complement,
    rank,
    reducing_partition,
    vset,
)

from conftest import (
    L1_NOT_L2,
    L2_EIGHT,
    L2_NOT_L1,
    WINDMILL_5,
    WINDMILL_7,
    complete,
    matching,
    nbrs,
    oracle_cliques,
    oracle_perp,
    to_set,
)


@st.composite
def spaces(draw, max_n: int = 8):
    n = draw(st.integers(1, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return new_space(n, [p for p, keep in zip(pairs, chosen) if keep])


# --- construction --------------------------------------------------------------

def test_single_vertex():
    s = new_space(1, [])
    assert s.adj == (0,)


def test_l1_space_has_eleven_edges():
    assert len(L1_NOT_L2.edges()) == 11


@pytest.mark.parametrize(
    "n, edges, message",
    [
        (0, [], "empty carrier"),
        (3, [(0, 0)], "irreflexivity violated"),
        (3, [(0, 3)], "out of range"),
    ],
)
def test_new_space_rejects(n, edges, message):
    with pytest.raises(SpaceError, match=message):
        new_space(n, edges)


def test_duplicate_pairs_collapse():
    assert new_space(3, [(0, 1), (1, 0), (0, 1)]) == new_space(3, [(0, 1)])


def test_direct_construction_validates_symmetry():
    with pytest.raises(SpaceError, match="symmetry"):
        OrthoSpace(2, (0b10, 0))


def test_from_maximal_cliques_triangle():
    s, exact = from_maximal_cliques(3, [(0, 1, 2)])
    assert exact and s == complete(3)


def test_from_maximal_cliques_flags_generating_family():
    # {0,1},{1,2},{0,2} generate a triangle but are not its maximal cliques
    s, exact = from_maximal_cliques(3, [(0, 1), (1, 2), (0, 2)])
    assert s == complete(3) and not exact


def test_reference_clique_families_are_exact():
    for n, fam in [
        (7, [(0, 4), (0, 6), (5, 1), (5, 2), (5, 3), (6, 1), (6, 2)]),
        (8, [(0, 4), (0, 7), (1, 5, 7), (1, 6), (2, 5), (3, 6)]),
    ]:
        assert from_maximal_cliques(n, fam)[1]


def test_from_maximal_cliques_out_of_range():
    with pytest.raises(SpaceError, match="out of range"):
        from_maximal_cliques(3, [(0, 5)])


def test_from_json_shapes():
    assert from_json({"n": 3, "edges": [[0, 1]]}) == new_space(3, [(0, 1)])
    assert from_json({"n": 3, "cliques": [[0, 1, 2]]}) == complete(3)


def test_relabel_and_induced():
    s = L2_NOT_L1
    perm = [6, 5, 4, 3, 2, 1, 0]
    t = s.relabel(perm)
    for a, b in s.edges():
        assert t.orthogonal(perm[a], perm[b])
    sub, old = s.induced(vset([0, 4, 6]))
    assert old == [0, 4, 6] and sorted(sub.edges()) == [(0, 1), (0, 2)]


# --- complements and closure ---------------------------------------------------

def test_complement_of_empty_is_everything():
    assert ortho_complement(L2_EIGHT, 0) == L2_EIGHT.full


def test_reference_complements():
    assert ortho_complement(L1_NOT_L2, vset([2, 0])) == vset([3, 1])
    assert ortho_complement(L2_NOT_L1, vset([0, 2])) == vset([6])


def test_closure_examples():
    assert closure(L2_EIGHT, 0) == 0
    assert closure(WINDMILL_5, vset([4])) == vset([4])
    # closure of {2,0} equals {3,1}⊥, confirmed by the set oracle
    expected = oracle_perp(L1_NOT_L2, oracle_perp(L1_NOT_L2, {0, 2}))
    assert to_set(closure(L1_NOT_L2, vset([2, 0]))) == expected
    assert closure(L1_NOT_L2, vset([2, 0])) == ortho_complement(L1_NOT_L2, vset([3, 1]))


@settings(max_examples=40, deadline=None)
@given(spaces(max_n=7))
def test_closure_operator_laws(space):
    subsets = range(1 << space.n)
    perp = [ortho_complement(space, a) for a in subsets]
    for a in subsets:
        assert to_set(perp[a]) == oracle_perp(space, to_set(a))
        cl = closure(space, a)
        assert a & ~cl == 0
        assert ortho_complement(space, perp[a]) == cl
        assert ortho_complement(space, cl) == perp[a]
    rng = random.Random(space.n)
    for _ in range(200):
        a = rng.randrange(1 << space.n)
        b = a | rng.randrange(1 << space.n)
        assert perp[b] & ~perp[a] == 0


# --- cliques and rank ----------------------------------------------------------

def test_maximal_sets_examples():
    assert maximal_orthogonal_sets(complete(3)) == [0b111]
    assert maximal_orthogonal_sets(L1_NOT_L2) == [vset([0, 1, 2, 3]), vset([0, 1, 4, 5])]
    cl = maximal_orthogonal_sets(L2_EIGHT)
    assert [members(c) for c in cl] == [[0, 4], [0, 7], [1, 5, 7], [1, 6], [2, 5], [3, 6]]
    assert sorted(c.bit_count() for c in cl) == [2, 2, 2, 2, 2, 3]


def test_isolated_vertices_are_maximal_cliques():
    assert maximal_orthogonal_sets(new_space(3, [(0, 1)])) == [0b011, 0b100]


def test_rank_examples():
    assert rank(new_space(1, [])) == 1
    assert rank(L1_NOT_L2) == 4
    assert rank(L2_EIGHT) == 3


@settings(max_examples=60, deadline=None)
@given(spaces(max_n=8))
def test_cliques_against_subset_scan(space):
    got = maximal_orthogonal_sets(space)
    assert len(got) == len(set(got))
    assert {to_set(c) for c in got} == set(oracle_cliques(space))
    assert rank(space) == max(len(c) for c in oracle_cliques(space))


# --- metric --------------------------------------------------------------------

def _oracle_distance(space, a, b):
    """Shortest simple path by exhaustive DFS."""
    nb = nbrs(space)
    best = [None]

    def walk(v, seen, length):
        if v == b:
            if best[0] is None or length < best[0]:
                best[0] = length
            return
        for w in nb[v]:
            if w not in seen:
                walk(w, seen | {w}, length + 1)

    walk(a, {a}, 0)
    return INFINITE if best[0] is None else best[0]


def test_distance_examples():
    assert distance(L2_EIGHT, 3, 3) == 0
    assert distance(complete(2), 0, 1) == 1
    assert distance(matching(2), 0, 1) is INFINITE
    assert distance(matching(2), 0, 1) == _oracle_distance(matching(2), 0, 1)


def test_infinite_rejects_arithmetic():
    with pytest.raises(TypeError):
        INFINITE + 1
    assert INFINITE > 10**9 and not INFINITE < 3
    assert repr(INFINITE) == "INFINITE"


@settings(max_examples=40, deadline=None)
@given(spaces(max_n=7))
def test_distance_matches_path_search_and_d1(space):
    for a in range(space.n):
        for b in range(space.n):
            d = distance(space, a, b)
            assert d == _oracle_distance(space, a, b)
            if a != b:
                assert (d == 1) == space.orthogonal(a, b)


def test_diameter_examples():
    for n in range(2, 6):
        assert diameter(complete(n)) == 1
    assert diameter(WINDMILL_5) == 2
    assert diameter(matching(3)) is INFINITE
    with pytest.raises(SpaceError, match="trivial"):
        diameter(new_space(1, []))


@settings(max_examples=40, deadline=None)
@given(spaces(max_n=7))
def test_d2_induced_connected_subspaces(space):
    for mask in range(1 << space.n):
        if mask.bit_count() < 2:
            continue
        sub, _ = space.induced(mask)
        if not is_connected(sub):
            continue
        is_clique = all(sub.orthogonal(a, b) for a, b in combinations(range(sub.n), 2))
        assert (diameter(sub) == 1) == is_clique


def test_connectivity_examples():
    assert is_connected(new_space(1, []))
    assert is_connected(L1_NOT_L2)
    assert not is_connected(matching(2))
    assert connected_components(matching(2)) == [0b0101, 0b1010]


# --- apexes and reducibility ---------------------------------------------------

def test_apex_examples():
    assert apex_vertices(complete(4)) == 0b1111
    assert apex_vertices(WINDMILL_7) == vset([5])
    assert apex_vertices(matching(3)) == 0


@settings(max_examples=60, deadline=None)
@given(spaces(max_n=8))
def test_apexes_are_intersection_of_maximal_sets(space):
    inter = space.full
    for c in oracle_cliques(space):
        inter &= sum(1 << i for i in c)
    assert apex_vertices(space) == inter


def test_irreducible_examples():
    assert is_irreducible(new_space(1, []))
    assert not is_irreducible(complete(2))
    assert reducing_partition(complete(2)) == (0b01, 0b10)
    assert not is_irreducible(WINDMILL_5)


def _oracle_irreducible(space):
    n = space.n
    full = space.full
    for a in range(1, 1 << (n - 1)):
        # bipartitions with n-1 on the B side, each listed once
        b = full & ~a
        if all(space.orthogonal(x, y) for x in members(a) for y in members(b)):
            return False
    return True


@settings(max_examples=80, deadline=None)
@given(spaces(max_n=9))
def test_irreducible_against_bipartitions(space):
    assert is_irreducible(space) == _oracle_irreducible(space)
    if apex_vertices(space) and space.n >= 2:
        assert not is_irreducible(space)
