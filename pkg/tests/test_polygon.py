import itertools
import random
from math import comb

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from legdoubles.errors import DomainError, InvalidDiagonalError, ResourceError
from legdoubles.polygon import (Triangulation, catalan, dual_tree, enumerate_triangulations, fan,
                                filling_count_lower_bound, flip, flip_distance, flip_distance_table,
                                rotate, symmetric_triangulations)


def crossing(d, e):
    (a, b), (c, f) = d, e
    if len({a, b, c, f}) < 4:
        return False
    return (a < c < b) != (a < f < b)


def brute_force_triangulations(N):
    """All maximal sets of pairwise non-crossing diagonals (independent oracle)."""
    diags = [(a, b) for a in range(N) for b in range(a + 2, N) if not (a == 0 and b == N - 1)]
    out = set()
    for combo in itertools.combinations(diags, N - 3):
        if all(not crossing(d, e) for d, e in itertools.combinations(combo, 2)):
            out.add(frozenset(combo))
    return out


def flip_graph_oracle(N):
    """Flip graph from the 'share all but one diagonal' rule, without using flip()."""
    ts = enumerate_triangulations(N)
    G = nx.Graph()
    G.add_nodes_from(range(len(ts)))
    for i, j in itertools.combinations(range(len(ts)), 2):
        if len(ts[i].diagonals & ts[j].diagonals) == N - 4:
            G.add_edge(i, j)
    return ts, G


# -- enumeration -------------------------------------------------------------------


def test_small_counts():
    assert len(enumerate_triangulations(3)) == 1
    assert enumerate_triangulations(3)[0].diagonals == frozenset()
    assert len(enumerate_triangulations(6)) == 14
    assert len(enumerate_triangulations(8)) == 132


@pytest.mark.parametrize("N", range(3, 9))
def test_matches_brute_force(N):
    got = {T.diagonals for T in enumerate_triangulations(N)}
    assert got == brute_force_triangulations(N)


@pytest.mark.parametrize("N", range(3, 13))
def test_catalan_formula(N):
    assert len(enumerate_triangulations(N)) == comb(2 * N - 4, N - 2) // (N - 1) == catalan(N - 2)


def test_enumeration_deterministic_and_valid():
    a = enumerate_triangulations(7)
    b = enumerate_triangulations(7)
    assert [t.key for t in a] == [t.key for t in b]
    for T in a:
        T.validate()


def test_domain_errors():
    with pytest.raises(DomainError):
        enumerate_triangulations(2)
    with pytest.raises(DomainError):
        Triangulation(6, [(0, 2), (1, 3), (0, 4)])
    with pytest.raises(DomainError):
        Triangulation(6, [(0, 1), (0, 3), (0, 4)])
    with pytest.raises(DomainError):
        Triangulation.parse("6:0-2,0-3")


def test_text_format():
    T = Triangulation.parse("6:0-2,0-3,0-4")
    assert str(T) == "6:0-2,0-3,0-4"
    assert Triangulation.parse(str(T)) == T


# -- flips ---------------------------------------------------------------------------


def test_flip_examples():
    T = Triangulation.parse("6:0-2,0-3,0-4")
    assert flip(T, (0, 3)) == Triangulation.parse("6:0-2,2-4,0-4")
    assert flip(Triangulation.parse("4:0-2"), (0, 2)) == Triangulation.parse("4:1-3")
    with pytest.raises(InvalidDiagonalError):
        flip(T, (1, 3))


@pytest.mark.parametrize("N", [5, 6, 7])
def test_flip_agrees_with_oracle_graph(N):
    ts, G = flip_graph_oracle(N)
    idx = {T: i for i, T in enumerate(ts)}
    for i, T in enumerate(ts):
        nbrs = {idx[flip(T, d)] for d in T.diagonals}
        assert nbrs == set(G.neighbors(i))
        for d in T.diagonals:
            U = flip(T, d)
            (new,) = U.diagonals - T.diagonals
            assert flip(U, new) == T


# -- distance ------------------------------------------------------------------------


def test_distance_examples():
    a = Triangulation.parse("6:0-2,2-4,0-4")
    b = Triangulation.parse("6:1-3,3-5,1-5")
    assert flip_distance(a, a) == 0
    assert flip_distance(a, b) == 4
    ts, tab = flip_distance_table(6)
    assert max(max(r) for r in tab) == 4


@pytest.mark.parametrize("N", [6, 7])
def test_distance_matches_networkx(N):
    ts, G = flip_graph_oracle(N)
    lengths = dict(nx.all_pairs_shortest_path_length(G))
    _, tab = flip_distance_table(N)
    rng = random.Random(N)
    for i in range(len(ts)):
        for j in range(len(ts)):
            assert tab[i][j] == lengths[i][j]
    for _ in range(50):
        i, j = rng.randrange(len(ts)), rng.randrange(len(ts))
        assert flip_distance(ts[i], ts[j]) == lengths[i][j]


@settings(max_examples=30, deadline=None)
@given(st.integers(5, 9), st.integers(0, 10**6))
def test_metric_properties(N, seed):
    rng = random.Random(seed)
    ts = enumerate_triangulations(N)
    a, b, c = (rng.choice(ts) for _ in range(3))
    dab = flip_distance(a, b)
    assert dab == flip_distance(b, a)
    assert (dab == 0) == (a == b)
    assert flip_distance(a, c) <= dab + flip_distance(b, c)
    k = rng.randrange(N)
    assert flip_distance(rotate(a, k), rotate(b, k)) == dab


@pytest.mark.parametrize("N", range(4, 10))
def test_distance_to_fan_bounded(N):
    F = fan(N)
    for T in enumerate_triangulations(N):
        # a diagonal at the apex is never flipped twice
        assert flip_distance(F, T) <= N - 3


def test_distance_errors():
    with pytest.raises(DomainError):
        flip_distance(fan(5), fan(6))
    with pytest.raises(ResourceError):
        flip_distance(fan(15), fan(15, 1))


# -- rotation and symmetry ---------------------------------------------------------------


def test_rotate():
    T = Triangulation.parse("6:0-2,0-3,0-4")
    assert rotate(T, 0) == T
    assert rotate(T, 1) == Triangulation.parse("6:1-3,1-4,1-5")
    assert rotate(T, 6) == T
    assert rotate(rotate(T, 2), 3) == rotate(T, 5)


def test_symmetric_examples():
    assert len(symmetric_triangulations(6, 3)) == 6
    sym2 = symmetric_triangulations(6, 2)
    assert {str(t) for t in sym2} == {"6:0-2,0-4,2-4", "6:1-3,1-5,3-5"}
    assert symmetric_triangulations(5, 1) == []
    with pytest.raises(DomainError):
        symmetric_triangulations(6, 6)


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_half_turn_count(m):
    assert len(symmetric_triangulations(2 * m, m)) == m * catalan(m - 1)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_third_turn_count(m):
    assert len(symmetric_triangulations(3 * m, m)) == m * catalan(m - 1)


def test_filling_bound_examples():
    assert filling_count_lower_bound(4, 3) == 2
    assert filling_count_lower_bound(4, 2) == 2
    assert filling_count_lower_bound(6, 1) == 0
    assert filling_count_lower_bound(5, 0) == catalan(5)
    with pytest.raises(DomainError):
        filling_count_lower_bound(4, 4)


@pytest.mark.parametrize("n", range(2, 11))
def test_symmetric_count_dominates_bound(n):
    for k in range(0, n):
        assert len(symmetric_triangulations(n + 2, k)) >= filling_count_lower_bound(n, k)


# -- dual trees ------------------------------------------------------------------------------


def test_dual_tree_shapes():
    t3 = dual_tree(enumerate_triangulations(3)[0])
    assert (t3.num_vertices, t3.num_edges, len(t3.legs)) == (1, 0, 3)
    t4 = dual_tree(Triangulation.parse("4:0-2"))
    assert (t4.num_vertices, t4.num_edges, len(t4.legs)) == (2, 1, 4)
    t6 = dual_tree(fan(6))
    assert (t6.num_vertices, t6.num_edges, len(t6.legs)) == (4, 3, 6)
    degs = sorted(sum(t6.alpha[d] != d for d in v) for v in t6.vertices())
    assert degs == [1, 1, 2, 2]  # a path


def test_dual_tree_leg_order():
    # walking the outer face of the tree meets the legs in boundary order
    for T in enumerate_triangulations(7):
        t = dual_tree(T)
        pos = {d: i for i, d in enumerate(t.legs)}
        d = t.legs[0]
        seen = []
        for _ in range(t.num_darts * 2):
            if d in pos:
                seen.append(pos[d])
            d = t.sigma[t.alpha[d]]
        order = seen[: len(t.legs)]
        assert sorted(order) == list(range(7))
        i0 = order.index(0)
        rolled = order[i0:] + order[:i0]
        assert rolled in (list(range(7)), [0] + list(range(6, 0, -1)))
