import math
import random
from itertools import product as iproduct

import pytest
from hypothesis import given, settings, strategies as st

from legdoubles.chromatic import (ChromaticCache, chromatic_polynomial, contract_edge,
                                  count_colorings_bruteforce, delete_edge, disjoint_union,
                                  extract_linear_factors, from_q_basis, sheaf_point_count,
                                  sheaf_polynomial, to_q_basis)
from legdoubles.errors import ResourceError
from legdoubles.plane_graph import Multigraph, cube_graph, prism_graph, theta_graph
from legdoubles.poly import IntPoly

X = IntPoly.x()
K3 = Multigraph(3, [(0, 1), (1, 2), (0, 2)])
OCTA = Multigraph(6, [(a, b) for a in range(6) for b in range(a + 1, 6) if b - a != 3])


def naive_count(g, x):
    """Direct enumeration of all x^n assignments (second oracle for tiny graphs)."""
    return sum(all(c[a] != c[b] for a, b in g.edges) for c in iproduct(range(x), repeat=g.n))


def random_graph(rng, max_n=9, loops=False):
    n = rng.randint(1, max_n)
    es = []
    for _ in range(rng.randint(0, 2 * n + 3)):
        a, b = rng.randrange(n), rng.randrange(n)
        if a != b or loops:
            es.append((a, b))
    return Multigraph(n, es)


def test_k3():
    assert chromatic_polynomial(K3) == X * (X - 1) * (X - 2)
    assert count_colorings_bruteforce(K3, 3) == 6
    assert count_colorings_bruteforce(K3, 2) == 0


def test_octahedron():
    P = chromatic_polynomial(OCTA)
    cubic = IntPoly([-32, 29, -9, 1])
    assert P == X * (X - 1) * (X - 2) * cubic
    q = X
    assert to_q_basis(P) == (q + 1) * q * (q - 1) * IntPoly([-11, 14, -6, 1])
    assert count_colorings_bruteforce(OCTA, 4) == 96 == P(4)
    assert count_colorings_bruteforce(OCTA, 3) == 6 == P(3)


def test_subdivided_triangle():
    # K3 with one edge subdivided: the new vertex sees two adjacent vertices
    g = Multigraph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    P = chromatic_polynomial(g)
    assert P == chromatic_polynomial(K3) * (X - 2)
    for x in (3, 4, 5):
        assert P(x) == naive_count(g, x)


def test_loops_and_parallel_edges():
    assert chromatic_polynomial(Multigraph(2, [(0, 0), (0, 1)])).is_zero()
    assert chromatic_polynomial(Multigraph(2, [(0, 1), (0, 1)])) == X * (X - 1)


def test_brute_force_matches_naive():
    rng = random.Random(11)
    for _ in range(60):
        g = random_graph(rng, 6, loops=True)
        for x in (1, 2, 3):
            assert count_colorings_bruteforce(g, x) == naive_count(g, x)


def test_oracle_equivalence_200_graphs():
    rng = random.Random(2)
    for _ in range(200):
        g = random_graph(rng)
        P = chromatic_polynomial(g)
        for x in (2, 3, 4, 5):
            assert P(x) == count_colorings_bruteforce(g, x)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_deletion_contraction(seed):
    rng = random.Random(seed)
    g = random_graph(rng, 8)
    if not g.edges:
        return
    i = rng.randrange(len(g.edges))
    P = chromatic_polynomial(g)
    assert P == chromatic_polynomial(delete_edge(g, i)) - chromatic_polynomial(contract_edge(g, i))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_disjoint_union_multiplies(seed):
    rng = random.Random(seed)
    g, h = random_graph(rng, 5), random_graph(rng, 5)
    assert chromatic_polynomial(disjoint_union(g, h)) == chromatic_polynomial(g) * chromatic_polynomial(h)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_leading_coefficients(seed):
    rng = random.Random(seed)
    g = random_graph(rng, 9)
    simple = g.simple_edges()
    n, m = g.n, len(simple)
    es = set(simple)
    t = sum(1 for a, b, c in __import__("itertools").combinations(range(n), 3)
            if (a, b) in es and (b, c) in es and (a, c) in es)
    P = chromatic_polynomial(g)
    assert P.degree == n and P.leading() == 1
    if n >= 2:
        assert P.coeffs[n - 1] == -m
    if n >= 3:
        assert P.coeffs[n - 2] == math.comb(m, 2) - t


def test_cache_independence():
    rng = random.Random(4)
    for _ in range(30):
        g = random_graph(rng)
        assert chromatic_polynomial(g, cache=ChromaticCache(4)) == chromatic_polynomial(g)


def test_vertex_cap():
    with pytest.raises(ResourceError):
        chromatic_polynomial(Multigraph(25, []))


def test_extract_linear_factors():
    p = X * (X - 1) * (X - 2) ** 2
    assert extract_linear_factors(p, [1, 2]) == ([1, 2], X)
    mults, rest = extract_linear_factors(chromatic_polynomial(OCTA), [2])
    assert mults == [1]
    mults, rest = extract_linear_factors(IntPoly(), [1, 2])
    assert mults == [math.inf, math.inf] and rest.is_zero()


def test_basis_change_round_trip():
    p = chromatic_polynomial(OCTA)
    assert from_q_basis(to_q_basis(p)) == p


def test_sheaf_counts():
    for q in range(2, 9):
        assert sheaf_point_count(theta_graph(), q) == 1
    assert sheaf_point_count(cube_graph(), 2) == 1
    assert sheaf_polynomial(cube_graph()) == IntPoly([-11, 14, -6, 1])
    # prism: dual is the triangular bipyramid
    assert sheaf_polynomial(prism_graph())(3) == sheaf_point_count(prism_graph(), 3)
