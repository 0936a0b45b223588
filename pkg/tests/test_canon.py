import random

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from legdoubles.canon import canonical_code
from legdoubles.errors import ResourceError


def permuted(W, perm):
    n = len(W)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            out[perm[i]][perm[j]] = W[i][j]
    return out


def random_weights(rng, n, p=0.4, maxw=2):
    W = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                W[i][j] = W[j][i] = rng.randint(1, maxw)
    return W


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 9))
def test_invariant_under_relabeling(seed, n):
    rng = random.Random(seed)
    W = random_weights(rng, n)
    perm = list(range(n))
    rng.shuffle(perm)
    assert canonical_code(W) == canonical_code(permuted(W, perm))


def test_agrees_with_networkx_isomorphism():
    # networkx is an independent oracle for weighted graph isomorphism
    rng = random.Random(7)
    for _ in range(150):
        n = rng.randint(2, 7)
        A, B = random_weights(rng, n, 0.5, 1), random_weights(rng, n, 0.5, 1)
        GA, GB = nx.from_numpy_array(np.array(A)), nx.from_numpy_array(np.array(B))
        assert (canonical_code(A) == canonical_code(B)) == nx.is_isomorphic(GA, GB)


def test_colors_respected():
    W = [[0, 1], [1, 0]]
    assert canonical_code(W, [0, 1]) == canonical_code(W, [1, 0])
    assert canonical_code(W, [0, 0]) != canonical_code(W, [0, 1])


def test_budget():
    # empty graph on 9 vertices: refinement never splits, 9! leaves
    W = [[0] * 9 for _ in range(9)]
    with pytest.raises(ResourceError):
        canonical_code(W, leaf_budget=10)
