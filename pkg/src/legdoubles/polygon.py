"""Triangulations of a convex polygon with vertices 0..N-1 (counterclockwise)."""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from math import comb
from typing import Iterable

from .errors import DomainError, InvalidDiagonalError, ResourceError
from .plane_graph import CombMap

__all__ = [
    "Triangulation", "catalan", "enumerate_triangulations", "flip", "flip_distance",
    "flip_distance_table", "rotate", "symmetric_triangulations",
    "filling_count_lower_bound", "dual_tree", "fan",
]

MAX_BFS_N = 14
MAX_BFS_NODES = 10**6


def catalan(n: int) -> int:
    if n < 0:
        raise DomainError("catalan index must be non-negative")
    return comb(2 * n, n) // (n + 1)


def _norm(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def _crosses(d1, d2) -> bool:
    a, b = d1
    c, e = d2
    if len({a, b, c, e}) < 4:
        return False
    return (a < c < b) != (a < e < b)


class Triangulation:
    """A set of N-3 pairwise non-crossing diagonals of the convex N-gon."""

    __slots__ = ("n", "diagonals", "_key")

    def __init__(self, n: int, diagonals: Iterable[tuple[int, int]] = (), check: bool = True):
        self.n = int(n)
        self.diagonals = frozenset(_norm(int(a), int(b)) for a, b in diagonals)
        self._key = None
        if check:
            self.validate()

    def validate(self) -> None:
        N = self.n
        if N < 3:
            raise DomainError(f"polygon needs at least 3 vertices (got {N})")
        for a, b in self.diagonals:
            if not (0 <= a < N and 0 <= b < N):
                raise DomainError(f"diagonal {a}-{b} out of range")
            if (b - a) % N in (0, 1, N - 1):
                raise DomainError(f"{a}-{b} is not a diagonal of the {N}-gon")
        if len(self.diagonals) != N - 3:
            raise DomainError(f"a triangulation of the {N}-gon has {N - 3} diagonals, "
                              f"got {len(self.diagonals)}")
        ds = sorted(self.diagonals)
        for i, d1 in enumerate(ds):
            for d2 in ds[i + 1:]:
                if _crosses(d1, d2):
                    raise DomainError(f"diagonals {d1[0]}-{d1[1]} and {d2[0]}-{d2[1]} cross")

    @property
    def key(self) -> tuple:
        if self._key is None:
            self._key = tuple(sorted(self.diagonals))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, Triangulation):
            return NotImplemented
        return self.n == other.n and self.diagonals == other.diagonals

    def __hash__(self):
        return hash((self.n, self.key))

    def __lt__(self, other):
        return (self.n, self.key) < (other.n, other.key)

    def __repr__(self):
        return f"Triangulation({self})"

    def __str__(self):
        return f"{self.n}:" + ",".join(f"{a}-{b}" for a, b in self.key)

    @classmethod
    def parse(cls, text: str) -> Triangulation:
        """Read ``N:a-b,c-d,...``."""
        try:
            head, _, body = text.strip().partition(":")
            n = int(head)
            diags = []
            for tok in body.split(","):
                tok = tok.strip()
                if tok:
                    a, b = tok.split("-")
                    diags.append((int(a), int(b)))
        except ValueError as exc:
            raise DomainError(f"cannot parse triangulation {text!r}") from exc
        return cls(n, diags)

    def edges(self) -> set[tuple[int, int]]:
        sides = {_norm(i, (i + 1) % self.n) for i in range(self.n)}
        return sides | set(self.diagonals)

    def triangles(self) -> list[tuple[int, int, int]]:
        """Sorted vertex triples of the N-2 triangles."""
        adj = {v: set() for v in range(self.n)}
        for a, b in self.edges():
            adj[a].add(b)
            adj[b].add(a)
        out = []
        for a in range(self.n):
            for b in adj[a]:
                if b <= a:
                    continue
                for c in adj[a] & adj[b]:
                    if c > b:
                        out.append((a, b, c))
        return sorted(out)


def fan(N: int, apex: int = 0) -> Triangulation:
    return Triangulation(N, [(apex, (apex + j) % N) for j in range(2, N - 1)])


@lru_cache(maxsize=None)
def _interval_triangulations(i: int, j: int) -> tuple[frozenset, ...]:
    # triangulations of the sub-polygon i, i+1, ..., j as diagonal sets
    if j - i < 2:
        return (frozenset(),)
    out = []
    for k in range(i + 1, j):
        extra = set()
        if k - i > 1:
            extra.add((i, k))
        if j - k > 1:
            extra.add((k, j))
        for left in _interval_triangulations(i, k):
            for right in _interval_triangulations(k, j):
                out.append(frozenset(extra) | left | right)
    return tuple(out)


def enumerate_triangulations(N: int) -> list[Triangulation]:
    """All C_{N-2} triangulations, sorted by their diagonal lists."""
    if N < 3:
        raise DomainError(f"polygon needs at least 3 vertices (got {N})")
    if N > 18:
        raise ResourceError("enumeration capped at N = 18")
    # the outer diagonal (0, N-1) is a side, so drop it from interval output
    ts = [Triangulation(N, d, check=False) for d in _interval_triangulations(0, N - 1)]
    ts.sort()
    return ts


def _apex(T: Triangulation, a: int, b: int, side: int) -> int:
    # vertex c on the given side of a-b with both a-c and b-c edges
    edges = T.edges()
    N = T.n
    rng = range(a + 1, b) if side == 0 else [v for v in range(N) if v < a or v > b]
    for c in rng:
        if _norm(a, c) in edges and _norm(b, c) in edges:
            return c
    raise InvalidDiagonalError("no triangle found beside diagonal")


def flip(T: Triangulation, d: tuple[int, int]) -> Triangulation:
    """Replace diagonal ``d`` by the other diagonal of its quadrilateral."""
    a, b = _norm(*d)
    if (a, b) not in T.diagonals:
        raise InvalidDiagonalError(f"{a}-{b} is not a diagonal of {T}")
    c = _apex(T, a, b, 0)
    e = _apex(T, a, b, 1)
    new = set(T.diagonals)
    new.remove((a, b))
    new.add(_norm(c, e))
    return Triangulation(T.n, new, check=False)


def _neighbours(T: Triangulation):
    for d in T.key:
        yield flip(T, d)


def flip_distance(T1: Triangulation, T2: Triangulation, max_n: int = MAX_BFS_N,
                  node_cap: int = MAX_BFS_NODES) -> int:
    """Exact flip distance by bidirectional breadth-first search."""
    if T1.n != T2.n:
        raise DomainError("triangulations of different polygons")
    if T1.n > max_n:
        raise ResourceError(f"flip distance capped at N = {max_n}")
    if T1 == T2:
        return 0
    dist = [{T1: 0}, {T2: 0}]
    frontier = [[T1], [T2]]
    seen = 2
    while frontier[0] and frontier[1]:
        side = 0 if len(frontier[0]) <= len(frontier[1]) else 1
        mine, other = dist[side], dist[1 - side]
        nxt = []
        best = None
        for T in frontier[side]:
            dT = mine[T]
            for U in _neighbours(T):
                if U in other:
                    cand = dT + 1 + other[U]
                    best = cand if best is None else min(best, cand)
                if U not in mine:
                    mine[U] = dT + 1
                    nxt.append(U)
                    seen += 1
                    if seen > node_cap:
                        raise ResourceError("flip distance BFS node cap exceeded")
        if best is not None:
            return best
        frontier[side] = nxt
    raise AssertionError("flip graph is connected; search cannot fail")


def flip_distance_table(N: int) -> tuple[list[Triangulation], list[list[int]]]:
    """All-pairs flip distances (one BFS per triangulation)."""
    if N > 10:
        raise ResourceError("all-pairs flip table capped at N = 10")
    ts = enumerate_triangulations(N)
    idx = {T: i for i, T in enumerate(ts)}
    nbrs = [[idx[U] for U in _neighbours(T)] for T in ts]
    table = []
    for s in range(len(ts)):
        dist = [-1] * len(ts)
        dist[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for v in nbrs[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    q.append(v)
        table.append(dist)
    return ts, table


def rotate(T: Triangulation, k: int) -> Triangulation:
    N = T.n
    return Triangulation(N, [((a + k) % N, (b + k) % N) for a, b in T.diagonals], check=False)


def symmetric_triangulations(N: int, k: int, max_n: int = MAX_BFS_N) -> list[Triangulation]:
    """Triangulations fixed by the shift ``i -> i + k``."""
    if not 0 <= k < N:
        raise DomainError("shift must satisfy 0 <= k < N")
    if N > max_n:
        raise ResourceError(f"symmetric enumeration capped at N = {max_n}")
    return [T for T in enumerate_triangulations(N) if rotate(T, k) == T]


def filling_count_lower_bound(n: int, k: int) -> int:
    """Lower bound f(k) on fillings of the k-fold twist-spun of the (2, n) torus link."""
    if n < 1:
        raise DomainError("n must be positive")
    if not (k == 0 or 0 <= k <= n - 1):
        raise DomainError(f"k must lie in 0..{n - 1}")
    if (n + 2) % 3 == 0 and k == (n + 2) // 3:
        return catalan((n + 2) // 3)
    if (n + 2) % 2 == 0 and k == (n + 2) // 2:
        return catalan(n // 2)
    if k == 0:
        return catalan(n)
    return 0


def dual_tree(T: Triangulation) -> CombMap:
    """Trivalent tree dual to T with legs on the polygon sides.

    Each triangle (a < b < c) contributes three darts crossing ab, bc, ca in
    that (counterclockwise) order.  The leg crossing side (i, i+1) is leg i.
    """
    N = T.n
    sigma: list[int] = []
    crossing: dict[tuple[int, int], list[int]] = {}
    for a, b, c in T.triangles():
        base = len(sigma)
        sigma.extend([base + 1, base + 2, base])
        for off, e in enumerate(((a, b), (b, c), (a, c))):
            crossing.setdefault(e, []).append(base + off)
    alpha = list(range(len(sigma)))
    for e, ds in crossing.items():
        if len(ds) == 2:
            alpha[ds[0]], alpha[ds[1]] = ds[1], ds[0]
    legs = [crossing[_norm(i, (i + 1) % N)][0] for i in range(N)]
    return CombMap(sigma, alpha, legs)
