"""Chromatic polynomials of plane duals and the sheaf point counts derived from them."""

from __future__ import annotations

import math
from collections import OrderedDict

from .canon import canonical_code
from .errors import ConsistencyError, DomainError, ResourceError
from .plane_graph import CombMap, Multigraph, dual, is_trivalent
from .poly import IntPoly

__all__ = [
    "chromatic_polynomial", "count_colorings_bruteforce", "extract_linear_factors",
    "sheaf_point_count", "sheaf_polynomial", "to_q_basis", "from_q_basis",
    "delete_edge", "contract_edge", "disjoint_union", "ChromaticCache",
]

MAX_VERTICES = 24
X = IntPoly.x()


class ChromaticCache:
    """Bounded LRU memo from graph keys to polynomials."""

    def __init__(self, maxsize: int = 1 << 20):
        self.maxsize = maxsize
        self._d: OrderedDict = OrderedDict()
        self.hits = 0
        self.misses = 0

    def get(self, key):
        try:
            val = self._d[key]
        except KeyError:
            self.misses += 1
            return None
        self._d.move_to_end(key)
        self.hits += 1
        return val

    def put(self, key, val):
        self._d[key] = val
        if len(self._d) > self.maxsize:
            self._d.popitem(last=False)

    def clear(self):
        self._d.clear()

    def __len__(self):
        return len(self._d)


_CACHE = ChromaticCache()


def _falling(n: int) -> IntPoly:
    p = IntPoly([1])
    for i in range(n):
        p = p * IntPoly([-i, 1])
    return p


def _components(verts: list[int], adj: dict[int, int]) -> list[list[int]]:
    left = 0
    for v in verts:
        left |= 1 << v
    comps = []
    while left:
        start = (left & -left).bit_length() - 1
        comp = 1 << start
        frontier = comp
        while frontier:
            v = (frontier & -frontier).bit_length() - 1
            frontier &= frontier - 1
            new = adj[v] & left & ~comp
            comp |= new
            frontier |= new
        left &= ~comp
        comps.append([v for v in verts if comp >> v & 1])
    return comps


def _key(verts, adj):
    n = len(verts)
    pos = {v: i for i, v in enumerate(verts)}
    rows = []
    for v in verts:
        row = [0] * n
        m = adj[v]
        while m:
            u = (m & -m).bit_length() - 1
            m &= m - 1
            row[pos[u]] = 1
        rows.append(row)
    if n <= 5:
        return ("raw", tuple(tuple(r) for r in rows))
    try:
        return ("canon", n, canonical_code(rows, leaf_budget=200))
    except ResourceError:
        return ("raw", tuple(tuple(r) for r in rows))


def _connected_poly(verts: list[int], adj: dict[int, int], cache: ChromaticCache) -> IntPoly:
    n = len(verts)
    if n == 1:
        return X
    mask = 0
    for v in verts:
        mask |= 1 << v
    deg = {v: bin(adj[v] & mask).count("1") for v in verts}
    m = sum(deg.values()) // 2
    if m == n - 1:
        return X * IntPoly([-1, 1]) ** (n - 1)
    if m == n * (n - 1) // 2:
        return _falling(n)
    # simplicial vertex: its neighbourhood is a clique
    for v in sorted(verts, key=lambda u: deg[u]):
        nb = adj[v] & mask
        ok = True
        w = nb
        while w:
            u = (w & -w).bit_length() - 1
            w &= w - 1
            if (nb & ~(1 << u)) & ~adj[u]:
                ok = False
                break
        if ok:
            rest = [u for u in verts if u != v]
            sub = {u: adj[u] & ~(1 << v) for u in rest}
            return IntPoly([-deg[v], 1]) * _poly(rest, sub, cache)
    key = _key(verts, adj)
    hit = cache.get(key)
    if hit is not None:
        return hit
    # deletion-contraction on an edge at a maximum-degree vertex
    u = max(verts, key=lambda t: (deg[t], -t))
    nbs = adj[u] & mask
    v = max((t for t in verts if nbs >> t & 1), key=lambda t: (deg[t], -t))
    deleted = dict(adj)
    deleted[u] = adj[u] & ~(1 << v)
    deleted[v] = adj[v] & ~(1 << u)
    contracted = {}
    rest = [t for t in verts if t != v]
    for t in rest:
        a = adj[t] & mask
        if a >> v & 1:
            a = (a & ~(1 << v)) | (1 << u)
        contracted[t] = a & ~(1 << t)
    contracted[u] = (adj[u] | adj[v]) & mask & ~(1 << u) & ~(1 << v)
    for t in rest:
        if contracted[u] >> t & 1:
            contracted[t] |= 1 << u
    res = _poly(verts, deleted, cache) - _poly(rest, contracted, cache)
    cache.put(key, res)
    return res


def _poly(verts, adj, cache):
    out = IntPoly([1])
    for comp in _components(verts, adj):
        out = out * _connected_poly(comp, adj, cache)
    return out


def chromatic_polynomial(g: Multigraph, cache: ChromaticCache | None = None,
                         max_vertices: int = MAX_VERTICES) -> IntPoly:
    """Chromatic polynomial of ``g`` in the variable x (number of colours)."""
    if g.n > max_vertices:
        raise ResourceError(f"chromatic polynomial capped at {max_vertices} vertices")
    if g.has_loop():
        return IntPoly()
    adj = {v: 0 for v in range(g.n)}
    for a, b in g.simple_edges():
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    return _poly(list(range(g.n)), adj, _CACHE if cache is None else cache)


def count_colorings_bruteforce(g: Multigraph, x: int) -> int:
    """Proper x-colourings counted by exhaustive backtracking (oracle for small graphs).

    Colours are assigned in first-use order, so each partition of the vertices
    into k independent sets is visited once and stands for x(x-1)...(x-k+1)
    colourings.
    """
    n = g.n
    if n > 10 and x ** n > 10**8:
        raise ResourceError("brute-force colouring capped at 10 vertices or 1e8 assignments")
    if g.has_loop():
        return 0
    nbrs = [[] for _ in range(n)]
    for a, b in g.simple_edges():
        nbrs[max(a, b)].append(min(a, b))
    col = [0] * n
    by_classes = [0] * (n + 1)

    def go(v, used):
        if v == n:
            by_classes[used] += 1
            return
        for c in range(min(used + 1, x)):
            if all(col[u] != c for u in nbrs[v]):
                col[v] = c
                go(v + 1, max(used, c + 1))

    go(0, 0)
    total = 0
    for k, cnt in enumerate(by_classes):
        if cnt:
            total += cnt * math.perm(x, k)
    return total


def extract_linear_factors(p: IntPoly, roots) -> tuple[list, IntPoly]:
    """Multiplicity of each ``(x - r)`` in ``p`` and the cofactor.

    The zero polynomial is divisible by everything: its multiplicities are
    reported as ``math.inf`` and the quotient is zero.
    """
    roots = list(roots)
    if p.is_zero():
        return [math.inf] * len(roots), IntPoly()
    mults = []
    for r in roots:
        lin = IntPoly([-r, 1])
        k = 0
        while True:
            q, rem = p.divmod(lin)
            if not rem.is_zero():
                break
            p = q
            k += 1
        mults.append(k)
    return mults, p


def delete_edge(g: Multigraph, i: int) -> Multigraph:
    es = list(g.edges)
    del es[i]
    return Multigraph(g.n, es)


def contract_edge(g: Multigraph, i: int) -> Multigraph:
    """Identify the ends of edge ``i`` (the edge itself disappears)."""
    a, b = g.edges[i]
    if a == b:
        raise DomainError("cannot contract a loop")
    es = [e for j, e in enumerate(g.edges) if j != i]

    def relabel(v):
        v = a if v == b else v
        return v if v < b else v - 1

    return Multigraph(g.n - 1, [(relabel(u), relabel(v)) for u, v in es])


def disjoint_union(g: Multigraph, h: Multigraph) -> Multigraph:
    return Multigraph(g.n + h.n, list(g.edges) + [(a + g.n, b + g.n) for a, b in h.edges])


def to_q_basis(p: IntPoly) -> IntPoly:
    """Rewrite P(x) as a polynomial in q = x - 1."""
    return p.taylor_shift(1)


def from_q_basis(p: IntPoly) -> IntPoly:
    return p.taylor_shift(-1)


_FRAME = IntPoly([0, -1, 0, 1])  # (q+1) q (q-1)


def sheaf_polynomial(m: CombMap) -> IntPoly:
    """Framed point count as a polynomial in q: P_dual(q+1) / ((q+1) q (q-1))."""
    if m.legs or not is_trivalent(m):
        raise DomainError("sheaf counts need a closed trivalent map")
    P = to_q_basis(chromatic_polynomial(dual(m)))
    q, r = P.divmod(_FRAME)
    if not r.is_zero():
        raise ConsistencyError(f"(q+1)q(q-1) does not divide {P.format('q')}")
    return q


def sheaf_point_count(m: CombMap, q: int) -> int:
    if q < 2:
        raise DomainError("q must be at least 2")
    if m.legs or not is_trivalent(m):
        raise DomainError("sheaf counts need a closed trivalent map")
    val = chromatic_polynomial(dual(m))(q + 1)
    den = (q + 1) * q * (q - 1)
    if val % den:
        raise ConsistencyError(f"P({q + 1}) = {val} is not divisible by {den}")
    return val // den
