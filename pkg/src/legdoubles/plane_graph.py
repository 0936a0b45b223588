"""Rotation systems for plane multigraphs on the sphere and the disk.

A :class:`CombMap` stores darts ``0..D-1`` with two permutations:

* ``sigma`` -- counterclockwise successor of a dart around its vertex;
* ``alpha`` -- the other half of the dart's edge.  Boundary legs of disk maps
  are the fixed points of ``alpha`` and are additionally listed, in boundary
  order, in ``legs``.

Faces are the orbits of ``phi = sigma o alpha``.  Vertex-free components
(free circles) cannot be expressed by darts and are counted in ``circles``.
"""

from __future__ import annotations

import json
import math
from array import array
from collections import Counter, deque
from typing import Iterable, Sequence

from .canon import canonical_code
from .errors import DomainError, StructuralError

__all__ = [
    "CombMap", "Multigraph", "faces", "dual", "dual_map", "is_trivalent",
    "weave_genus", "canonical_form", "isomorphic", "theta_graph", "cube_graph",
    "tetrahedron", "prism_graph", "free_circle", "single_loop", "from_rotation",
    "from_plane_embedding",
]


def _orbits(perm: Sequence[int], domain: Iterable[int]) -> list[list[int]]:
    seen = set()
    out = []
    for d in domain:
        if d in seen:
            continue
        cyc = []
        x = d
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = perm[x]
        out.append(cyc)
    return out


class CombMap:
    """Immutable combinatorial map (rotation system) with optional boundary legs."""

    __slots__ = ("sigma", "alpha", "legs", "circles", "_cache")

    def __init__(self, sigma: Sequence[int], alpha: Sequence[int],
                 legs: Sequence[int] = (), circles: int = 0, check: bool = True):
        self.sigma = tuple(sigma)
        self.alpha = tuple(alpha)
        self.legs = tuple(legs)
        self.circles = int(circles)
        self._cache: dict = {}
        if check:
            self.validate()

    # -- structure -----------------------------------------------------
    def validate(self) -> None:
        D = len(self.sigma)
        if len(self.alpha) != D:
            raise StructuralError("sigma and alpha have different lengths")
        if sorted(self.sigma) != list(range(D)):
            raise StructuralError("sigma is not a permutation")
        for d, e in enumerate(self.alpha):
            if not 0 <= e < D or self.alpha[e] != d:
                raise StructuralError(f"alpha is not an involution at dart {d}")
        fixed = {d for d in range(D) if self.alpha[d] == d}
        if fixed != set(self.legs) or len(self.legs) != len(fixed):
            raise StructuralError("alpha fixed points must be exactly the boundary legs")
        if self.circles < 0:
            raise StructuralError("negative circle count")

    @property
    def num_darts(self) -> int:
        return len(self.sigma)

    def vertices(self) -> list[list[int]]:
        if "vertices" not in self._cache:
            self._cache["vertices"] = _orbits(self.sigma, range(self.num_darts))
        return self._cache["vertices"]

    def vertex_of(self) -> list[int]:
        if "vertex_of" not in self._cache:
            vo = [0] * self.num_darts
            for i, cyc in enumerate(self.vertices()):
                for d in cyc:
                    vo[d] = i
            self._cache["vertex_of"] = vo
        return self._cache["vertex_of"]

    def edges(self) -> list[tuple[int, int]]:
        return [(d, e) for d, e in enumerate(self.alpha) if d < e]

    def phi(self) -> list[int]:
        s, a = self.sigma, self.alpha
        return [s[a[d]] for d in range(self.num_darts)]

    def faces(self) -> list[list[int]]:
        if "faces" not in self._cache:
            self._cache["faces"] = _orbits(self.phi(), range(self.num_darts))
        return self._cache["faces"]

    def face_of(self) -> list[int]:
        if "face_of" not in self._cache:
            fo = [0] * self.num_darts
            for i, cyc in enumerate(self.faces()):
                for d in cyc:
                    fo[d] = i
            self._cache["face_of"] = fo
        return self._cache["face_of"]

    @property
    def num_vertices(self) -> int:
        return len(self.vertices())

    @property
    def num_edges(self) -> int:
        return len(self.edges())

    @property
    def num_faces(self) -> int:
        return len(self.faces())

    def is_closed(self) -> bool:
        return not self.legs

    def components(self) -> list[list[int]]:
        """Dart sets of the connected components (free circles excluded)."""
        D = self.num_darts
        seen = [False] * D
        comps = []
        for d0 in range(D):
            if seen[d0]:
                continue
            comp = []
            stack = [d0]
            seen[d0] = True
            while stack:
                d = stack.pop()
                comp.append(d)
                for e in (self.sigma[d], self.alpha[d]):
                    if not seen[e]:
                        seen[e] = True
                        stack.append(e)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        if self.num_darts == 0:
            return self.circles == 1
        return self.circles == 0 and len(self.components()) == 1

    def euler_ok(self) -> bool:
        """V - E + F = 2 for every component of a closed map (circles count as spheres)."""
        if self.legs:
            raise DomainError("Euler check is defined for closed maps")
        fo = self.face_of()
        vo = self.vertex_of()
        for comp in self.components():
            V = len({vo[d] for d in comp})
            F = len({fo[d] for d in comp})
            E = len(comp) // 2
            if V - E + F != 2:
                return False
        return True

    def has_loop(self) -> bool:
        vo = self.vertex_of()
        return any(vo[d] == vo[e] for d, e in self.edges())

    def has_bridge(self) -> bool:
        """For a plane map an edge is a bridge iff both its sides lie on one face."""
        fo = self.face_of()
        return any(fo[d] == fo[e] for d, e in self.edges())

    def face_degrees(self) -> list[int]:
        return sorted(len(f) for f in self.faces())

    # -- transformations -----------------------------------------------
    def mirror(self) -> CombMap:
        inv = [0] * self.num_darts
        for d, e in enumerate(self.sigma):
            inv[e] = d
        return CombMap(inv, self.alpha, tuple(reversed(self.legs)), self.circles, check=False)

    def relabel(self, perm: Sequence[int]) -> CombMap:
        """Rename dart ``d`` to ``perm[d]``."""
        D = self.num_darts
        sigma = [0] * D
        alpha = [0] * D
        for d in range(D):
            sigma[perm[d]] = perm[self.sigma[d]]
            alpha[perm[d]] = perm[self.alpha[d]]
        return CombMap(sigma, alpha, [perm[d] for d in self.legs], self.circles)

    def __eq__(self, other):
        if not isinstance(other, CombMap):
            return NotImplemented
        return (self.sigma, self.alpha, self.legs, self.circles) == (
            other.sigma, other.alpha, other.legs, other.circles)

    def __hash__(self):
        return hash((self.sigma, self.alpha, self.legs, self.circles))

    def __repr__(self):
        return (f"CombMap(V={self.num_vertices}, E={self.num_edges}, F={self.num_faces}, "
                f"legs={len(self.legs)}, circles={self.circles})")

    # -- I/O -------------------------------------------------------------
    def to_json(self) -> str:
        payload = {"sigma": list(self.sigma), "alpha": list(self.alpha), "circles": self.circles}
        if self.legs:
            payload["legs"] = list(self.legs)
        return json.dumps(payload)

    @classmethod
    def from_json(cls, text: str) -> CombMap:
        data = json.loads(text)
        alpha = data["alpha"]
        legs = data.get("legs")
        if legs is None:
            legs = [d for d, e in enumerate(alpha) if d == e]
        return cls(data["sigma"], alpha, legs, data.get("circles", 0))

    def to_dot(self, annotate_faces: bool = False, name: str = "G") -> str:
        vo = self.vertex_of()
        lines = [f"graph {name} {{", "  node [shape=circle, width=0.2, label=\"\"];"]
        for v in range(self.num_vertices):
            lines.append(f"  v{v};")
        fo = self.face_of() if annotate_faces else None
        for d, e in self.edges():
            attr = f' [label="f{fo[d]}|f{fo[e]}"]' if fo is not None else ""
            lines.append(f"  v{vo[d]} -- v{vo[e]}{attr};")
        for i, d in enumerate(self.legs):
            lines.append(f'  leg{i} [shape=point]; v{vo[d]} -- leg{i} [label="{i}"];')
        lines.append("}")
        return "\n".join(lines)


class Multigraph:
    """Undirected multigraph on vertices ``0..n-1``; loops allowed."""

    __slots__ = ("n", "edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        self.n = int(n)
        es = []
        for a, b in edges:
            a, b = int(a), int(b)
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise StructuralError(f"edge ({a}, {b}) out of range for {self.n} vertices")
            es.append((a, b) if a <= b else (b, a))
        self.edges = tuple(sorted(es))

    def has_loop(self) -> bool:
        return any(a == b for a, b in self.edges)

    def simple_edges(self) -> list[tuple[int, int]]:
        return sorted({e for e in self.edges if e[0] != e[1]})

    def multiplicity_matrix(self) -> list[list[int]]:
        W = [[0] * self.n for _ in range(self.n)]
        for a, b in self.edges:
            W[a][b] += 1
            if a != b:
                W[b][a] += 1
        return W

    def degree(self, v: int) -> int:
        return sum((a == v) + (b == v) for a, b in self.edges)

    def canonical_code(self) -> tuple:
        return (self.n, canonical_code(self.multiplicity_matrix()))

    def isomorphic(self, other: Multigraph) -> bool:
        if self.n != other.n or len(self.edges) != len(other.edges):
            return False
        return self.canonical_code() == other.canonical_code()

    def __eq__(self, other):
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Multigraph(n={self.n}, edges={list(self.edges)})"


# ---------------------------------------------------------------------------
# operations


def faces(m: CombMap) -> list[list[int]]:
    """Partition of the darts into faces (orbits of ``sigma o alpha``)."""
    m.validate()
    return [list(f) for f in m.faces()]


def dual(m: CombMap) -> Multigraph:
    """Dual multigraph of a closed map: one vertex per face, one edge per edge."""
    if m.legs:
        raise DomainError("dual is defined for closed maps only")
    fo = m.face_of()
    return Multigraph(m.num_faces, [(fo[d], fo[e]) for d, e in m.edges()])


def dual_map(m: CombMap) -> CombMap:
    """Dual rotation system: faces become vertices (rotation taken from ``phi``)."""
    if m.legs:
        raise DomainError("dual_map is defined for closed maps only")
    return CombMap(m.phi(), m.alpha)


def is_trivalent(m: CombMap) -> bool:
    return all(len(v) == 3 for v in m.vertices())


def weave_genus(m: CombMap) -> int:
    """Genus of the weave surface of a closed connected trivalent 2-graph.

    From ``v = 2g - 2 + 2N`` with ``N = 2`` sheets, ``g = (v - 2) / 2``.
    """
    if m.legs or not is_trivalent(m):
        raise DomainError("weave_genus needs a closed trivalent map")
    v = m.num_vertices
    if v == 0 or v % 2:
        raise DomainError(f"weave_genus needs an even, positive vertex count (got {v})")
    if not m.is_connected():
        raise DomainError("weave_genus needs a connected map")
    return (v - 2) // 2


# -- canonical form -----------------------------------------------------------


def _component_code(sigma, alpha, comp, reflect):
    """Minimal BFS code of one connected component over all admissible starts."""
    orients = [sigma]
    if reflect:
        inv = list(sigma)
        for d in comp:
            inv[sigma[d]] = d
        orients.append(inv)
    # cheap isomorphism invariant per (orientation, dart) prunes the start set
    cand = []
    for oi, rot in enumerate(orients):
        flen = {}
        for d in comp:
            if d in flen:
                continue
            cyc = [d]
            x = rot[alpha[d]]
            while x != d:
                cyc.append(x)
                x = rot[alpha[x]]
            for x in cyc:
                flen[x] = len(cyc)
        vdeg = {}
        for d in comp:
            if d in vdeg:
                continue
            cyc = [d]
            x = rot[d]
            while x != d:
                cyc.append(x)
                x = rot[x]
            for x in cyc:
                vdeg[x] = len(cyc)
        for d in comp:
            cand.append(((vdeg[d], flen[d], flen[alpha[d]]), oi, d))
    key_min = min(c[0] for c in cand)
    best = None
    for key, oi, start in cand:
        if key != key_min:
            continue
        rot = orients[oi]
        label = {start: 0}
        order = [start]
        code = []
        better = best is None
        aborted = False
        for pos in range(len(comp)):
            d = order[pos]
            s, a = rot[d], alpha[d]
            if s not in label:
                label[s] = len(order)
                order.append(s)
            if a not in label:
                label[a] = len(order)
                order.append(a)
            pair = (label[s], label[a])
            if not better:
                if pair > best[pos]:
                    aborted = True
                    break
                if pair < best[pos]:
                    better = True
            code.append(pair)
        if not aborted and better:
            best = tuple(code)
    return best


def _canonical(m: CombMap, reflect: bool):
    key = ("canon", reflect)
    if key in m._cache:
        return m._cache[key]
    comps = m.components()
    codes = []
    for comp in comps:
        codes.append(_component_code(m.sigma, m.alpha, comp, reflect))
    codes.sort()
    m._cache[key] = (m.circles, tuple(codes))
    return m._cache[key]


def canonical_form(m: CombMap, reflect: bool = True) -> bytes:
    """Byte string invariant under dart relabeling (and, if ``reflect``, mirroring).

    Two maps are isomorphic iff their canonical forms agree.
    """
    circles, codes = _canonical(m, reflect)
    flat = [circles, len(codes)]
    for code in codes:
        flat.append(len(code))
        for s, a in code:
            flat.append(s)
            flat.append(a)
    width = "H" if max(flat, default=0) < 65536 else "L"
    return width.encode() + array(width, flat).tobytes()


def canonical_map(m: CombMap, reflect: bool = True) -> CombMap:
    """The representative map whose darts are labeled by the canonical code."""
    circles, codes = _canonical(m, reflect)
    sigma: list[int] = []
    alpha: list[int] = []
    offset = 0
    for code in codes:
        for s, a in code:
            sigma.append(s + offset)
            alpha.append(a + offset)
        offset += len(code)
    legs = [d for d, e in enumerate(alpha) if d == e]
    return CombMap(sigma, alpha, legs, circles, check=False)


def isomorphic(m1: CombMap, m2: CombMap, reflect: bool = True) -> bool:
    if (m1.num_darts, m1.circles) != (m2.num_darts, m2.circles):
        return False
    return canonical_form(m1, reflect) == canonical_form(m2, reflect)


# -- constructors --------------------------------------------------------------


def from_rotation(rotation: dict[int, Sequence[int]] | Sequence[Sequence[int]]) -> CombMap:
    """Build a map of a simple graph from counterclockwise neighbour lists."""
    if not isinstance(rotation, dict):
        rotation = dict(enumerate(rotation))
    dart_of = {}
    sigma: list[int] = []
    for v in sorted(rotation):
        nbrs = list(rotation[v])
        base = len(sigma)
        for i, w in enumerate(nbrs):
            if (v, w) in dart_of:
                raise StructuralError("from_rotation expects a simple graph")
            dart_of[(v, w)] = base + i
            sigma.append(base + (i + 1) % len(nbrs))
    alpha = [0] * len(sigma)
    for (v, w), d in dart_of.items():
        if (w, v) not in dart_of:
            raise StructuralError(f"edge {v}-{w} listed at only one endpoint")
        alpha[d] = dart_of[(w, v)]
    return CombMap(sigma, alpha)


def from_plane_embedding(pos: Sequence[tuple[float, float]], edges: Iterable[tuple[int, int]]) -> CombMap:
    """Rotation system of a straight-line plane drawing (neighbours sorted by angle)."""
    nbrs: dict[int, list[int]] = {v: [] for v in range(len(pos))}
    for a, b in edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    rot = {}
    for v, ws in nbrs.items():
        x0, y0 = pos[v]
        rot[v] = sorted(ws, key=lambda w: math.atan2(pos[w][1] - y0, pos[w][0] - x0))
    return from_rotation(rot)


def theta_graph() -> CombMap:
    """Two vertices joined by three parallel edges."""
    return CombMap([1, 2, 0, 5, 3, 4], [3, 4, 5, 0, 1, 2])


def single_loop() -> CombMap:
    """One degree-2 vertex carrying a loop: two faces."""
    return CombMap([1, 0], [1, 0])


def free_circle() -> CombMap:
    return CombMap([], [], circles=1)


def tetrahedron() -> CombMap:
    pos = [(0.0, 0.0), (10.0, 0.0), (5.0, 9.0), (5.0, 3.0)]
    return from_plane_embedding(pos, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)])


def cube_graph() -> CombMap:
    pos = [(0, 0), (10, 0), (10, 10), (0, 10), (3, 3), (7, 3), (7, 7), (3, 7)]
    edges = [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4),
             (0, 4), (1, 5), (2, 6), (3, 7)]
    return from_plane_embedding([(float(x), float(y)) for x, y in pos], edges)


def prism_graph() -> CombMap:
    pos = [(0.0, 0.0), (10.0, 0.0), (5.0, 9.0), (3.5, 2.5), (6.5, 2.5), (5.0, 5.5)]
    edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]
    return from_plane_embedding(pos, edges)


def degree_histogram(m: CombMap) -> Counter:
    return Counter(len(v) for v in m.vertices())


# -- local surgery ---------------------------------------------------------------


def _compact(sigma: dict[int, int], alpha: dict[int, int], circles: int) -> CombMap:
    darts = sorted(sigma)
    idx = {d: i for i, d in enumerate(darts)}
    s = [idx[sigma[d]] for d in darts]
    a = [idx[alpha[d]] for d in darts]
    legs = [i for i, x in enumerate(a) if x == i]
    return CombMap(s, a, legs, circles, check=False)


def remove_bigon(m: CombMap, face: Sequence[int]) -> CombMap:
    """Delete the two vertices of a bigon face and splice their outer edges."""
    d1, d2 = face
    s, a = m.sigma, m.alpha
    u_darts = {d1, s[d1], s[s[d1]]}
    v_darts = {d2, s[d2], s[s[d2]]}
    if u_darts & v_darts or len(u_darts) != 3 or len(v_darts) != 3:
        raise DomainError("bigon must join two distinct trivalent vertices")
    inner = {d1, d2, a[d1], a[d2]}
    (eu,) = u_darts - inner
    (ev,) = v_darts - inner
    sigma = dict(enumerate(s))
    alpha = dict(enumerate(a))
    x, y = alpha[eu], alpha[ev]
    for d in u_darts | v_darts:
        del sigma[d]
        del alpha[d]
    circles = m.circles
    if x == ev:
        circles += 1
    else:
        alpha[x] = y
        alpha[y] = x
    return _compact(sigma, alpha, circles)


def contract_triangle(m: CombMap, face: Sequence[int]) -> CombMap:
    """Collapse a triangular face with three distinct trivalent vertices to one vertex."""
    s, a = m.sigma, m.alpha
    d = list(face)
    vo = m.vertex_of()
    if len({vo[x] for x in d}) != 3:
        raise DomainError("triangle must have three distinct vertices")
    ext = []
    for i in range(3):
        di = d[i]
        if s[s[s[di]]] != di:
            raise DomainError("triangle vertices must be trivalent")
        ext.append(s[di])
    sigma = dict(enumerate(s))
    alpha = dict(enumerate(a))
    for x in d:
        for y in (x, a[x]):
            sigma.pop(y, None)
            alpha.pop(y, None)
    for i in range(3):
        sigma[ext[i]] = ext[i - 1]
    return _compact(sigma, alpha, m.circles)


def delete_edge_smooth(m: CombMap, d: int) -> CombMap | None:
    """Delete edge ``{d, alpha d}`` and smooth both endpoints.

    Returns None when smoothing would create a loop-free circle or the edge is a loop.
    """
    s = m.sigma
    vo = m.vertex_of()
    e = m.alpha[d]
    if e == d or vo[d] == vo[e]:
        return None
    sigma = dict(enumerate(s))
    alpha = dict(enumerate(m.alpha))
    for end in (d, e):
        p, q = s[end], s[s[end]]
        if s[q] != end:
            raise DomainError("delete_edge_smooth needs trivalent endpoints")
    for end in (d, e):
        p, q = s[end], s[s[end]]
        x, y = alpha[p], alpha[q]
        if x == q:
            return None
        for z in (end, p, q):
            sigma.pop(z, None)
            alpha.pop(z, None)
        alpha[x] = y
        alpha[y] = x
    if any(alpha[z] not in alpha for z in alpha):
        return None
    return _compact(sigma, alpha, m.circles)


def expand_vertex(m: CombMap, v: int) -> CombMap:
    """Replace trivalent vertex ``v`` by a triangle (inverse of :func:`contract_triangle`)."""
    cyc = m.vertices()[v]
    if len(cyc) != 3:
        raise DomainError("expand_vertex needs a trivalent vertex")
    e = list(cyc)
    D = m.num_darts
    sigma = dict(enumerate(m.sigma))
    alpha = dict(enumerate(m.alpha))
    p = [D + i for i in range(3)]
    q = [D + 3 + i for i in range(3)]
    for i in range(3):
        sigma[e[i]] = p[i]
        sigma[p[i]] = q[i]
        sigma[q[i]] = e[i]
    for i in range(3):
        j = (i + 1) % 3
        # p_i points towards the next corner counterclockwise
        alpha[p[i]] = q[j]
        alpha[q[j]] = p[i]
    return _compact(sigma, alpha, m.circles)


def insert_bigon(m: CombMap, d: int) -> CombMap:
    """Subdivide edge ``{d, alpha d}`` by a bigon (a standard-torus connect sum)."""
    e = m.alpha[d]
    if e == d:
        raise DomainError("cannot insert a bigon on a boundary leg")
    D = m.num_darts
    sigma = dict(enumerate(m.sigma))
    alpha = dict(enumerate(m.alpha))
    u0, u1, u2, v0, v1, v2 = range(D, D + 6)
    sigma.update({u0: u1, u1: u2, u2: u0, v0: v1, v1: v2, v2: v0})
    alpha.update({d: u0, u0: d, e: v0, v0: e, u1: v2, v2: u1, u2: v1, v1: u2})
    return _compact(sigma, alpha, m.circles)
