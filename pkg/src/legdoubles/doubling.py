"""Doubles of two fillings of the (2, n) torus link as trivalent sphere maps.

A filling is a triangulation T of the (n+2)-gon; its 2-graph is the dual
tree of T.  Gluing the tree of T1 to the mirrored tree of T2 along the
boundary gives a closed trivalent map.  Bigon faces and triangle faces
split off standard and Clifford tori; :func:`decompose` searches for a
full reduction down to the theta graph.
"""

from __future__ import annotations

import enum
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .chromatic import chromatic_polynomial, extract_linear_factors
from .errors import DomainError, ResourceError
from .plane_graph import (CombMap, Multigraph, canonical_form, contract_triangle, cube_graph,
                          delete_edge_smooth, dual, is_trivalent, remove_bigon, theta_graph,
                          weave_genus)
from .polygon import Triangulation, dual_tree, enumerate_triangulations, flip_distance

__all__ = [
    "STD", "CLIFFORD", "DecompositionReport", "DoubleVerdict", "Fillability", "double_map",
    "superimpose_dual", "reduce_step", "decompose", "is_generalized_cube", "is_tree_double",
    "double_verdict", "search_equal_chromatic", "search_q_minus_2_trianglefree", "SearchResult",
]

STD = "std"
CLIFFORD = "clifford"

MAX_DECOMPOSE_VERTICES = 24
MAX_CUBE_VERTICES = 20
MAX_TREE_DOUBLE_FACES = 14


def _check_same(T1: Triangulation, T2: Triangulation) -> None:
    if T1.n != T2.n:
        raise DomainError(f"triangulations of a {T1.n}-gon and a {T2.n}-gon cannot be doubled")


def double_map(T1: Triangulation, T2: Triangulation) -> CombMap:
    """Glue the dual tree of T1 to the mirrored dual tree of T2, leg i to leg i."""
    _check_same(T1, T2)
    a, b = dual_tree(T1), dual_tree(T2)
    off = a.num_darts
    sigma = list(a.sigma)
    alpha = list(a.alpha)
    inv = [0] * b.num_darts
    for d, e in enumerate(b.sigma):
        inv[e] = d
    sigma.extend(x + off for x in inv)
    alpha.extend(x + off for x in b.alpha)
    for la, lb in zip(a.legs, b.legs):
        alpha[la] = lb + off
        alpha[lb + off] = la
    return CombMap(sigma, alpha)


def superimpose_dual(T1: Triangulation, T2: Triangulation) -> Multigraph:
    """Polygon boundary together with the diagonals of both triangulations."""
    _check_same(T1, T2)
    N = T1.n
    edges = [(i, (i + 1) % N) for i in range(N)]
    edges += list(T1.diagonals) + list(T2.diagonals)
    return Multigraph(N, edges)


def reduce_step(m: CombMap) -> list[tuple[str, CombMap]]:
    """Every single bigon removal and triangle contraction available in ``m``."""
    out = []
    vo = m.vertex_of()
    deg = [len(v) for v in m.vertices()]
    for f in m.faces():
        vs = [vo[d] for d in f]
        if len(set(vs)) != len(f) or any(deg[v] != 3 for v in vs):
            continue
        if len(f) == 2:
            out.append((STD, remove_bigon(m, f)))
        elif len(f) == 3:
            out.append((CLIFFORD, contract_triangle(m, f)))
    return out


@dataclass
class DecompositionReport:
    decomposable: bool
    k_std: int = 0
    l_clifford: int = 0
    residual: Optional[bytes] = None
    residual_vertices: Optional[int] = None
    certificate: dict = field(default_factory=dict)
    moves: list = field(default_factory=list)
    genus: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            "decomposable": self.decomposable,
            "k_std": self.k_std,
            "l_clifford": self.l_clifford,
            "genus": self.genus,
            "moves": list(self.moves),
            "residual": None if self.residual is None else self.residual.hex(),
            "residual_vertices": self.residual_vertices,
            "certificate": dict(self.certificate),
        }


_THETA = canonical_form(theta_graph())
# canonical form -> (ok, moves, residual form, residual vertex count)
_REDUCE_MEMO: dict[bytes, tuple] = {}
_REPORT_MEMO: dict[bytes, DecompositionReport] = {}


def _viable(m: CombMap) -> bool:
    return m.circles == 0 and not m.has_loop()


def _solve(m: CombMap, key: bytes):
    hit = _REDUCE_MEMO.get(key)
    if hit is not None:
        return hit
    if key == _THETA:
        res = (True, (), None, None)
        _REDUCE_MEMO[key] = res
        return res
    best_fail = (m.num_vertices, key)
    res = None
    for move, child in reduce_step(m):
        if not _viable(child):
            continue
        ck = canonical_form(child)
        ok, moves, rkey, rv = _solve(child, ck)
        if ok:
            res = (True, (move,) + moves, None, None)
            break
        if (rv, rkey) < best_fail:
            best_fail = (rv, rkey)
    if res is None:
        res = (False, (), best_fail[1], best_fail[0])
    _REDUCE_MEMO[key] = res
    return res


def decompose(m: CombMap, max_vertices: int = MAX_DECOMPOSE_VERTICES) -> DecompositionReport:
    """Search for a sequence of bigon/triangle reductions ending at the theta graph."""
    if m.legs or not is_trivalent(m) or not m.is_connected() or m.num_darts == 0:
        raise DomainError("decompose needs a closed connected trivalent map")
    if m.num_vertices > max_vertices:
        raise ResourceError(f"decompose capped at {max_vertices} vertices")
    key = canonical_form(m)
    cached = _REPORT_MEMO.get(key)
    if cached is not None:
        return cached
    ok, moves, rkey, rv = _solve(m, key)
    mults, _ = extract_linear_factors(chromatic_polynomial(dual(m)), [2, 3])
    cert = {"x-2": mults[0], "x-3": mults[1]}
    rep = DecompositionReport(
        decomposable=ok,
        k_std=moves.count(STD),
        l_clifford=moves.count(CLIFFORD),
        residual=None if ok else rkey,
        residual_vertices=None if ok else rv,
        certificate=cert,
        moves=list(moves),
        genus=weave_genus(m) if m.num_vertices % 2 == 0 else None,
    )
    _REPORT_MEMO[key] = rep
    return rep


def clear_caches() -> None:
    _REDUCE_MEMO.clear()
    _REPORT_MEMO.clear()
    _REDUCE_MEMO[_THETA] = (True, (), None, None)


# -- generalized cube graphs --------------------------------------------------------


def is_generalized_cube(m: CombMap, max_vertices: int = MAX_CUBE_VERTICES) -> bool:
    """Can single edge deletions (each followed by smoothing) reach the cube graph?"""
    if m.legs or not is_trivalent(m):
        raise DomainError("is_generalized_cube needs a closed trivalent map")
    if m.num_vertices > max_vertices:
        raise ResourceError(f"generalized cube search capped at {max_vertices} vertices")
    target = canonical_form(cube_graph())
    seen: dict[bytes, bool] = {}

    def go(g: CombMap, key: bytes) -> bool:
        if key in seen:
            return seen[key]
        if key == target:
            seen[key] = True
            return True
        seen[key] = False
        if g.num_vertices <= 8:
            return False
        done = set()
        for d, e in g.edges():
            child = delete_edge_smooth(g, d)
            if child is None or not _viable(child) or child.has_bridge():
                continue
            ck = canonical_form(child)
            if ck in done:
                continue
            done.add(ck)
            if go(child, ck):
                seen[key] = True
                return True
        return False

    return go(m, canonical_form(m))


# -- tree doubles -----------------------------------------------------------------


def is_tree_double(m: CombMap, max_faces: int = MAX_TREE_DOUBLE_FACES) -> bool:
    """Is there a closed curve crossing edges of ``m`` that visits every face once?"""
    if m.legs:
        raise DomainError("is_tree_double needs a closed map")
    F = m.num_faces
    if F > max_faces:
        raise ResourceError(f"tree-double search capped at {max_faces} faces")
    g = dual(m)
    if F == 1:
        return True
    mult: dict[tuple[int, int], int] = {}
    for a, b in g.edges:
        if a != b:
            mult[(a, b)] = mult.get((a, b), 0) + 1
    if F == 2:
        return mult.get((0, 1), 0) >= 2
    adj = [set() for _ in range(F)]
    for a, b in mult:
        adj[a].add(b)
        adj[b].add(a)
    def go(v, used):
        if used == (1 << F) - 1:
            return 0 in adj[v]
        for w in sorted(adj[v]):
            if not used >> w & 1:
                if go(w, used | 1 << w):
                    return True
        return False

    return go(0, 1)


# -- verdicts ------------------------------------------------------------------------


class Fillability(str, enum.Enum):
    OBSTRUCTED = "Obstructed"
    UNKNOWN = "Unknown"


@dataclass
class DoubleVerdict:
    non_loose: bool
    embedded_exact_fillable: Fillability
    decomposition: DecompositionReport
    flip_distance: int

    def to_dict(self) -> dict:
        return {
            "non_loose": self.non_loose,
            "embedded_exact_fillable": self.embedded_exact_fillable.value,
            "decomposition": self.decomposition.to_dict(),
            "flip_distance": self.flip_distance,
        }


def double_verdict(T1: Triangulation, T2: Triangulation) -> DoubleVerdict:
    _check_same(T1, T2)
    status = Fillability.OBSTRUCTED if T1 != T2 else Fillability.UNKNOWN
    return DoubleVerdict(True, status, decompose(double_map(T1, T2)), flip_distance(T1, T2))


# -- searches --------------------------------------------------------------------------


@dataclass
class SearchResult:
    matches: list
    complete: bool
    processed: int
    total: int


def _pair_record(args):
    N, i, j = args
    ts = enumerate_triangulations(N)
    m = double_map(ts[i], ts[j])
    P = chromatic_polynomial(dual(m))
    return i, j, canonical_form(m).hex(), list(P.coeffs)


def _pair_indices(N: int):
    C = len(enumerate_triangulations(N))
    # (T2, T1) gives the mirror image of the (T1, T2) double
    return [(i, j) for i in range(C) for j in range(i, C)]


def search_equal_chromatic(N: int, budget: Optional[int] = None, jobs: int = 1,
                           checkpoint: Optional[str] = None) -> SearchResult:
    """Pairs of non-isomorphic doubles sharing a dual chromatic polynomial.

    Only unordered pairs (T1, T2) with index(T1) <= index(T2) are scanned.
    ``budget`` caps the number of doubles examined; ``checkpoint`` is a JSON
    file through which an interrupted run resumes.
    """
    if N > 12:
        raise DomainError("equal-chromatic search is limited to N <= 12")
    pairs = _pair_indices(N)
    records: dict[tuple[int, int], tuple[str, list]] = {}
    if checkpoint and os.path.exists(checkpoint):
        with open(checkpoint) as fh:
            state = json.load(fh)
        if state.get("N") == N:
            for i, j, key, coeffs in state["records"]:
                records[(i, j)] = (key, coeffs)
    todo = [p for p in pairs if p not in records]
    if budget is not None:
        room = max(0, budget - len(records))
        todo = todo[:room]
    work = [(N, i, j) for i, j in todo]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            out = list(ex.map(_pair_record, work, chunksize=max(1, len(work) // (jobs * 8))))
    else:
        out = [_pair_record(w) for w in work]
    for i, j, key, coeffs in out:
        records[(i, j)] = (key, coeffs)
    if checkpoint:
        tmp = checkpoint + ".tmp"
        with open(tmp, "w") as fh:
            json.dump({"N": N, "records": [[i, j, k, c] for (i, j), (k, c) in sorted(records.items())]}, fh)
        os.replace(tmp, checkpoint)

    ts = enumerate_triangulations(N)
    by_poly: dict[tuple, dict[str, tuple[int, int]]] = {}
    for (i, j) in sorted(records):
        key, coeffs = records[(i, j)]
        classes = by_poly.setdefault(tuple(coeffs), {})
        classes.setdefault(key, (i, j))
    matches = []
    for poly in sorted(by_poly):
        reps = sorted(by_poly[poly].values())
        for a in range(len(reps)):
            for b in range(a + 1, len(reps)):
                (i1, j1), (i2, j2) = reps[a], reps[b]
                matches.append(((ts[i1], ts[j1]), (ts[i2], ts[j2])))
    matches.sort(key=lambda pr: (pr[0][0].key, pr[0][1].key, pr[1][0].key, pr[1][1].key))
    return SearchResult(matches, len(records) == len(pairs), len(records), len(pairs))


def search_q_minus_2_trianglefree(N: int) -> list[tuple[Triangulation, Triangulation]]:
    """Ordered pairs whose double has no triangle face but (q - 2) divides the point count."""
    if N > 10:
        raise DomainError("search limited to N <= 10")
    ts = enumerate_triangulations(N)
    found = []
    for i in range(len(ts)):
        for j in range(i, len(ts)):
            m = double_map(ts[i], ts[j])
            if any(len(f) == 3 for f in m.faces()):
                continue
            mults, _ = extract_linear_factors(chromatic_polynomial(dual(m)), [3])
            if mults[0] >= 1:
                found.append((ts[i], ts[j]))
                if i != j:
                    found.append((ts[j], ts[i]))
    found.sort(key=lambda p: (p[0].key, p[1].key))
    return found
