"""Exchange matrices, mutation and folding by finite group actions.

Rows index all vertices (mutable first, then frozen); columns index the
mutable vertices.  ``b[i][j] > 0`` counts arrows ``i -> j``.
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional, Sequence

from .errors import DomainError, ResourceError, StructuralError
from .polygon import Triangulation, flip, rotate

__all__ = [
    "ExchangeMatrix", "GroupAction", "Admissibility", "mutate", "orbit_mutate",
    "quiver_from_triangulation", "is_admissible", "fold", "is_globally_foldable",
    "count_folded_seeds", "count_symmetric_flip_class", "folded_exchange_monomials",
]

DEFAULT_SEED_CAP = 10**5


class ExchangeMatrix:
    """Integer ``n_total x n_mut`` exchange matrix with optional skew-symmetrizer ``D``."""

    __slots__ = ("n_mut", "n_total", "B", "D")

    def __init__(self, B: Sequence[Sequence[int]], n_mut: Optional[int] = None,
                 D: Optional[Sequence[int]] = None, check: bool = True):
        rows = tuple(tuple(int(x) for x in r) for r in B)
        if n_mut is None:
            n_mut = len(rows[0]) if rows else 0
        self.n_mut = int(n_mut)
        self.n_total = len(rows)
        self.B = rows
        self.D = None if D is None else tuple(int(d) for d in D)
        if check:
            self.validate()

    def validate(self) -> None:
        n = self.n_mut
        if self.n_total < n:
            raise StructuralError("fewer rows than mutable vertices")
        if any(len(r) != n for r in self.B):
            raise StructuralError(f"every row needs {n} entries")
        if self.D is not None:
            if len(self.D) != n or any(d <= 0 for d in self.D):
                raise StructuralError("skew-symmetrizer must be positive of length n_mut")
        d = self.D or (1,) * n
        for i in range(n):
            for j in range(n):
                if self.B[i][j] * d[j] != -self.B[j][i] * d[i]:
                    raise StructuralError(f"mutable block is not skew-symmetrizable at ({i}, {j})")

    @classmethod
    def square(cls, B: Sequence[Sequence[int]]) -> ExchangeMatrix:
        return cls(B, len(B))

    def __getitem__(self, ij):
        i, j = ij
        return self.B[i][j]

    def mutable_block(self) -> list[list[int]]:
        return [list(r) for r in self.B[: self.n_mut]]

    def key(self) -> tuple:
        return (self.n_mut, self.B, self.D)

    def __eq__(self, other):
        if not isinstance(other, ExchangeMatrix):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"ExchangeMatrix(n_mut={self.n_mut}, B={[list(r) for r in self.B]}, D={self.D})"

    def to_json(self) -> str:
        out = {"B": [list(r) for r in self.B], "n_mut": self.n_mut}
        if self.D is not None:
            out["D"] = list(self.D)
        return json.dumps(out)

    @classmethod
    def from_json(cls, text: str) -> ExchangeMatrix:
        data = json.loads(text)
        if isinstance(data, list):
            return cls(data, len(data[0]) if data else 0)
        return cls(data["B"], data.get("n_mut"), data.get("D"))


class GroupAction:
    """Cyclic group generated by a permutation of the vertex indices (0-based)."""

    __slots__ = ("generator", "order")

    def __init__(self, generator: Sequence[int]):
        g = tuple(int(x) for x in generator)
        if sorted(g) != list(range(len(g))):
            raise StructuralError("generator is not a permutation")
        self.generator = g
        order = 1
        for cyc in _cycles(g):
            order = order * len(cyc) // gcd(order, len(cyc))
        self.order = order

    @classmethod
    def identity(cls, n: int) -> GroupAction:
        return cls(range(n))

    @classmethod
    def parse(cls, text: str, n: int) -> GroupAction:
        """Cycle notation with 1-based labels, e.g. ``"(1 5)(2 4)"``."""
        g = list(range(n))
        for body in re.findall(r"\(([^()]*)\)", text):
            items = [int(t) - 1 for t in re.split(r"[\s,]+", body.strip()) if t]
            if any(not 0 <= x < n for x in items):
                raise DomainError(f"cycle ({body}) has labels outside 1..{n}")
            for a, b in zip(items, items[1:] + items[:1]):
                g[a] = b
        if re.sub(r"\([^()]*\)", "", text).strip():
            raise DomainError(f"cannot parse permutation {text!r}")
        return cls(g)

    def __call__(self, i: int) -> int:
        return self.generator[i]

    def orbits(self) -> list[list[int]]:
        return sorted(sorted(c) for c in _cycles(self.generator))

    def orbit_of(self) -> list[int]:
        out = [0] * len(self.generator)
        for k, orb in enumerate(self.orbits()):
            for i in orb:
                out[i] = k
        return out

    def __repr__(self):
        cyc = "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in _cycles(self.generator) if len(c) > 1)
        return f"GroupAction({cyc or '()'})"


def _cycles(g: Sequence[int]) -> list[list[int]]:
    seen = set()
    out = []
    for i in range(len(g)):
        if i in seen:
            continue
        c = []
        x = i
        while x not in seen:
            seen.add(x)
            c.append(x)
            x = g[x]
        out.append(c)
    return out


def mutate(B: ExchangeMatrix, k: int) -> ExchangeMatrix:
    """Matrix mutation at the mutable index ``k``."""
    if not 0 <= k < B.n_mut:
        raise DomainError(f"index {k} is not mutable")
    b = B.B
    bk = [r[k] for r in b]
    rowk = b[k]
    out = []
    for i, r in enumerate(b):
        if i == k:
            out.append(tuple(-x for x in r))
            continue
        bik = bk[i]
        if bik == 0:
            out.append(tuple(-x if j == k else x for j, x in enumerate(r)))
            continue
        new = []
        for j, x in enumerate(r):
            if j == k:
                new.append(-x)
            else:
                bkj = rowk[j]
                new.append(x + (abs(bik) * bkj + bik * abs(bkj)) // 2)
        out.append(tuple(new))
    return ExchangeMatrix(out, B.n_mut, B.D, check=False)


def orbit_mutate(B: ExchangeMatrix, orbit: Iterable[int]) -> ExchangeMatrix:
    for k in orbit:
        B = mutate(B, k)
    return B


def quiver_from_triangulation(T: Triangulation, with_frozen: bool = True,
                              diagonal_order: Optional[Sequence[tuple[int, int]]] = None) -> ExchangeMatrix:
    """Quiver of a triangulation: diagonals are mutable, sides frozen.

    Inside a triangle with vertices a < b < c the arrows run
    ab -> ca -> bc -> ab.  Side (i, i+1) is frozen vertex ``n_mut + i``.
    Mutable vertices follow ``diagonal_order`` (default: sorted).
    """
    N = T.n
    diags = [tuple(sorted(d)) for d in diagonal_order] if diagonal_order is not None else sorted(T.diagonals)
    if sorted(diags) != sorted(T.diagonals):
        raise DomainError("diagonal_order must list exactly the diagonals of T")
    idx = {d: i for i, d in enumerate(diags)}
    n = len(diags)
    if with_frozen:
        for i in range(N):
            idx[tuple(sorted((i, (i + 1) % N)))] = n + i
    total = n + (N if with_frozen else 0)
    M = [[0] * n for _ in range(total)]
    for a, b, c in T.triangles():
        es = [(a, b), (b, c), (a, c)]
        for s, t in ((0, 2), (2, 1), (1, 0)):
            i, j = idx.get(es[s]), idx.get(es[t])
            if i is None or j is None:
                continue
            if j < n:
                M[i][j] += 1
            if i < n:
                M[j][i] -= 1
    return ExchangeMatrix(M, n)


@dataclass
class Admissibility:
    ok: bool
    condition: Optional[int] = None
    detail: str = ""

    def __bool__(self):
        return self.ok


def is_admissible(B: ExchangeMatrix, g: GroupAction) -> Admissibility:
    """Check the four admissibility conditions; report the first one violated."""
    n, N = B.n_mut, B.n_total
    if len(g.generator) != N:
        raise DomainError("group action and matrix have different sizes")
    for i in range(N):
        if (i < n) != (g(i) < n):
            return Admissibility(False, 1, f"vertex {i + 1} and its image {g(i) + 1} differ in type")
    for i in range(N):
        for j in range(n):
            if B.B[i][j] != B.B[g(i)][g(j)]:
                return Admissibility(False, 2, f"b[{i + 1},{j + 1}] != b[{g(i) + 1},{g(j) + 1}]")
    orbit = g.orbit_of()
    for i in range(N):
        for j in range(n):
            if i != j and orbit[i] == orbit[j] and B.B[i][j] != 0:
                return Admissibility(False, 3, f"b[{i + 1},{j + 1}] = {B.B[i][j]} inside one orbit")
    for orb in g.orbits():
        for a in orb:
            for c in orb:
                if a < c:
                    for j in range(n):
                        if B.B[a][j] * B.B[c][j] < 0:
                            return Admissibility(False, 4, f"b[{a + 1},{j + 1}] and b[{c + 1},{j + 1}] differ in sign")
    return Admissibility(True)


def _orbit_split(B: ExchangeMatrix, g: GroupAction):
    n = B.n_mut
    orbs = g.orbits()
    mut = [o for o in orbs if o[0] < n]
    frz = [o for o in orbs if o[0] >= n]
    return mut, frz


def fold(B: ExchangeMatrix, g: GroupAction) -> ExchangeMatrix:
    """Folded exchange matrix: rows are orbits, entries summed over the row orbit."""
    adm = is_admissible(B, g)
    if not adm:
        raise DomainError(f"matrix is not admissible (condition {adm.condition}: {adm.detail})")
    mut, frz = _orbit_split(B, g)
    rows = []
    for I in mut + frz:
        rows.append([sum(B.B[i][J[0]] for i in I) for J in mut])
    D = [len(J) for J in mut]
    return ExchangeMatrix(rows, len(mut), D)


def is_globally_foldable(B: ExchangeMatrix, g: GroupAction, cap: int = DEFAULT_SEED_CAP) -> bool:
    """Do all matrices reachable by orbit mutations remain admissible?"""
    if not is_admissible(B, g):
        return False
    mut, _ = _orbit_split(B, g)
    seen = {B.B}
    queue = deque([B])
    while queue:
        cur = queue.popleft()
        for I in mut:
            nxt = orbit_mutate(cur, I)
            if nxt.B in seen:
                continue
            if not is_admissible(nxt, g):
                return False
            seen.add(nxt.B)
            if len(seen) > cap:
                raise ResourceError(f"more than {cap} seeds reachable; foldability undecided")
            queue.append(nxt)
    return True


def _principal(B: ExchangeMatrix) -> ExchangeMatrix:
    n = B.n_mut
    rows = [list(r) for r in B.B[:n]]
    for i in range(n):
        rows.append([1 if j == i else 0 for j in range(n)])
    return ExchangeMatrix(rows, n, check=False)


def count_folded_seeds(B: ExchangeMatrix, g: Optional[GroupAction] = None,
                       cap: int = DEFAULT_SEED_CAP) -> int:
    """Number of distinct clusters reachable by orbit mutations.

    Seeds are tracked with principal coefficients on the unfolded mutable
    part; a cluster is identified by its set of c-vectors.
    """
    n = B.n_mut
    if g is None:
        g = GroupAction.identity(B.n_total)
    if len(g.generator) != B.n_total:
        raise DomainError("group action and matrix have different sizes")
    mut, _ = _orbit_split(B, g)
    # frozen rows of the original do not affect clusters
    start = _principal(ExchangeMatrix(B.B[:n], n, B.D, check=False))

    def cluster_key(M):
        cols = [tuple(M.B[n + i][j] for i in range(n)) for j in range(n)]
        return frozenset(cols)

    seen_labeled = {start.B}
    clusters = {cluster_key(start)}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for I in mut:
            nxt = orbit_mutate(cur, I)
            if nxt.B in seen_labeled:
                continue
            seen_labeled.add(nxt.B)
            if len(seen_labeled) > cap:
                raise ResourceError(f"more than {cap} labeled seeds; exploration aborted")
            clusters.add(cluster_key(nxt))
            queue.append(nxt)
    return len(clusters)


def count_symmetric_flip_class(T: Triangulation, shift: int, cap: int = DEFAULT_SEED_CAP) -> int:
    """Triangulations reachable from a ``shift``-invariant T by flipping whole orbits."""
    if rotate(T, shift) != T:
        raise DomainError("starting triangulation is not invariant under the shift")
    seen = {T}
    queue = deque([T])
    while queue:
        cur = queue.popleft()
        done = set()
        for d in sorted(cur.diagonals):
            if d in done:
                continue
            orbit = []
            x = d
            while x not in orbit:
                orbit.append(x)
                x = tuple(sorted(((x[0] + shift) % cur.n, (x[1] + shift) % cur.n)))
            done.update(orbit)
            nxt = cur
            try:
                for e in orbit:
                    nxt = flip(nxt, e)
            except DomainError:
                continue
            if rotate(nxt, shift) != nxt or nxt in seen:
                continue
            seen.add(nxt)
            if len(seen) > cap:
                raise ResourceError("symmetric flip exploration cap exceeded")
            queue.append(nxt)
    return len(seen)


def folded_exchange_monomials(B: ExchangeMatrix, k: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Exponent vectors of the two monomials in the exchange relation at ``k``.

    The first collects rows with ``b_ik > 0``, the second rows with ``b_ik < 0``.
    """
    if not 0 <= k < B.n_mut:
        raise DomainError(f"index {k} is not mutable")
    col = [r[k] for r in B.B]
    return tuple(max(b, 0) for b in col), tuple(max(-b, 0) for b in col)
