"""Reproduction checks.  Each check returns a CheckResult; ``run_all`` runs them in order."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from math import comb

from .chromatic import (chromatic_polynomial, count_colorings_bruteforce, sheaf_point_count,
                        to_q_basis)
from .cluster import (ExchangeMatrix, GroupAction, count_folded_seeds, count_symmetric_flip_class,
                      fold, folded_exchange_monomials, is_admissible, is_globally_foldable,
                      quiver_from_triangulation)
from .cyclotomic import is_rational, niven_rational, two_cos
from .doubling import decompose, double_map, superimpose_dual
from .grassmann_obstruction import Status, karp_fixed_points, obstruct_twist_spun
from .plane_graph import Multigraph, cube_graph, dual, isomorphic, theta_graph
from .poly import IntPoly
from .polygon import (Triangulation, catalan, enumerate_triangulations, fan,
                      filling_count_lower_bound, flip_distance_table, symmetric_triangulations)

Q = IntPoly.x()
CUBE_FACTOR = IntPoly([-11, 14, -6, 1])  # q^3 - 6q^2 + 14q - 11
FOLDED_REFERENCE = [[0, -1, 0], [1, 0, -2], [0, 1, 0]]


@dataclass
class CheckResult:
    key: str
    title: str
    passed: bool
    detail: str
    elapsed: float
    limit: float

    @property
    def in_time(self) -> bool:
        return self.elapsed <= self.limit

    def line(self) -> str:
        mark = "PASS" if self.passed and self.in_time else "FAIL"
        return f"[{mark}] {self.key:>2} {self.title} ({self.elapsed:.2f}s / {self.limit:g}s) {self.detail}"


def octahedron() -> Multigraph:
    return Multigraph(6, [(a, b) for a in range(6) for b in range(a + 1, 6) if b - a != 3])


def random_multigraph(rng: random.Random, max_n: int = 9) -> Multigraph:
    n = rng.randint(1, max_n)
    m = rng.randint(0, 2 * n + 4)
    edges = []
    for _ in range(m):
        a, b = rng.randrange(n), rng.randrange(n)
        if a == b and rng.random() > 0.03:
            continue
        edges.append((a, b))
    # occasional parallel copies
    for e in list(edges):
        if rng.random() < 0.1:
            edges.append(e)
    return Multigraph(n, edges)


def check_chromatic_oracle(seed: int = 2024, count: int = 200):
    rng = random.Random(seed)
    bad = 0
    for _ in range(count):
        g = random_multigraph(rng)
        P = chromatic_polynomial(g)
        for x in (2, 3, 4, 5):
            if P(x) != count_colorings_bruteforce(g, x):
                bad += 1
    return bad == 0, f"{count} graphs, {bad} mismatches"


def check_cube_double():
    ts, tab = flip_distance_table(6)
    octa = octahedron()
    want = (Q + 1) * Q * (Q - 1) * CUBE_FACTOR
    pairs = ok = 0
    for i, a in enumerate(ts):
        for j, b in enumerate(ts):
            if tab[i][j] != 4:
                continue
            pairs += 1
            g = superimpose_dual(a, b)
            good = (g.isomorphic(octa) and to_q_basis(chromatic_polynomial(g)) == want
                    and isomorphic(double_map(a, b), cube_graph()))
            ok += good
    return pairs > 0 and ok == pairs, f"{ok}/{pairs} distance-4 pairs give the octahedron; P(q+1) = {want.format('q')}"


def check_symmetric_doubles(Ns=range(4, 10)):
    total = good = 0
    for N in Ns:
        for T in enumerate_triangulations(N):
            r = decompose(double_map(T, T))
            total += 1
            good += r.decomposable and (r.k_std, r.l_clifford) == (N - 3, 0)
    return good == total, f"{good}/{total} doubles decompose as (N-3) standard tori"


def check_initial_filling(Ns=range(5, 10)):
    total = good = 0
    for N in Ns:
        F = fan(N)
        for T in enumerate_triangulations(N):
            m = double_map(F, T)
            r = decompose(m)
            total += 1
            if not r.decomposable or r.k_std + r.l_clifford != N - 3:
                continue
            want = (Q + 1) * Q * (Q - 1) * (Q - 1) ** r.k_std * (Q - 2) ** r.l_clifford
            good += to_q_basis(chromatic_polynomial(dual(m))) == want
    return good == total, f"{good}/{total} fan doubles decompose with matching point count"


def check_distance_dichotomy(Ns=(6, 7, 8)):
    details = []
    ok = True
    for N in Ns:
        n = N - 2
        ts, tab = flip_distance_table(N)
        far_dec = near_total = dec = 0
        for i, a in enumerate(ts):
            for j, b in enumerate(ts):
                r = decompose(double_map(a, b))
                d = tab[i][j]
                if r.decomposable:
                    dec += 1
                    if d >= n:
                        far_dec += 1
                if d >= n:
                    near_total += 1
        ok = ok and far_dec == 0
        details.append(f"N={N}: {dec} decomposable, {near_total} pairs at distance >= {n}, {far_dec} violations")
    return ok, "; ".join(details)


def check_point_counts(Ns=range(3, 9), qs=(2, 3, 4)):
    total = 0
    bad = {q: 0 for q in qs}
    for N in Ns:
        ts = enumerate_triangulations(N)
        for a in ts:
            for b in ts:
                m = double_map(a, b)
                total += 1
                for q in qs:
                    c = sheaf_point_count(m, q)
                    bad[q] += not (isinstance(c, int) and c >= 1)
    theta_ok = all(sheaf_point_count(theta_graph(), q) == 1 for q in range(2, 12))
    per_q = ", ".join(f"q={q}: {total - bad[q]}/{total} positive" for q in qs)
    ok = theta_ok and not any(bad.values())
    return ok, f"{per_q}; theta gives 1: {theta_ok}"


def check_symmetric_counts():
    rows = []
    ok = True
    for N, k in [(6, 3), (8, 4), (10, 5), (12, 6), (6, 2), (9, 3), (12, 4)]:
        m = N // 2 if 2 * k == N else N // 3
        got = len(symmetric_triangulations(N, k))
        closed = m * catalan(m - 1)
        bound = filling_count_lower_bound(N - 2, k)
        good = got == closed and got >= bound
        ok = ok and good
        rows.append(f"N={N},k={k}: {got} (closed form {closed}, f={bound})")
    return ok, "; ".join(rows)


def octagon_quiver():
    T = Triangulation.parse("8:0-2,0-3,0-4,4-6,4-7")
    order = [(0, 2), (0, 3), (0, 4), (4, 7), (4, 6)]
    Qm = quiver_from_triangulation(T, True, order)
    # half turn: diagonals 1<->5, 2<->4, sides i <-> i+4
    g = GroupAction([4, 3, 2, 1, 0] + [5 + (i + 4) % 8 for i in range(8)])
    return T, Qm, g


def same_up_to_convention(A, B) -> bool:
    n = len(B)
    BT = [[B[j][i] for j in range(n)] for i in range(n)]
    cands = [B, BT, [[-x for x in r] for r in B], [[-x for x in r] for r in BT]]
    return [list(r) for r in A] in cands


def check_folding():
    T, Qm, g = octagon_quiver()
    adm = is_admissible(Qm, g)
    gf = is_globally_foldable(Qm, g)
    F = fold(Qm, g)
    block = F.mutable_block()
    match = same_up_to_convention(block, FOLDED_REFERENCE)
    pos, neg = folded_exchange_monomials(F, 2)
    squares = sorted(e for e in pos + neg if e) == [2, 2] and pos[1] == 2
    seeds = count_folded_seeds(Qm, g)
    sym = len(symmetric_triangulations(8, 4))
    flips = count_symmetric_flip_class(T, 4)
    ok = bool(adm) and gf and match and squares and seeds == 20 == sym == flips
    return ok, (f"admissible={bool(adm)} globally_foldable={gf} block={block} matches={match} "
                f"exchange exponents={pos},{neg} seeds={seeds} symmetric={sym}")


def check_three_cycle():
    C = ExchangeMatrix.square([[0, 1, -1], [-1, 0, 1], [1, -1, 0]])
    adm = is_admissible(C, GroupAction([1, 2, 0]))
    return (not adm) and adm.condition == 3, f"condition {adm.condition}: {adm.detail}"


def check_obstruction():
    agree = all(is_rational(two_cos(p, q)) == niven_rational(p, q)
                for q in range(1, 31) for p in range(1, q))
    verdicts = {}
    ok = agree
    for args in [(2, 5, 1), (2, 7, 1), (3, 7, 1)]:
        v = obstruct_twist_spun(*args)
        verdicts[args] = v.status.value
        certified = all(c.rational is None and c.value.rational_value() is None for c in v.certificates)
        ok = ok and v.status == Status.OBSTRUCTED and certified and v.certificates
    pf = obstruct_twist_spun(2, 6, 1)
    forced = obstruct_twist_spun(2, 6, 1, force=True)
    wit = forced.rational_witness.rational if forced.rational_witness else None
    ok = ok and pf.status == Status.PRECONDITION_FAILED and wit == 0
    return bool(ok), f"niven agreement={agree} verdicts={verdicts} (2,6,1)={pf.status.value} witness={wit}"


def check_superimposition(Ns=range(3, 8)):
    total = good = 0
    for N in Ns:
        ts = enumerate_triangulations(N)
        for a in ts:
            for b in ts:
                total += 1
                good += dual(double_map(a, b)).isomorphic(superimpose_dual(a, b))
    return good == total, f"{good}/{total} pairs"


def check_karp():
    total = 0
    for n in range(2, 11):
        for k in range(1, n):
            pts = karp_fixed_points(k, n)
            if len(pts) != comb(n, k) or not all(p.verify() for p in pts):
                return False, f"failure at (k, n) = ({k}, {n})"
            total += 1
    return True, f"{total} (k, n) cases"


CHECKS = {
    "1": ("chromatic polynomial vs brute-force colouring", check_chromatic_oracle, 30),
    "2": ("cube-graph double and octahedron polynomial", check_cube_double, 5),
    "3": ("symmetric doubles decompose into standard tori", check_symmetric_doubles, 60),
    "4": ("doubles with the fan filling decompose", check_initial_filling, 120),
    "5": ("flip distance dichotomy for decomposability", check_distance_dichotomy, 600),
    "6": ("sheaf point counts are positive integers", check_point_counts, 120),
    "7": ("rotation-symmetric triangulation counts", check_symmetric_counts, 30),
    "8": ("folding of the octagon A5 quiver", check_folding, 10),
    "9": ("oriented 3-cycle is not admissible", check_three_cycle, 1),
    "10": ("cyclotomic irrationality obstruction", check_obstruction, 10),
    "11": ("dual of double equals superimposed triangulations", check_superimposition, 60),
    "12": ("Karp fixed point count", check_karp, 10),
}

ALIASES = {"cube-graph": "2", "octahedron": "2", "folding": "8", "obstruction": "10", "karp": "12"}


def run_check(key: str) -> CheckResult:
    key = ALIASES.get(key, key)
    title, fn, limit = CHECKS[key]
    t0 = time.perf_counter()
    passed, detail = fn()
    return CheckResult(key, title, bool(passed), detail, time.perf_counter() - t0, limit)


def run_all() -> list[CheckResult]:
    return [run_check(k) for k in CHECKS]
