"""Command line front end: ``legdoubles <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
import traceback

from . import chromatic, cluster, doubling, grassmann_obstruction, plane_graph, polygon, repro
from .errors import DomainError, LegDoublesError, ResourceError
from .plane_graph import CombMap
from .polygon import Triangulation

SCHEMA_VERSION = 1
NAMED_MAPS = {
    "theta": plane_graph.theta_graph,
    "cube": plane_graph.cube_graph,
    "tetrahedron": plane_graph.tetrahedron,
    "prism": plane_graph.prism_graph,
    "loop": plane_graph.single_loop,
}


class UsageError(Exception):
    pass


def _triang(text: str, N: int | None = None) -> Triangulation:
    if ":" not in text:
        if N is None:
            raise UsageError(f"triangulation {text!r} needs the form N:a-b,...")
        text = f"{N}:{text}"
    T = Triangulation.parse(text)
    if N is not None and T.n != N:
        raise UsageError(f"triangulation {text!r} is not on {N} vertices")
    return T


def _diag(text: str) -> tuple[int, int]:
    a, _, b = text.partition("-")
    try:
        return int(a), int(b)
    except ValueError:
        raise UsageError(f"bad diagonal {text!r}") from None


def _load_map(path: str) -> CombMap:
    if path in NAMED_MAPS:
        return NAMED_MAPS[path]()
    with open(path) as fh:
        return CombMap.from_json(fh.read())


def _load_matrix(path: str) -> cluster.ExchangeMatrix:
    with open(path) as fh:
        return cluster.ExchangeMatrix.from_json(fh.read())


def _emit(obj, as_json: bool, text: str) -> None:
    if as_json:
        if isinstance(obj, dict):
            obj = {"schema": SCHEMA_VERSION, **obj}
        print(json.dumps(obj, indent=2, default=str))
    else:
        print(text)


# -- triang ------------------------------------------------------------------------


def cmd_triang(a) -> int:
    if a.action == "enum":
        ts = polygon.enumerate_triangulations(a.N)
        if a.count:
            print(len(ts))
        else:
            for T in ts:
                print(T)
    elif a.action == "flip":
        print(polygon.flip(_triang(a.T), _diag(a.diagonal)))
    elif a.action == "dist":
        print(polygon.flip_distance(_triang(a.T1), _triang(a.T2)))
    elif a.action == "rotate":
        print(polygon.rotate(_triang(a.T), a.k))
    elif a.action == "sym":
        ts = polygon.symmetric_triangulations(a.N, a.k)
        if a.count:
            print(len(ts))
        else:
            for T in ts:
                print(T)
    elif a.action == "bound":
        print(polygon.filling_count_lower_bound(a.n, a.k))
    elif a.action == "tree":
        m = polygon.dual_tree(_triang(a.T))
        print(m.to_dot() if a.dot else m.to_json())
    elif a.action == "quiver":
        order = [_diag(d) for d in a.order.split(",")] if a.order else None
        print(cluster.quiver_from_triangulation(_triang(a.T), not a.no_frozen, order).to_json())
    return 0


# -- graph --------------------------------------------------------------------------


def cmd_graph(a) -> int:
    m = _load_map(a.file)
    if a.action == "info":
        info = {
            "vertices": m.num_vertices, "edges": m.num_edges, "faces": m.num_faces,
            "circles": m.circles, "face_degrees": m.face_degrees(),
            "trivalent": plane_graph.is_trivalent(m),
        }
        if not m.legs:
            info["euler_ok"] = m.euler_ok()
        _emit(info, a.json, "\n".join(f"{k}: {v}" for k, v in info.items()))
    elif a.action == "faces":
        for f in plane_graph.faces(m):
            print(" ".join(map(str, f)))
    elif a.action == "dual":
        g = plane_graph.dual(m)
        _emit({"n": g.n, "edges": [list(e) for e in g.edges]}, a.json,
              f"{g.n} vertices; edges " + " ".join(f"{x}-{y}" for x, y in g.edges))
    elif a.action == "genus":
        print(plane_graph.weave_genus(m))
    elif a.action == "canon":
        print(plane_graph.canonical_form(m, reflect=not a.oriented).hex())
    elif a.action == "iso":
        if not a.other:
            raise UsageError("graph iso needs a second map")
        print(plane_graph.isomorphic(m, _load_map(a.other), reflect=not a.oriented))
    elif a.action == "dot":
        print(m.to_dot(annotate_faces=a.faces))
    elif a.action == "json":
        print(m.to_json())
    return 0


# -- chrom ----------------------------------------------------------------------------


def _graph_from_args(a) -> plane_graph.Multigraph:
    if a.edges is not None:
        edges = [_diag(t) for t in a.edges.split(",") if t.strip()]
        n = a.vertices if a.vertices is not None else 1 + max((max(e) for e in edges), default=-1)
        return plane_graph.Multigraph(n, edges)
    if a.file is None:
        raise UsageError("give a map FILE (its dual is used) or --edges")
    return plane_graph.dual(_load_map(a.file))


def cmd_chrom(a) -> int:
    if a.action == "poly":
        P = chromatic.chromatic_polynomial(_graph_from_args(a))
        if a.basis == "q":
            print(chromatic.to_q_basis(P).format("q"))
        else:
            print(P.format("x"))
        if a.coeffs:
            print(",".join(map(str, P.coeffs)))
    elif a.action == "eval":
        g = _graph_from_args(a)
        print(chromatic.chromatic_polynomial(g)(a.x))
    elif a.action == "brute":
        print(chromatic.count_colorings_bruteforce(_graph_from_args(a), a.x))
    elif a.action == "sheaf":
        if a.file is None:
            raise UsageError("chrom sheaf needs a trivalent map FILE")
        m = _load_map(a.file)
        if a.q is None:
            print(chromatic.sheaf_polynomial(m).format("q"))
        else:
            print(chromatic.sheaf_point_count(m, a.q))
    return 0


# -- double ---------------------------------------------------------------------------


def cmd_double(a) -> int:
    if a.action in ("build", "verdict", "superimpose"):
        if a.N is None or a.T1 is None or a.T2 is None:
            raise UsageError(f"double {a.action} needs N T1 T2")
        T1, T2 = _triang(a.T1, a.N), _triang(a.T2, a.N)
        if a.action == "build":
            m = doubling.double_map(T1, T2)
            print(m.to_dot() if a.dot else m.to_json())
        elif a.action == "superimpose":
            g = doubling.superimpose_dual(T1, T2)
            print(" ".join(f"{x}-{y}" for x, y in g.edges))
        else:
            v = doubling.double_verdict(T1, T2)
            d = v.to_dict()
            r = v.decomposition
            text = "\n".join([
                f"non_loose: {v.non_loose}",
                f"embedded_exact_fillable: {v.embedded_exact_fillable.value}",
                f"decomposable: {r.decomposable} (k_std={r.k_std}, l_clifford={r.l_clifford})",
                f"certificate: {r.certificate}",
                f"flip_distance: {v.flip_distance}",
            ])
            _emit(d, a.json, text)
        return 0
    if a.N is None:
        raise UsageError(f"double {a.action} needs a map FILE")
    m = _load_map(a.N)
    if a.action == "decompose":
        r = doubling.decompose(m)
        _emit(r.to_dict(), a.json,
              f"decomposable: {r.decomposable}\nk_std: {r.k_std}\nl_clifford: {r.l_clifford}\n"
              f"moves: {' '.join(r.moves) or '-'}\ncertificate: {r.certificate}")
    elif a.action == "cube":
        print(doubling.is_generalized_cube(m))
    elif a.action == "tree":
        print(doubling.is_tree_double(m))
    return 0


# -- cluster ----------------------------------------------------------------------------


def cmd_cluster(a) -> int:
    B = _load_matrix(a.file)
    g = cluster.GroupAction.parse(a.perm, B.n_total) if a.perm else cluster.GroupAction.identity(B.n_total)
    if a.action == "fold":
        adm = cluster.is_admissible(B, g)
        if not adm:
            print(f"not admissible: condition ({adm.condition}) {adm.detail}")
            return 1
        print(cluster.fold(B, g).to_json())
    elif a.action == "admissible":
        adm = cluster.is_admissible(B, g)
        print("admissible" if adm else f"violates condition ({adm.condition}): {adm.detail}")
        return 0 if adm else 1
    elif a.action == "gfold":
        res = cluster.is_globally_foldable(B, g, cap=a.cap)
        print(res)
        return 0 if res else 1
    elif a.action == "seeds":
        print(cluster.count_folded_seeds(B, g, cap=a.cap))
    elif a.action == "mutate":
        for k in a.k:
            B = cluster.mutate(B, k - 1)
        print(B.to_json())
    elif a.action == "exchange":
        pos, neg = cluster.folded_exchange_monomials(B, a.k[0] - 1)
        print(json.dumps({"positive": list(pos), "negative": list(neg)}))
    return 0


# -- obstruct ------------------------------------------------------------------------------


def cmd_obstruct(a) -> int:
    v = grassmann_obstruction.obstruct_twist_spun(a.k, a.n, a.l, force=a.force, all_ratios=a.all_ratios)
    lines = [f"{v.status.value}  (k={v.k}, n={v.n}, l={v.l})", f"  {v.reason}"]
    for c in v.certificates:
        d = c.to_dict()
        lines.append(f"  {d['roots']}: {d['ratio']} = {d['value_text']}"
                     f"  [{'irrational' if c.rational is None else 'rational ' + str(c.rational)}]")
    if v.rational_witness is not None:
        d = v.rational_witness.to_dict()
        lines.append(f"  rational witness {d['roots']}: {d['ratio']} = {d['rational']}")
    _emit(v.to_dict(), a.json, "\n".join(lines))
    return 0


# -- search -----------------------------------------------------------------------------------


def cmd_search(a) -> int:
    if a.kind == "equal-chrom":
        res = doubling.search_equal_chromatic(a.N, budget=a.budget, jobs=a.jobs, checkpoint=a.checkpoint)
        status = "complete" if res.complete else f"partial ({res.processed}/{res.total} doubles)"
        print(f"# {len(res.matches)} matching pairs, {status}")
        for (t1, t2), (u1, u2) in res.matches:
            print(f"{t1} {t2}  ~  {u1} {u2}")
    else:
        found = doubling.search_q_minus_2_trianglefree(a.N)
        print(f"# {len(found)} ordered pairs")
        for t1, t2 in found:
            print(f"{t1} {t2}")
    return 0


# -- repro -------------------------------------------------------------------------------------


def cmd_repro(a) -> int:
    if a.name == "list":
        for k, (title, _, limit) in repro.CHECKS.items():
            print(f"{k:>2}  {title}  (limit {limit:g}s)")
        return 0
    if a.name == "cube-graph":
        P = chromatic.chromatic_polynomial(repro.octahedron())
        print(f"octahedron P(x)   = {P.format('x')}")
        print(f"P(q+1)            = {chromatic.to_q_basis(P).format('q')}")
        sheaf = chromatic.sheaf_polynomial(plane_graph.cube_graph())
        print(f"P(q+1)/(q+1)q(q-1) = {sheaf.format('q')}   [computed]")
        print(f"expected cofactor  = {repro.CUBE_FACTOR.format('q')}   [reference]")
        ok = sheaf == repro.CUBE_FACTOR
        print("PASS" if ok else "FAIL")
        return 0 if ok else 1
    keys = list(repro.CHECKS) if a.name == "all" else [a.name]
    for k in keys:
        if repro.ALIASES.get(k, k) not in repro.CHECKS:
            raise UsageError(f"unknown repro target {k!r} (try 'repro list')")
    results = [repro.run_check(k) for k in keys]
    for r in results:
        print(r.line())
    passed = sum(r.passed and r.in_time for r in results)
    print(f"{passed}/{len(results)} checks passed")
    return 0 if passed == len(results) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="legdoubles", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("triang", help="triangulations of the N-gon")
    t.add_argument("action", choices=["enum", "flip", "dist", "rotate", "sym", "bound", "tree", "quiver"])
    t.add_argument("args", nargs="*")
    t.add_argument("--count", action="store_true")
    t.add_argument("--dot", action="store_true")
    t.add_argument("--no-frozen", action="store_true")
    t.add_argument("--order", help="mutable diagonal order, e.g. 0-2,0-3")

    g = sub.add_parser("graph", help="combinatorial maps (JSON file or a name: %s)" % ", ".join(NAMED_MAPS))
    g.add_argument("action", choices=["info", "faces", "dual", "genus", "canon", "iso", "dot", "json"])
    g.add_argument("file")
    g.add_argument("other", nargs="?")
    g.add_argument("--oriented", action="store_true", help="do not identify mirror images")
    g.add_argument("--faces", action="store_true", help="annotate faces in DOT output")
    g.add_argument("--json", action="store_true")

    c = sub.add_parser("chrom", help="chromatic polynomials and point counts")
    c.add_argument("action", choices=["poly", "eval", "brute", "sheaf"])
    c.add_argument("file", nargs="?", help="map file; its dual graph is used")
    c.add_argument("--edges", help="explicit multigraph, e.g. 0-1,1-2,2-0")
    c.add_argument("--vertices", type=int)
    c.add_argument("--basis", choices=["x", "q"], default="x")
    c.add_argument("--coeffs", action="store_true")
    c.add_argument("--x", type=int, default=3)
    c.add_argument("--q", type=int)

    d = sub.add_parser("double", help="doubles of two triangulations")
    d.add_argument("action", choices=["build", "verdict", "superimpose", "decompose", "cube", "tree"])
    d.add_argument("N", nargs="?")
    d.add_argument("T1", nargs="?")
    d.add_argument("T2", nargs="?")
    d.add_argument("--dot", action="store_true")
    d.add_argument("--json", action="store_true")

    k = sub.add_parser("cluster", help="exchange matrices and folding")
    k.add_argument("action", choices=["fold", "admissible", "gfold", "seeds", "mutate", "exchange"])
    k.add_argument("file")
    k.add_argument("k", nargs="*", type=int, help="1-based mutable indices")
    k.add_argument("--perm", help='group generator in cycle notation, e.g. "(1 5)(2 4)"')
    k.add_argument("--cap", type=int, default=cluster.DEFAULT_SEED_CAP)

    o = sub.add_parser("obstruct", help="twist-spun obstruction")
    o.add_argument("--k", type=int, required=True)
    o.add_argument("--n", type=int, required=True)
    o.add_argument("--l", type=int, default=1)
    o.add_argument("--all-ratios", action="store_true")
    o.add_argument("--force", action="store_true", help="run the check even if hypotheses fail")
    o.add_argument("--json", action="store_true")

    s = sub.add_parser("search", help="exhaustive searches over pairs of triangulations")
    s.add_argument("kind", choices=["equal-chrom", "qminus2"])
    s.add_argument("N", type=int)
    s.add_argument("--budget", type=int)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--checkpoint")

    r = sub.add_parser("repro", help="reproduction checks ('all', 'list', a number or 'cube-graph')")
    r.add_argument("name", nargs="?", default="all")
    return p


def _triang_args(a) -> None:
    need = {"enum": ["N"], "flip": ["T", "diagonal"], "dist": ["T1", "T2"], "rotate": ["T", "k"],
            "sym": ["N", "k"], "bound": ["n", "k"], "tree": ["T"], "quiver": ["T"]}[a.action]
    if len(a.args) != len(need):
        raise UsageError(f"triang {a.action} expects: {' '.join(need)}")
    for name, val in zip(need, a.args):
        if name in ("N", "k", "n"):
            try:
                val = int(val)
            except ValueError:
                raise UsageError(f"{name} must be an integer") from None
        setattr(a, name, val)


def run(argv=None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    handlers = {
        "triang": cmd_triang, "graph": cmd_graph, "chrom": cmd_chrom, "double": cmd_double,
        "cluster": cmd_cluster, "obstruct": cmd_obstruct, "search": cmd_search, "repro": cmd_repro,
    }
    try:
        if a.command == "triang":
            _triang_args(a)
        if a.command == "double" and a.action in ("build", "verdict", "superimpose") and a.N is not None:
            try:
                a.N = int(a.N)
            except ValueError:
                raise UsageError("N must be an integer") from None
        return handlers[a.command](a)
    except (UsageError, DomainError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    except ResourceError as exc:
        print(f"{parser.prog}: resource limit: {exc}", file=sys.stderr)
        return 1
    except LegDoublesError as exc:
        print(f"{parser.prog}: internal error: {exc}", file=sys.stderr)
        return 1
    except Exception:  # noqa: BLE001
        traceback.print_exc()
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
