"""Command line front end.

Every subcommand prints ``key: value`` lines (or one JSON object with
``--json``). Exit codes: 0 success or property holds, 1 property fails (a
witness is printed), 2 bad usage or input, 3 a periodic computation did not
stabilise or an exhaustive search was asked for too large an input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fixtures
from .digraph import format_digraph, is_acyclic, parse_digraph
from .errors import FormatError, NormalTreeError, SizeLimitExceeded, StabilizationFailure
from .metric import compute_Vn, distance
from .minors import parse_model, verify_broad_minor_model
from .normality import (
    NormalityVerdict,
    Violation,
    build_normal_spanning_tree,
    check_arborescence_separation,
    counterexample_star,
    counterexample_truncation,
    is_normal_arborescence,
    is_weak_normal_tree_components,
    is_weak_normal_tree_def,
    normal_assistant,
)
from .periodic import (
    End,
    end_in_closure,
    format_periodic,
    is_dispersed,
    is_strongly_connected_periodic,
    parse_marked_set,
    parse_periodic,
    x_tail,
)
from .periodic_tree import build_periodic_nst, check_end_faithfulness, check_unrolling
from .points import EdgeInterior, Vertex, parse_point
from .search import MODES, run_search
from .trees import format_tree, parse_tree


class Report:
    def __init__(self):
        self.items = []
        self.code = 0

    def add(self, key, value) -> None:
        self.items.append((key, str(value)))

    def add_lines(self, lines) -> None:
        for line in lines:
            key, _, value = line.partition(": ")
            self.add(key, value)

    def render(self, as_json: bool) -> str:
        if not as_json:
            return "".join(f"{k}: {v}\n" for k, v in self.items)
        out = {}
        for k, v in self.items:
            if k in out:
                if not isinstance(out[k], list):
                    out[k] = [out[k]]
                out[k].append(v)
            else:
                out[k] = v
        return json.dumps(out, sort_keys=True) + "\n"


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _verdict(report: Report, verdict: NormalityVerdict) -> None:
    report.add_lines(verdict.lines())
    if not verdict:
        report.code = 1


# --- finite commands --------------------------------------------------------------


def cmd_check_wnt(args) -> Report:
    D = parse_digraph(_read(args.graph))
    T = parse_tree(_read(args.tree))
    r = Report()
    r.add("mode", args.mode)
    if args.mode == "def":
        _verdict(r, is_weak_normal_tree_def(D, T))
    elif args.mode == "components":
        _verdict(r, is_weak_normal_tree_components(D, T))
    else:
        a = is_weak_normal_tree_def(D, T)
        b = is_weak_normal_tree_components(D, T)
        r.add("definition", "holds" if a else "fails")
        r.add("components", "holds" if b else "fails")
        if bool(a) != bool(b):
            _verdict(r, NormalityVerdict(False, Violation("checker-disagreement", ())))
        else:
            _verdict(r, b)
    return r


def cmd_check_arb(args) -> Report:
    D = parse_digraph(_read(args.graph))
    A = parse_tree(_read(args.arb))
    assistant = normal_assistant(D, A)
    r = Report()
    for (u, v), path in sorted(assistant.added.items()):
        r.add("added", f"{u}->{v} via {'->'.join(path)}")
    _verdict(r, is_normal_arborescence(D, A))
    r.add("separation", "holds" if check_arborescence_separation(D, A) else "fails")
    if args.emit_assistant:
        _write(args.emit_assistant, assistant.format())
    return r


def cmd_build_nst(args) -> Report:
    D = parse_digraph(_read(args.graph))
    root = args.root if args.root is not None else min(D.vertices)
    T = build_normal_spanning_tree(D, root)
    r = Report()
    r.add("root", T.root)
    for c, p in sorted(T.parent.items()):
        r.add("parent", f"{c} {p}")
    _verdict(r, is_weak_normal_tree_components(D, T))
    if args.out:
        _write(args.out, format_tree(T))
    return r


def cmd_dist(args) -> Report:
    D = parse_digraph(_read(args.graph))
    T = parse_tree(_read(args.tree))
    if T.vertices != D.vertices:
        raise FormatError("the tree must span the graph")
    r = Report()
    if args.matrix:
        vs = sorted(D.vertices)
        r.add("columns", " ".join(vs))
        for u in vs:
            r.add("row", " ".join([u] + [str(distance(T, Vertex(u), Vertex(v))) for v in vs]))
        return r
    if args.p is None or args.q is None:
        raise FormatError("dist needs --p and --q, or --matrix")
    p, q = parse_point(args.p), parse_point(args.q)
    _check_finite_point(D, p)
    _check_finite_point(D, q)
    r.add("distance", distance(T, p, q))
    return r


def _check_finite_point(D, p) -> None:
    if isinstance(p, Vertex):
        D.check_vertices([p.name])
    elif isinstance(p, EdgeInterior):
        if not D.has_edge(p.tail, p.head):
            raise FormatError(f"{p.tail}->{p.head} is not an edge")
    else:
        raise FormatError(f"{p} needs a periodic host")


def cmd_search(args) -> Report:
    rep = run_search(args.mode, args.max_n, workers=args.workers)
    r = Report()
    r.add_lines(rep.lines())
    if args.mode == "lemma" and rep.findings:
        r.code = 1
    return r


def cmd_fixture(args) -> Report:
    r = Report()
    r.add("fixture", args.name)
    if args.name in fixtures.PERIODIC_FIXTURES:
        text = format_periodic(fixtures.PERIODIC_FIXTURES[args.name]())
        if args.write_graph:
            _write(args.write_graph, text)
        else:
            r.add_lines(f"line: {line}" for line in text.splitlines())
        return r
    if args.k is None or args.k < 1:
        raise FormatError("--k must be a positive integer")
    primed = args.name == "dkprime"
    D = counterexample_truncation(args.k, primed)
    A = counterexample_star(args.k, primed)
    r.add("k", args.k)
    r.add("vertices", len(D))
    r.add("edges", len(D.edges))
    r.add("minus_a0", "acyclic" if is_acyclic(D.delete(["a0"])) else "cyclic")
    if primed:
        v = is_normal_arborescence(D, A)
        r.add("star_arborescence", "normal" if v else "not normal")
    else:
        v = is_weak_normal_tree_components(D, A)
        r.add("star_tree", "weak normal spanning tree" if v else "not weak normal")
    _verdict(r, v)
    if not is_acyclic(D.delete(["a0"])):
        r.code = 1
    if args.write_graph:
        _write(args.write_graph, format_digraph(D))
    if args.write_tree:
        _write(args.write_tree, format_tree(A))
    return r


def cmd_minor(args) -> Report:
    D = parse_digraph(_read(args.host))
    H = parse_digraph(_read(args.pattern))
    M = parse_model(_read(args.model), D, H)
    v = verify_broad_minor_model(M)
    r = Report()
    r.add_lines(v.lines())
    if not v:
        r.code = 1
    return r


# --- periodic commands ------------------------------------------------------------


def cmd_periodic(args) -> Report:
    P = parse_periodic(_read(args.file))
    r = Report()
    op = args.op
    if op == "ends":
        ends = P.ends()
        r.add("ends", len(ends))
        for w in ends:
            r.add("end", w)
        r.add("strongly_connected", "yes" if is_strongly_connected_periodic(P) else "no")
    elif op == "materialize":
        M = P.materialize(args.k)
        r.add("vertices", len(M))
        r.add("edges", len(M.edges))
        for v in sorted(M.vertices, key=P.key):
            r.add("vertex", v)
        for u, v in sorted(M.edges):
            r.add("edge", f"{u} {v}")
    elif op == "nst":
        T = build_periodic_nst(P)
        r.add("root", T.root)
        for c, p in sorted(T.prefix.items(), key=lambda cp: P.key(cp[0])):
            r.add("parent", f"{c} {p}")
        for s, sp in sorted(T.spines.items()):
            spine = " ".join(T.ray_vertex(End(s), n) for n in range(T.settle_depth(End(s)), T.settle_depth(End(s)) + 2 * sp.height))
            r.add("spine", f"end:{s} head={sp.head} start={sp.start} period={sp.period} first={spine}")
        for k in range(args.unroll + 1):
            v = check_unrolling(P, T, k)
            r.add(f"unroll_{k}", "holds" if v else "fails")
            if not v:
                r.add_lines(v.lines()[1:])
                r.code = 1
        faith = check_end_faithfulness(P, T)
        r.add_lines(faith.lines())
        if not faith.ok:
            r.code = 1
    elif op == "dist":
        if args.p is None or args.q is None:
            raise FormatError("periodic dist needs --p and --q")
        T = build_periodic_nst(P)
        r.add("distance", distance(T, parse_point(args.p), parse_point(args.q)))
    elif op == "vn":
        T = build_periodic_nst(P)
        V = compute_Vn(P, T, args.n)
        r.add("n", args.n)
        r.add("size", len(V.finite))
        for v in sorted(V.finite, key=P.key):
            r.add("vertex", v)
        r.add("dispersed", "yes" if is_dispersed(P, V) else "no")
    elif op == "closure":
        U = parse_marked_set(P, args.set or "")
        r.add("dispersed", "yes" if is_dispersed(P, U) else "no")
        for w in P.ends():
            r.add("in_closure", f"{w} {'yes' if end_in_closure(P, w, U) else 'no'}")
    elif op == "tail":
        if args.end is None:
            raise FormatError("periodic tail needs --end")
        X = [x for x in (args.x or "").split(",") if x]
        part = x_tail(P, End(args.end), X)
        r.add("finite", ",".join(sorted(part.finite, key=P.key)) or "-")
        for s, c in part.tails:
            r.add("tail", f"{s} positions>={c} copies>={c + 1}")
    return r


# --- wiring -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="normaltrees", description=__doc__.splitlines()[0])
    ap.add_argument("--json", action="store_true", help="emit one JSON object instead of key: value lines")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-wnt", help="is a rooted tree weakly normal in a digraph")
    p.add_argument("--graph", required=True)
    p.add_argument("--tree", required=True)
    p.add_argument("--mode", choices=("def", "components", "both"), default="both")
    p.set_defaults(func=cmd_check_wnt)

    p = sub.add_parser("check-arb", help="is an arborescence normal (acyclic normal assistant)")
    p.add_argument("--graph", required=True)
    p.add_argument("--arb", required=True)
    p.add_argument("--emit-assistant", metavar="PATH")
    p.set_defaults(func=cmd_check_arb)

    p = sub.add_parser("build-nst", help="normal spanning tree of a strongly connected digraph")
    p.add_argument("--graph", required=True)
    p.add_argument("--root")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_build_nst)

    p = sub.add_parser("dist", help="exact distance between two points")
    p.add_argument("--graph", required=True)
    p.add_argument("--tree", required=True)
    p.add_argument("--p")
    p.add_argument("--q")
    p.add_argument("--matrix", action="store_true")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("search", help="exhaustive search over small digraphs")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--mode", choices=MODES, default="lemma")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("fixture", help="built-in example graphs")
    p.add_argument("--name", required=True, choices=("dk", "dkprime", *fixtures.PERIODIC_FIXTURES))
    p.add_argument("--k", type=int)
    p.add_argument("--write-graph", metavar="PATH")
    p.add_argument("--write-tree", metavar="PATH")
    p.set_defaults(func=cmd_fixture)

    p = sub.add_parser("minor", help="verify a broad minor model")
    p.add_argument("--host", required=True)
    p.add_argument("--pattern", required=True)
    p.add_argument("--model", required=True)
    p.set_defaults(func=cmd_minor)

    p = sub.add_parser("periodic", help="operations on a periodic digraph file")
    p.add_argument("op", choices=("ends", "materialize", "nst", "dist", "vn", "closure", "tail"))
    p.add_argument("file")
    p.add_argument("--k", type=int, default=2, help="materialisation depth")
    p.add_argument("--unroll", type=int, default=4, help="check unrollings up to this depth")
    p.add_argument("--p")
    p.add_argument("--q")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--set", help="vertices and <strand>.*.<bead vertex> patterns, comma separated")
    p.add_argument("--end", help="strand name")
    p.add_argument("--x", help="deleted vertices, comma separated")
    p.set_defaults(func=cmd_periodic)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        report = args.func(args)
    except (StabilizationFailure, SizeLimitExceeded) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except (NormalTreeError, OSError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(report.render(args.json))
    return report.code


if __name__ == "__main__":
    sys.exit(main())
