"""Acceptance suite: one test per criterion, each printing a single pass/fail line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines inline; the
terminal summary repeats them either way (see ``conftest.py``).
"""

from __future__ import annotations

import itertools
import random
import time
from fractions import Fraction

import pytest

from normaltrees.digraph import Digraph, is_acyclic, is_strongly_connected
from normaltrees.enumeration import (
    all_digraphs, all_trees_on_subsets, digraph_from_code, random_digraph, random_rooted_tree, vertex_names,
)
from normaltrees.fixtures import chain, three_strands, two_strands, wide_chain
from normaltrees.metric import brute_force_distance, compute_Vn, distance, weight
from normaltrees.minors import (
    BroadMinorModel, PeriodicMinorModel, StrandMap, identity_model, project_periodic_marked_set,
    verify_broad_minor_model, verify_periodic_model,
)
from normaltrees.normality import (
    build_normal_spanning_tree, counterexample_star, counterexample_truncation, is_normal_arborescence,
    is_weak_normal_tree_components, is_weak_normal_tree_def,
)
from normaltrees.periodic import End, MarkedSet, is_dispersed
from normaltrees.periodic_tree import build_periodic_nst, check_end_faithfulness
from normaltrees.points import EdgeInterior, LimitEdgeInterior, Vertex, parse_point
from normaltrees.search import run_search
from normaltrees.topology import backward_check, forward_check, probe_points

pytestmark = pytest.mark.acceptance

RESULTS: dict = {}


def report(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})"
    RESULTS[n] = line
    print(line)
    assert ok, line


# --- 1. definition and components checkers agree --------------------------------


def test_criterion_1_checkers_agree():
    start = time.perf_counter()
    compared, mismatches = 0, []
    for D in all_digraphs(3):
        for T in all_trees_on_subsets(D.vertices):
            compared += 1
            if bool(is_weak_normal_tree_def(D, T)) != bool(is_weak_normal_tree_components(D, T)):
                mismatches.append((sorted(D.edges), T))
    exhaustive = compared
    rng = random.Random(20241016)
    names = vertex_names(5)
    for _ in range(10_000):
        D = random_digraph(5, rng, p=rng.choice([0.3, 0.5, 0.7]))
        S = [v for v in names if rng.random() < 0.8] or [rng.choice(names)]
        T = random_rooted_tree(S, rng)
        compared += 1
        if bool(is_weak_normal_tree_def(D, T)) != bool(is_weak_normal_tree_components(D, T)):
            mismatches.append((sorted(D.edges), T))
    took = time.perf_counter() - start
    report(1, not mismatches and took < 120,
           f"{exhaustive} exhaustive + {compared - exhaustive} random pairs, {len(mismatches)} mismatches, {took:.1f}s")


# --- 2. normal arborescence containing U implies a normal tree containing U -----


def test_criterion_2_lemma_search():
    start = time.perf_counter()
    rep = run_search("lemma", 4, workers=4)
    took = time.perf_counter() - start
    report(2, not rep.findings and rep.graphs > 0 and took < 600,
           f"{rep.graphs} strong digraphs, {rep.instances} sets U, {len(rep.findings)} counterexamples, {took:.1f}s")


# --- 3. the counterexample truncations -----------------------------------------


def test_criterion_3_counterexample_fixtures():
    bad = []
    for k in range(1, 7):
        D = counterexample_truncation(k)
        if not is_weak_normal_tree_components(D, counterexample_star(k)):
            bad.append(f"dk k={k}")
        Dp = counterexample_truncation(k, primed=True)
        if not is_normal_arborescence(Dp, counterexample_star(k, primed=True)):
            bad.append(f"dkprime k={k}")
        if not is_acyclic(D.delete(["a0"])):
            bad.append(f"dk-a0 k={k}")
    report(3, not bad, "k=1..6 " + ("all exact verdicts hold" if not bad else "failed: " + ", ".join(bad)))


# --- 4. metric axioms -----------------------------------------------------------


def _check_triples(T, pool, edges, rng, triples):
    """Symmetry, positive-definiteness, per-edge triangle inequality and d <= 4 on `pool`."""
    n = len(pool)
    dist = [[distance(T, p, q) for q in pool] for p in pool]
    wts = {}

    def w(i, j):
        if (i, j) not in wts:
            wts[(i, j)] = tuple(weight(T, e, pool[i], pool[j])[0] for e in edges)
        return wts[(i, j)]

    problems = []
    for i, j in itertools.product(range(n), repeat=2):
        dij = dist[i][j]
        if dij != dist[j][i]:
            problems.append(("symmetry", pool[i], pool[j]))
        if (dij == 0) != (i == j) or dij > 4:
            problems.append(("definite-or-bound", pool[i], pool[j], dij))
    for _ in range(triples):
        i, j, k = (rng.randrange(n) for _ in range(3))
        for a, b, c in zip(w(i, j), w(i, k), w(k, j)):
            if a > b + c:
                problems.append(("edge-triangle", pool[i], pool[j], pool[k]))
                break
        if dist[i][j] > dist[i][k] + dist[k][j]:
            problems.append(("triangle", pool[i], pool[j], pool[k]))
    return problems


def _finite_pool(D, rng, size):
    pool = [Vertex(v) for v in sorted(D.vertices)]
    edge_points = [EdgeInterior(u, v, Fraction(i, 8)) for u, v in sorted(D.edges) for i in range(1, 8)]
    pool += rng.sample(edge_points, min(len(edge_points), size - len(pool)))
    return pool


def _periodic_pool(P, T, rng, size):
    probes = probe_points(P, T, depth=2)
    fixed = [q for q in probes if isinstance(q, End)]
    limits = [q for q in probes if isinstance(q, LimitEdgeInterior)]
    rest = [q for q in probes if not isinstance(q, (End, LimitEdgeInterior))]
    half = (size - len(fixed)) // 2
    return fixed + rng.sample(limits, min(half, len(limits))) + rng.sample(rest, min(size - len(fixed) - half, len(rest)))


def test_criterion_4_metric_axioms():
    start = time.perf_counter()
    rng = random.Random(4)
    triples, hosts, problems = 1000, 0, []
    for n in range(1, 5):
        names = vertex_names(n)
        for code in range(1 << (n * (n - 1))):
            D = digraph_from_code(names, code)
            if not is_strongly_connected(D):
                continue
            hosts += 1
            T = build_normal_spanning_tree(D, names[0])
            pool = _finite_pool(D, rng, 16)
            problems += _check_triples(T, pool, T.edges(), rng, triples)
    for make in (chain, two_strands, three_strands):
        P = make()
        T = build_periodic_nst(P)
        pool = _periodic_pool(P, T, rng, 28)
        hosts += 1
        problems += _check_triples(T, pool, T.edges_upto_depth(10), rng, triples)
    took = time.perf_counter() - start
    report(4, not problems and took < 300,
           f"{hosts} hosts x {triples} triples, {len(problems)} violations, {took:.1f}s")


# --- 5. exact prefix+tail distances against truncated sums -----------------------


def test_criterion_5_tail_oracle():
    rng = random.Random(5)
    worst, compared, inexact = Fraction(0), 0, 0
    for make in (chain, two_strands, three_strands):
        P = make()
        T = build_periodic_nst(P)
        pool = _periodic_pool(P, T, rng, 20)
        for p, q in itertools.combinations(pool, 2):
            exact = distance(T, p, q)
            if not isinstance(exact, Fraction):
                inexact += 1
            worst = max(worst, abs(exact - brute_force_distance(T, p, q, 30)))
            compared += 1
    P = chain()
    T = build_periodic_nst(P)
    root_to_end = distance(T, Vertex(T.root), End("s"))
    ok = worst <= Fraction(1, 2 ** 25) and not inexact and root_to_end == 1
    report(5, ok, f"{compared} pairs, max gap {float(worst):.3g}, d(r, end:s) = {root_to_end}")


# --- 6. neighbourhoods and balls nest both ways ---------------------------------


CONFIGS = [
    (chain, "v:r", Fraction(1, 2)),
    (chain, "v:s.1.y", Fraction(1, 4)),
    (two_strands, "v:r", Fraction(1, 3)),
    (three_strands, "v:c", Fraction(1, 2)),
    (three_strands, "v:w.0.q", Fraction(1, 3)),
    (chain, "e:r,s.0.x,1/2", Fraction(1, 3)),
    (chain, "e:s.0.y,s.0.x,1/8", Fraction(1, 2)),
    (two_strands, "e:t.0.x,t.0.y,3/4", Fraction(1, 4)),
    (three_strands, "e:z.0.h,z.0.b2,1/3", Fraction(1, 2)),
    (chain, "end:s", Fraction(1, 2)),
    (chain, "end:s", Fraction(1, 8)),
    (two_strands, "end:t", Fraction(1, 3)),
    (three_strands, "end:w", Fraction(1, 2)),
    (three_strands, "end:z", Fraction(1, 4)),
    (chain, "le:v:r,end:s,1/2", Fraction(1, 2)),
    (chain, "le:end:s,v:s.0.x,1/3", Fraction(1, 4)),
    (two_strands, "le:end:s,end:t,1/2", Fraction(1, 2)),
    (two_strands, "le:v:t.0.y,end:s,1/4", Fraction(1, 3)),
    (three_strands, "le:v:c,end:z,2/3", Fraction(1, 2)),
    (three_strands, "le:end:w,end:s,1/8", Fraction(1, 3)),
]


def test_criterion_6_topology():
    start = time.perf_counter()
    trees, kinds, failures, relevant = {}, set(), [], 0
    for make, text, param in CONFIGS:
        if make not in trees:
            P = make()
            trees[make] = (P, build_periodic_nst(P))
        P, T = trees[make]
        p = parse_point(text)
        for check in (forward_check, backward_check):
            rep = check(P, T, p, param)
            kinds.add(rep.kind)
            relevant += rep.relevant
            if not rep.ok:
                failures.append(f"{rep.direction} {text} {param}: {len(rep.violations)}")
    took = time.perf_counter() - start
    ok = not failures and len(CONFIGS) >= 20 and kinds == {"vertex", "edge", "end", "limit-edge"}
    report(6, ok, f"{len(CONFIGS)} configurations x 2 directions over {len(kinds)} point kinds, "
                  f"{relevant} probes inside, {len(failures)} failing, {took:.1f}s")


# --- 7. V_n is dispersed and the V_n exhaust the vertices ----------------------


def test_criterion_7_vn_dispersed_and_covering():
    problems, checked = [], 0
    for make in (chain, two_strands, three_strands, wide_chain):
        P = make()
        T = build_periodic_nst(P)
        layers = {n: compute_Vn(P, T, n) for n in range(1, 9)}
        for n, V in layers.items():
            if not is_dispersed(P, V):
                problems.append(f"{make.__name__} V_{n} not dispersed")
        for v in sorted(P.materialize(6).vertices):
            checked += 1
            nearest = min(distance(T, Vertex(v), w) for w in P.ends())
            n = int(1 / nearest) + 1
            V = layers.get(n) or compute_Vn(P, T, n)
            if not V.contains(P, v):
                problems.append(f"{make.__name__} {v} missing from V_{n}")
    report(7, not problems, f"4 fixtures, n=1..8 dispersed, {checked} vertices covered, {len(problems)} problems")


# --- 8. rays of the tree and ends correspond -----------------------------------


def test_criterion_8_end_faithfulness():
    results = {}
    for make in (chain, two_strands, three_strands):
        P = make()
        rep = check_end_faithfulness(P, build_periodic_nst(P))
        results[len(P.strand_names)] = rep.ok
    report(8, all(results.values()) and sorted(results) == [1, 2, 3],
           ", ".join(f"{k} strand(s): {'yes' if v else 'no'}" for k, v in sorted(results.items())))


# --- 9. broad minor models ------------------------------------------------------


def minor_fixtures():
    host = Digraph("abcd", [("a", "b"), ("b", "a"), ("b", "c"), ("c", "d"), ("d", "b")])
    pattern = Digraph("uv", [("u", "v"), ("v", "u")])
    contraction = BroadMinorModel(host, pattern, {"u": {"a"}, "v": {"b", "c", "d"}}, {"u": "a", "v": "c"})
    overlap = BroadMinorModel(host, pattern, {"u": {"a", "b"}, "v": {"b", "c"}}, {"u": "a", "v": "c"})
    return host, contraction, overlap


def periodic_minor_fixture():
    """The chain as a broad minor of the wide chain: each 2-cycle bead vertex becomes a hub with its spokes."""
    return PeriodicMinorModel(
        host=wide_chain(), pattern=chain(),
        core={"r": ({"r"}, "r")},
        strands={"s": StrandMap("z", 1, {"y": ({"h", "b1", "b2"}, "h")})},
    )


def test_criterion_9_broad_minors():
    host, contraction, overlap = minor_fixtures()
    verdicts = {
        "identity": bool(verify_broad_minor_model(identity_model(host))),
        "contraction": bool(verify_broad_minor_model(contraction)),
        "overlap": bool(verify_broad_minor_model(overlap)),
    }
    M = periodic_minor_fixture()
    periodic_ok = bool(verify_periodic_model(M))
    transfers = 0
    sets = [
        MarkedSet(frozenset({"r"})),
        MarkedSet(frozenset({"z.2.h", "z.3.b1", "z.5.h"})),
        MarkedSet(frozenset(), frozenset({("z", "h")})),
        MarkedSet(frozenset({"z.1.h"}), frozenset({("z", "b1")})),
    ]
    for U in sets:
        W = project_periodic_marked_set(M, U)
        if not is_dispersed(M.host, U) or is_dispersed(M.pattern, W):
            transfers += 1
    ok = verdicts == {"identity": True, "contraction": True, "overlap": False} and periodic_ok and transfers == len(sets)
    report(9, ok, ", ".join(f"{k}: {'accepted' if v else 'rejected'}" for k, v in verdicts.items())
           + f", periodic model: {'verified' if periodic_ok else 'rejected'}, transfer {transfers}/{len(sets)}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-s", "-q"]))
