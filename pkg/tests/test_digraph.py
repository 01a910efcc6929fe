from __future__ import annotations

import itertools

import pytest
from hypothesis import given

from normaltrees.digraph import (
    Digraph, find_cycle, format_digraph, is_acyclic, is_strongly_connected, parse_digraph,
    path_between_sets_avoiding, strong_components,
)
from normaltrees.errors import EmptyGraph, FormatError, UnknownVertex
from normaltrees.normality import counterexample_truncation

from strategies import brute_reach, digraphs

TRIANGLE = Digraph("abc", [("a", "b"), ("b", "c"), ("c", "a")])


def test_singleton_is_one_component():
    assert strong_components(Digraph(["v"])).components == (frozenset({"v"}),)


def test_triangle_is_one_component():
    assert strong_components(TRIANGLE).components == (frozenset("abc"),)


def test_truncation_minus_a0_has_singleton_components():
    D = counterexample_truncation(2).delete(["a0"])
    assert all(len(C) == 1 for C in strong_components(D).components)
    assert is_acyclic(D)


def test_strong_connectivity_examples():
    assert is_strongly_connected(TRIANGLE)
    assert not is_strongly_connected(Digraph("ab", [("a", "b")]))
    with pytest.raises(EmptyGraph):
        is_strongly_connected(Digraph())


def test_delete():
    assert TRIANGLE.delete(["a"]) == Digraph("bc", [("b", "c")])
    assert TRIANGLE.delete([]) == TRIANGLE


def test_paths_between_sets():
    assert path_between_sets_avoiding(TRIANGLE, {"b"}, {"c"}, "abc") == ("b", "c")
    # c -> a -> b needs a as an inner vertex
    assert path_between_sets_avoiding(TRIANGLE, {"c"}, {"b"}, "abc") is None
    assert path_between_sets_avoiding(TRIANGLE, {"c"}, {"b"}) == ("c", "a", "b")
    assert path_between_sets_avoiding(Digraph(["v"]), {"v"}, {"v"}) == ("v",)


def test_rejects_self_loops_and_unknown_endpoints():
    with pytest.raises(FormatError):
        Digraph("a", [("a", "a")])
    with pytest.raises(UnknownVertex):
        TRIANGLE.check_vertices(["z"])


def test_format_round_trip_and_comments():
    text = "# a triangle\nv a\nv b\nv c\ne a b\ne b c  # trailing\ne c a\n"
    D = parse_digraph(text)
    assert D == TRIANGLE
    assert parse_digraph(format_digraph(D)) == D
    with pytest.raises(FormatError):
        parse_digraph("x a\n")


@given(digraphs(max_n=6))
def test_components_match_mutual_reachability(D):
    dec = strong_components(D)
    reach = {v: brute_reach(D, v) for v in D.vertices}
    assert set().union(*dec.components) == D.vertices
    assert sum(map(len, dec.components)) == len(D)
    for u, v in itertools.product(D.vertices, repeat=2):
        assert dec.same(u, v) == (v in reach[u] and u in reach[v])
    assert is_acyclic(dec.condensation)


@given(digraphs(max_n=6))
def test_condensation_is_topologically_ordered(D):
    dec = strong_components(D)
    for a, b in dec.condensation.edges:
        assert a < b
    for u, v in D.edges:
        assert dec.index[u] <= dec.index[v]


@given(digraphs(max_n=6))
def test_cycle_finder_agrees_with_components(D):
    cycle = find_cycle(D)
    has_big = any(len(C) > 1 for C in strong_components(D).components)
    assert (cycle is not None) == has_big
    if cycle:
        for u, v in zip(cycle, cycle[1:] + cycle[:1]):
            assert D.has_edge(u, v)


def _simple_paths(D, S, T, W):
    """Every admissible path, by brute force over vertex sequences."""
    out = []
    vs = sorted(D.vertices)
    for k in range(1, len(vs) + 1):
        for seq in itertools.permutations(vs, k):
            if seq[0] not in S or seq[-1] not in T:
                continue
            if any(x in W or x in T for x in seq[1:-1]):
                continue
            if all(D.has_edge(a, b) for a, b in zip(seq, seq[1:])):
                out.append(seq)
    return out


@given(digraphs(max_n=5), digraphs(max_n=5))
def test_path_search_matches_brute_force(D, E):
    vs = sorted(D.vertices)
    pick = sorted(E.edges)
    S = {vs[i % len(vs)] for i, _ in enumerate(pick[:2])} or {vs[0]}
    T = {vs[-1]}
    W = set(vs[1::2])
    found = path_between_sets_avoiding(D, S, T, W)
    options = _simple_paths(D, S, T, W)
    if S & T:
        assert found == (min(S & T),)
        return
    assert (found is None) == (not options)
    if found:
        assert found in options
        assert len(found) == min(map(len, options))
