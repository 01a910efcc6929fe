from __future__ import annotations

import random

import pytest

from normaltrees.digraph import is_strongly_connected
from normaltrees.enumeration import (
    all_digraphs, all_rooted_trees, arborescences_on, random_rooted_tree, subsets,
    vertex_names,
)
from normaltrees.search import batches, check_batch, run_search
from normaltrees.trees import validate_arborescence


def test_strongly_connected_counts():
    # labelled strongly connected digraphs: 1, 1, 18, 1606
    counts = [sum(1 for D in all_digraphs(n) if is_strongly_connected(D)) for n in range(1, 5)]
    assert counts == [1, 1, 18, 1606]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_rooted_tree_counts(n):
    trees = list(all_rooted_trees(vertex_names(n)))
    assert len(trees) == n ** (n - 1)
    assert len(set(trees)) == len(trees)


def test_arborescences_match_brute_force():
    names = vertex_names(3)
    for D in all_digraphs(3):
        for S in subsets(names, 1):
            found = set(arborescences_on(D, S))
            brute = {T for T in all_rooted_trees(S) if validate_arborescence(D, T)}
            assert found == brute


def test_subsets_order_and_containment():
    assert list(subsets("ab")) == [frozenset(), {"a"}, {"b"}, {"a", "b"}]
    assert all("b" in S for S in subsets("abc", containing="b"))


def test_random_trees_are_spanning():
    rng = random.Random(0)
    for _ in range(50):
        T = random_rooted_tree("abcde", rng)
        assert T.vertices == set("abcde")


def test_batches_cover_every_code_once():
    units = batches(3, per_batch=10)
    for n in (1, 2, 3):
        spans = [(lo, hi) for m, lo, hi in units if m == n]
        assert spans[0][0] == 0 and spans[-1][1] == 1 << (n * (n - 1))
        assert all(a[1] == b[0] for a, b in zip(spans, spans[1:]))


def test_lemma_search_small():
    rep = run_search("lemma", 3)
    assert rep.graphs == 20 and not rep.findings
    assert rep.lines()[-1] == "counterexamples: 0"


def test_search_is_independent_of_scheduling():
    serial = run_search("converse", 3, workers=1)
    parallel = run_search("converse", 3, workers=2)
    assert serial.lines() == parallel.lines()
    assert serial.findings == []


def test_batch_reports_merge():
    whole = check_batch("lemma", (3, 0, 64))
    halves = check_batch("lemma", (3, 0, 32))
    halves.merge(check_batch("lemma", (3, 32, 64)))
    assert (whole.graphs, whole.instances) == (halves.graphs, halves.instances)


def test_unknown_mode():
    with pytest.raises(ValueError):
        run_search("other", 2)
