from __future__ import annotations

import pytest
from hypothesis import given

from normaltrees.digraph import Digraph
from normaltrees.errors import FormatError, InvalidTree, NotInHost, NotTreeEdge
from normaltrees.trees import RootedTree, format_tree, parse_tree, validate_arborescence

from strategies import digraph_and_tree, star

PATH = RootedTree("a", {"b": "a", "c": "b"})
TRIANGLE = Digraph("abc", [("a", "b"), ("b", "c"), ("c", "a")])


def test_order_examples():
    S = star("a", "bc")
    assert S.leq("a", "c") and S.leq("b", "b")
    assert not S.leq("b", "c") and not S.comparable("b", "c")


def test_up_and_down_sets():
    assert PATH.up_set("c") == {"c"}
    assert PATH.up_set("a") == {"a", "b", "c"}
    assert PATH.up_set("b") == {"b", "c"}
    assert PATH.down_set("a") == {"a"}
    assert PATH.down_set("c") == {"a", "b", "c"}
    assert PATH.strict_down_set("a") == frozenset()


def test_distance_classes():
    assert RootedTree("r", {"x": "r"}).distance_classes() == [{("r", "x")}]
    assert star("a", "bcd").distance_classes() == [{("a", "b"), ("a", "c"), ("a", "d")}]
    assert PATH.distance_classes() == [{("a", "b")}, {("b", "c")}]
    assert PATH.edge_depth(("b", "c")) == 2
    with pytest.raises(NotTreeEdge):
        PATH.edge_depth(("a", "c"))


def test_arborescence_validation():
    assert validate_arborescence(TRIANGLE, RootedTree("a", {"b": "a", "c": "b"}))
    assert not validate_arborescence(TRIANGLE, RootedTree("b", {"a": "b"}))
    assert validate_arborescence(TRIANGLE, RootedTree("a"))
    with pytest.raises(NotInHost):
        validate_arborescence(TRIANGLE, RootedTree("z"))


def test_bad_parent_maps():
    with pytest.raises(InvalidTree):
        RootedTree("a", {"b": "c", "c": "b"})
    with pytest.raises(InvalidTree):
        RootedTree("a", {"a": "b"})


def test_restrict_needs_down_closed_sets():
    assert PATH.restrict({"a", "b"}) == RootedTree("a", {"b": "a"})
    with pytest.raises(InvalidTree):
        PATH.restrict({"a", "c"})
    assert PATH.down_closure({"c"}) == PATH


def test_file_format():
    assert parse_tree("root a\np b a\np c b\n") == PATH
    assert parse_tree(format_tree(PATH)) == PATH
    with pytest.raises(FormatError):
        parse_tree("p b a\n")
    with pytest.raises(FormatError):
        parse_tree("root a\np b c\n")


@given(digraph_and_tree())
def test_order_is_a_tree_order(case):
    _, T = case
    vs = sorted(T.vertices)
    for u in vs:
        assert T.leq(T.root, u)
        below = [v for v in vs if T.leq(v, u)]
        assert set(below) == T.down_set(u)
        # down-sets are chains
        for v in below:
            for w in below:
                assert T.comparable(v, w)
        assert T.up_set(u) == {w for w in vs if T.leq(u, w)}
        assert len(T.path(u)) == T.depth(u) + 1


@given(digraph_and_tree())
def test_distance_classes_partition_edges(case):
    _, T = case
    classes = T.distance_classes()
    assert sum(map(len, classes)) == len(T) - 1
    for n, E in enumerate(classes, 1):
        assert all(T.depth(c) == n for _, c in E)
