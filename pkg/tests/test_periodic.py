from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from normaltrees.digraph import Digraph, strong_components
from normaltrees.errors import FormatError, UnknownVertex
from normaltrees.fixtures import PERIODIC_FIXTURES, chain, core_only, three_strands, two_strands
from normaltrees.periodic import (
    End, MarkedSet, StrongPart, end_in_closure, format_periodic, is_dispersed, is_strongly_connected_periodic,
    parse_marked_set, parse_periodic, part_containing, strong_parts, whole, x_tail,
)

CHAIN_TEXT = """\
core
v r
strand s
bead
e x y
e y x
front x
back y
glue y x
attach r x
attach x r
"""


def test_materialize_prefixes():
    P = chain()
    assert P.materialize(0) == Digraph(["r"])
    D = P.materialize(2)
    assert D.vertices == {"r", "s.0.x", "s.0.y", "s.1.y"}
    assert D.edges == {
        ("r", "s.0.x"), ("s.0.x", "r"), ("s.0.x", "s.0.y"), ("s.0.y", "s.0.x"),
        ("s.0.y", "s.1.y"), ("s.1.y", "s.0.y"),
    }


@pytest.mark.parametrize("name", sorted(PERIODIC_FIXTURES))
def test_materializations_are_induced_prefixes(name):
    P = PERIODIC_FIXTURES[name]()
    for k in range(5):
        small, big = P.materialize(k), P.materialize(k + 1)
        assert big.subgraph(small.vertices) == small


def test_naming_and_positions():
    P = chain()
    assert P.name("s", -1, "y") == "s.0.x" and P.name("s", 2, "y") == "s.2.y"
    assert P.locate("s.0.x") == ("s", -1, "y")
    assert P.pos("s.3.y") == 3 and P.pos("r") == -2
    assert P.shift("s.0.y", 2) == "s.2.y"
    assert P.copy_vertices("s", 3) == {"s.2.y", "s.3.y"}
    with pytest.raises(UnknownVertex):
        P.locate("s.1.x")


def test_end_counts():
    assert chain().ends() == [End("s")]
    assert two_strands().ends() == [End("s"), End("t")]
    assert core_only().ends() == []


def test_x_tails():
    P, end = chain(), End("s")
    assert x_tail(P, end, ()) == StrongPart(frozenset(), (("s", -1),))
    assert x_tail(P, end, {"s.0.x"}) == StrongPart(frozenset(), (("s", 0),))
    # deleting bead copy 3 leaves everything from position 4 on
    assert x_tail(P, end, P.copy_vertices("s", 3)) == StrongPart(frozenset(), (("s", 4),))


def test_strong_parts_examples():
    P = chain()
    assert strong_parts(P) == [whole(P)]
    assert is_strongly_connected_periodic(P)
    assert strong_parts(P, {"r"}) == [StrongPart(frozenset(), (("s", -1),))]
    parts = strong_parts(P, {"s.0.y"})
    assert parts == [StrongPart(frozenset({"r", "s.0.x"})), StrongPart(frozenset(), (("s", 1),))]
    assert part_containing(P, {"s.0.y"}, "s.5.y").tail_cut("s") == 1


def test_three_strand_parts_without_core():
    P = three_strands()
    parts = strong_parts(P, {"r", "c"})
    assert sorted(s for part in parts for s, _ in part.tails) == ["s", "w", "z"]
    assert all(len(part.tails) == 1 for part in parts)


def test_dispersed_sets():
    P = chain()
    assert is_dispersed(P, MarkedSet(frozenset({"r", "s.4.y"})))
    assert not is_dispersed(P, MarkedSet(patterns=frozenset({("s", "x")})))
    assert is_dispersed(P, MarkedSet(frozenset(P.core.vertices)))


def test_closure_of_sets():
    P, end = two_strands(), End("s")
    assert not end_in_closure(P, end, MarkedSet(frozenset(P.core.vertices)))
    assert end_in_closure(P, end, MarkedSet(patterns=frozenset({("s", "y")})))
    assert not end_in_closure(P, end, MarkedSet(patterns=frozenset({("t", "y")})))
    assert not end_in_closure(P, end, MarkedSet())


def test_marked_set_membership_follows_gluing():
    P = chain()
    U = parse_marked_set(P, "r, s.*.x")
    # x of copy i+1 is y of copy i, so the pattern also catches the glued front vertex
    assert U.contains(P, "s.0.x") and U.contains(P, "s.7.y")
    with pytest.raises(UnknownVertex):
        parse_marked_set(P, "s.*.q")


def test_text_format_round_trip():
    P = parse_periodic(CHAIN_TEXT)
    assert P.materialize(3) == chain().materialize(3)
    for make in PERIODIC_FIXTURES.values():
        Q = make()
        assert parse_periodic(format_periodic(Q)).materialize(3) == Q.materialize(3)


@pytest.mark.parametrize("text", [
    CHAIN_TEXT.replace("glue y x", "glue x x"),
    CHAIN_TEXT.replace("attach x r", "attach s.1.y r"),
    CHAIN_TEXT.replace("front x", "front"),
    CHAIN_TEXT.replace("v r", "v r.1"),
    CHAIN_TEXT.replace("e y x\n", ""),
    "strand s\n",
])
def test_bad_periodic_files(text):
    with pytest.raises(FormatError):
        parse_periodic(text)


FIXED = {name: make() for name, make in PERIODIC_FIXTURES.items()}


@st.composite
def periodic_deletions(draw):
    name = draw(st.sampled_from(sorted(FIXED)))
    P = FIXED[name]
    vs = sorted(P.materialize(3).vertices)
    X = draw(st.lists(st.sampled_from(vs), max_size=4, unique=True))
    return P, frozenset(X)


@settings(max_examples=40, deadline=None)
@given(periodic_deletions())
def test_parts_agree_with_a_deep_materialisation(case):
    P, X = case
    parts = strong_parts(P, X)
    deep = strong_components(P.materialize(14).delete(X))
    probe = sorted(P.materialize(5).vertices - X)
    owner = {}
    for v in probe:
        hits = [i for i, part in enumerate(parts) if part.contains(P, v)]
        assert len(hits) == 1
        owner[v] = hits[0]
    for u, v in itertools.combinations(probe, 2):
        assert (owner[u] == owner[v]) == deep.same(u, v)


@settings(max_examples=25, deadline=None)
@given(periodic_deletions())
def test_parts_are_stable_under_deeper_materialisation(case):
    P, X = case
    assert strong_parts(P, X) == strong_parts(P, X, depth=12)
