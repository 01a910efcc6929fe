"""Small periodic digraphs used by the tests, the acceptance suite and the CLI."""

from __future__ import annotations

from .digraph import Digraph
from .periodic import PeriodicDigraph, Strand


def _strand(name, bead_edges, front, back, glue, attach):
    return Strand(
        name=name,
        bead=Digraph((), bead_edges),
        front=frozenset(front),
        back=frozenset(back),
        glue=tuple(sorted(glue.items())),
        attach=frozenset(attach),
    )


def _two_cycle_strand(name, core_vertex):
    return _strand(
        name, [("x", "y"), ("y", "x")], ["x"], ["y"], {"y": "x"},
        [(core_vertex, f"{name}.0.x"), (f"{name}.0.x", core_vertex)],
    )


def chain() -> PeriodicDigraph:
    """Core ``r`` with one strand of 2-cycles ``x <-> y``, glued ``y`` to ``x``."""
    return PeriodicDigraph(Digraph(["r"]), [_two_cycle_strand("s", "r")])


def two_strands() -> PeriodicDigraph:
    return PeriodicDigraph(Digraph(["r"]), [_two_cycle_strand("s", "r"), _two_cycle_strand("t", "r")])


def three_strands() -> PeriodicDigraph:
    """Two core vertices and three strands with different bead shapes.

    Strand ``s``: 2-cycles. Strand ``w``: a directed triangle with a chord,
    overlap of one vertex. Strand ``z``: a two-vertex-wide bead around a hub.
    """
    core = Digraph(["r", "c"], [("r", "c"), ("c", "r")])
    tri = _strand(
        "w", [("p", "q"), ("q", "o"), ("o", "p"), ("q", "p")], ["p"], ["o"], {"o": "p"},
        [("r", "w.0.p"), ("w.0.q", "r")],
    )
    wide = _strand(
        "z",
        [(a, "h") for a in ("a1", "a2", "b1", "b2")] + [("h", a) for a in ("a1", "a2", "b1", "b2")],
        ["a1", "a2"], ["b1", "b2"], {"b1": "a1", "b2": "a2"},
        [("c", "z.0.a1"), ("z.0.h", "c")],
    )
    return PeriodicDigraph(core, [_two_cycle_strand("s", "r"), tri, wide])


def wide_chain() -> PeriodicDigraph:
    """Core ``r`` and one two-vertex-wide strand with hub ``h``; host of the periodic minor fixture."""
    wide = _strand(
        "z",
        [(a, "h") for a in ("a1", "a2", "b1", "b2")] + [("h", a) for a in ("a1", "a2", "b1", "b2")],
        ["a1", "a2"], ["b1", "b2"], {"b1": "a1", "b2": "a2"},
        [("r", "z.0.h"), ("z.0.h", "r")],
    )
    return PeriodicDigraph(Digraph(["r"]), [wide])


def core_only() -> PeriodicDigraph:
    return PeriodicDigraph(Digraph(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")]))


PERIODIC_FIXTURES = {
    "chain": chain,
    "two-strands": two_strands,
    "three-strands": three_strands,
    "wide-chain": wide_chain,
    "core-only": core_only,
}
