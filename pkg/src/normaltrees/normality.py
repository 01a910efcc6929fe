"""Weak normal trees, normal arborescences and their finite constructions.

Two independent routes decide weak normality of a tree ``T`` in a finite
digraph ``D``:

* :func:`is_weak_normal_tree_def` evaluates both defining conditions pair by
  pair. A strongly connected subgraph containing ``u`` and ``v`` that avoids a
  vertex set ``L`` exists iff ``u`` and ``v`` share a strong component of
  ``D - L``, so no subgraph enumeration is needed.
* :func:`is_weak_normal_tree_components` checks ``C_t ∩ V(T) = up(t)`` for
  every tree vertex ``t``, where ``C_t`` is the strong component of
  ``D - strict_down(t)`` containing ``t``.

:func:`is_weak_normal_tree_subgraphs` is a slow third route that enumerates
vertex subsets; it exists for cross-validation on tiny inputs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .digraph import Digraph, find_cycle, is_strongly_connected, path_between_sets_avoiding, strong_components
from .enumeration import all_rooted_trees, arborescences_on, subsets
from .errors import (
    InvalidArborescence,
    NotInHost,
    NotStronglyConnected,
    SizeLimitExceeded,
    UnknownVertex,
)
from .trees import RootedTree, validate_arborescence

DEFAULT_SIZE_LIMIT = 6


@dataclass(frozen=True)
class Violation:
    """Which condition failed and on what.

    ``condition`` is one of ``separation`` (incomparable pair sharing a strong
    component that avoids their common lower bounds), ``connectivity``
    (comparable pair with no strongly connected subgraph avoiding the strict
    down-set of the lower one), ``component`` (``C_t ∩ V(T) != up(t)``) or
    ``cycle`` (directed cycle in a normal assistant).
    """

    condition: str
    roles: tuple
    component: frozenset = frozenset()
    expected: Optional[frozenset] = None
    cycle: tuple = ()

    def role(self, name):
        return dict(self.roles)[name]

    def lines(self) -> list:
        out = [f"witness: condition={self.condition}"]
        out += [f"witness: {k}={v}" for k, v in self.roles]
        if self.component:
            out.append("witness: component=" + ",".join(map(str, sorted(self.component))))
        if self.expected is not None:
            out.append("witness: expected=" + ",".join(map(str, sorted(self.expected))))
        if self.cycle:
            out.append("witness: cycle=" + "->".join(map(str, self.cycle + self.cycle[:1])))
        return out

    def as_dict(self) -> dict:
        d = {"condition": self.condition, **{k: v for k, v in self.roles}}
        if self.component:
            d["component"] = sorted(self.component)
        if self.expected is not None:
            d["expected"] = sorted(self.expected)
        if self.cycle:
            d["cycle"] = list(self.cycle)
        return d


@dataclass(frozen=True)
class NormalityVerdict:
    holds: bool
    witness: Optional[Violation] = None

    def __bool__(self) -> bool:
        return self.holds

    def lines(self) -> list:
        out = ["verdict: " + ("holds" if self.holds else "fails")]
        if self.witness is not None:
            out += self.witness.lines()
        return out

    def as_dict(self) -> dict:
        d = {"verdict": "holds" if self.holds else "fails"}
        if self.witness is not None:
            d["witness"] = self.witness.as_dict()
        return d


HOLDS = NormalityVerdict(True)


def format_verdict(v: NormalityVerdict) -> str:
    return "\n".join(v.lines()) + "\n"


def _require_host(D: Digraph, T: RootedTree) -> None:
    missing = T.vertices - D.vertices
    if missing:
        raise NotInHost(", ".join(map(str, sorted(missing))))


class _SccCache:
    """Strong components of ``D - X``, memoised by ``X``."""

    def __init__(self, D: Digraph):
        self.D = D
        self._memo = {}

    def __call__(self, X: frozenset):
        dec = self._memo.get(X)
        if dec is None:
            dec = self._memo[X] = strong_components(self.D.delete(X))
        return dec


def component_of(D: Digraph, T: RootedTree, t) -> frozenset:
    """``C_t``: the strong component of ``D - strict_down(t)`` containing ``t``."""
    X = T.strict_down_set(t)
    return strong_components(D.delete(X)).component_of(t)


def is_weak_normal_tree_def(D: Digraph, T: RootedTree) -> NormalityVerdict:
    _require_host(D, T)
    sccs = _SccCache(D)
    for u, v in itertools.combinations(sorted(T.vertices), 2):
        if T.comparable(u, v):
            lo, hi = (u, v) if T.leq(u, v) else (v, u)
            dec = sccs(T.strict_down_set(lo))
            if not dec.same(lo, hi):
                return NormalityVerdict(False, Violation(
                    "connectivity", (("u", lo), ("v", hi)), dec.component_of(lo)))
        else:
            dec = sccs(T.common_lower_bounds(u, v))
            if dec.same(u, v):
                return NormalityVerdict(False, Violation(
                    "separation", (("u", u), ("v", v)), dec.component_of(u)))
    return HOLDS


def is_weak_normal_tree_components(D: Digraph, T: RootedTree) -> NormalityVerdict:
    _require_host(D, T)
    for t in sorted(T.vertices):
        C = component_of(D, T, t)
        up = T.up_set(t)
        if C & T.vertices != up:
            return NormalityVerdict(False, Violation("component", (("t", t),), C, up))
    return HOLDS


def is_weak_normal_tree_subgraphs(D: Digraph, T: RootedTree, limit: int = DEFAULT_SIZE_LIMIT) -> NormalityVerdict:
    """Definition checked literally over every strongly connected induced subgraph.

    Every strongly connected subgraph lives inside a strongly connected
    induced subgraph on the same vertex set, so vertex subsets suffice.
    """
    _require_host(D, T)
    if len(D) > limit:
        raise SizeLimitExceeded(f"{len(D)} vertices > limit {limit}")
    strong_sets = [S for S in subsets(D.vertices, 1) if is_strongly_connected(D.subgraph(S))]
    tv = T.vertices
    for S in strong_sets:
        for u, v in itertools.combinations(sorted(S & tv), 2):
            if not T.comparable(u, v) and not (S & T.common_lower_bounds(u, v)):
                return NormalityVerdict(False, Violation("separation", (("u", u), ("v", v)), S))
    for u, v in itertools.permutations(sorted(tv), 2):
        if T.leq(u, v):
            below = T.strict_down_set(u)
            if not any(u in S and v in S and not (S & below) for S in strong_sets):
                return NormalityVerdict(False, Violation("connectivity", (("u", u), ("v", v))))
    return HOLDS


def is_normal_tree_finite(D: Digraph, T: RootedTree) -> NormalityVerdict:
    """Finite trees have no rays, so normal and weakly normal coincide."""
    return is_weak_normal_tree_components(D, T)


def recheck_violation(D: Digraph, T: RootedTree, w: Violation) -> bool:
    """Independently confirm that `w` describes a genuine failure of weak normality."""
    if w.condition == "separation":
        u, v = w.role("u"), w.role("v")
        S = w.component
        return (
            not T.comparable(u, v)
            and u in S and v in S
            and not (S & T.common_lower_bounds(u, v))
            and is_strongly_connected(D.subgraph(S))
        )
    if w.condition == "connectivity":
        u, v = w.role("u"), w.role("v")
        if not (T.leq(u, v) and u != v):
            return False
        rest = D.delete(T.strict_down_set(u))
        return not strong_components(rest).same(u, v)
    if w.condition == "component":
        t = w.role("t")
        return component_of(D, T, t) & T.vertices != T.up_set(t)
    return False


# --- normal arborescences ---------------------------------------------------


@dataclass(frozen=True)
class AssistantGraph:
    """Normal assistant of an arborescence: its edges plus certified extra edges."""

    graph: Digraph
    arborescence: RootedTree
    added: dict = field(default_factory=dict)

    def format(self) -> str:
        from .digraph import format_digraph

        notes = {e: "added via " + "->".join(map(str, p)) for e, p in self.added.items()}
        return format_digraph(self.graph, notes)


def _require_arborescence(D: Digraph, A: RootedTree) -> None:
    try:
        ok = validate_arborescence(D, A)
    except NotInHost as exc:
        raise InvalidArborescence(f"vertices not in host: {exc}") from None
    if not ok:
        bad = [(p, c) for c, p in sorted(A.parent.items()) if not D.has_edge(p, c)]
        raise InvalidArborescence(f"tree edge {bad[0][0]}->{bad[0][1]} is not a host edge")


def normal_assistant(D: Digraph, A: RootedTree) -> AssistantGraph:
    _require_arborescence(D, A)
    av = A.vertices
    added = {}
    ups = {v: A.up_set(v) for v in av}
    for u, v in itertools.permutations(sorted(av), 2):
        if A.comparable(u, v):
            continue
        path = path_between_sets_avoiding(D, ups[u], ups[v], av)
        if path is not None:
            added[(u, v)] = path
    tree_edges = [(p, c) for c, p in A.parent.items()]
    graph = Digraph(av, set(tree_edges) | set(added))
    return AssistantGraph(graph, A, added)


def is_normal_arborescence(D: Digraph, A: RootedTree) -> NormalityVerdict:
    assistant = normal_assistant(D, A)
    cycle = find_cycle(assistant.graph)
    if cycle is None:
        return HOLDS
    return NormalityVerdict(False, Violation("cycle", (), cycle=tuple(cycle)))


def check_arborescence_separation(D: Digraph, A: RootedTree) -> NormalityVerdict:
    """Incomparable ``u, v`` in a common strongly connected subgraph need a common lower bound in it.

    Normal arborescences always pass; non-normal ones may fail.
    """
    _require_arborescence(D, A)
    sccs = _SccCache(D)
    for u, v in itertools.combinations(sorted(A.vertices), 2):
        if A.comparable(u, v):
            continue
        dec = sccs(A.common_lower_bounds(u, v))
        if dec.same(u, v):
            return NormalityVerdict(False, Violation("separation", (("u", u), ("v", v)), dec.component_of(u)))
    return HOLDS


# --- constructions ------------------------------------------------------------


def build_normal_spanning_tree(D: Digraph, root, key: Optional[Callable] = None) -> RootedTree:
    """Normal spanning tree of a finite strongly connected digraph.

    Each tree vertex ``t`` owns the strong component ``C`` it was chosen in;
    the strong components of ``D[C] - t`` become the subtrees below ``t``,
    each rooted at its smallest vertex under `key`.
    """
    if root not in D:
        raise UnknownVertex(root)
    if not is_strongly_connected(D):
        raise NotStronglyConnected("the host digraph is not strongly connected")
    parent = {}
    stack = [(root, D.vertices)]
    while stack:
        t, C = stack.pop()
        for comp in strong_components(D.subgraph(C - {t})).components:
            c = min(comp, key=key)
            parent[c] = t
            stack.append((c, comp))
    return RootedTree(root, parent)


def _check_size(D: Digraph, limit: int) -> None:
    if len(D) > limit:
        raise SizeLimitExceeded(f"{len(D)} vertices > limit {limit}")


def exists_normal_tree_containing(D: Digraph, U: Iterable, limit: int = DEFAULT_SIZE_LIMIT) -> Optional[RootedTree]:
    """Brute-force search over rooted trees on supersets of `U`; the first normal one found."""
    _check_size(D, limit)
    U = D.check_vertices(U)
    for S in subsets(D.vertices, 1, U):
        for T in all_rooted_trees(S):
            if is_weak_normal_tree_components(D, T):
                return T
    return None


def exists_normal_arborescence_containing(D: Digraph, U: Iterable, limit: int = DEFAULT_SIZE_LIMIT) -> Optional[RootedTree]:
    _check_size(D, limit)
    U = D.check_vertices(U)
    for S in subsets(D.vertices, 1, U):
        for A in arborescences_on(D, S):
            if is_normal_arborescence(D, A):
                return A
    return None


def counterexample_truncation(k: int, primed: bool = False) -> Digraph:
    """First `k` levels of the graph with no normal spanning arborescence.

    Edges ``a_i a_j`` and ``b_j b_i`` for ``i < j``, ``a_i b_i``, ``b_0 a_0``;
    the primed variant also has ``a_0 b_j`` for every ``j``.
    """
    if k < 1:
        raise ValueError("k must be positive")
    a = [f"a{i}" for i in range(k)]
    b = [f"b{i}" for i in range(k)]
    edges = set()
    for i, j in itertools.combinations(range(k), 2):
        edges.add((a[i], a[j]))
        edges.add((b[j], b[i]))
    edges.update(zip(a, b))
    edges.add((b[0], a[0]))
    if primed:
        edges.update((a[0], bj) for bj in b)
    return Digraph(a + b, edges)


def counterexample_star(k: int, primed: bool = False) -> RootedTree:
    """Star rooted at ``a0`` over the truncation; an arborescence of the primed graph."""
    D = counterexample_truncation(k, primed)
    return RootedTree("a0", {v: "a0" for v in D.vertices if v != "a0"})
