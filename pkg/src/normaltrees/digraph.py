"""Finite simple digraphs: strong components, condensation and path search."""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator, Optional

from .errors import EmptyGraph, FormatError, UnknownVertex

Vertex = Hashable


class Digraph:
    """Immutable simple directed graph.

    Endpoints of edges are added to the vertex set implicitly. Loops and
    repeated edges are rejected.
    """

    __slots__ = ("_vertices", "_edges", "_succ", "_pred", "_hash")

    def __init__(self, vertices: Iterable[Vertex] = (), edges: Iterable[tuple] = ()):
        vs = set(vertices)
        es = set()
        for u, v in edges:
            if u == v:
                raise FormatError(f"self-loop at {u!r}")
            if (u, v) in es:
                raise FormatError(f"repeated edge {u!r} -> {v!r}")
            es.add((u, v))
            vs.add(u)
            vs.add(v)
        succ = {v: set() for v in vs}
        pred = {v: set() for v in vs}
        for u, v in es:
            succ[u].add(v)
            pred[v].add(u)
        self._vertices = frozenset(vs)
        self._edges = frozenset(es)
        self._succ = {v: frozenset(s) for v, s in succ.items()}
        self._pred = {v: frozenset(s) for v, s in pred.items()}
        self._hash = None

    @property
    def vertices(self) -> frozenset:
        return self._vertices

    @property
    def edges(self) -> frozenset:
        return self._edges

    def successors(self, v) -> frozenset:
        try:
            return self._succ[v]
        except KeyError:
            raise UnknownVertex(v) from None

    def predecessors(self, v) -> frozenset:
        try:
            return self._pred[v]
        except KeyError:
            raise UnknownVertex(v) from None

    def has_edge(self, u, v) -> bool:
        return (u, v) in self._edges

    def __contains__(self, v) -> bool:
        return v in self._vertices

    def __len__(self) -> int:
        return len(self._vertices)

    def __iter__(self) -> Iterator:
        return iter(sorted(self._vertices))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._vertices, self._edges))
        return self._hash

    def __repr__(self) -> str:
        return f"Digraph({len(self._vertices)} vertices, {len(self._edges)} edges)"

    def check_vertices(self, vs: Iterable) -> frozenset:
        vs = frozenset(vs)
        missing = vs - self._vertices
        if missing:
            raise UnknownVertex(", ".join(map(str, sorted(missing))))
        return vs

    def subgraph(self, vs: Iterable) -> "Digraph":
        """Induced subgraph on `vs`."""
        vs = self.check_vertices(vs)
        return Digraph(vs, ((u, v) for u, v in self._edges if u in vs and v in vs))

    def delete(self, xs: Iterable) -> "Digraph":
        """The induced subgraph on V minus `xs`."""
        xs = self.check_vertices(xs)
        return self.subgraph(self._vertices - xs)

    def add_edges(self, edges: Iterable[tuple]) -> "Digraph":
        return Digraph(self._vertices, self._edges | set(edges))


def delete(D: Digraph, xs: Iterable) -> Digraph:
    return D.delete(xs)


@dataclass(frozen=True)
class SccDecomposition:
    """Strong components in topological order of the condensation.

    ``condensation`` has one vertex per component index.
    """

    components: tuple
    index: dict
    condensation: Digraph

    def component_of(self, v) -> frozenset:
        return self.components[self.index[v]]

    def same(self, u, v) -> bool:
        return self.index[u] == self.index[v]


def _tarjan(D: Digraph) -> list:
    index = {}
    low = {}
    on_stack = set()
    stack = []
    comps = []
    counter = 0
    for start in sorted(D.vertices):
        if start in index:
            continue
        index[start] = low[start] = counter
        counter += 1
        stack.append(start)
        on_stack.add(start)
        work = [(start, iter(sorted(D.successors(start))))]
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(sorted(D.successors(w)))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                comps.append(frozenset(comp))
    return comps


def strong_components(D: Digraph) -> SccDecomposition:
    comps = _tarjan(D)
    where = {}
    for i, c in enumerate(comps):
        for v in c:
            where[v] = i
    cedges = {(where[u], where[v]) for u, v in D.edges if where[u] != where[v]}
    # Kahn's algorithm, ties broken by smallest member vertex.
    indeg = [0] * len(comps)
    out = [[] for _ in comps]
    for a, b in cedges:
        indeg[b] += 1
        out[a].append(b)
    heap = [(min(c), i) for i, c in enumerate(comps) if indeg[i] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        _, i = heapq.heappop(heap)
        order.append(i)
        for j in out[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                heapq.heappush(heap, (min(comps[j]), j))
    renumber = {old: new for new, old in enumerate(order)}
    components = tuple(comps[i] for i in order)
    index = {v: renumber[i] for v, i in where.items()}
    condensation = Digraph(range(len(components)), {(renumber[a], renumber[b]) for a, b in cedges})
    return SccDecomposition(components, index, condensation)


def is_strongly_connected(D: Digraph) -> bool:
    if not D.vertices:
        raise EmptyGraph("strong connectivity of the empty digraph is undefined")
    start = min(D.vertices)
    return len(reachable(D, [start])) == len(D) and len(reachable(D, [start], reverse=True)) == len(D)


def reachable(D: Digraph, sources: Iterable, reverse: bool = False) -> frozenset:
    seen = set(D.check_vertices(sources))
    queue = deque(seen)
    step = D.predecessors if reverse else D.successors
    while queue:
        v = queue.popleft()
        for w in step(v):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return frozenset(seen)


def find_cycle(D: Digraph) -> Optional[list]:
    """Some directed cycle as a vertex list (first vertex not repeated), or None."""
    colour = {}
    for start in sorted(D.vertices):
        if start in colour:
            continue
        colour[start] = 1
        path = [start]
        work = [iter(sorted(D.successors(start)))]
        while work:
            for w in work[-1]:
                c = colour.get(w, 0)
                if c == 1:
                    return path[path.index(w):]
                if c == 0:
                    colour[w] = 1
                    path.append(w)
                    work.append(iter(sorted(D.successors(w))))
                    break
            else:
                colour[path.pop()] = 2
                work.pop()
    return None


def is_acyclic(D: Digraph) -> bool:
    return find_cycle(D) is None


def path_between_sets_avoiding(D: Digraph, S: Iterable, T: Iterable, W: Iterable = ()) -> Optional[tuple]:
    """Shortest path from `S` to `T` whose inner vertices avoid `W`.

    The first vertex lies in S and the last in T; either may lie in W. Among
    shortest paths the lexicographically smallest vertex sequence is returned.
    """
    S = D.check_vertices(S)
    T = D.check_vertices(T)
    W = D.check_vertices(W)
    common = S & T
    if common:
        return (min(common),)
    # distance to T, stepping backwards only through admissible inner vertices
    dist = {t: 0 for t in T}
    queue = deque(sorted(T))
    while queue:
        y = queue.popleft()
        if y not in T and y in W:
            continue
        for x in D.predecessors(y):
            if x not in dist:
                dist[x] = dist[y] + 1
                queue.append(x)
    starts = [s for s in S if s in dist]
    if not starts:
        return None
    cur = min(starts, key=lambda s: (dist[s], s))
    path = [cur]
    while dist[cur] > 0:
        want = dist[cur] - 1
        cur = min(
            w for w in D.successors(cur)
            if dist.get(w) == want and (want == 0 or w not in W) and (want == 0) == (w in T)
        )
        path.append(cur)
    return tuple(path)


def parse_digraph(text: str) -> Digraph:
    """Read the line format ``v <name>`` / ``e <tail> <head>``; ``#`` starts a comment."""
    vertices = []
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "v" and len(parts) == 2:
            vertices.append(parts[1])
        elif parts[0] == "e" and len(parts) == 3:
            edges.append((parts[1], parts[2]))
        else:
            raise FormatError(f"line {lineno}: cannot parse {raw!r}")
    try:
        return Digraph(vertices, edges)
    except FormatError as exc:
        raise FormatError(f"{exc}") from None


def format_digraph(D: Digraph, comments: Optional[dict] = None) -> str:
    """Vertices then edges, each in sorted order. `comments` maps an edge to a trailing note."""
    comments = comments or {}
    lines = [f"v {v}" for v in sorted(D.vertices)]
    for u, v in sorted(D.edges):
        note = comments.get((u, v))
        lines.append(f"e {u} {v}" + (f"  # {note}" if note else ""))
    return "\n".join(lines) + "\n"
