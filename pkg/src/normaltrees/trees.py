"""Rooted trees on vertex sets of a digraph and their tree order.

A :class:`RootedTree` is stored as a parent map. Its edges need not be edges
of any host digraph; an arborescence is simply a rooted tree all of whose
parent -> child pairs are host edges (see :func:`validate_arborescence`).
"""

from __future__ import annotations

from typing import Iterable, Mapping, Optional

from .digraph import Digraph
from .errors import FormatError, InvalidTree, NotInHost, NotInTree, NotTreeEdge


class RootedTree:
    __slots__ = ("root", "parent", "vertices", "_paths", "_children", "_hash")

    def __init__(self, root, parent: Optional[Mapping] = None):
        parent = dict(parent or {})
        if root in parent:
            raise InvalidTree(f"root {root!r} has a parent")
        vertices = {root} | set(parent)
        for child, par in parent.items():
            if par not in vertices:
                raise InvalidTree(f"parent {par!r} of {child!r} is not a tree vertex")
        paths = {root: (root,)}
        for v in parent:
            chain = []
            cur = v
            while cur not in paths:
                if cur in chain:
                    raise InvalidTree(f"parent map has a cycle through {cur!r}")
                chain.append(cur)
                cur = parent[cur]
            base = paths[cur]
            for w in reversed(chain):
                base = base + (w,)
                paths[w] = base
        children = {v: [] for v in vertices}
        for child, par in parent.items():
            children[par].append(child)
        self.root = root
        self.parent = parent
        self.vertices = frozenset(vertices)
        self._paths = paths
        self._children = {v: tuple(sorted(c)) for v, c in children.items()}
        self._hash = None

    def __contains__(self, v) -> bool:
        return v in self.vertices

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RootedTree):
            return NotImplemented
        return self.root == other.root and self.parent == other.parent

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.root, frozenset(self.parent.items())))
        return self._hash

    def __repr__(self) -> str:
        edges = ", ".join(f"{p}-{c}" for p, c in self.edges())
        return f"RootedTree(root={self.root!r}, edges=[{edges}])"

    def _check(self, *vs) -> None:
        for v in vs:
            if v not in self.vertices:
                raise NotInTree(v)

    def path(self, v) -> tuple:
        """Vertices from the root down to `v`."""
        self._check(v)
        return self._paths[v]

    def depth(self, v) -> int:
        return len(self.path(v)) - 1

    def parent_of(self, v):
        self._check(v)
        return self.parent.get(v)

    def children(self, v) -> tuple:
        self._check(v)
        return self._children[v]

    def ancestor_at_depth(self, v, n: int):
        p = self.path(v)
        return p[n] if 0 <= n < len(p) else None

    def leq(self, u, v) -> bool:
        """True iff `u` lies on the root-`v` path."""
        self._check(u, v)
        pu = self._paths[u]
        pv = self._paths[v]
        return len(pu) <= len(pv) and pv[len(pu) - 1] == u

    def comparable(self, u, v) -> bool:
        return self.leq(u, v) or self.leq(v, u)

    def down_set(self, t) -> frozenset:
        return frozenset(self.path(t))

    def strict_down_set(self, t) -> frozenset:
        return frozenset(self.path(t)[:-1])

    def up_set(self, t) -> frozenset:
        self._check(t)
        out = {t}
        stack = [t]
        while stack:
            for c in self._children[stack.pop()]:
                out.add(c)
                stack.append(c)
        return frozenset(out)

    def strict_up_set(self, t) -> frozenset:
        return self.up_set(t) - {t}

    def common_lower_bounds(self, u, v) -> frozenset:
        return self.down_set(u) & self.down_set(v)

    def edges(self) -> list:
        """Tree edges as ``(parent, child)`` pairs, sorted."""
        return sorted((p, c) for c, p in self.parent.items())

    def distance_classes(self) -> list:
        """``E_1, E_2, ...``: tree edges grouped by depth of the deeper endpoint."""
        classes = []
        for p, c in self.edges():
            n = self.depth(c)
            while len(classes) < n:
                classes.append(set())
            classes[n - 1].add((p, c))
        return [frozenset(e) for e in classes]

    def edge_depth(self, e) -> int:
        p, c = e
        if self.parent.get(c) != p:
            raise NotTreeEdge(e)
        return self.depth(c)

    def restrict(self, vs: Iterable) -> "RootedTree":
        """The subtree on a down-closed vertex set containing the root."""
        vs = frozenset(vs)
        self._check(*vs)
        if self.root not in vs or any(self.parent[v] not in vs for v in vs if v != self.root):
            raise InvalidTree("vertex set is not down-closed")
        return RootedTree(self.root, {v: self.parent[v] for v in vs if v != self.root})

    def down_closure(self, vs: Iterable) -> "RootedTree":
        keep = {self.root}
        for v in vs:
            keep.update(self.path(v))
        return self.restrict(keep)


def validate_arborescence(D: Digraph, A: RootedTree) -> bool:
    """True iff every parent -> child pair of `A` is an edge of `D`."""
    missing = A.vertices - D.vertices
    if missing:
        raise NotInHost(", ".join(map(str, sorted(missing))))
    return all(D.has_edge(p, c) for c, p in A.parent.items())


def parse_tree(text: str) -> RootedTree:
    """Read ``root <name>`` followed by ``p <child> <parent>`` lines."""
    root = None
    parent = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "root" and len(parts) == 2:
            if root is not None:
                raise FormatError(f"line {lineno}: second root line")
            root = parts[1]
        elif parts[0] == "p" and len(parts) == 3:
            if parts[1] in parent:
                raise FormatError(f"line {lineno}: {parts[1]} already has a parent")
            parent[parts[1]] = parts[2]
        else:
            raise FormatError(f"line {lineno}: cannot parse {raw!r}")
    if root is None:
        raise FormatError("missing root line")
    try:
        return RootedTree(root, parent)
    except InvalidTree as exc:
        raise FormatError(str(exc)) from None


def format_tree(T: RootedTree) -> str:
    lines = [f"root {T.root}"]
    lines += [f"p {c} {p}" for c, p in sorted(T.parent.items())]
    return "\n".join(lines) + "\n"
