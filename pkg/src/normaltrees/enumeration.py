"""Exhaustive and random generators for small digraphs, rooted trees and arborescences."""

from __future__ import annotations

import heapq
import itertools
import random
from typing import Iterable, Iterator, Optional, Sequence

from .digraph import Digraph
from .trees import RootedTree

LETTERS = "abcdefghijklmnopqrstuvwxyz"


def vertex_names(n: int) -> list:
    if n > len(LETTERS):
        return [f"v{i}" for i in range(n)]
    return list(LETTERS[:n])


def digraph_from_code(names: Sequence, code: int) -> Digraph:
    """Digraph whose edge set is the bitmask `code` over ordered pairs of `names`."""
    pairs = [(u, v) for u in names for v in names if u != v]
    return Digraph(names, (p for i, p in enumerate(pairs) if code >> i & 1))


def all_digraphs(n: int) -> Iterator[Digraph]:
    """Every simple digraph on the labelled vertex set ``a, b, ...`` (2^(n(n-1)) of them)."""
    names = vertex_names(n)
    for code in range(1 << (n * (n - 1))):
        yield digraph_from_code(names, code)


def _prufer_decode(vs: Sequence, seq: Sequence) -> dict:
    k = len(vs)
    degree = [1] * k
    for i in seq:
        degree[i] += 1
    leaves = [i for i in range(k) if degree[i] == 1]
    heapq.heapify(leaves)
    adj = {v: [] for v in vs}
    for i in seq:
        leaf = heapq.heappop(leaves)
        adj[vs[leaf]].append(vs[i])
        adj[vs[i]].append(vs[leaf])
        degree[i] -= 1
        if degree[i] == 1:
            heapq.heappush(leaves, i)
    a, b = heapq.heappop(leaves), heapq.heappop(leaves)
    adj[vs[a]].append(vs[b])
    adj[vs[b]].append(vs[a])
    return adj


def _prufer_trees(vs: Sequence) -> Iterator[dict]:
    """Adjacency dicts of all labelled trees on `vs` (len >= 2)."""
    for seq in itertools.product(range(len(vs)), repeat=len(vs) - 2):
        yield _prufer_decode(vs, seq)


def _orient(adj: dict, root) -> dict:
    parent = {}
    stack = [root]
    seen = {root}
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                parent[w] = v
                stack.append(w)
    return parent


def all_rooted_trees(vertices: Iterable) -> Iterator[RootedTree]:
    """All rooted trees with exactly this vertex set (k^(k-1) of them)."""
    vs = sorted(vertices)
    if not vs:
        return
    if len(vs) == 1:
        yield RootedTree(vs[0])
        return
    for adj in _prufer_trees(vs):
        for r in vs:
            yield RootedTree(r, _orient(adj, r))


def subsets(vertices: Iterable, min_size: int = 0, containing: Iterable = ()) -> Iterator[frozenset]:
    """Supersets of `containing` inside `vertices`, by size then sorted content."""
    vs = sorted(vertices)
    base = frozenset(containing)
    rest = [v for v in vs if v not in base]
    for k in range(max(0, min_size - len(base)), len(rest) + 1):
        for extra in itertools.combinations(rest, k):
            yield base | frozenset(extra)


def all_trees_on_subsets(vertices: Iterable, containing: Iterable = ()) -> Iterator[RootedTree]:
    for S in subsets(vertices, 1, containing):
        yield from all_rooted_trees(S)


def arborescences_on(D: Digraph, S: frozenset) -> Iterator[RootedTree]:
    """All arborescences of `D` with vertex set exactly `S`."""
    for root in sorted(S):
        others = sorted(S - {root})
        choices = [sorted(p for p in D.predecessors(v) if p in S) for v in others]
        if any(not c for c in choices):
            continue
        for pick in itertools.product(*choices):
            parent = dict(zip(others, pick))
            if _reaches_root(parent, root):
                yield RootedTree(root, parent)


def _reaches_root(parent: dict, root) -> bool:
    good = {root}
    for v in parent:
        chain = []
        cur = v
        while cur not in good:
            if cur in chain:
                return False
            chain.append(cur)
            cur = parent[cur]
        good.update(chain)
    return True


def all_arborescences(D: Digraph, containing: Iterable = ()) -> Iterator[RootedTree]:
    for S in subsets(D.vertices, 1, containing):
        yield from arborescences_on(D, S)


def random_digraph(n: int, rng: random.Random, p: float = 0.5) -> Digraph:
    names = vertex_names(n)
    return Digraph(names, ((u, v) for u in names for v in names if u != v and rng.random() < p))


def random_rooted_tree(vertices: Iterable, rng: random.Random) -> Optional[RootedTree]:
    """Uniform labelled rooted tree on `vertices` (via a random Pruefer code)."""
    vs = sorted(vertices)
    if not vs:
        return None
    if len(vs) == 1:
        return RootedTree(vs[0])
    seq = [rng.randrange(len(vs)) for _ in range(len(vs) - 2)]
    root = rng.choice(vs)
    return RootedTree(root, _orient(_prufer_decode(vs, seq), root))
