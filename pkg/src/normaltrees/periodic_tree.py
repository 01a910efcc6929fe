"""Normal spanning trees of periodic digraphs, stored as a finite prefix plus one periodic spine per strand.

The construction is the finite one (each tree vertex splits the strong
component it was chosen in) run on finitely presented strong parts. Once
the tail component of a strand repeats up to a shift, the work done between
the two occurrences is a period: it is stored in relative coordinates
``(offset, bead vertex)`` and replayed forever.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

from .errors import NotInTree, NotStronglyConnected, StabilizationFailure, UnknownVertex
from .normality import HOLDS, NormalityVerdict, Violation, build_normal_spanning_tree
from .periodic import (
    End,
    MarkedSet,
    PeriodicDigraph,
    StrongPart,
    end_in_closure,
    is_strongly_connected_periodic,
    part_containing,
    strong_parts,
    whole,
)
from .trees import RootedTree

MAX_SHAPES = 64


class Spine:
    """One period of the subtree that follows a strand.

    Period ``j`` occupies the vertices ``rel`` shifted by ``start + j * period``.
    ``spine`` lists the ray vertices of one period, ``entry`` first; the entry
    of period 0 hangs below ``head`` and every later entry below the previous
    period's last spine vertex.
    """

    def __init__(self, strand: str, start: int, period: int, head, segment: dict, spine: tuple):
        self.strand = strand
        self.start = start
        self.period = period
        self.head = head
        self.segment = dict(segment)
        self.spine = tuple(spine)
        self.entry = self.spine[0]
        self.exit = self.spine[-1]
        self.offset_span = max(off for off, _ in self.segment)
        kids = {r: [] for r in self.segment}
        for r, p in self.segment.items():
            if p is not None:
                kids[p].append(r)
        self.kids = kids
        depth = {self.entry: 0}
        order = [self.entry]
        for r in order:
            for c in kids[r]:
                depth[c] = depth[r] + 1
                order.append(c)
        if len(depth) != len(self.segment):
            raise StabilizationFailure(f"segment of strand {strand} is not a tree below its entry")
        self.depth_in = depth

    @property
    def height(self) -> int:
        return len(self.spine)

    def __repr__(self) -> str:
        return f"Spine({self.strand}, start={self.start}, period={self.period}, size={len(self.segment)})"


class PeriodicTree:
    def __init__(self, P: PeriodicDigraph, root, prefix: dict, spines: dict):
        self.P = P
        self.root = root
        self.prefix = dict(prefix)
        self.spines = dict(spines)
        self._depth = {root: 0}
        self._paths = {}
        kids = {}
        for c, p in self.prefix.items():
            kids.setdefault(p, []).append(c)
        self._prefix_kids = kids
        self._head_of = {}
        for sp in self.spines.values():
            self._head_of.setdefault(sp.head, []).append(sp)

    def __repr__(self) -> str:
        return f"PeriodicTree(root={self.root}, prefix={len(self.prefix) + 1}, spines={list(self.spines.values())})"

    # --- coordinates ---

    def _abs(self, sp: Spine, rel, j: int) -> str:
        off, y = rel
        return self.P.name(sp.strand, sp.start + j * sp.period + off, y)

    def _segment_hit(self, v):
        if v == self.root or v in self.prefix:
            return None
        loc = self.P.locate(v)
        if loc is None:
            return None
        s, pos, y = loc
        sp = self.spines.get(s)
        if sp is None:
            return None
        lo = pos - sp.start - sp.offset_span
        j = max(0, -(-lo // sp.period))
        while sp.start + j * sp.period <= pos:
            rel = (pos - sp.start - j * sp.period, y)
            if rel in sp.segment:
                return sp, j, rel
            j += 1
        return None

    def __contains__(self, v) -> bool:
        try:
            return v == self.root or v in self.prefix or self._segment_hit(v) is not None
        except UnknownVertex:
            return False

    def _check(self, v):
        hit = None
        if v != self.root and v not in self.prefix:
            try:
                hit = self._segment_hit(v)
            except UnknownVertex:
                hit = None
            if hit is None:
                raise NotInTree(v)
        return hit

    # --- tree structure ---

    def parent_of(self, v):
        hit = self._check(v)
        if hit is None:
            return self.prefix.get(v)
        sp, j, rel = hit
        par = sp.segment[rel]
        if par is None:
            return sp.head if j == 0 else self._abs(sp, sp.exit, j - 1)
        return self._abs(sp, par, j)

    def depth(self, v) -> int:
        if v in self._depth:
            return self._depth[v]
        hit = self._check(v)
        if hit is not None:
            sp, j, rel = hit
            d = self._depth[v] = self.depth(sp.head) + 1 + j * sp.height + sp.depth_in[rel]
            return d
        chain = []
        cur = v
        while cur not in self._depth:
            chain.append(cur)
            cur = self.prefix[cur]
        d = self._depth[cur]
        for w in reversed(chain):
            d += 1
            self._depth[w] = d
        return self._depth[v]

    def path(self, v) -> tuple:
        chain = []
        cur = v
        while cur not in self._paths:
            chain.append(cur)
            if cur == self.root:
                break
            cur = self.parent_of(cur)
        base = () if chain and chain[-1] == self.root else self._paths[cur]
        for w in reversed(chain):
            base = base + (w,)
            self._paths[w] = base
        return self._paths[v]

    def ancestor_at_depth(self, v, n: int):
        p = self.path(v)
        if not 0 <= n < len(p):
            raise ValueError(f"no ancestor of {v} at depth {n}")
        return p[n]

    def leq(self, u, v) -> bool:
        du = self.depth(u)
        p = self.path(v)
        return du < len(p) and p[du] == u

    def children(self, v) -> tuple:
        hit = self._check(v)
        out = []
        if hit is None:
            out.extend(self._prefix_kids.get(v, ()))
            out.extend(self._abs(sp, sp.entry, 0) for sp in self._head_of.get(v, ()))
        else:
            sp, j, rel = hit
            out.extend(self._abs(sp, r, j) for r in sp.kids[rel])
            if rel == sp.exit:
                out.append(self._abs(sp, sp.entry, j + 1))
        return tuple(sorted(out, key=self.P.key))

    # --- rays ---

    def settle_depth(self, end: End) -> int:
        """Depth of the first periodic vertex on the ray of `end`."""
        return self.depth(self._spine(end).head) + 1

    def _spine(self, end: End) -> Spine:
        try:
            return self.spines[end.strand]
        except KeyError:
            raise UnknownVertex(str(end)) from None

    def ray_vertex(self, end: End, n: int):
        """The vertex at depth `n` on the normal ray converging to `end`."""
        sp = self._spine(end)
        dh = self.depth(sp.head)
        if n <= dh:
            return self.ancestor_at_depth(sp.head, n)
        j, r = divmod(n - dh - 1, sp.height)
        return self._abs(sp, sp.spine[r], j)

    def on_ray(self, end: End, v) -> bool:
        return self.ray_vertex(end, self.depth(v)) == v

    # --- finite views ---

    def period_vertices(self, strand: str, j: int) -> list:
        """Vertices of period `j` of the spine along `strand`."""
        sp = self.spines[strand]
        return [self._abs(sp, rel, j) for rel in sorted(sp.segment)]

    def strict_down_set(self, t) -> frozenset:
        return frozenset(self.path(t)[:-1])

    def vertices_upto_depth(self, n: int) -> Iterator:
        if n < 0:
            return
        todo = [self.root]
        while todo:
            v = todo.pop()
            yield v
            if self.depth(v) < n:
                todo.extend(self.children(v))

    def edges_upto_depth(self, n: int) -> list:
        """Tree edges ``(parent, child)`` whose child lies at depth at most `n`."""
        return sorted((self.parent_of(v), v) for v in self.vertices_upto_depth(n) if v != self.root)

    def unroll(self, k: int) -> RootedTree:
        """The subtree on the vertices of the depth-`k` materialisation.

        Positions never decrease along root paths, so this set is down-closed.
        """
        parent = {c: p for c, p in self.prefix.items() if self.P.pos(c) <= k - 1}
        for sp in self.spines.values():
            j = 0
            while sp.start + j * sp.period <= k - 1:
                for rel in sp.segment:
                    v = self._abs(sp, rel, j)
                    if self.P.pos(v) <= k - 1:
                        parent[v] = self.parent_of(v)
                j += 1
        return RootedTree(self.root, parent)

    def vertex_set(self) -> MarkedSet:
        pats = {(s, self.P.strand(s).glue_map[y] if off + sp.start == -1 else y)
                for s, sp in self.spines.items() for off, y in sp.segment}
        return MarkedSet(frozenset(self.prefix) | {self.root}, frozenset(pats))


def _is_pure_strand(P: PeriodicDigraph, S: StrongPart) -> bool:
    if len(S.tails) != 1:
        return False
    s = S.tails[0][0]
    return all((P.locate(v) or ("",))[0] == s for v in S.finite)


def _shape(P: PeriodicDigraph, S: StrongPart) -> tuple:
    s, cut = S.tails[0]
    m = min([P.pos(v) for v in S.finite] + [cut])
    rel = frozenset((P.pos(v) - m, P.locate(v)[2]) for v in S.finite)
    # layer -1 holds only back vertices, so shapes touching it never repeat
    return (m == -1, rel, cut - m), m


def build_periodic_nst(
    P: PeriodicDigraph,
    root=None,
    part: Optional[StrongPart] = None,
    max_shapes: int = MAX_SHAPES,
) -> PeriodicTree:
    """Normal spanning tree of ``D[part]`` (default: all of ``D``, which must be strongly connected)."""
    if part is None:
        if not is_strongly_connected_periodic(P):
            raise NotStronglyConnected("the periodic digraph is not strongly connected")
        part = whole(P)
    if root is None:
        root = part.min_vertex(P)
    elif not part.contains(P, root):
        raise UnknownVertex(root)
    edges = {}
    owner = {}
    chains = {s: [] for s in P.strand_names}
    spines = {}
    stack = [(root, part, None)]
    while stack:
        t, C, step = stack.pop()
        # finish the finite pieces below t before a period may close at t
        for S in sorted(strong_parts(P, {t}, within=C), key=lambda S: S.is_infinite):
            c = S.min_vertex(P)
            if _is_pure_strand(P, S):
                s = S.tails[0][0]
                shape, m = _shape(P, S)
                hist = chains[s]
                prior = next((i for i, (sh, _, _) in enumerate(hist) if sh == shape), None)
                if prior is not None:
                    spines[s] = _close(P, s, hist, prior, m, t, edges, owner)
                    continue
                if len(hist) >= max_shapes:
                    raise StabilizationFailure(f"strand {s}: no repeating tail shape after {max_shapes} steps")
                hist.append((shape, m, c))
                new_step = (s, len(hist) - 1)
                edges[c], owner[c] = t, new_step
                stack.append((c, S, new_step))
                continue
            edges[c], owner[c] = t, step
            if S.is_infinite:
                stack.append((c, S, step))
            elif len(S.finite) > 1:
                sub = build_normal_spanning_tree(P.induced(S.finite), c, key=P.key)
                for ch, par in sub.parent.items():
                    edges[ch], owner[ch] = par, step
    return PeriodicTree(P, root, edges, spines)


def _close(P, s, hist, prior, m, last, edges, owner) -> Spine:
    start = hist[prior][1]
    period = m - start
    if period <= 0:
        raise StabilizationFailure(f"strand {s}: tail shape repeats without moving")
    steps = {(s, i) for i in range(prior, len(hist))}
    members = [v for v, st in owner.items() if st in steps]
    entry_abs = hist[prior][2]
    head = edges[entry_abs]

    def rel(v):
        _, pos, y = P.locate(v)
        return (pos - start, y)

    segment = {}
    for v in members:
        segment[rel(v)] = None if v == entry_abs else rel(edges[v])
        del edges[v]
        del owner[v]
    spine = tuple(rel(c) for _, _, c in hist[prior:])
    if spine[-1] != rel(last):
        raise StabilizationFailure(f"strand {s}: period does not close at its last spine vertex")
    return Spine(s, start, period, head, segment, spine)


# --- checks -----------------------------------------------------------------------


def check_finite_tree_in_periodic(P: PeriodicDigraph, T: RootedTree) -> NormalityVerdict:
    """Weak normality of a finite tree inside the infinite digraph.

    For every ``t`` the strong part of ``D - strict_down(t)`` containing ``t``
    must meet ``V(T)`` exactly in ``up(t)``.
    """
    for t in sorted(T.vertices, key=P.key):
        C = part_containing(P, T.strict_down_set(t), t)
        inside = frozenset(v for v in T.vertices if C.contains(P, v))
        up = T.up_set(t)
        if inside != up:
            return NormalityVerdict(False, Violation("component", (("t", t),), inside, up))
    return HOLDS


def check_unrolling(P: PeriodicDigraph, T: PeriodicTree, k: int) -> NormalityVerdict:
    """The depth-`k` unrolling spans the depth-`k` materialisation and is weakly normal in ``D``."""
    U = T.unroll(k)
    missing = P.materialize(k).vertices - U.vertices
    if missing:
        v = min(missing, key=P.key)
        return NormalityVerdict(False, Violation("spanning", (("v", v),)))
    return check_finite_tree_in_periodic(P, U)


@dataclass
class EndReport:
    ok: bool
    mapping: dict = field(default_factory=dict)  # strand -> (start, period)
    problems: list = field(default_factory=list)

    def lines(self) -> list:
        out = ["end_faithful: " + ("yes" if self.ok else "no")]
        for s, (start, period) in sorted(self.mapping.items()):
            out.append(f"ray: end:{s} start={start} period={period}")
        out += [f"problem: {p}" for p in self.problems]
        return out


def check_end_faithfulness(P: PeriodicDigraph, T: PeriodicTree, samples: int = 3) -> EndReport:
    """Rays of `T` and ends of ``D`` correspond one to one, and every end lies in the closure of ``V(T)``."""
    report = EndReport(True)
    strands = set(P.strand_names)
    rays = set(T.spines)
    for s in sorted(strands - rays):
        report.problems.append(f"end:{s} has no ray")
    for s in sorted(rays - strands):
        report.problems.append(f"ray {s} matches no end")
    marked = T.vertex_set()
    for s in sorted(strands):
        if not end_in_closure(P, End(s), marked):
            report.problems.append(f"end:{s} not in the closure of V(T)")
    for s in sorted(strands & rays):
        sp = T.spines[s]
        end = End(s)
        base = T.settle_depth(end)
        moved = True
        for n in range(base, base + samples * sp.height):
            a, b = T.ray_vertex(end, n), T.ray_vertex(end, n + sp.height)
            if P.locate(a)[0] != s or P.pos(b) != P.pos(a) + sp.period:
                moved = False
        if not moved:
            report.problems.append(f"ray of end:{s} does not run along its strand")
        report.mapping[s] = (sp.start, sp.period)
    report.ok = not report.problems
    return report
