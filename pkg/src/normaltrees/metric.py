"""An exact metric on vertices, ends and edge points, built from a normal spanning tree.

Tree edge ``e = (parent, child)`` has length ``2**-depth(child)``. For two
points ``p`` and ``q`` every tree edge gets a weight in ``[0, 1]`` from how
the four anchors ``vstart(p), vend(p), vstart(q), vend(q)`` split over the
two sides of ``T - e``; the distance is the length-weighted sum. The far side
of ``e`` is the up-set of its child together with the ends whose rays pass
through the child.

On a periodic tree only finitely many edges off the anchors' rays carry
weight, and beyond the level where every involved ray has settled into its
strand the weight along each ray is constant, so the rest is a geometric tail.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import AnchorNotInTree, NotInTree, NotTreeEdge, UnknownVertex
from .periodic import End, MarkedSet
from .points import Vertex, anchors

ROLES = ("vstart(p)", "vend(p)", "vstart(q)", "vend(q)")


@dataclass(frozen=True)
class WeightCase:
    case: str  # "i" .. "v"
    isolated: Optional[str] = None  # which anchor stands alone, case ii only

    def __str__(self) -> str:
        return self.case if self.isolated is None else f"{self.case} ({self.isolated})"


def weight_from_sides(far: tuple, lp: Fraction, lq: Fraction) -> tuple:
    """Weight and case for anchors split as `far` (four booleans, in ``ROLES`` order)."""
    k = sum(far)
    if k in (0, 4):
        return Fraction(0), WeightCase("i")
    if k in (1, 3):
        odd = far.index(k == 1)
        return (1 - lp, lp, 1 - lq, lq)[odd], WeightCase("ii", ROLES[odd])
    ps, pe, qs, _ = far
    if ps == pe:
        return Fraction(1), WeightCase("iii")
    if ps == qs:
        return abs(lp - lq), WeightCase("iv")
    return 1 - abs(lp - lq), WeightCase("v")


def edge_length(T, e) -> Fraction:
    par, child = e
    try:
        ok = T.parent_of(child) == par and par is not None
    except (NotInTree, UnknownVertex):
        ok = False
    if not ok:
        raise NotTreeEdge(e)
    return Fraction(1, 2 ** T.depth(child))


def min_incident_length(T, v) -> Fraction:
    """Shortest tree edge at `v`: a positive lower bound, since `v` has finitely many children."""
    d = T.depth(v)
    return Fraction(1, 2 ** (d + 1)) if T.children(v) else Fraction(1, 2 ** d)


def _require(T, a) -> None:
    if isinstance(a, End):
        if not hasattr(T, "spines") or a.strand not in T.spines:
            raise AnchorNotInTree(str(a))
    elif a not in T:
        raise AnchorNotInTree(str(a))


def _far(T, child, a) -> bool:
    if isinstance(a, End):
        return T.ray_vertex(a, T.depth(child)) == child
    return T.leq(child, a)


def side_of(T, e, a) -> str:
    """``"far"`` if `a` lies beyond `e` (from the root), else ``"root"``."""
    edge_length(T, e)
    _require(T, a)
    return "far" if _far(T, e[1], a) else "root"


def weight(T, e, p, q) -> tuple:
    edge_length(T, e)
    ps, pe, lp = anchors(p)
    qs, qe, lq = anchors(q)
    pos = (ps, pe, qs, qe)
    for a in pos:
        _require(T, a)
    return weight_from_sides(tuple(_far(T, e[1], a) for a in pos), lp, lq)


def _settle_level(T, pos) -> int:
    level = 0
    for a in pos:
        level = max(level, T.settle_depth(a) if isinstance(a, End) else T.depth(a))
    return level


def distance(T, p, q) -> Fraction:
    """Exact distance; `T` is a :class:`RootedTree` (finite host) or a periodic tree."""
    ps, pe, lp = anchors(p)
    qs, qe, lq = anchors(q)
    pos = (ps, pe, qs, qe)
    for a in pos:
        _require(T, a)
    ends = sorted({a for a in pos if isinstance(a, End)}, key=lambda w: w.strand)
    level = _settle_level(T, pos)
    # root paths of the anchors, cut at `level` for ends
    lines = {}
    for a in pos:
        if a not in lines:
            lines[a] = frozenset(T.path(a) if not isinstance(a, End) else
                                 (T.ray_vertex(a, n) for n in range(level + 1)))
    children = frozenset().union(*lines.values()) - {T.root}
    total = Fraction(0)
    for c in children:
        w, _ = weight_from_sides(tuple(c in lines[a] for a in pos), lp, lq)
        total += w / 2 ** T.depth(c)
    for end in ends:
        w, _ = weight_from_sides(tuple(a == end for a in pos), lp, lq)
        total += w / 2 ** level
    return total


def brute_force_distance(T, p, q, depth: int = 30) -> Fraction:
    """Sum over every tree edge down to `depth`; for a periodic tree the error is below ``4 * 2**-depth``."""
    ps, pe, lp = anchors(p)
    qs, qe, lq = anchors(q)
    pos = (ps, pe, qs, qe)
    for a in pos:
        _require(T, a)
    beyond = {}
    for a in pos:
        if a in beyond:
            continue
        if isinstance(a, End):
            beyond[a] = {T.ray_vertex(a, n) for n in range(depth + 1)}
        else:
            beyond[a] = set(T.path(a))
    edges = T.edges_upto_depth(depth) if hasattr(T, "spines") else T.edges()
    total = Fraction(0)
    for _, c in edges:
        w, _ = weight_from_sides(tuple(c in beyond[a] for a in pos), lp, lq)
        total += w * Fraction(1, 2 ** T.depth(c))
    return total


def vertices_far_from_ends(P, T, radius: Fraction) -> MarkedSet:
    """Vertices whose distance to every end exceeds `radius`.

    Shifting a segment vertex by one period of its spine scales its distance
    to that spine's end by ``2**-height``, so the scan of each spine stops at
    the first period whose vertices are all within `radius` of the end.
    """
    ends = P.ends()
    radius = Fraction(radius)

    def far(v):
        return all(distance(T, Vertex(v), w) > radius for w in ends)

    if not ends:
        return MarkedSet(frozenset(P.core.vertices))
    keep = {v for v in [T.root, *T.prefix] if far(v)}
    for sp in T.spines.values():
        end = End(sp.strand)
        j = 0
        while True:
            period = T.period_vertices(sp.strand, j)
            if all(distance(T, Vertex(v), end) <= radius for v in period):
                break
            keep.update(v for v in period if far(v))
            j += 1
    return MarkedSet(frozenset(keep))


def compute_Vn(P, T, n: int) -> MarkedSet:
    """``V_n``: vertices at distance more than ``1/n`` from every end."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    return vertices_far_from_ends(P, T, Fraction(1, n))
