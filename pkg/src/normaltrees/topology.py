"""Neighbourhoods around points and checks that metric balls and neighbourhoods nest both ways.

Only the neighbourhoods the metric argument actually uses are modelled:
uniform stars around vertices, ``C-hat`` sets around ends, ``E-hat`` sets
around limit-edge points and plain parameter intervals on an edge. Their
membership rules are exactly as strong as that argument needs.

A forward check takes a neighbourhood ``O`` of ``p`` with parameter ``eps``,
derives ``delta`` and asserts that every probe ``q`` with ``d(p, q) < delta``
lies in ``O``. A backward check takes ``delta``, builds ``O`` and asserts
that every probe in ``O`` has ``d(p, q) < delta``. Probes are a
deterministic grid, so a check either passes or lists counterexamples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .digraph import Digraph
from .errors import PreconditionUnsatisfiable, Unsupported
from .metric import distance, min_incident_length
from .periodic import End, PeriodicDigraph, part_of_end
from .points import EdgeInterior, LimitEdgeInterior, Vertex, anchors, is_inner

GRID = tuple(Fraction(i, 8) for i in range(1, 8))


class UniformStar:
    """The vertex plus the initial segments of length `eps` of the edges at it."""

    def __init__(self, center, eps: Fraction):
        self.center = center
        self.eps = Fraction(eps)

    def contains(self, q) -> bool:
        if q == Vertex(self.center):
            return True
        if not is_inner(q):
            return False
        qs, qe, lq = anchors(q)
        if qs == self.center:
            return lq < self.eps
        if qe == self.center:
            return 1 - lq < self.eps
        return False


class EdgeInterval:
    """Points of the same (limit) edge whose parameter is within `eps`."""

    def __init__(self, p, eps: Fraction):
        self.p = p
        self.eps = Fraction(eps)

    def contains(self, q) -> bool:
        ps, pe, lp = anchors(self.p)
        if not is_inner(q) or type(q) is not type(self.p):
            return False
        qs, qe, lq = anchors(q)
        return (qs, qe) == (ps, pe) and abs(lp - lq) < self.eps


class ChatSet:
    """``C-hat_eps(strict_down(t), end)``: points of ``C`` plus short stubs of edges leaving or entering it."""

    def __init__(self, P: PeriodicDigraph, T, t, eps: Fraction, end: End):
        if not T.on_ray(end, t):
            raise PreconditionUnsatisfiable(f"{end} is not an end of the subtree above {t}")
        self.P = P
        self.eps = Fraction(eps)
        self.part = part_of_end(P, T.strict_down_set(t), end)

    def _in(self, a) -> bool:
        if isinstance(a, End):
            return self.part.contains_end(a)
        return self.part.contains(self.P, a)

    def contains(self, q) -> bool:
        qs, qe, lq = anchors(q)
        a, b = self._in(qs), self._in(qe)
        if a and b:
            return True
        if a:
            return lq < self.eps
        if b:
            return 1 - lq < self.eps
        return False


class EhatSet:
    """``E-hat_{eps,p}(X, vstart(p) vend(p))`` for a limit-edge point `p`.

    Vertex anchors must match exactly; an end anchor may be replaced by any
    vertex or end of ``C(X, end)``; the parameter must stay within `eps`.
    """

    def __init__(self, P: PeriodicDigraph, T, X: Iterable, p: LimitEdgeInterior, eps: Fraction):
        if not isinstance(p, LimitEdgeInterior):
            raise Unsupported("E-hat sets are built around limit-edge points")
        self.P = P
        self.p = p
        self.eps = Fraction(eps)
        X = frozenset(X)
        self.parts = {}
        for a in anchors(p)[:2]:
            if isinstance(a, End):
                part = part_of_end(P, X, a)
                _require_up_set(P, T, X, a, part)
                self.parts[a] = part
            elif a in X:
                continue
            elif a not in P.materialize(max(P.pos(a), -1) + 2):
                raise PreconditionUnsatisfiable(a)

    def _match(self, pa, qa) -> bool:
        if not isinstance(pa, End):
            return qa == pa
        part = self.parts[pa]
        if isinstance(qa, End):
            return part.contains_end(qa)
        return part.contains(self.P, qa)

    def contains(self, q) -> bool:
        if not is_inner(q):
            return False
        ps, pe, lp = anchors(self.p)
        qs, qe, lq = anchors(q)
        return self._match(ps, qs) and self._match(pe, qe) and abs(lp - lq) < self.eps


def _require_up_set(P, T, X, end: End, part) -> None:
    """Some ``t`` other than the root has ``C(X, end) = D[up(t)]``; compared on a deep materialisation."""
    k = max([P.pos(v) for v in X] + [part.max_pos(P)] + [0]) + 3
    inside = part.vertices_upto(P, k)
    if not inside:
        raise PreconditionUnsatisfiable(f"C(X, {end}) has no vertex")
    t = min(inside, key=T.depth)
    tree_side = frozenset(v for v in P.materialize(k).vertices if T.leq(t, v))
    if t == T.root or inside != tree_side or not T.on_ray(end, t):
        raise PreconditionUnsatisfiable(f"C(X, {end}) is not the up-set of a tree vertex")


# --- probes -----------------------------------------------------------------------


def probe_points(host, T, lams: Iterable = (), depth: int = 4) -> list:
    """Vertices, ends, edge points and limit-edge points, each edge at the grid and extra parameters.

    For a periodic host, everything lives in the depth-`depth` materialisation;
    limit edges join each end to every materialised vertex (both ways) and to
    every other end.
    """
    lam_set = sorted({Fraction(x) for x in (*GRID, *lams) if 0 < Fraction(x) < 1})
    if isinstance(host, PeriodicDigraph):
        D = host.materialize(depth)
        ends = host.ends()
    else:
        D = host
        ends = []
    out = [Vertex(v) for v in sorted(D.vertices)]
    out += ends
    for u, v in sorted(D.edges):
        out += [EdgeInterior(u, v, lam) for lam in lam_set]
    for w in ends:
        for v in sorted(D.vertices):
            for lam in lam_set:
                out.append(LimitEdgeInterior(w, Vertex(v), lam))
                out.append(LimitEdgeInterior(Vertex(v), w, lam))
        for w2 in ends:
            if w2 != w:
                out += [LimitEdgeInterior(w, w2, lam) for lam in lam_set]
    return out


def _nearby_lams(p, eps) -> list:
    _, _, lp = anchors(p)
    eps = Fraction(eps)
    cands = [eps / 2, 1 - eps / 2, eps, 1 - eps]
    if is_inner(p):
        cands += [lp, lp + eps / 2, lp - eps / 2, lp + eps / 4, lp - eps / 4, lp + eps, lp - eps]
    return cands


# --- checks -----------------------------------------------------------------------


@dataclass
class TopologyReport:
    direction: str
    kind: str
    point: str
    param: Fraction
    delta: Fraction
    neighbourhood: str
    probes: int = 0
    relevant: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> list:
        out = [
            f"check: {self.direction}",
            f"point: {self.point} ({self.kind})",
            f"param: {self.param}",
            f"delta: {self.delta}",
            f"neighbourhood: {self.neighbourhood}",
            f"probes: {self.probes}",
            f"relevant: {self.relevant}",
            f"violations: {len(self.violations)}",
        ]
        out += [f"violation: {q} d={d}" for q, d in self.violations[:10]]
        return out


def point_kind(p) -> str:
    if isinstance(p, Vertex):
        return "vertex"
    if isinstance(p, End):
        return "end"
    if isinstance(p, EdgeInterior):
        return "edge"
    return "limit-edge"


def _end_anchor_length(T, t) -> Fraction:
    return Fraction(1, 2 ** T.depth(t))


def _limit_targets(T, p, depth_of) -> dict:
    """``t_w`` on the ray of each end anchor, at the depth chosen by `depth_of`."""
    return {a: T.ray_vertex(a, depth_of(a)) for a in anchors(p)[:2] if isinstance(a, End)}


def _anchor_length(T, a, targets) -> Fraction:
    if isinstance(a, End):
        return _end_anchor_length(T, targets[a])
    return min_incident_length(T, a)


def _probe_depth(host, T, *vertices) -> int:
    if not isinstance(host, PeriodicDigraph):
        return 0
    return max([host.pos(v) for v in vertices] + [0]) + 4


def forward_check(host, T, p, eps, t_depth: Optional[int] = None, probes: Optional[list] = None) -> TopologyReport:
    """Every probe within the derived ``delta`` of `p` must lie in the neighbourhood with parameter `eps`.

    `t_depth` picks the tree vertex on an end's ray that bounds the ``C-hat`` or
    ``E-hat`` set (default: one below where the ray settles).
    """
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ValueError("eps must lie strictly between 0 and 1")
    kind = point_kind(p)
    if kind == "vertex":
        O = UniformStar(p.name, eps)
        delta = eps * min_incident_length(T, p.name)
        name, deep = f"star({p.name}, {eps})", [p.name]
    elif kind == "end":
        depth = t_depth if t_depth is not None else T.settle_depth(p) + 1
        t = T.ray_vertex(p, depth)
        O = ChatSet(host, T, t, eps, p)
        delta = eps * _end_anchor_length(T, t)
        name, deep = f"C-hat(strict_down({t}), {p}, {eps})", [t]
    else:
        _, _, lp = anchors(p)
        rho = min(lp, 1 - lp)

        def pick(w):
            return t_depth if t_depth is not None else T.settle_depth(w) + 1

        targets = _limit_targets(T, p, pick)
        ls = [_anchor_length(T, a, targets) for a in anchors(p)[:2]]
        delta = rho / 2 * eps * min(ls)
        if kind == "edge":
            O = EdgeInterval(p, eps)
            name = f"interval({p}, {eps})"
        else:
            X = frozenset().union(*(T.strict_down_set(t) for t in targets.values()))
            O = EhatSet(host, T, X, p, eps)
            name = f"E-hat(X={','.join(sorted(X))}, {p}, {eps})"
        deep = [a for a in anchors(p)[:2] if not isinstance(a, End)] + list(targets.values())
    if probes is None:
        probes = probe_points(host, T, _nearby_lams(p, eps) + _nearby_lams(p, delta), _probe_depth(host, T, *deep))
    report = TopologyReport("forward", kind, str(p), eps, delta, name, len(probes))
    for q in probes:
        d = distance(T, p, q)
        if d < delta:
            report.relevant += 1
            if not O.contains(q):
                report.violations.append((q, d))
    return report


def _halving_exponent(delta: Fraction) -> int:
    n = 0
    while Fraction(1, 2 ** n) >= delta:
        n += 1
    return n


def backward_check(host, T, p, delta, probes: Optional[list] = None) -> TopologyReport:
    """Every probe in the neighbourhood built for `delta` must be closer than `delta` to `p`."""
    delta = Fraction(delta)
    if not 0 < delta < 1:
        raise ValueError("delta must lie strictly between 0 and 1")
    kind = point_kind(p)
    if kind == "vertex":
        eps = delta / 2
        O = UniformStar(p.name, eps)
        name, deep = f"star({p.name}, {eps})", [p.name]
    elif kind == "end":
        n = _halving_exponent(delta)
        t = T.ray_vertex(p, n + 3)
        eps = Fraction(1, 2 ** (n + 2))
        O = ChatSet(host, T, t, eps, p)
        name, deep = f"C-hat(strict_down({t}), {p}, {eps})", [t]
    elif kind == "edge":
        eps = delta / 2
        O = EdgeInterval(p, eps)
        name, deep = f"interval({p}, {eps})", list(anchors(p)[:2])
    else:
        vertex_anchors = [a for a in anchors(p)[:2] if not isinstance(a, End)]
        n = max([_halving_exponent(delta)] + [T.depth(v) for v in vertex_anchors])
        targets = _limit_targets(T, p, lambda w: n + 3)
        X = frozenset(vertex_anchors).union(*(T.strict_down_set(t) for t in targets.values()))
        eps = Fraction(1, 2 ** (n + 2))
        O = EhatSet(host, T, X, p, eps)
        name = f"E-hat(X={','.join(sorted(X))}, {p}, {eps})"
        deep = vertex_anchors + list(targets.values())
    if probes is None:
        probes = probe_points(host, T, _nearby_lams(p, eps), _probe_depth(host, T, *deep))
    report = TopologyReport("backward", kind, str(p), delta, delta, name, len(probes))
    for q in probes:
        if O.contains(q):
            report.relevant += 1
            d = distance(T, p, q)
            if not d < delta:
                report.violations.append((q, d))
    return report


def uniform_star_contains(center, eps, q) -> bool:
    return UniformStar(center, eps).contains(q)


def chat_contains(P: PeriodicDigraph, T, t, eps, end: End, q) -> bool:
    return ChatSet(P, T, t, eps, end).contains(q)


def ehat_contains(P: PeriodicDigraph, T, X, p: LimitEdgeInterior, eps, q) -> bool:
    return EhatSet(P, T, X, p, eps).contains(q)


def host_has_point(host, q) -> bool:
    """Whether the point's edge or vertex exists in the host (limit edges need ends)."""
    if isinstance(q, Vertex):
        return (host.has_vertex(q.name) if isinstance(host, PeriodicDigraph) else q.name in host)
    if isinstance(q, End):
        return isinstance(host, PeriodicDigraph) and q.strand in host.strand_names
    if isinstance(q, EdgeInterior):
        if isinstance(host, Digraph):
            return host.has_edge(q.tail, q.head)
        return host.has_vertex(q.tail) and host.has_vertex(q.head) and host.has_edge(q.tail, q.head)
    return isinstance(host, PeriodicDigraph) and all(
        host_has_point(host, a) for a in (q.start, q.end))
