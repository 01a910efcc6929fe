"""Broad minor models: verification, and projecting vertex sets from the host onto the pattern.

A model of ``H`` in ``D`` gives every vertex ``v`` of ``H`` a branch set
``X_v`` of host vertices and an anchor ``x_v`` in it. Branch sets are
disjoint and every edge ``uv`` of ``H`` needs an ``x_u -> x_v`` path in
``D[X_u ∪ X_v]``. Models are given, never searched for.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from .digraph import Digraph, path_between_sets_avoiding
from .errors import FormatError, InvalidModel
from .periodic import MarkedSet, PeriodicDigraph


@dataclass(frozen=True)
class BroadMinorModel:
    host: Digraph
    pattern: Digraph
    branch_sets: Mapping
    anchors: Mapping

    def __post_init__(self):
        object.__setattr__(self, "branch_sets", {v: frozenset(X) for v, X in self.branch_sets.items()})
        object.__setattr__(self, "anchors", dict(self.anchors))


@dataclass
class MinorVerdict:
    ok: bool
    problem: Optional[str] = None
    detail: dict = field(default_factory=dict)
    paths: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    def lines(self) -> list:
        out = ["verdict: " + ("holds" if self.ok else "fails")]
        if self.problem:
            out.append(f"witness: condition={self.problem}")
            for k, v in self.detail.items():
                if isinstance(v, (set, frozenset, list, tuple)):
                    v = ",".join(map(str, sorted(v)))
                out.append(f"witness: {k}={v}")
        else:
            for (u, v), path in sorted(self.paths.items()):
                out.append(f"path: {u}->{v} = {'->'.join(path)}")
        return out


def verify_broad_minor_model(M: BroadMinorModel) -> MinorVerdict:
    H, D = M.pattern, M.host
    for v in sorted(H.vertices):
        if v not in M.branch_sets or v not in M.anchors:
            return MinorVerdict(False, "missing", {"v": v})
    extra = (set(M.branch_sets) | set(M.anchors)) - H.vertices
    if extra:
        return MinorVerdict(False, "not-in-pattern", {"v": min(extra)})
    for v in sorted(H.vertices):
        stray = M.branch_sets[v] - D.vertices
        if stray:
            return MinorVerdict(False, "not-in-host", {"v": v, "vertices": stray})
        if not M.branch_sets[v]:
            return MinorVerdict(False, "empty", {"v": v})
    owner = {}
    for v in sorted(H.vertices):
        for x in sorted(M.branch_sets[v]):
            if x in owner:
                u = owner[x]
                return MinorVerdict(False, "overlap", {
                    "u": u, "v": v, "shared": M.branch_sets[u] & M.branch_sets[v]})
            owner[x] = v
    for v in sorted(H.vertices):
        if M.anchors[v] not in M.branch_sets[v]:
            return MinorVerdict(False, "anchor", {"v": v, "anchor": M.anchors[v]})
    paths = {}
    for u, v in sorted(H.edges):
        sub = D.subgraph(M.branch_sets[u] | M.branch_sets[v])
        path = path_between_sets_avoiding(sub, {M.anchors[u]}, {M.anchors[v]})
        if path is None:
            return MinorVerdict(False, "path", {"u": u, "v": v, "from": M.anchors[u], "to": M.anchors[v]})
        paths[(u, v)] = path
    return MinorVerdict(True, paths=paths)


def project_marked_set(M: BroadMinorModel, U: Iterable) -> frozenset:
    """``W = {v : x_v ∈ U}``."""
    if not verify_broad_minor_model(M):
        raise InvalidModel("the model does not verify")
    U = frozenset(U)
    return frozenset(v for v, x in M.anchors.items() if x in U)


def identity_model(D: Digraph) -> BroadMinorModel:
    return BroadMinorModel(D, D, {v: {v} for v in D.vertices}, {v: v for v in D.vertices})


def parse_model(text: str, host: Digraph, pattern: Digraph) -> BroadMinorModel:
    """``branch <pattern vertex> : <host vertex>,...`` and ``anchor <pattern vertex> <host vertex>`` lines."""
    branch, anchor = {}, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "branch" and len(parts) == 4 and parts[2] == ":":
            if parts[1] in branch:
                raise FormatError(f"line {lineno}: second branch set for {parts[1]}")
            branch[parts[1]] = frozenset(x for x in parts[3].split(",") if x)
        elif parts[0] == "anchor" and len(parts) == 3:
            if parts[1] in anchor:
                raise FormatError(f"line {lineno}: second anchor for {parts[1]}")
            anchor[parts[1]] = parts[2]
        else:
            raise FormatError(f"line {lineno}: cannot parse {raw!r}")
    return BroadMinorModel(host, pattern, branch, anchor)


def format_model(M: BroadMinorModel) -> str:
    lines = [f"branch {v} : {','.join(sorted(M.branch_sets[v]))}" for v in sorted(M.branch_sets)]
    lines += [f"anchor {v} {M.anchors[v]}" for v in sorted(M.anchors)]
    return "\n".join(lines) + "\n"


# --- periodic models --------------------------------------------------------------


@dataclass(frozen=True)
class StrandMap:
    """Pattern strand -> host strand, shifted by `offset` positions.

    `beads` maps each non-front bead vertex ``y`` of the pattern strand to
    ``(host bead vertices, host anchor)``: the pattern vertex at position
    ``i`` gets those host vertices at position ``i + offset``.
    """

    host_strand: str
    offset: int
    beads: Mapping


@dataclass(frozen=True)
class PeriodicMinorModel:
    host: PeriodicDigraph
    pattern: PeriodicDigraph
    core: Mapping  # pattern core vertex -> (host vertices, anchor)
    strands: Mapping  # pattern strand -> StrandMap

    def branch(self, v) -> tuple:
        loc = self.pattern.locate(v)
        if loc is None:
            X, a = self.core[v]
            return frozenset(X), a
        s, i, y = loc
        sm = self.strands[s]
        X, a = sm.beads[y]
        pos = i + sm.offset
        return frozenset(self.host.name(sm.host_strand, pos, x) for x in X), self.host.name(sm.host_strand, pos, a)

    def unroll(self, depth: int = 2) -> BroadMinorModel:
        """The finite model on the depth-`depth` pattern materialisation, inside a deep enough host one."""
        H = self.pattern.materialize(depth)
        reach = max([sm.offset for sm in self.strands.values()] + [0])
        D = self.host.materialize(depth + reach + 1)
        branch, anchor = {}, {}
        for v in H.vertices:
            branch[v], anchor[v] = self.branch(v)
        return BroadMinorModel(D, H, branch, anchor)


def verify_periodic_model(M: PeriodicMinorModel, depth: int = 2) -> MinorVerdict:
    """Check the core and the first `depth` bead periods; periodicity carries the rest."""
    if set(M.core) != set(M.pattern.core.vertices):
        return MinorVerdict(False, "missing", {"v": ",".join(sorted(set(M.pattern.core.vertices) ^ set(M.core)))})
    for s in M.pattern.strand_names:
        sm = M.strands.get(s)
        if sm is None or set(sm.beads) != set(M.pattern.strand(s).inner):
            return MinorVerdict(False, "missing", {"strand": s})
        if sm.offset < 1 or sm.host_strand not in M.host.strand_names:
            return MinorVerdict(False, "strand", {"strand": s})
    return verify_broad_minor_model(M.unroll(depth))


def project_periodic_marked_set(M: PeriodicMinorModel, U: MarkedSet) -> MarkedSet:
    """``W = {v : x_v ∈ U}`` as a marked set of the pattern."""
    U.validate(M.host)
    top = max([M.host.pos(v) for v in U.finite] + [0]) + 2
    finite = {v for v in M.pattern.core.vertices if M.core[v][1] in U.finite}
    patterns = set()
    for s in M.pattern.strand_names:
        sm = M.strands[s]
        for y in M.pattern.strand(s).inner:
            anchor = sm.beads[y][1]
            if U.contains(M.host, M.host.name(sm.host_strand, top + 1, anchor)):
                patterns.add((s, y))
            for i in range(-1, top - sm.offset + 1):
                if i == -1 and y not in M.pattern.strand(s).back:
                    continue
                v = M.pattern.name(s, i, y)
                if (i == -1 or (s, y) not in patterns) and U.contains(M.host, M.branch(v)[1]):
                    finite.add(v)
    return MarkedSet(frozenset(finite), frozenset(patterns))
