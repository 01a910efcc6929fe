"""Finitely presented infinite digraphs: a finite core plus periodic necklace strands.

A strand repeats a strongly connected *bead* forever; the back vertices of
copy ``i`` are identified with the front vertices of copy ``i + 1`` through
the glue bijection. Attachment edges join core vertices to copy 0.

Vertex naming. Core vertices keep their names. Strand vertices are named
``<strand>.<copy>.<bead vertex>`` using the earliest copy that contains them,
so the glued vertex ``back y`` of copy ``i`` (= ``front glue(y)`` of copy
``i + 1``) is ``s.i.y``. Internally every strand vertex has a *position*:
``s.i.x`` with ``x`` not a front vertex sits at position ``i``; the front
vertices of copy 0 sit at position ``-1``. Shifting a vertex by one period
adds one to its position, which makes the strand shift-invariant.

Infinite computations (strong components of ``D - X``) run on two
materialisations of increasing depth and must agree; otherwise
:class:`StabilizationFailure` is raised.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .digraph import Digraph, is_strongly_connected, parse_digraph, strong_components
from .errors import FormatError, StabilizationFailure, UnknownVertex

CORE_POS = -2
DEFAULT_DEPTH = 4


@dataclass(frozen=True)
class Strand:
    name: str
    bead: Digraph
    front: frozenset
    back: frozenset
    glue: tuple  # sorted (back vertex, front vertex) pairs
    attach: frozenset = frozenset()  # edges between core names and copy-0 names

    @property
    def glue_map(self) -> dict:
        return dict(self.glue)

    @property
    def inner(self) -> tuple:
        """Bead vertices that are not front vertices, i.e. one layer of positions."""
        return tuple(sorted(self.bead.vertices - self.front))


@dataclass(frozen=True)
class End:
    strand: str

    def __str__(self) -> str:
        return f"end:{self.strand}"


@dataclass(frozen=True)
class StrongPart:
    """A strong component of ``D - X``: explicit vertices plus per-strand tails.

    ``tails`` holds ``(strand, cut)`` pairs meaning every vertex of that
    strand at position ``>= cut`` belongs to the part.
    """

    finite: frozenset
    tails: tuple = ()

    @property
    def is_infinite(self) -> bool:
        return bool(self.tails)

    def tail_cut(self, strand: str) -> Optional[int]:
        return dict(self.tails).get(strand)

    @property
    def ends(self) -> tuple:
        return tuple(End(s) for s, _ in self.tails)

    def contains(self, P: "PeriodicDigraph", v) -> bool:
        if v in self.finite:
            return True
        loc = P.locate(v)
        if loc is None:
            return False
        cut = self.tail_cut(loc[0])
        return cut is not None and loc[1] >= cut

    def contains_end(self, end: End) -> bool:
        return self.tail_cut(end.strand) is not None

    def max_pos(self, P: "PeriodicDigraph") -> int:
        ps = [P.pos(v) for v in self.finite] + [c for _, c in self.tails]
        return max(ps, default=CORE_POS)

    def min_vertex(self, P: "PeriodicDigraph"):
        cands = list(self.finite)
        for s, c in self.tails:
            cands.extend(P.layer(s, c))
        return min(cands, key=P.key)

    def vertices_upto(self, P: "PeriodicDigraph", k: int) -> frozenset:
        return frozenset(v for v in P.materialize(k).vertices if self.contains(P, v))

    def describe(self) -> str:
        fin = ",".join(sorted(self.finite)) or "-"
        tails = ",".join(f"{s}>={c}" for s, c in self.tails) or "-"
        return f"finite={fin} tails={tails}"


@dataclass(frozen=True)
class MarkedSet:
    """Finitely many vertices plus ``(strand, bead vertex)`` patterns meaning that vertex in every copy."""

    finite: frozenset = frozenset()
    patterns: frozenset = frozenset()

    def contains(self, P: "PeriodicDigraph", v) -> bool:
        if v in self.finite:
            return True
        loc = P.locate(v)
        if loc is None:
            return False
        s, pos, y = loc
        st = P.strand(s)
        if pos >= 0 and (s, y) in self.patterns:
            return True
        return y in st.back and (s, st.glue_map[y]) in self.patterns

    def validate(self, P: "PeriodicDigraph") -> "MarkedSet":
        for v in self.finite:
            if not P.has_vertex(v):
                raise UnknownVertex(v)
        for s, x in self.patterns:
            if x not in P.strand(s).bead:
                raise UnknownVertex(f"{s}.*.{x}")
        return self


class PeriodicDigraph:
    """Core digraph plus necklace strands; see the module docstring for naming."""

    def __init__(self, core: Digraph, strands: Sequence[Strand] = ()):
        self.core = core
        self.strands = tuple(strands)
        self._by_name = {}
        self._lock = threading.Lock()
        self._materialized = {}
        self._locate_memo = {}
        for v in core.vertices:
            if "." in v:
                raise FormatError(f"core vertex names may not contain '.': {v!r}")
        for st in self.strands:
            self._validate_strand(st)
            self._by_name[st.name] = st

    def _validate_strand(self, st: Strand) -> None:
        if st.name in self._by_name or "." in st.name or st.name in self.core.vertices:
            raise FormatError(f"bad or repeated strand name {st.name!r}")
        if any("." in x for x in st.bead.vertices):
            raise FormatError(f"bead vertex names may not contain '.' (strand {st.name})")
        if not st.bead.vertices or not is_strongly_connected(st.bead):
            raise FormatError(f"bead of strand {st.name} is not strongly connected")
        if not st.front or not st.back:
            raise FormatError(f"strand {st.name} needs nonempty front and back")
        if not (st.front | st.back) <= st.bead.vertices:
            raise FormatError(f"front/back of strand {st.name} not in its bead")
        if st.front & st.back:
            raise FormatError(f"front and back of strand {st.name} overlap")
        g = st.glue_map
        if set(g) != set(st.back) or set(g.values()) != set(st.front) or len(g) != len(st.front):
            raise FormatError(f"glue of strand {st.name} is not a bijection back -> front")
        copy0 = {f"{st.name}.0.{x}" for x in st.bead.vertices}
        for u, v in st.attach:
            if not ((u in self.core and v in copy0) or (v in self.core and u in copy0)):
                raise FormatError(f"attach edge {u} -> {v} must join the core and copy 0 of {st.name}")

    def __repr__(self) -> str:
        return f"PeriodicDigraph(core={len(self.core)}, strands={[s.name for s in self.strands]})"

    # --- naming ---

    @property
    def strand_names(self) -> tuple:
        return tuple(st.name for st in self.strands)

    def strand(self, name: str) -> Strand:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownVertex(f"no strand {name!r}") from None

    def name(self, s: str, pos: int, y) -> str:
        if pos == -1:
            return f"{s}.0.{self.strand(s).glue_map[y]}"
        return f"{s}.{pos}.{y}"

    def locate(self, v):
        """``None`` for a core vertex, else ``(strand, position, bead vertex)``."""
        hit = self._locate_memo.get(v)
        if hit is not None:
            return hit[0]
        if v in self.core:
            loc = None
        else:
            parts = str(v).split(".")
            if len(parts) != 3 or parts[0] not in self._by_name or not parts[1].isdigit():
                raise UnknownVertex(v)
            st = self._by_name[parts[0]]
            i, x = int(parts[1]), parts[2]
            if x not in st.bead:
                raise UnknownVertex(v)
            if x in st.front:
                if i != 0:
                    raise UnknownVertex(f"{v} (glued vertex; use its earlier name)")
                back_of = {f: b for b, f in st.glue}
                loc = (st.name, -1, back_of[x])
            else:
                loc = (st.name, i, x)
        self._locate_memo[v] = (loc,)
        return loc

    def has_vertex(self, v) -> bool:
        try:
            self.locate(v)
        except UnknownVertex:
            return False
        return True

    def pos(self, v) -> int:
        loc = self.locate(v)
        return CORE_POS if loc is None else loc[1]

    def key(self, v) -> tuple:
        """Shift-compatible total order: core first, then by position."""
        loc = self.locate(v)
        if loc is None:
            return (CORE_POS, str(v), "")
        s, pos, y = loc
        return (pos, y, s)

    def shift(self, v, delta: int) -> str:
        s, pos, y = self.locate(v)
        return self.name(s, pos + delta, y)

    def layer(self, s: str, pos: int) -> tuple:
        st = self.strand(s)
        if pos == -1:
            return tuple(self.name(s, -1, y) for y in sorted(st.back))
        return tuple(f"{s}.{pos}.{y}" for y in st.inner)

    def copy_vertices(self, s: str, i: int) -> frozenset:
        """Vertices of bead copy `i` of strand `s`."""
        st = self.strand(s)
        back_of = {f: b for b, f in st.glue}
        return frozenset(
            self.name(s, i - 1, back_of[x]) if x in st.front else f"{s}.{i}.{x}" for x in st.bead.vertices
        )

    # --- materialisation ---

    def materialize(self, k: int) -> Digraph:
        """Core plus bead copies ``0 .. k-1`` of every strand."""
        if k < 0:
            raise ValueError("depth must be nonnegative")
        with self._lock:
            D = self._materialized.get(k)
        if D is not None:
            return D
        vertices = set(self.core.vertices)
        edges = set(self.core.edges)
        for st in self.strands:
            if k == 0:
                continue
            back_of = {f: b for b, f in st.glue}

            def nm(x, i, st=st, back_of=back_of):
                if x in st.front:
                    return self.name(st.name, i - 1, back_of[x])
                return f"{st.name}.{i}.{x}"

            for i in range(k):
                vertices.update(nm(x, i) for x in st.bead.vertices)
                edges.update((nm(a, i), nm(b, i)) for a, b in st.bead.edges)
            edges.update(st.attach)
        D = Digraph(vertices, edges)
        with self._lock:
            self._materialized.setdefault(k, D)
        return D

    def induced(self, vs: Iterable) -> Digraph:
        vs = frozenset(vs)
        depth = max((self.pos(v) for v in vs), default=CORE_POS) + 2
        return self.materialize(max(depth, 0)).subgraph(vs)

    def has_edge(self, u, v) -> bool:
        depth = max(self.pos(u), self.pos(v), -1) + 2
        return self.materialize(depth).has_edge(u, v)

    def ends(self) -> list:
        return [End(s) for s in self.strand_names]

    def necklace_witness(self, end: End) -> Iterator[Digraph]:
        """The bead copies ``H_0, H_1, ...`` of the end's strand, lazily."""
        s = end.strand
        self.strand(s)
        i = 0
        while True:
            yield self.materialize(i + 1).subgraph(self.copy_vertices(s, i))
            i += 1


# --- strong parts -----------------------------------------------------------------


def _parts_at(P: PeriodicDigraph, X: frozenset, within: Optional[StrongPart], depth: int) -> list:
    M = P.materialize(depth)
    keep = [v for v in M.vertices if v not in X and (within is None or within.contains(P, v))]
    dec = strong_components(M.subgraph(keep))
    found = []
    for comp in dec.components:
        tails = []
        for s in P.strand_names:
            top = P.layer(s, depth - 1)
            inside = [v in comp for v in top]
            if not any(inside):
                continue
            if not all(inside):
                raise StabilizationFailure(f"deepest layer of strand {s} split at depth {depth}")
            cut = depth - 1
            while cut - 1 >= -1 and all(v in comp for v in P.layer(s, cut - 1)):
                cut -= 1
            tails.append((s, cut))
        part = StrongPart(frozenset(), tuple(tails))
        finite = frozenset(v for v in comp if not part.contains(P, v))
        found.append((min(map(P.key, comp)), StrongPart(finite, tuple(tails))))
    found.sort(key=lambda kp: kp[0])
    return [p for _, p in found]


def strong_parts(P: PeriodicDigraph, X: Iterable = (), within: Optional[StrongPart] = None, depth: Optional[int] = None) -> list:
    """All strong components of ``D - X`` (restricted to `within` if given)."""
    X = frozenset(X)
    for v in X:
        P.locate(v)
    base = max([P.pos(v) for v in X] + ([within.max_pos(P)] if within else []) + [-1])
    d = depth or DEFAULT_DEPTH + base + 1
    first = _parts_at(P, X, within, d)
    second = _parts_at(P, X, within, 2 * d)
    if set(first) != set(second):
        raise StabilizationFailure(f"strong components differ between depth {d} and {2 * d}")
    return first


strong_part_after_deletion = strong_parts


def whole(P: PeriodicDigraph) -> StrongPart:
    """The part standing for all of ``D`` (not necessarily strongly connected)."""
    return StrongPart(frozenset(P.core.vertices), tuple((s, -1) for s in P.strand_names))


def is_strongly_connected_periodic(P: PeriodicDigraph) -> bool:
    parts = strong_parts(P)
    return len(parts) == 1 and parts[0] == whole(P)


def part_of_end(P: PeriodicDigraph, X: Iterable, end: End, within: Optional[StrongPart] = None) -> StrongPart:
    """``C(X, end)``: the strong component of ``D - X`` containing the end's necklaces."""
    for part in strong_parts(P, X, within):
        if part.contains_end(end):
            return part
    raise StabilizationFailure(f"no part carries {end}")


def part_containing(P: PeriodicDigraph, X: Iterable, v) -> StrongPart:
    for part in strong_parts(P, X):
        if part.contains(P, v):
            return part
    raise UnknownVertex(v)


def x_tail(P: PeriodicDigraph, end: End, X: Iterable) -> StrongPart:
    """Strong component of the strand necklace minus `X` that holds almost all of it."""
    strand = StrongPart(frozenset(), ((end.strand, -1),))
    for part in strong_parts(P, X, within=strand):
        if part.contains_end(end):
            return part
    raise StabilizationFailure(f"no tail for {end}")


def is_dispersed(P: PeriodicDigraph, U: MarkedSet) -> bool:
    """Every necklace meets `U` finitely iff `U` has no strand pattern."""
    U.validate(P)
    return not U.patterns


def end_in_closure(P: PeriodicDigraph, end: End, U: MarkedSet) -> bool:
    """Tails of the end's strand avoid any finite X; they keep meeting U iff U has a pattern there."""
    U.validate(P)
    P.strand(end.strand)
    return any(s == end.strand for s, _ in U.patterns)


# --- text format ------------------------------------------------------------------


def parse_periodic(text: str) -> PeriodicDigraph:
    """Read a ``core`` section followed by ``strand`` sections.

    Inside a strand: ``bead`` (digraph lines follow), ``front a,b``,
    ``back c,d``, ``glue <back> <front>``, ``attach <u> <v>``.
    Attachment endpoints are core names or bead vertices of copy 0, written
    either bare (``x``) or qualified (``s.0.x``).
    """
    core_lines = []
    strands = []
    cur = None
    section = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head = parts[0]
        if head == "core" and len(parts) == 1:
            section = "core"
        elif head == "strand" and len(parts) == 2:
            cur = {"name": parts[1], "bead": [], "front": [], "back": [], "glue": [], "attach": []}
            strands.append(cur)
            section = "strand"
        elif head == "bead" and len(parts) == 1 and cur is not None:
            section = "bead"
        elif head in ("v", "e") and section == "core":
            core_lines.append(line)
        elif head in ("v", "e") and section == "bead":
            cur["bead"].append(line)
        elif head in ("front", "back") and len(parts) == 2 and cur is not None:
            cur[head] = parts[1].split(",")
            section = "strand"
        elif head in ("glue", "attach") and len(parts) == 3 and cur is not None:
            cur[head].append((parts[1], parts[2]))
            section = "strand"
        else:
            raise FormatError(f"line {lineno}: cannot parse {raw!r}")
    core = parse_digraph("\n".join(core_lines))
    built = []
    for entry in strands:
        bead = parse_digraph("\n".join(entry["bead"]))
        name = entry["name"]

        def qualify(x, name=name, bead=bead):
            if x in core:
                if x in bead:
                    raise FormatError(f"attach endpoint {x!r} is ambiguous; qualify it as {name}.0.{x}")
                return x
            if x.startswith(name + ".0.") and x[len(name) + 3:] in bead:
                return x
            if x in bead:
                return f"{name}.0.{x}"
            raise FormatError(f"unknown attach endpoint {x!r}")

        built.append(Strand(
            name=name,
            bead=bead,
            front=frozenset(entry["front"]),
            back=frozenset(entry["back"]),
            glue=tuple(sorted(entry["glue"])),
            attach=frozenset((qualify(u), qualify(v)) for u, v in entry["attach"]),
        ))
    return PeriodicDigraph(core, built)


def format_periodic(P: PeriodicDigraph) -> str:
    lines = ["core"]
    lines += [f"v {v}" for v in sorted(P.core.vertices)]
    lines += [f"e {u} {v}" for u, v in sorted(P.core.edges)]
    for st in P.strands:
        lines.append(f"strand {st.name}")
        lines.append("bead")
        lines += [f"v {v}" for v in sorted(st.bead.vertices)]
        lines += [f"e {u} {v}" for u, v in sorted(st.bead.edges)]
        lines.append("front " + ",".join(sorted(st.front)))
        lines.append("back " + ",".join(sorted(st.back)))
        lines += [f"glue {b} {f}" for b, f in st.glue]
        lines += [f"attach {u} {v}" for u, v in sorted(st.attach)]
    return "\n".join(lines) + "\n"


def parse_marked_set(P: PeriodicDigraph, text: str) -> MarkedSet:
    """Comma-separated items: vertex names, or ``<strand>.*.<bead vertex>`` patterns."""
    finite = set()
    patterns = set()
    for item in filter(None, (t.strip() for t in text.split(","))):
        bits = item.split(".")
        if len(bits) == 3 and bits[1] == "*":
            patterns.add((bits[0], bits[2]))
        else:
            finite.add(item)
    return MarkedSet(frozenset(finite), frozenset(patterns)).validate(P)
