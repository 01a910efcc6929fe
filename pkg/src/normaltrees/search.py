"""Exhaustive small-instance searches relating normal arborescences and normal trees.

Work is split into independent batches of digraph codes (see
:func:`batches`); each batch is checked by :func:`check_batch` and results are
merged in batch order, so the outcome does not depend on how batches are
scheduled.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .digraph import is_strongly_connected
from .enumeration import all_arborescences, digraph_from_code, subsets, vertex_names
from .errors import SizeLimitExceeded
from .normality import (
    DEFAULT_SIZE_LIMIT, exists_normal_arborescence_containing, exists_normal_tree_containing, is_normal_arborescence,
)

MODES = ("lemma", "converse")


@dataclass
class SearchReport:
    mode: str
    max_n: int
    graphs: int = 0
    instances: int = 0
    findings: list = field(default_factory=list)

    def merge(self, other: "SearchReport") -> None:
        self.graphs += other.graphs
        self.instances += other.instances
        self.findings.extend(other.findings)

    def lines(self) -> list:
        label = "counterexamples" if self.mode == "lemma" else "no_arborescence"
        out = [
            f"mode: {self.mode}",
            f"max_n: {self.max_n}",
            f"strong_digraphs: {self.graphs}",
            f"instances: {self.instances}",
            f"{label}: {len(self.findings)}",
        ]
        for edges, U in self.findings[:20]:
            out.append(f"finding: edges={' '.join(u + v for u, v in edges)} U={','.join(U)}")
        return out


def batches(max_n: int, per_batch: int = 512) -> list:
    """Independent units of work: ``(n, first_code, stop_code)`` triples."""
    out = []
    for n in range(1, max_n + 1):
        total = 1 << (n * (n - 1))
        for lo in range(0, total, per_batch):
            out.append((n, lo, min(total, lo + per_batch)))
    return out


def _lemma_graph(D, report: SearchReport) -> None:
    covered = set()
    for A in all_arborescences(D):
        if A.vertices in covered or not is_normal_arborescence(D, A):
            continue
        covered.add(A.vertices)
    wanted = set()
    for S in covered:
        wanted.update(subsets(S))
    for U in sorted(wanted, key=lambda s: (len(s), sorted(s))):
        report.instances += 1
        if exists_normal_tree_containing(D, U) is None:
            report.findings.append((sorted(D.edges), sorted(U)))


def _converse_graph(D, report: SearchReport) -> None:
    for U in subsets(D.vertices):
        if exists_normal_tree_containing(D, U) is None:
            continue
        report.instances += 1
        if exists_normal_arborescence_containing(D, U) is None:
            report.findings.append((sorted(D.edges), sorted(U)))


def check_batch(mode: str, unit: tuple) -> SearchReport:
    n, lo, hi = unit
    names = vertex_names(n)
    report = SearchReport(mode, n)
    step = _lemma_graph if mode == "lemma" else _converse_graph
    for code in range(lo, hi):
        D = digraph_from_code(names, code)
        if not is_strongly_connected(D):
            continue
        report.graphs += 1
        step(D, report)
    return report


def _run_unit(args):
    return check_batch(*args)


def run_search(mode: str, max_n: int, workers: int = 1, limit: int = DEFAULT_SIZE_LIMIT) -> SearchReport:
    """Lemma mode: every U covered by a normal arborescence must lie in a normal tree.

    Converse mode only reports the (digraph, U) pairs that have a normal tree
    but no normal arborescence; nothing is asserted about them.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if max_n < 1:
        raise ValueError("max_n must be positive")
    if max_n > limit:
        raise SizeLimitExceeded(f"{max_n} vertices > limit {limit}")
    units = [(mode, u) for u in batches(max_n)]
    total = SearchReport(mode, max_n)
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_run_unit, units))
    else:
        parts = [_run_unit(u) for u in units]
    for part in parts:
        total.merge(part)
    return total
