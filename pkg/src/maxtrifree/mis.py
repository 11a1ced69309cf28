"""Maximal independent set enumeration and the 2^{n/2} bound verifier.

Enumeration branches on a highest-degree vertex with word-level candidate
pruning (Bron-Kerbosch over the non-adjacency relation); the family is
returned in ascending bit-word order regardless of the branching.  The
exhaustive verifier scans every labeled triangle-free graph up to 8 vertices,
generating them incrementally instead of filtering all 2^28 graphs, and does
the real-valued comparison count <= 2^{m/2} as count^2 <= 2^m in exact
integer arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import scan
from .graph import Graph, GuardError, graph_from_edge_mask, iter_bits
from .graph6 import encode_graph6
from .report import FAIL, PASS, Stopwatch, VerificationReport

HUJTER_TUZA_MAX_N = 8


@dataclass(frozen=True)
class MisFamily:
    """All maximal independent sets of one graph, as ascending bit words."""

    host: Graph
    sets: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(a >= b for a, b in zip(self.sets, self.sets[1:])):
            raise ValueError("sets must be strictly ascending bit words")

    def __len__(self) -> int:
        return len(self.sets)

    def as_vertex_lists(self) -> list[list[int]]:
        return [list(iter_bits(word)) for word in self.sets]


def _branch_vertex(rows, pool: int, cands: int) -> int:
    """Vertex of maximum degree into cands among pool; ties to lowest index."""
    best_deg = -1
    best = -1
    for p in iter_bits(pool):
        deg = (rows[p] & cands).bit_count()
        if deg > best_deg:
            best_deg = deg
            best = p
    return best


def _mis_recurse(rows, full: int, chosen: int, cands: int, banned: int, emit) -> None:
    if cands == 0 and banned == 0:
        emit(chosen)
        return
    pivot = _branch_vertex(rows, cands | banned, cands)
    ext = cands & (rows[pivot] | 1 << pivot)
    for v in iter_bits(ext):
        keep = full & ~rows[v] & ~(1 << v)
        _mis_recurse(rows, full, chosen | 1 << v, cands & keep, banned & keep, emit)
        cands &= ~(1 << v)
        banned |= 1 << v


def enumerate_mis(g: Graph) -> MisFamily:
    """Every maximal independent set of g."""
    out: list[int] = []
    full = (1 << g.n) - 1
    _mis_recurse(g.rows, full, 0, full, 0, out.append)
    return MisFamily(g, tuple(sorted(out)))


def mis_count(g: Graph) -> int:
    """|enumerate_mis(g)| without materializing the family."""
    rows = g.rows
    full = (1 << g.n) - 1

    def count(cands: int, banned: int) -> int:
        if cands == 0 and banned == 0:
            return 1
        total = 0
        pivot = _branch_vertex(rows, cands | banned, cands)
        ext = cands & (rows[pivot] | 1 << pivot)
        for v in iter_bits(ext):
            keep = full & ~rows[v] & ~(1 << v)
            total += count(cands & keep, banned & keep)
            cands &= ~(1 << v)
            banned |= 1 << v
        return total

    return count(full, 0)


def batch_mis_counts(adj: np.ndarray, n: int) -> np.ndarray:
    """MIS counts for a batch of graphs given as uint16 adjacency columns.

    Walks all 2^n vertex subsets once, carrying the neighborhood union, and
    tests independence and domination of each subset for every graph at once.
    """
    num = adj.shape[0]
    counts = np.zeros(num, dtype=np.int64)
    full = (1 << n) - 1
    cols = [np.ascontiguousarray(adj[:, v]) for v in range(n)]

    def visit(v: int, neigh_or: np.ndarray, members: int) -> None:
        if v == n:
            ok = ((neigh_or & members) == 0) & ((neigh_or | members) == full)
            np.add(counts, ok, out=counts, casting="unsafe")
            return
        visit(v + 1, neigh_or, members)
        visit(v + 1, neigh_or | cols[v], members | 1 << v)

    visit(0, np.zeros(num, dtype=adj.dtype), 0)
    return counts


class _PerSizeScan:
    """Accumulator for one vertex count m: max MIS count, witness, violations."""

    def __init__(self, m: int):
        self.m = m
        self.scanned = 0
        self.max_count = 0
        self.best_mask: int | None = None
        self.violation_mask: int | None = None

    def consume(self, masks: np.ndarray, adj: np.ndarray) -> None:
        counts = batch_mis_counts(adj, self.m)
        self.scanned += len(masks)
        bad = counts * counts > 1 << self.m
        if bad.any():
            cand = int(masks[bad].min())
            if self.violation_mask is None or cand < self.violation_mask:
                self.violation_mask = cand
        top = int(counts.max())
        if top > self.max_count:
            self.max_count = top
            self.best_mask = int(masks[counts == top].min())
        elif top == self.max_count:
            cand = int(masks[counts == top].min())
            if self.best_mask is None or cand < self.best_mask:
                self.best_mask = cand


def verify_hujter_tuza(max_n: int = HUJTER_TUZA_MAX_N, *, shards: int = 1,
                       chunk: int = 1 << 18) -> VerificationReport:
    """Exhaustively check count^2 <= 2^m over all triangle-free graphs, m <= max_n.

    Reports the maximum count attained per m with one extremal witness in
    graph6 (the scan-minimal edge bitmask among attainers).  Fails with the
    first counterexample graph if the bound were ever violated.
    """
    if max_n > HUJTER_TUZA_MAX_N:
        raise GuardError(
            f"hujter-tuza verification capped at m={HUJTER_TUZA_MAX_N}, got {max_n}")
    if max_n < 1:
        raise ValueError("need at least one vertex")
    with Stopwatch() as sw:
        counts: dict[str, int] = {}
        witnesses: list[str] = []
        failure: str | None = None
        for m in range(1, max_n + 1):
            acc = _PerSizeScan(m)
            scan.walk_triangle_free(
                m, forward_prune=False, consume=acc.consume, shards=shards, chunk=chunk)
            counts[f"scanned_m{m}"] = acc.scanned
            counts[f"max_mis_m{m}"] = acc.max_count
            if acc.best_mask is not None:
                witnesses.append(encode_graph6(graph_from_edge_mask(m, acc.best_mask)))
            if acc.violation_mask is not None and failure is None:
                failure = encode_graph6(graph_from_edge_mask(m, acc.violation_mask))
    if failure is not None:
        return VerificationReport(
            check_name="hujter_tuza_exhaustive", status=FAIL,
            parameters={"max_n": max_n}, counts=counts,
            witnesses=[failure], elapsed_ms=sw.elapsed_ms)
    return VerificationReport(
        check_name="hujter_tuza_exhaustive", status=PASS,
        parameters={"max_n": max_n}, counts=counts,
        witnesses=witnesses, elapsed_ms=sw.elapsed_ms)


def verify_matching_equality(max_k: int = 4) -> VerificationReport:
    """Perfect matchings on 2k vertices attain the bound: mis_count = 2^k."""
    with Stopwatch() as sw:
        counts: dict[str, int] = {}
        bad: list[str] = []
        for k in range(1, max_k + 1):
            g = Graph.perfect_matching(k)
            c = mis_count(g)
            counts[f"mis_matching_k{k}"] = c
            if c != 1 << k:
                bad.append(encode_graph6(g))
    return VerificationReport(
        check_name="hujter_tuza_matching_equality",
        status=FAIL if bad else PASS,
        parameters={"max_k": max_k},
        counts=counts,
        witnesses=bad,
        elapsed_ms=sw.elapsed_ms,
    )
