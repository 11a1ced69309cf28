"""Exact counting of labeled maximal triangle-free graphs.

The brute-force scan over all 2^C(n,2) graphs is the oracle (n <= 6); the
production counter walks the edge-decision tree with triangle pruning plus
the forward common-neighbor prune and must agree with the oracle wherever
both run.  The growth table profiles log2(count)/n^2 without asserting any
asymptotics, which are out of reach at these sizes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np

from . import scan
from .constructions import check_matching_partition
from .graph import (
    Graph,
    GuardError,
    graph_from_edge_mask,
    is_maximal_triangle_free,
    lex_pairs,
)
from .graph6 import encode_graph6
from .report import Stopwatch

BRUTE_FORCE_MAX_N = 6
DEFAULT_ENUMERATION_GUARD = 9
REMARK3_MAX_N = 7


@dataclass(frozen=True)
class CountRow:
    n: int
    labeled_count: int
    log2_count_over_n2: float
    wall_time_ms: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "labeled_count": self.labeled_count,
            "log2_count_over_n2": self.log2_count_over_n2,
            "wall_time_ms": self.wall_time_ms,
        }


@dataclass(frozen=True)
class CountTable:
    rows: tuple[CountRow, ...]

    def __post_init__(self) -> None:
        expected = range(1, len(self.rows) + 1)
        if [r.n for r in self.rows] != list(expected):
            raise ValueError("rows must cover n = 1..n_max without gaps")

    def to_dicts(self) -> list[dict[str, Any]]:
        return [r.to_dict() for r in self.rows]

    def to_text(self) -> str:
        lines = [f"{'n':>3} {'count':>12} {'log2/n^2':>10} {'ms':>8}"]
        for r in self.rows:
            lines.append(
                f"{r.n:>3} {r.labeled_count:>12} {r.log2_count_over_n2:>10.6f} "
                f"{r.wall_time_ms:>8}"
            )
        return "\n".join(lines)


def brute_force_maximal_tf(n: int) -> list[Graph]:
    """All labeled maximal triangle-free graphs on [n] by full scan.

    Scans every edge subset and keeps those passing the maximality predicate,
    ordered by ascending adjacency bit pattern.
    """
    if n > BRUTE_FORCE_MAX_N:
        raise GuardError(f"brute force capped at n={BRUTE_FORCE_MAX_N}, got {n}")
    if n < 1:
        raise ValueError("need at least one vertex")
    found = []
    num_pairs = len(lex_pairs(n))
    for mask in range(1 << num_pairs):
        g = graph_from_edge_mask(n, mask)
        if is_maximal_triangle_free(g):
            found.append(g)
    return found


def _maximality_filter(adj: np.ndarray, n: int) -> np.ndarray:
    """Boolean keep-mask: every non-adjacent pair has a common neighbor."""
    keep = np.ones(adj.shape[0], dtype=bool)
    for u, v in lex_pairs(n):
        nonedge = (adj[:, u] >> np.uint16(v)) & 1 == 0
        keep &= ~(nonedge & ((adj[:, u] & adj[:, v]) == 0))
    return keep


class _LeafCollector:
    def __init__(self, n: int, forward_prune: bool):
        self.n = n
        self.forward_prune = forward_prune
        self.count = 0
        self.batches: list[np.ndarray] = []
        self.collect = False

    def consume(self, masks: np.ndarray, adj: np.ndarray) -> None:
        if not self.forward_prune:
            ok = _maximality_filter(adj, self.n)
            masks = masks[ok]
        self.count += len(masks)
        if self.collect and len(masks):
            self.batches.append(masks)

    def sorted_masks(self) -> np.ndarray:
        if not self.batches:
            return np.zeros(0, dtype=np.int64)
        return np.sort(np.concatenate(self.batches))


def enumerate_maximal_tf(
    n: int,
    *,
    shards: int = 1,
    stream_path=None,
    guard: int = DEFAULT_ENUMERATION_GUARD,
    forward_prune: bool = True,
    pair_order: list[tuple[int, int]] | None = None,
) -> CountRow:
    """Count labeled maximal triangle-free graphs on [n] by backtracking.

    With ``forward_prune`` the tree is cut early at dead non-edges; without it
    every triangle-free leaf is reached and filtered by the maximality check.
    Both must agree with the brute-force oracle.  Streams the family as sorted
    graph6 lines when ``stream_path`` is given.
    """
    if n > guard:
        raise GuardError(
            f"enumeration guard is n={guard}; raise it explicitly to go further")
    if n < 1:
        raise ValueError("need at least one vertex")
    if pair_order is not None and stream_path is not None:
        raise ValueError("streaming requires the canonical pair order")
    with Stopwatch() as sw:
        collector = _LeafCollector(n, forward_prune)
        collector.collect = stream_path is not None
        scan.walk_triangle_free(
            n,
            forward_prune=forward_prune,
            consume=collector.consume,
            shards=shards,
            pair_order=pair_order,
        )
        count = collector.count
        if stream_path is not None:
            with open(stream_path, "w", encoding="ascii") as fh:
                for mask in collector.sorted_masks():
                    fh.write(encode_graph6(graph_from_edge_mask(n, int(mask))))
                    fh.write("\n")
    log2_over = round(math.log2(count) / (n * n), 6) if count else float("-inf")
    return CountRow(n, count, log2_over, sw.elapsed_ms)


def growth_table(n_max: int, *, shards: int = 1,
                 guard: int = DEFAULT_ENUMERATION_GUARD) -> CountTable:
    """CountRows for n = 1..n_max; no convergence assertion is made or implied."""
    if n_max > guard:
        raise GuardError(
            f"enumeration guard is n={guard}; raise it explicitly to go further")
    rows = [enumerate_maximal_tf(n, shards=shards, guard=guard) for n in range(1, n_max + 1)]
    return CountTable(tuple(rows))


def maximal_tf_family(n: int, *, guard: int = DEFAULT_ENUMERATION_GUARD) -> list[Graph]:
    """The maximal triangle-free graphs on [n], ascending by edge bitmask."""
    if n > guard:
        raise GuardError(
            f"enumeration guard is n={guard}; raise it explicitly to go further")
    collector = _LeafCollector(n, forward_prune=True)
    collector.collect = True
    scan.walk_triangle_free(n, forward_prune=True, consume=collector.consume)
    return [graph_from_edge_mask(n, int(m)) for m in collector.sorted_masks()]


def remark3_census(n: int) -> tuple[int, int]:
    """(admitting, total): how many maximal triangle-free graphs on [n] split
    into a perfect-matching part X and an independent part Y."""
    if n > REMARK3_MAX_N:
        raise GuardError(f"matching-partition census capped at n={REMARK3_MAX_N}, got {n}")
    family = maximal_tf_family(n)
    admitting = sum(1 for g in family if check_matching_partition(g) is not None)
    return admitting, len(family)


def remark3_fraction(n: int) -> Fraction:
    """remark3_census as an exact fraction."""
    admitting, total = remark3_census(n)
    return Fraction(admitting, total)
