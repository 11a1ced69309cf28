"""Bit-row graphs and the triangle primitives shared by every other module.

A graph lives on vertices 0..n-1 with n <= 64, so each adjacency row fits a
single machine word and neighbourhood intersections are one ``&``.  Graphs and
edge sets are immutable; every operation here is a pure function.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator

MAX_VERTICES = 64

#: Hard cap for the exhaustive edge-subset scan behind min_triangles_at_density.
MIN_TRIANGLES_MAX_N = 7


class GuardError(ValueError):
    """An operation was asked to exceed its hard size cap."""


def iter_bits(word: int) -> Iterator[int]:
    """Yield the set bit positions of *word* in ascending order."""
    while word:
        low = word & -word
        yield low.bit_length() - 1
        word ^= low


def _above(v: int) -> int:
    # mask of all bit positions strictly greater than v
    return -1 << (v + 1)


@dataclass(frozen=True)
class Graph:
    """Labeled simple graph with one adjacency bit row per vertex.

    ``rows[u]`` has bit v set iff uv is an edge.  Rows are symmetric, loop
    free, and carry no bits at or beyond index ``n``.  n = 0 is permitted so
    that derived graphs on edge sets (which may be empty) stay well defined.
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if len(self.rows) != self.n:
            raise ValueError("row count does not match vertex count")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row {u} has bits beyond vertex {self.n - 1}")
            if row >> u & 1:
                raise ValueError(f"self-loop at vertex {u}")
        for u in range(self.n):
            for v in iter_bits(self.rows[u]):
                if not self.rows[v] >> u & 1:
                    raise ValueError(f"asymmetric adjacency at ({u}, {v})")

    # -- constructors ------------------------------------------------------

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) outside vertex range")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << u) for u in range(n)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def star(cls, leaves: int) -> "Graph":
        return cls.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> "Graph":
        return cls.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])

    @classmethod
    def perfect_matching(cls, k: int) -> "Graph":
        """k disjoint edges on 2k vertices, pairs (2i, 2i+1)."""
        return cls.from_edges(2 * k, [(2 * i, 2 * i + 1) for i in range(k)])

    # -- queries -----------------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, u: int) -> int:
        return self.rows[u].bit_count()

    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def edges(self) -> list[tuple[int, int]]:
        """All edges as pairs (u, v) with u < v, in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in iter_bits(self.rows[u] & _above(u))]

    def edge_mask(self) -> int:
        """Edges as a bitmask over lexicographic pair ranks (see pair_rank)."""
        mask = 0
        for p, (u, v) in enumerate(lex_pairs(self.n)):
            if self.rows[u] >> v & 1:
                mask |= 1 << p
        return mask

    # -- derived graphs ----------------------------------------------------

    def with_edge(self, u: int, v: int) -> "Graph":
        rows = list(self.rows)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph(self.n, tuple(rows))

    def without_edges(self, pairs) -> "Graph":
        rows = list(self.rows)
        for u, v in pairs:
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        return Graph(self.n, tuple(rows))

    def relabel(self, perm: list[int]) -> "Graph":
        """Image under vertex relabeling u -> perm[u]."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("perm is not a permutation of the vertex set")
        rows = [0] * self.n
        for u in range(self.n):
            for v in iter_bits(self.rows[u]):
                rows[perm[u]] |= 1 << perm[v]
        return Graph(self.n, tuple(rows))


def lex_pairs(n: int) -> list[tuple[int, int]]:
    """All pairs (u, v), u < v, in lexicographic order; rank = list index."""
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def graph_from_edge_mask(n: int, mask: int) -> Graph:
    """Inverse of Graph.edge_mask for the lexicographic pair ranking."""
    rows = [0] * n
    for p, (u, v) in enumerate(lex_pairs(n)):
        if mask >> p & 1:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    return Graph(n, tuple(rows))


# ---------------------------------------------------------------------------
# Edge sets
# ---------------------------------------------------------------------------


def edge_id(u: int, v: int, n: int) -> int:
    """Canonical edge index u*n + v for u < v; shared across all modules."""
    if u > v:
        u, v = v, u
    if u == v or not 0 <= u < n or not v < n:
        raise ValueError(f"({u}, {v}) is not an edge of an {n}-vertex graph")
    return u * n + v


def id_to_pair(eid: int, n: int) -> tuple[int, int]:
    u, v = divmod(eid, n)
    if not (0 <= u < v < n):
        raise ValueError(f"{eid} is not a valid edge index for n={n}")
    return u, v


@dataclass(frozen=True)
class EdgeSet:
    """A set of edges of one host graph, stored as canonical edge indices."""

    host_n: int
    members: frozenset[int]

    def __post_init__(self) -> None:
        for eid in self.members:
            id_to_pair(eid, self.host_n)  # validates

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "EdgeSet":
        return cls(n, frozenset(edge_id(u, v, n) for u, v in pairs))

    @classmethod
    def empty(cls, n: int) -> "EdgeSet":
        return cls(n, frozenset())

    def pairs(self) -> list[tuple[int, int]]:
        return [id_to_pair(e, self.host_n) for e in sorted(self.members)]

    def has(self, u: int, v: int) -> bool:
        return edge_id(u, v, self.host_n) in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    def _check_host(self, other: "EdgeSet") -> None:
        if self.host_n != other.host_n:
            raise ValueError("edge sets belong to different host graphs")

    def union(self, other: "EdgeSet") -> "EdgeSet":
        self._check_host(other)
        return EdgeSet(self.host_n, self.members | other.members)

    def difference(self, other: "EdgeSet") -> "EdgeSet":
        self._check_host(other)
        return EdgeSet(self.host_n, self.members - other.members)

    def issubset(self, other: "EdgeSet") -> bool:
        self._check_host(other)
        return self.members <= other.members

    def subsets(self) -> Iterator["EdgeSet"]:
        """All subsets, ordered by the binary counter over sorted members."""
        ids = sorted(self.members)
        for code in range(1 << len(ids)):
            yield EdgeSet(
                self.host_n,
                frozenset(ids[i] for i in range(len(ids)) if code >> i & 1),
            )

    def as_graph(self) -> Graph:
        """The graph on the host vertex set spanned by these edges."""
        return Graph.from_edges(self.host_n, self.pairs())


def graph_edge_set(g: Graph) -> EdgeSet:
    return EdgeSet.from_pairs(g.n, g.edges())


def remove_edge_set(g: Graph, es: EdgeSet) -> Graph:
    if es.host_n != g.n:
        raise ValueError("edge set does not match graph vertex count")
    return g.without_edges(es.pairs())


# ---------------------------------------------------------------------------
# Triangle and clique primitives
# ---------------------------------------------------------------------------


def count_triangles(g: Graph) -> int:
    """Exact number of vertex triples spanning a triangle."""
    return _count_triangles_rows(g.rows, g.n)


def _count_triangles_rows(rows, n: int) -> int:
    total = 0
    for u in range(n):
        ru = rows[u]
        for v in iter_bits(ru & _above(u)):
            # third vertex above v, so each triangle is counted once
            total += (ru & rows[v] & _above(v)).bit_count()
    return total


def is_triangle_free(g: Graph) -> bool:
    """True iff g has no triangle; exits at the first one found."""
    return _is_triangle_free_rows(g.rows, g.n)


def _is_triangle_free_rows(rows, n: int) -> bool:
    for u in range(n):
        ru = rows[u]
        for v in iter_bits(ru & _above(u)):
            if ru & rows[v]:
                return False
    return True


def find_triangle(g: Graph) -> tuple[int, int, int] | None:
    """Some triangle (a, b, c) with a < b < c, or None; first in lex order."""
    for u in range(g.n):
        ru = g.rows[u]
        for v in iter_bits(ru & _above(u)):
            common = ru & g.rows[v] & _above(v)
            if common:
                return u, v, (common & -common).bit_length() - 1
    return None


def is_maximal_triangle_free(g: Graph) -> bool:
    """Triangle free, and every non-adjacent pair has a common neighbor."""
    return _is_maximal_tf_rows(g.rows, g.n)


def _is_maximal_tf_rows(rows, n: int) -> bool:
    if not _is_triangle_free_rows(rows, n):
        return False
    for u in range(n):
        ru = rows[u]
        for v in range(u + 1, n):
            if not ru >> v & 1 and not ru & rows[v]:
                return False
    return True


def has_clique(g: Graph, k: int) -> bool:
    """True iff g contains K_k; exact backtracking over ascending vertices."""
    if k < 1:
        raise ValueError("clique size must be at least 1")
    if k > g.n:
        return False
    rows = g.rows

    def grow(cand: int, need: int) -> bool:
        if need == 0:
            return True
        while cand:
            if cand.bit_count() < need:
                return False
            low = cand & -cand
            cand ^= low
            if grow(rows[low.bit_length() - 1] & cand, need - 1):
                return True
        return False

    return grow((1 << g.n) - 1, k)


def greedy_triangle_removal(g: Graph) -> EdgeSet:
    """An edge set F with g - F triangle free.

    Repeatedly removes an edge lying on the most remaining triangles; ties go
    to the smallest edge index, so the result is reproducible.
    """
    n = g.n
    rows = list(g.rows)
    removed: list[int] = []
    while True:
        best_cnt = 0
        best: tuple[int, int] | None = None
        for u in range(n):
            ru = rows[u]
            for v in iter_bits(ru & _above(u)):
                cnt = (ru & rows[v]).bit_count()
                if cnt > best_cnt:
                    best_cnt = cnt
                    best = (u, v)
        if best is None:
            break
        u, v = best
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        removed.append(edge_id(u, v, n))
    return EdgeSet(n, frozenset(removed))


@lru_cache(maxsize=None)
def _min_triangle_table(n: int) -> tuple[int, ...]:
    """mins[m] = exact minimum triangle count over all n-vertex graphs with m edges."""
    pairs = list(combinations(range(n), 2))
    rank = {p: i for i, p in enumerate(pairs)}
    tri_masks = [
        (1 << rank[(a, b)]) | (1 << rank[(a, c)]) | (1 << rank[(b, c)])
        for a, b, c in combinations(range(n), 3)
    ]
    num_pairs = len(pairs)
    mins: list[int | None] = [None] * (num_pairs + 1)
    for mask in range(1 << num_pairs):
        m = mask.bit_count()
        cur = mins[m]
        if cur == 0:
            continue
        cnt = 0
        for t in tri_masks:
            if mask & t == t:
                cnt += 1
                if cur is not None and cnt >= cur:
                    break
        if cur is None or cnt < cur:
            mins[m] = cnt
    return tuple(m for m in mins if m is not None)


def min_triangles_at_density(n: int, m: int) -> int:
    """Exact minimum of count_triangles over all n-vertex graphs with m edges.

    Scans every edge subset, so n is hard-capped at 7 (2^21 subsets).
    """
    if n > MIN_TRIANGLES_MAX_N:
        raise GuardError(f"min_triangles_at_density capped at n={MIN_TRIANGLES_MAX_N}, got {n}")
    if n < 1:
        raise ValueError("need at least one vertex")
    max_m = n * (n - 1) // 2
    if not 0 <= m <= max_m:
        raise ValueError(f"edge count {m} outside 0..{max_m}")
    return _min_triangle_table(n)[m]
