"""Explicit graph families behind the lower bounds, with exact accounting.

The two-part family puts a perfect matching on the first half of the vertex
set, keeps the second half independent, and joins every independent vertex to
exactly one endpoint of every matching edge; each of the n^2/8 endpoint
choices toggles a distinct edge, so choices map to pairwise distinct
triangle-free graphs.  The r-class generalization additionally places exactly
3 of the 4 edges between matching edges in distinct matched classes, with the
omitted edge an explicit 4-way choice.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .graph import Graph, GuardError, has_clique, is_maximal_triangle_free, is_triangle_free
from .graph6 import encode_graph6
from .report import FAIL, PASS, Stopwatch, VerificationReport

FOLKLORE_STATS_MAX_N = 12
MATCHING_PARTITION_MAX_N = 24


# ---------------------------------------------------------------------------
# Two-part (matching + independent set) family
# ---------------------------------------------------------------------------


def folklore_bit_count(n: int) -> int:
    """Number of binary choices: one per (matching edge, independent vertex)."""
    if n % 4:
        raise ValueError(f"vertex count must be divisible by 4, got {n}")
    return (n // 4) * (n // 2)


@dataclass(frozen=True)
class FolkloreChoice:
    """Endpoint choices indexed row-major by (matching edge, Y vertex)."""

    n: int
    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        expected = folklore_bit_count(self.n)
        if len(self.bits) != expected:
            raise ValueError(f"need exactly {expected} bits, got {len(self.bits)}")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("choice bits must be 0 or 1")

    @classmethod
    def zeros(cls, n: int) -> "FolkloreChoice":
        return cls(n, (0,) * folklore_bit_count(n))

    @classmethod
    def from_int(cls, n: int, code: int) -> "FolkloreChoice":
        """Bit i of code (LSB first) is choice i in row-major order."""
        width = folklore_bit_count(n)
        if not 0 <= code < 1 << width:
            raise ValueError(f"code needs at most {width} bits")
        return cls(n, tuple(code >> i & 1 for i in range(width)))

    @classmethod
    def from_hex(cls, n: int, text: str) -> "FolkloreChoice":
        return cls.from_int(n, int(text, 16))

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "FolkloreChoice":
        width = folklore_bit_count(n)
        return cls(n, tuple(int(b) for b in rng.integers(0, 2, size=width)))


def folklore_graph(choice: FolkloreChoice) -> Graph:
    """Build the graph for one choice vector.

    Vertices 0..n/2-1 carry the matching (2i, 2i+1); vertices n/2..n-1 are
    independent; matching edge i sends one edge to independent vertex j, to
    endpoint 2i + bit(i, j).  The result is triangle-free for every choice.
    """
    n = choice.n
    half = n // 2
    rows = [0] * n
    for i in range(n // 4):
        a, b = 2 * i, 2 * i + 1
        rows[a] |= 1 << b
        rows[b] |= 1 << a
    for i in range(n // 4):
        for j in range(half):
            x = 2 * i + choice.bits[i * half + j]
            y = half + j
            rows[x] |= 1 << y
            rows[y] |= 1 << x
    return Graph(n, tuple(rows))


def folklore_family_stats(n: int, *, shards: int = 1,
                          guard: int = FOLKLORE_STATS_MAX_N) -> VerificationReport:
    """Enumerate every choice; count distinct, triangle-free, maximal members.

    Shards split the choice space into contiguous code ranges; the aggregate
    is independent of the shard count.
    """
    if n > guard:
        raise GuardError(f"family enumeration capped at n={guard}, got {n}")
    width = folklore_bit_count(n)
    total = 1 << width
    with Stopwatch() as sw:
        seen: set[tuple[int, ...]] = set()
        tf = 0
        maximal = 0
        bad: list[str] = []
        bounds = [total * s // shards for s in range(shards + 1)]
        for s in range(shards):
            for code in range(bounds[s], bounds[s + 1]):
                g = folklore_graph(FolkloreChoice.from_int(n, code))
                seen.add(g.rows)
                if is_triangle_free(g):
                    tf += 1
                else:
                    bad.append(encode_graph6(g))
                if is_maximal_triangle_free(g):
                    maximal += 1
        distinct = len(seen)
        if distinct != total:
            bad.append(f"distinct={distinct}")
    frac = Fraction(maximal, total)
    status = FAIL if (tf != total or distinct != total) else PASS
    return VerificationReport(
        check_name=f"folklore_stats_n{n}",
        status=status,
        parameters={"n": n, "maximal_fraction": f"{frac.numerator}/{frac.denominator}"},
        counts={
            "total": total,
            "distinct": distinct,
            "triangle_free": tf,
            "maximal": maximal,
        },
        witnesses=bad,
        elapsed_ms=sw.elapsed_ms,
    )


# ---------------------------------------------------------------------------
# r-class K_{r+1}-free family
# ---------------------------------------------------------------------------


def _kr_shape(n: int, r: int) -> tuple[int, int, int]:
    """(class size, matching edges per matched class, matched classes)."""
    if r < 2:
        raise ValueError("need at least 2 classes")
    if n % (2 * r):
        raise ValueError(f"vertex count must be divisible by 2r={2 * r}, got {n}")
    return n // r, n // (2 * r), r - 1


def kr_pair_slots(n: int, r: int) -> list[tuple[int, int]]:
    """Matching-edge pairs from distinct matched classes, lexicographic.

    A matching edge is identified by its global index c * (n/2r) + i for
    class c and in-class index i; slots list index pairs (e, f) with e < f
    from different classes.
    """
    _, per_class, matched = _kr_shape(n, r)
    slots = []
    for c1 in range(matched):
        for c2 in range(c1 + 1, matched):
            for i in range(per_class):
                for j in range(per_class):
                    slots.append((c1 * per_class + i, c2 * per_class + j))
    return slots


def kr_vertex_slots(n: int, r: int) -> list[tuple[int, int]]:
    """(independent vertex, global matching edge index) pairs, lexicographic."""
    class_size, per_class, matched = _kr_shape(n, r)
    base = (r - 1) * class_size
    return [
        (base + y, e)
        for y in range(class_size)
        for e in range(matched * per_class)
    ]


@dataclass(frozen=True)
class KrChoice:
    """Omitted-edge choices between matching edges plus endpoint choices.

    ``pair_choices[k]`` in {0,1,2,3} omits cross edge (endpoint choice of the
    lower-class edge) * 2 + (endpoint choice of the higher-class edge) for the
    k-th slot of kr_pair_slots; ``vertex_choices[k]`` picks the endpoint of
    the matching edge joined to the independent vertex of the k-th slot of
    kr_vertex_slots.
    """

    n: int
    r: int
    pair_choices: tuple[int, ...]
    vertex_choices: tuple[int, ...]

    def __post_init__(self) -> None:
        n_pair = len(kr_pair_slots(self.n, self.r))
        n_vert = len(kr_vertex_slots(self.n, self.r))
        if len(self.pair_choices) != n_pair:
            raise ValueError(f"need {n_pair} pair choices, got {len(self.pair_choices)}")
        if len(self.vertex_choices) != n_vert:
            raise ValueError(f"need {n_vert} vertex choices, got {len(self.vertex_choices)}")
        if any(c not in (0, 1, 2, 3) for c in self.pair_choices):
            raise ValueError("pair choices must be in {0, 1, 2, 3}")
        if any(b not in (0, 1) for b in self.vertex_choices):
            raise ValueError("vertex choices must be 0 or 1")

    @classmethod
    def zeros(cls, n: int, r: int) -> "KrChoice":
        return cls(n, r, (0,) * len(kr_pair_slots(n, r)), (0,) * len(kr_vertex_slots(n, r)))

    @classmethod
    def from_int(cls, n: int, r: int, code: int) -> "KrChoice":
        """Pair choices first (2 bits each, LSB first), then vertex bits."""
        n_pair = len(kr_pair_slots(n, r))
        n_vert = len(kr_vertex_slots(n, r))
        width = 2 * n_pair + n_vert
        if not 0 <= code < 1 << width:
            raise ValueError(f"code needs at most {width} bits")
        pair = tuple(code >> (2 * k) & 3 for k in range(n_pair))
        rest = code >> (2 * n_pair)
        vert = tuple(rest >> k & 1 for k in range(n_vert))
        return cls(n, r, pair, vert)

    @classmethod
    def from_hex(cls, n: int, r: int, text: str) -> "KrChoice":
        return cls.from_int(n, r, int(text, 16))

    @classmethod
    def random(cls, n: int, r: int, rng: np.random.Generator) -> "KrChoice":
        pair = tuple(int(c) for c in rng.integers(0, 4, size=len(kr_pair_slots(n, r))))
        vert = tuple(int(b) for b in rng.integers(0, 2, size=len(kr_vertex_slots(n, r))))
        return cls(n, r, pair, vert)


def _edge_endpoints(n: int, r: int, e: int) -> tuple[int, int]:
    class_size, per_class, _ = _kr_shape(n, r)
    c, i = divmod(e, per_class)
    base = c * class_size + 2 * i
    return base, base + 1


def kr_free_graph(choice: KrChoice) -> Graph:
    """Build the r-class graph for one choice vector; contains no K_{r+1}."""
    n, r = choice.n, choice.r
    rows = [0] * n
    _, per_class, matched = _kr_shape(n, r)
    for e in range(matched * per_class):
        a, b = _edge_endpoints(n, r, e)
        rows[a] |= 1 << b
        rows[b] |= 1 << a
    for k, (e1, e2) in enumerate(kr_pair_slots(n, r)):
        a1, a2 = _edge_endpoints(n, r, e1)
        b1, b2 = _edge_endpoints(n, r, e2)
        omit = choice.pair_choices[k]
        for s, x in enumerate((a1, a2)):
            for t, y in enumerate((b1, b2)):
                if 2 * s + t == omit:
                    continue
                rows[x] |= 1 << y
                rows[y] |= 1 << x
    for k, (y, e) in enumerate(kr_vertex_slots(n, r)):
        a, b = _edge_endpoints(n, r, e)
        x = a if choice.vertex_choices[k] == 0 else b
        rows[x] |= 1 << y
        rows[y] |= 1 << x
    g = Graph(n, tuple(rows))
    assert not has_clique(g, r + 1), "construction produced a K_{r+1}"
    return g


def kr_entropy_check(n: int, r: int) -> Fraction:
    """log2 of the number of choice vectors, which equals (1 - 1/r) n^2 / 4.

    Exact rational identity: C(r-1,2) (n/2r)^2 slots at 2 bits plus
    (n/r)(r-1)(n/2r) endpoint bits.
    """
    _kr_shape(n, r)
    per_class = n // (2 * r)
    bits = Fraction(comb(r - 1, 2) * per_class * per_class * 2
                    + (n // r) * (r - 1) * per_class)
    target = Fraction(r - 1, r) * Fraction(n * n, 4)
    if bits != target:
        raise AssertionError(
            f"entropy mismatch for (n={n}, r={r}): {bits} != {target}")
    return bits


# ---------------------------------------------------------------------------
# Matching + independent-set partition recognizer
# ---------------------------------------------------------------------------


def check_matching_partition(g: Graph) -> tuple[int, int] | None:
    """Smallest X (as a bit word) with G[X] a perfect matching and V-X
    independent, or None.  Exhaustive over subsets; capped at 24 vertices."""
    if g.n > MATCHING_PARTITION_MAX_N:
        raise GuardError(
            f"partition scan capped at n={MATCHING_PARTITION_MAX_N}, got {g.n}")
    rows = g.rows
    full = (1 << g.n) - 1
    for x_mask in range(1 << g.n):
        y_mask = full ^ x_mask
        ok = True
        rest = x_mask
        while rest:
            low = rest & -rest
            rest ^= low
            if (rows[low.bit_length() - 1] & x_mask).bit_count() != 1:
                ok = False
                break
        if not ok:
            continue
        rest = y_mask
        while rest:
            low = rest & -rest
            rest ^= low
            if rows[low.bit_length() - 1] & y_mask:
                ok = False
                break
        if ok:
            return x_mask, y_mask
    return None
