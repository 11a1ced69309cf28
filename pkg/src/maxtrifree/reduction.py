"""Reduced graph, auxiliary graph, and the machine-checked counting chain.

An instance is a container graph G, an edge set F whose removal leaves G
triangle-free, and a triangle-free F* subseteq F.  The reduced graph drops
F - F* and every edge closing a triangle with two F* edges; the auxiliary
graph T lives on the remaining non-F* edges, joining two of them whenever
some F* edge completes a triangle with both.  The two checked claims: T is
triangle-free, and each maximal triangle-free H inside the container with
E(H) cap F = F* lands injectively on a maximal independent set of T.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .graph import (
    EdgeSet,
    Graph,
    GuardError,
    MAX_VERTICES,
    _is_maximal_tf_rows,
    edge_id,
    find_triangle,
    graph_edge_set,
    greedy_triangle_removal,
    id_to_pair,
    is_triangle_free,
    iter_bits,
    lex_pairs,
)
from .graph6 import decode_graph6, encode_graph6
from .mis import mis_count
from .report import FAIL, PASS, Stopwatch, VerificationReport

H_STAR_MAX_N = 10
CHAIN_MAX_N = 8
CHAIN_MAX_REMOVAL = 12


class InstanceError(ValueError):
    """A reduction instance violates one of its invariants."""


def _edge_str(u: int, v: int) -> str:
    return f"{u}-{v}"


def _edge_strs(pairs) -> list[str]:
    return [_edge_str(u, v) for u, v in pairs]


@dataclass(frozen=True)
class ReductionInstance:
    """Container G, removal set F, and selected F* subseteq F."""

    container: Graph
    removal: EdgeSet
    selected: EdgeSet

    def __post_init__(self) -> None:
        n = self.container.n
        if self.removal.host_n != n or self.selected.host_n != n:
            raise InstanceError("edge sets must live on the container vertex set")
        cont_edges = graph_edge_set(self.container)
        extra = self.removal.difference(cont_edges)
        if len(extra):
            raise InstanceError(f"removal edge {extra.pairs()[0]} is not in the container")
        if not self.selected.issubset(self.removal):
            bad = self.selected.difference(self.removal).pairs()[0]
            raise InstanceError(f"selected edge {bad} is not in the removal set")
        stripped = self.container.without_edges(self.removal.pairs())
        tri = find_triangle(stripped)
        if tri is not None:
            raise InstanceError(f"container minus removal has triangle {tri}")
        tri = find_triangle(self.selected.as_graph())
        if tri is not None:
            raise InstanceError(f"selected set spans triangle {tri}")

    # -- serialization ------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "container": encode_graph6(self.container),
            "removal": _edge_strs(self.removal.pairs()),
            "selected": _edge_strs(self.selected.pairs()),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ReductionInstance":
        container = decode_graph6(data["container"])

        def parse(key: str) -> EdgeSet:
            pairs = []
            for text in data[key]:
                u, v = text.split("-")
                pairs.append((int(u), int(v)))
            return EdgeSet.from_pairs(container.n, pairs)

        return cls(container, parse("removal"), parse("selected"))

    def dump(self, path) -> None:
        with open(path, "w", encoding="ascii") as fh:
            json.dump(self.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "ReductionInstance":
        with open(path, "r", encoding="ascii") as fh:
            return cls.from_dict(json.load(fh))


@dataclass(frozen=True)
class AuxiliaryGraph:
    """T on the non-selected reduced edges, with the edge back-mapping."""

    t_graph: Graph
    vertex_to_edge: tuple[int, ...]
    reduced: Graph
    selected: EdgeSet


def worked_k4_instance() -> ReductionInstance:
    """K4 with removal {01, 23} and selected {01}; the running example."""
    return ReductionInstance(
        Graph.complete(4),
        EdgeSet.from_pairs(4, [(0, 1), (2, 3)]),
        EdgeSet.from_pairs(4, [(0, 1)]),
    )


def reduced_graph(inst: ReductionInstance) -> Graph:
    """Container minus (removal - selected) minus every edge that closes a
    triangle with two selected edges.  The selected edges always survive."""
    n = inst.container.n
    g = inst.container.without_edges(inst.removal.difference(inst.selected).pairs())
    sel_rows = inst.selected.as_graph().rows
    doomed = [(u, v) for u, v in inst.container.edges() if sel_rows[u] & sel_rows[v]]
    g = g.without_edges(doomed)
    for u, v in inst.selected.pairs():
        if not g.has_edge(u, v):
            raise AssertionError(f"selected edge ({u}, {v}) was removed from the reduction")
    return g


def build_auxiliary(inst: ReductionInstance) -> AuxiliaryGraph:
    """The auxiliary graph T: vertices are non-selected reduced edges, two
    adjacent iff a selected edge completes a triangle with both."""
    red = reduced_graph(inst)
    n = red.n
    ids = [
        edge_id(u, v, n)
        for u, v in red.edges()
        if not inst.selected.has(u, v)
    ]
    if len(ids) > MAX_VERTICES:
        raise GuardError(
            f"auxiliary graph needs {len(ids)} vertices, beyond the {MAX_VERTICES} cap")
    sel_rows = inst.selected.as_graph().rows
    t_rows = [0] * len(ids)
    endpoints = [id_to_pair(eid, n) for eid in ids]
    for i in range(len(ids)):
        u1, v1 = endpoints[i]
        for j in range(i + 1, len(ids)):
            u2, v2 = endpoints[j]
            shared = {u1, v1} & {u2, v2}
            if len(shared) != 1:
                continue
            s = shared.pop()
            x = u1 + v1 - s
            y = u2 + v2 - s
            if sel_rows[x] >> y & 1:
                t_rows[i] |= 1 << j
                t_rows[j] |= 1 << i
    return AuxiliaryGraph(Graph(len(ids), tuple(t_rows)), tuple(ids), red, inst.selected)


def _shared_selected_edge(aux: AuxiliaryGraph, i: int, j: int) -> str:
    """The selected edge witnessing the T-adjacency of T-vertices i and j."""
    u1, v1 = id_to_pair(aux.vertex_to_edge[i], aux.reduced.n)
    u2, v2 = id_to_pair(aux.vertex_to_edge[j], aux.reduced.n)
    s = ({u1, v1} & {u2, v2}).pop()
    return _edge_str(*sorted((u1 + v1 - s, u2 + v2 - s)))


def verify_claim1(aux: AuxiliaryGraph) -> VerificationReport:
    """Check that T is triangle-free; a failure names the three edges and the
    three selected edges behind them."""
    with Stopwatch() as sw:
        tri = find_triangle(aux.t_graph)
        counts = {
            "t_vertices": aux.t_graph.n,
            "t_edges": aux.t_graph.edge_count(),
            "reduced_edges": aux.reduced.edge_count(),
        }
        witnesses: list = []
        if tri is not None:
            i, j, k = tri
            edges = [
                _edge_str(*id_to_pair(aux.vertex_to_edge[x], aux.reduced.n))
                for x in tri
            ]
            ds = [
                _shared_selected_edge(aux, i, j),
                _shared_selected_edge(aux, i, k),
                _shared_selected_edge(aux, j, k),
            ]
            witnesses.append(edges + ds)
    return VerificationReport(
        check_name="claim1",
        status=FAIL if tri is not None else PASS,
        parameters={"n": aux.reduced.n, "selected": _edge_strs(aux.selected.pairs())},
        counts=counts,
        witnesses=witnesses,
        elapsed_ms=sw.elapsed_ms,
    )


def enumerate_h_star(inst: ReductionInstance) -> list[Graph]:
    """All maximal triangle-free H on the container's vertex set with
    H subseteq container and E(H) cap removal = selected.

    Depth-first over the container edges outside the removal set, pruning as
    soon as an edge would close a triangle; maximality is the absolute
    common-neighbor condition over the whole vertex set.  Results are ordered
    by ascending edge bitmask.
    """
    n = inst.container.n
    if n > H_STAR_MAX_N:
        raise GuardError(f"subgraph search capped at n={H_STAR_MAX_N}, got {n}")
    removal_ids = set(inst.removal.members)
    free = [
        (u, v)
        for u, v in inst.container.edges()
        if edge_id(u, v, n) not in removal_ids
    ]
    adj = list(inst.selected.as_graph().rows)
    found: list[tuple[int, ...]] = []

    def rec(k: int) -> None:
        if k == len(free):
            if _is_maximal_tf_rows(adj, n):
                found.append(tuple(adj))
            return
        rec(k + 1)
        u, v = free[k]
        if adj[u] & adj[v] == 0:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            rec(k + 1)
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)

    rec(0)
    graphs = [Graph(n, rows) for rows in set(found)]
    graphs.sort(key=Graph.edge_mask)
    return graphs


def _image_word(inst: ReductionInstance, aux: AuxiliaryGraph, h: Graph,
                index: dict[int, int]) -> tuple[int, list | None]:
    """Map E(H) - F* to a T bit word; a non-T edge is a counterexample."""
    word = 0
    for u, v in h.edges():
        if inst.selected.has(u, v):
            continue
        eid = edge_id(u, v, inst.container.n)
        if eid not in index:
            return 0, [encode_graph6(h), f"edge {_edge_str(u, v)} outside reduced graph"]
        word |= 1 << index[eid]
    return word, None


def _mis_violation(aux: AuxiliaryGraph, h: Graph, word: int) -> list | None:
    """Witness if word is not a maximal independent set of T, else None."""
    t_rows = aux.t_graph.rows
    for i in iter_bits(word):
        hit = t_rows[i] & word
        if hit:
            j = (hit & -hit).bit_length() - 1
            return [
                encode_graph6(h),
                _edge_str(*id_to_pair(aux.vertex_to_edge[i], aux.reduced.n)),
                _edge_str(*id_to_pair(aux.vertex_to_edge[j], aux.reduced.n)),
                _shared_selected_edge(aux, i, j),
            ]
    for i in range(aux.t_graph.n):
        if not word >> i & 1 and t_rows[i] & word == 0:
            addable = _edge_str(*id_to_pair(aux.vertex_to_edge[i], aux.reduced.n))
            return [encode_graph6(h), f"addable edge {addable}"]
    return None


def verify_claim2(inst: ReductionInstance) -> VerificationReport:
    """Check that H -> E(H) - F* maps the family injectively onto maximal
    independent sets of T, and record the slack against mis_count(T)."""
    with Stopwatch() as sw:
        aux = build_auxiliary(inst)
        family = enumerate_h_star(inst)
        t_n = aux.t_graph.n
        index = {eid: i for i, eid in enumerate(aux.vertex_to_edge)}
        witnesses: list = []
        images: list[int] = []
        for h in family:
            word, problem = _image_word(inst, aux, h, index)
            if problem is None:
                problem = _mis_violation(aux, h, word)
            if problem is not None:
                witnesses.append(problem)
            else:
                images.append(word)
        if len(set(images)) != len(images):
            witnesses.append(["duplicate edge-set image"])
        mis_t = mis_count(aux.t_graph)
        if not witnesses and len(family) > mis_t:
            witnesses.append([f"family size {len(family)} exceeds mis count {mis_t}"])
        ok = not witnesses
    return VerificationReport(
        check_name="claim2",
        status=PASS if ok else FAIL,
        parameters={"n": inst.container.n, "selected": _edge_strs(inst.selected.pairs())},
        counts={
            "h_star": len(family),
            "mis_count_t": mis_t,
            "slack": mis_t - len(family),
            "t_vertices": t_n,
        },
        witnesses=witnesses,
        elapsed_ms=sw.elapsed_ms,
    )


def maximal_tf_subgraph_count(container: Graph) -> int:
    """Number of maximal triangle-free graphs lying inside the container,
    by direct search over its edges."""
    n = container.n
    if n > H_STAR_MAX_N:
        raise GuardError(f"subgraph search capped at n={H_STAR_MAX_N}, got {n}")
    edges = container.edges()
    adj = [0] * n
    total = 0

    def rec(k: int) -> None:
        nonlocal total
        if k == len(edges):
            if _is_maximal_tf_rows(adj, n):
                total += 1
            return
        rec(k + 1)
        u, v = edges[k]
        if adj[u] & adj[v] == 0:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            rec(k + 1)
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)

    rec(0)
    return total


def bound_chain(container: Graph, removal: EdgeSet) -> VerificationReport:
    """Run the pipeline for every triangle-free F* subseteq removal and check
    the per-term inequalities plus the partition identity.

    Per F*: |H(F*)| <= mis_count(T), mis_count(T)^2 <= 2^{|V(T)|}, and
    |V(T)| <= e(container).  Summing |H(F*)| over all F* must give exactly
    the number of maximal triangle-free subgraphs of the container.
    """
    n = container.n
    if n > CHAIN_MAX_N:
        raise GuardError(f"bound chain capped at n={CHAIN_MAX_N}, got {n}")
    if len(removal) > CHAIN_MAX_REMOVAL:
        raise GuardError(
            f"bound chain capped at {CHAIN_MAX_REMOVAL} removal edges, got {len(removal)}")
    with Stopwatch() as sw:
        e_container = container.edge_count()
        total = 0
        subsets = 0
        tf_subsets = 0
        witnesses: list = []
        for fstar in removal.subsets():
            subsets += 1
            if not is_triangle_free(fstar.as_graph()):
                continue
            tf_subsets += 1
            inst = ReductionInstance(container, removal, fstar)
            aux = build_auxiliary(inst)
            h_count = len(enumerate_h_star(inst))
            mis_t = mis_count(aux.t_graph)
            t_n = aux.t_graph.n
            label = _edge_strs(fstar.pairs())
            if h_count > mis_t:
                witnesses.append([f"F*={label}", f"h_star {h_count} > mis {mis_t}"])
            if mis_t * mis_t > 1 << t_n:
                witnesses.append([f"F*={label}", f"mis {mis_t} breaks 2^({t_n}/2)"])
            if t_n > e_container:
                witnesses.append([f"F*={label}", f"|V(T)|={t_n} > e(G)={e_container}"])
            total += h_count
        direct = maximal_tf_subgraph_count(container)
        if total != direct:
            witnesses.append([f"partition sum {total} != direct count {direct}"])
    return VerificationReport(
        check_name="bound_chain",
        status=FAIL if witnesses else PASS,
        parameters={"n": n, "removal": _edge_strs(removal.pairs())},
        counts={
            "fstar_subsets": subsets,
            "fstar_triangle_free": tf_subsets,
            "sum_h_star": total,
            "maximal_tf_subgraphs": direct,
            "container_edges": e_container,
        },
        witnesses=witnesses,
        elapsed_ms=sw.elapsed_ms,
    )


# ---------------------------------------------------------------------------
# Seeded random instances
# ---------------------------------------------------------------------------


def random_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    """Labeled G(n, p): each pair flips one coin, in lexicographic order."""
    rows = [0] * n
    for (u, v), coin in zip(lex_pairs(n), rng.random(len(lex_pairs(n)))):
        if coin < p:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def random_tf_subset(edges: EdgeSet, rng: np.random.Generator) -> EdgeSet:
    """Random triangle-free subset by randomized greedy insertion: visit the
    edges in a random order, keep each with probability 1/2 when insertion
    preserves triangle-freeness."""
    ids = sorted(edges.members)
    order = rng.permutation(len(ids))
    rows = [0] * edges.host_n
    chosen: list[int] = []
    for idx in order:
        eid = ids[int(idx)]
        u, v = id_to_pair(eid, edges.host_n)
        if rng.random() < 0.5 and rows[u] & rows[v] == 0:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
            chosen.append(eid)
    return EdgeSet(edges.host_n, frozenset(chosen))


EDGE_PROBABILITIES = (0.3, 0.5, 0.8)


def random_instance(rng: np.random.Generator, *, n_min: int = 4, n_max: int = 8,
                    ) -> ReductionInstance:
    """Container ~ G(n, p) with p in {0.3, 0.5, 0.8}; removal from the greedy
    triangle removal; selected a random triangle-free subset of it."""
    n = int(rng.integers(n_min, n_max + 1))
    p = EDGE_PROBABILITIES[int(rng.integers(len(EDGE_PROBABILITIES)))]
    container = random_graph(n, p, rng)
    removal = greedy_triangle_removal(container)
    selected = random_tf_subset(removal, rng)
    return ReductionInstance(container, removal, selected)
