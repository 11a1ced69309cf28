from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from maxtrifree import (
    EdgeSet,
    Graph,
    GuardError,
    count_triangles,
    edge_id,
    find_triangle,
    graph_edge_set,
    graph_from_edge_mask,
    greedy_triangle_removal,
    has_clique,
    id_to_pair,
    is_maximal_triangle_free,
    is_triangle_free,
    min_triangles_at_density,
)
from oracles import naive_is_maximal_tf, naive_max_clique, naive_min_triangles, naive_triangles


def random_graphs(max_n=7):
    """Strategy: a Graph drawn by choosing n and an edge bitmask."""
    def build(draw):
        n = draw(st.integers(1, max_n))
        num_pairs = n * (n - 1) // 2
        mask = draw(st.integers(0, (1 << num_pairs) - 1))
        return graph_from_edge_mask(n, mask)
    return st.composite(build)()


class TestGraphType:
    def test_rejects_self_loop(self):
        with pytest.raises(ValueError):
            Graph(2, (0b01, 0b10))

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            Graph(2, (0b10, 0b00))

    def test_rejects_out_of_range_bits(self):
        with pytest.raises(ValueError):
            Graph(2, (0b100, 0b000))

    def test_rejects_too_many_vertices(self):
        with pytest.raises(ValueError):
            Graph.empty(65)

    def test_builders(self):
        assert Graph.complete(4).edge_count() == 6
        assert Graph.cycle(5).edge_count() == 5
        assert Graph.star(3).degree(0) == 3
        assert Graph.complete_bipartite(2, 3).edge_count() == 6
        assert Graph.perfect_matching(3).edges() == [(0, 1), (2, 3), (4, 5)]

    def test_edge_mask_round_trip(self):
        g = Graph.from_edges(5, [(0, 2), (1, 4), (3, 4)])
        assert graph_from_edge_mask(5, g.edge_mask()) == g

    def test_relabel(self):
        g = Graph.path(4)
        h = g.relabel([3, 2, 1, 0])
        assert sorted(h.edges()) == [(0, 1), (1, 2), (2, 3)]
        with pytest.raises(ValueError):
            g.relabel([0, 0, 1, 2])


class TestEdgeSet:
    def test_edge_id_round_trip(self):
        for n in (2, 5, 64):
            for u, v in combinations(range(min(n, 6)), 2):
                assert id_to_pair(edge_id(u, v, n), n) == (u, v)

    def test_edge_id_orients(self):
        assert edge_id(3, 1, 5) == edge_id(1, 3, 5)

    def test_set_semantics(self):
        a = EdgeSet.from_pairs(4, [(0, 1), (2, 3)])
        b = EdgeSet.from_pairs(4, [(0, 1), (1, 2)])
        assert a.union(b).pairs() == [(0, 1), (1, 2), (2, 3)]
        assert a.difference(b).pairs() == [(2, 3)]
        assert EdgeSet.from_pairs(4, [(0, 1)]).issubset(a)
        assert not b.issubset(a)
        assert a.has(0, 1) and not a.has(0, 2)

    def test_subset_enumeration(self):
        es = EdgeSet.from_pairs(4, [(0, 1), (0, 2), (2, 3)])
        subs = list(es.subsets())
        assert len(subs) == 8
        assert len({frozenset(s.members) for s in subs}) == 8
        assert all(s.issubset(es) for s in subs)

    def test_host_mismatch(self):
        with pytest.raises(ValueError):
            EdgeSet.from_pairs(4, [(0, 1)]).union(EdgeSet.from_pairs(5, [(0, 1)]))

    def test_rejects_invalid_member(self):
        with pytest.raises(ValueError):
            EdgeSet(4, frozenset([5]))  # decodes to (1, 1)
        with pytest.raises(ValueError):
            EdgeSet(4, frozenset([4]))  # decodes to (1, 0), not u < v

    def test_as_graph(self):
        es = EdgeSet.from_pairs(5, [(0, 3), (1, 2)])
        assert es.as_graph().edges() == [(0, 3), (1, 2)]
        assert graph_edge_set(Graph.cycle(4)).pairs() == Graph.cycle(4).edges()


class TestTriangles:
    def test_examples(self):
        assert count_triangles(Graph.complete(3)) == 1
        assert count_triangles(Graph.cycle(4)) == 0
        assert count_triangles(Graph.complete(4)) == 4

    def test_triangle_free_examples(self):
        assert is_triangle_free(Graph.cycle(5))
        assert not is_triangle_free(Graph.complete(3))
        assert is_triangle_free(Graph.empty(10))

    def test_exhaustive_small(self):
        for n in range(1, 5):
            for mask in range(1 << (n * (n - 1) // 2)):
                g = graph_from_edge_mask(n, mask)
                assert count_triangles(g) == naive_triangles(g)
                assert is_triangle_free(g) == (count_triangles(g) == 0)

    @given(random_graphs())
    def test_matches_naive_random(self, g):
        assert count_triangles(g) == naive_triangles(g)
        assert is_triangle_free(g) == (count_triangles(g) == 0)

    @given(random_graphs())
    def test_find_triangle_consistent(self, g):
        tri = find_triangle(g)
        if tri is None:
            assert is_triangle_free(g)
        else:
            a, b, c = tri
            assert g.has_edge(a, b) and g.has_edge(a, c) and g.has_edge(b, c)


class TestMaximality:
    def test_examples(self):
        assert is_maximal_triangle_free(Graph.cycle(5))
        assert is_maximal_triangle_free(Graph.star(3))
        assert not is_maximal_triangle_free(Graph.path(4))

    @given(random_graphs())
    def test_matches_naive(self, g):
        assert is_maximal_triangle_free(g) == naive_is_maximal_tf(g)

    @given(random_graphs())
    def test_adding_any_nonedge_closes_triangle(self, g):
        if not is_maximal_triangle_free(g):
            return
        for u, v in combinations(range(g.n), 2):
            if not g.has_edge(u, v):
                assert count_triangles(g.with_edge(u, v)) >= 1


class TestCliques:
    def test_examples(self):
        assert has_clique(Graph.complete(4), 4)
        assert not has_clique(Graph.cycle(5), 3)
        assert not has_clique(Graph.complete_bipartite(3, 3), 3)

    def test_k_one(self):
        assert has_clique(Graph.empty(1), 1)
        with pytest.raises(ValueError):
            has_clique(Graph.empty(1), 0)

    @given(random_graphs(max_n=6))
    def test_matches_naive(self, g):
        omega = naive_max_clique(g)
        for k in range(1, g.n + 1):
            assert has_clique(g, k) == (k <= omega)

    @given(random_graphs())
    def test_triangle_equivalence(self, g):
        assert has_clique(g, 3) == (not is_triangle_free(g))


class TestGreedyRemoval:
    def test_triangle_free_input(self):
        assert len(greedy_triangle_removal(Graph.cycle(5))) == 0

    def test_k3(self):
        assert len(greedy_triangle_removal(Graph.complete(3))) == 1

    def test_k4_optimal(self):
        f = greedy_triangle_removal(Graph.complete(4))
        assert len(f) == 2
        remainder = Graph.complete(4).without_edges(f.pairs())
        assert is_triangle_free(remainder)
        assert sorted(remainder.degree(u) for u in range(4)) == [2, 2, 2, 2]  # a C4
        # brute force: no single edge removal suffices for K4
        for e in Graph.complete(4).edges():
            assert not is_triangle_free(Graph.complete(4).without_edges([e]))

    def test_deterministic_tie_break(self):
        assert greedy_triangle_removal(Graph.complete(4)).pairs() == [(0, 1), (2, 3)]

    @given(random_graphs())
    def test_result_contract(self, g):
        f = greedy_triangle_removal(g)
        assert is_triangle_free(g.without_edges(f.pairs()))
        assert len(f) <= count_triangles(g)


class TestMinTriangles:
    def test_examples(self):
        assert min_triangles_at_density(3, 3) == 1
        assert min_triangles_at_density(4, 4) == 0
        # frozen from the naive scan over all C(10,7) edge choices
        assert min_triangles_at_density(5, 7) == 2

    def test_against_naive_n5(self):
        for m in range(11):
            assert min_triangles_at_density(5, m) == naive_min_triangles(5, m, Graph)

    def test_mantel_small(self):
        for n in range(1, 6):
            for m in range(n * (n - 1) // 2 + 1):
                assert (min_triangles_at_density(n, m) == 0) == (m <= n * n // 4)

    def test_guards(self):
        with pytest.raises(GuardError):
            min_triangles_at_density(8, 3)
        with pytest.raises(ValueError):
            min_triangles_at_density(5, 11)
