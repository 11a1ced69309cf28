from fractions import Fraction

import pytest

from maxtrifree import (
    CountRow,
    CountTable,
    GuardError,
    brute_force_maximal_tf,
    enumerate_maximal_tf,
    growth_table,
    is_maximal_triangle_free,
    maximal_tf_family,
    read_graph6_file,
    remark3_census,
    remark3_fraction,
)
from maxtrifree.graph import lex_pairs
from oracles import naive_is_maximal_tf

# labeled maximal triangle-free counts, frozen from the n<=6 brute-force scan
# (n=5: the 5 stars, 10 copies of K_{2,3}, 12 copies of C5)
ORACLE_COUNTS = {1: 1, 2: 1, 3: 3, 4: 7, 5: 27, 6: 211}


class TestBruteForce:
    def test_counts(self):
        for n, expected in ORACLE_COUNTS.items():
            assert len(brute_force_maximal_tf(n)) == expected

    def test_n4_members(self):
        family = brute_force_maximal_tf(4)
        degrees = sorted(tuple(sorted(g.degree(u) for u in range(4))) for g in family)
        # 4 stars and 3 four-cycles
        assert degrees.count((1, 1, 1, 3)) == 4
        assert degrees.count((2, 2, 2, 2)) == 3

    def test_matches_naive_predicate(self):
        for g in brute_force_maximal_tf(4):
            assert naive_is_maximal_tf(g)

    def test_canonical_order(self):
        masks = [g.edge_mask() for g in brute_force_maximal_tf(5)]
        assert masks == sorted(masks)

    def test_guard(self):
        with pytest.raises(GuardError):
            brute_force_maximal_tf(7)


class TestEnumerate:
    def test_oracle_equivalence(self):
        for n, expected in ORACLE_COUNTS.items():
            assert enumerate_maximal_tf(n).labeled_count == expected
            assert enumerate_maximal_tf(n, forward_prune=False).labeled_count == expected

    def test_n1(self):
        assert enumerate_maximal_tf(1).labeled_count == 1

    def test_shard_invariance(self):
        for shards in (2, 8):
            assert enumerate_maximal_tf(7, shards=shards).labeled_count == \
                enumerate_maximal_tf(7).labeled_count

    def test_order_invariance(self):
        base = enumerate_maximal_tf(5).labeled_count
        perms = [[4, 3, 2, 1, 0], [2, 0, 4, 1, 3], [1, 4, 0, 3, 2]]
        for perm in perms:
            order = [tuple(sorted((perm[u], perm[v]))) for u, v in lex_pairs(5)]
            assert enumerate_maximal_tf(5, pair_order=order).labeled_count == base

    def test_streaming(self, tmp_path):
        path = tmp_path / "n5.g6"
        row = enumerate_maximal_tf(5, stream_path=path)
        graphs = read_graph6_file(path)
        assert len(graphs) == row.labeled_count == 27
        assert all(is_maximal_triangle_free(g) for g in graphs)
        masks = [g.edge_mask() for g in graphs]
        assert masks == sorted(masks)
        assert [g.edge_mask() for g in brute_force_maximal_tf(5)] == masks

    def test_family_matches_brute_force(self):
        for n in (3, 4, 5):
            assert maximal_tf_family(n) == brute_force_maximal_tf(n)

    def test_guard(self):
        with pytest.raises(GuardError):
            enumerate_maximal_tf(10)


class TestGrowthTable:
    def test_rows(self):
        table = growth_table(5)
        assert [r.labeled_count for r in table.rows] == [1, 1, 3, 7, 27]
        assert table.rows[1].log2_count_over_n2 == 0.0
        assert table.rows[2].log2_count_over_n2 == pytest.approx(0.176107, abs=1e-6)
        assert table.rows[3].log2_count_over_n2 == pytest.approx(0.175460, abs=1e-6)

    def test_text_render(self):
        text = growth_table(4).to_text()
        assert "log2/n^2" in text and len(text.splitlines()) == 5

    def test_no_gaps_validation(self):
        row = CountRow(2, 1, 0.0, 0)
        with pytest.raises(ValueError):
            CountTable((row,))


class TestRemark3:
    def test_examples(self):
        assert remark3_fraction(2) == Fraction(1, 1)
        assert remark3_fraction(4) == Fraction(4, 7)
        # frozen: only the 5 stars admit the partition at n=5
        assert remark3_fraction(5) == Fraction(5, 27)

    def test_census_counts(self):
        assert remark3_census(4) == (4, 7)
        assert remark3_census(6) == (6, 211)

    def test_guard(self):
        with pytest.raises(GuardError):
            remark3_fraction(8)
