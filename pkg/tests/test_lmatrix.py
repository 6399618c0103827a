from itertools import combinations

import numpy as np
import pytest
from bruteforce import naive_support
from conftest import random_raw_db

from distmine import LMatrix, ScanCounter, TransactionDb, load_fimi


def build(db):
    counter = ScanCounter()
    return LMatrix.from_db(db, counter), counter


class TestBuild:
    def test_market_matrix_display(self, market_db_zero_indexed):
        m, counter = build(market_db_zero_indexed)
        assert m.dump_rows() == ["11100", "11011", "10101"]
        assert counter.raw_scans == 1

    def test_empty_db(self):
        m, _ = build(TransactionDb(transactions=(), universe=5))
        assert m.n_rows == 0
        assert m.support_batch([(i,) for i in range(5)]) == [0] * 5

    def test_single_bit(self):
        m, _ = build(TransactionDb(transactions=((0,),), universe=1))
        assert m.support((0,)) == 1
        assert m.dump_rows() == ["1"]

    @pytest.mark.parametrize("n_rows", [63, 64, 65, 128])
    def test_word_boundaries(self, n_rows):
        # every transaction holds item 0; odd rows also hold item 1
        txns = tuple((0,) if r % 2 == 0 else (0, 1) for r in range(n_rows))
        m, _ = build(TransactionDb(transactions=txns, universe=2))
        assert m.support((0,)) == n_rows
        assert m.support((1,)) == n_rows // 2
        assert m.support((0, 1)) == n_rows // 2


class TestSupport:
    def test_market_values(self, market_db_zero_indexed):
        m, _ = build(market_db_zero_indexed)
        A, B, C, D, E = range(5)
        assert m.support((A,)) == 3
        assert m.support((A, C)) == 2
        assert m.support((C, E)) == 1
        assert m.support((A, B, C, D, E)) == 0

    def test_batch_matches_market_singletons(self, market_db_zero_indexed):
        m, _ = build(market_db_zero_indexed)
        assert m.support_batch([(i,) for i in range(5)]) == [3, 2, 2, 1, 2]

    def test_batch_pairs(self, market_db_zero_indexed):
        m, _ = build(market_db_zero_indexed)
        assert m.support_batch([(0, 1), (0, 2), (0, 4)]) == [2, 2, 2]

    def test_batch_empty(self, market_db_zero_indexed):
        m, _ = build(market_db_zero_indexed)
        assert m.support_batch([]) == []

    def test_rejects_empty_itemset(self, market_db_zero_indexed):
        m, _ = build(market_db_zero_indexed)
        with pytest.raises(ValueError, match="empty"):
            m.support(())

    def test_rejects_out_of_range(self, market_db_zero_indexed):
        m, _ = build(market_db_zero_indexed)
        with pytest.raises(ValueError, match="universe"):
            m.support((0, 5))

    def test_batch_error_names_index(self, market_db_zero_indexed):
        m, _ = build(market_db_zero_indexed)
        with pytest.raises(ValueError, match="index 1"):
            m.support_batch([(0,), (9,)])

    def test_queries_leave_scan_counter_alone(self, market_db_zero_indexed):
        m, counter = build(market_db_zero_indexed)
        m.support_batch([(0,), (0, 2), (1, 2, 3)])
        assert counter.raw_scans == 1


class TestOracleEquivalence:
    def test_matches_naive_counts(self):
        rng = np.random.default_rng(2024)
        for _ in range(8):
            db = random_raw_db(rng, max_txns=64, max_items=12)
            m, _ = build(db)
            for k in range(1, 5):
                if k > db.universe:
                    break
                for x in combinations(range(db.universe), k):
                    assert m.support(x) == naive_support(db.transactions, x)

    def test_anti_monotonicity(self):
        rng = np.random.default_rng(7)
        db = random_raw_db(rng, max_txns=64, max_items=10)
        m, _ = build(db)
        for x in combinations(range(db.universe), min(3, db.universe)):
            sup_x = m.support(x)
            for y in combinations(x, len(x) - 1):
                if y:
                    assert m.support(y) >= sup_x
