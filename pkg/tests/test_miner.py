from fractions import Fraction

import pytest
from bruteforce import enumerate_frequent, naive_support, oracle_threshold
from conftest import MARKET_FREQUENT, corpus_db

from distmine import (
    apriori_gen,
    load_fimi,
    parse_minsup,
    sequential_apriori,
    threshold,
)
from distmine.dataset import TransactionDb


class TestParseMinsup:
    def test_fraction_string(self):
        assert parse_minsup("2/3") == Fraction(2, 3)

    def test_decimal_string(self):
        assert parse_minsup("0.4") == Fraction(2, 5)

    def test_float_reads_as_decimal(self):
        assert parse_minsup(0.2) == Fraction(1, 5)

    def test_one(self):
        assert parse_minsup(1) == Fraction(1)

    @pytest.mark.parametrize("bad", ["0", "1.5", "-1/2", "abc", 0.0, 2])
    def test_out_of_range_or_malformed(self, bad):
        with pytest.raises(ValueError):
            parse_minsup(bad)

    def test_rejects_bool(self):
        with pytest.raises(TypeError):
            parse_minsup(True)


class TestThreshold:
    @pytest.mark.parametrize(
        "minsup,size,expected",
        [
            (Fraction(2, 3), 3, 2),
            (0.5, 4, 2),
            (0.5, 5, 3),
            ("0.2", 5, 1),
            ("2/3", 2, 2),
            ("2/3", 1, 1),
            (1, 7, 7),
            ("0.1", 0, 0),
        ],
    )
    def test_values(self, minsup, size, expected):
        assert threshold(minsup, size) == expected

    def test_matches_oracle_on_grid(self):
        for num in range(1, 8):
            for den in range(num, 9):
                for size in range(0, 50):
                    s = Fraction(num, den)
                    assert threshold(s, size) == oracle_threshold(s, size)


class TestAprioriGen:
    def test_singletons_join_to_all_pairs(self):
        singles = [(1,), (2,), (3,), (5,)]
        assert apriori_gen(singles) == [
            (1, 2), (1, 3), (1, 5), (2, 3), (2, 5), (3, 5),
        ]

    def test_prune_removes_unsupported_joins(self):
        # joins give (1,2,3), (1,2,5), (1,3,5); each is missing a 2-subset
        assert apriori_gen([(1, 2), (1, 3), (1, 5)]) == []

    def test_empty(self):
        assert apriori_gen([]) == []

    def test_mixed_lengths_rejected(self):
        with pytest.raises(ValueError, match="one length"):
            apriori_gen([(1,), (2, 3)])

    def test_duplicates_collapse(self):
        assert apriori_gen([(1,), (2,), (1,)]) == [(1, 2)]

    def test_complete_against_bruteforce(self):
        # every truly frequent (k+1)-itemset must come out of the join over
        # the true frequent k-itemsets
        for seed in range(6):
            db = corpus_db(seed)
            frequent = enumerate_frequent(db, "0.3")
            by_len = {}
            for x in frequent:
                by_len.setdefault(len(x), set()).add(x)
            for k in sorted(by_len):
                if k + 1 in by_len:
                    generated = set(apriori_gen(sorted(by_len[k])))
                    assert by_len[k + 1] <= generated


class TestSequentialApriori:
    def test_market_singletons(self, market_db):
        result = sequential_apriori(market_db, "2/3")
        singles = {x for x in result.frequent if len(x) == 1}
        assert singles == {(1,), (2,), (3,), (5,)}

    def test_market_full_result(self, market_db):
        result = sequential_apriori(market_db, "2/3")
        assert result.frequent == MARKET_FREQUENT
        assert result.threshold == 2

    def test_market_minsup_one(self, market_db):
        result = sequential_apriori(market_db, 1)
        assert result.frequent == {(1,): 3}

    def test_above_max_item_frequency_is_empty(self):
        db = load_fimi("0 1\n0\n2\n")
        # max single-item frequency is 2/3; anything above yields nothing
        assert sequential_apriori(db, "0.7").frequent == {}

    def test_empty_db_yields_empty_result(self):
        db = TransactionDb(transactions=(), universe=4)
        result = sequential_apriori(db, "0.5")
        assert result.frequent == {}
        assert result.db_size == 0

    def test_bad_minsup(self, market_db):
        with pytest.raises(ValueError):
            sequential_apriori(market_db, "0")

    def test_matches_exhaustive_enumeration(self):
        for seed in range(12):
            db = corpus_db(seed)
            for minsup in ("0.2", "0.4", "0.6"):
                result = sequential_apriori(db, minsup)
                assert result.frequent == enumerate_frequent(db, minsup), (
                    f"seed={seed} minsup={minsup}"
                )

    def test_deterministic_ordering(self, market_db):
        a = sequential_apriori(market_db, "2/3")
        b = sequential_apriori(market_db, "2/3")
        assert list(a.frequent.items()) == list(b.frequent.items())
        assert a.sorted_items() == b.sorted_items()

    def test_downward_closure(self):
        db = corpus_db(2)
        result = sequential_apriori(db, "0.25")
        for x in result.frequent:
            for drop in range(len(x)):
                sub = x[:drop] + x[drop + 1 :]
                if sub:
                    assert sub in result.frequent

    def test_level_accessor(self, market_db):
        result = sequential_apriori(market_db, "2/3")
        assert set(result.level(2)) == {(1, 2), (1, 3), (1, 5)}

    def test_counts_are_true_supports(self):
        db = corpus_db(4)
        result = sequential_apriori(db, "0.3")
        for x, count in result.frequent.items():
            assert count == naive_support(db.transactions, x)
