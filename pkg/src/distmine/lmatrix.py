"""Compressed transaction-by-item bit matrix for support counting.

The matrix is built from a database in a single scan; afterwards every
support query is answered by intersecting item columns and popcounting,
never by re-reading raw transactions.
"""

from __future__ import annotations

import threading

import numpy as np

from .dataset import Itemset, TransactionDb


class ScanCounter:
    """Counts full passes over raw transaction lists.

    Monotonically non-decreasing; increments are lock-protected so the
    counter can be shared across threads.
    """

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self.raw_scans = 0

    def record_scan(self) -> None:
        with self._lock:
            self.raw_scans += 1


class LMatrix:
    """One bit per (transaction, item), stored column-major.

    Each item owns a contiguous vector of 64-bit words (its metavector);
    bit r of column c is set iff transaction r contains item c. Support of
    an itemset is the popcount of the AND of its columns. Instances are
    immutable after construction and safe for concurrent readers.
    """

    def __init__(self, n_rows: int, n_cols: int, words: np.ndarray) -> None:
        self.n_rows = n_rows
        self.n_cols = n_cols
        self._words = words

    @classmethod
    def from_db(cls, db: TransactionDb, counter: ScanCounter) -> "LMatrix":
        """Build the matrix in one scan of ``db``; increments ``counter`` once."""
        n_rows, n_cols = db.size, db.universe
        n_words = (n_rows + 63) >> 6
        words = np.zeros((n_cols, n_words), dtype=np.uint64)
        total = sum(len(t) for t in db.transactions)
        if total:
            lengths = np.fromiter(
                (len(t) for t in db.transactions), dtype=np.int64, count=n_rows
            )
            rows = np.repeat(np.arange(n_rows, dtype=np.uint64), lengths)
            items = np.fromiter(
                (i for t in db.transactions for i in t), dtype=np.int64, count=total
            )
            bits = np.uint64(1) << (rows & np.uint64(63))
            np.bitwise_or.at(words, (items, (rows >> np.uint64(6)).astype(np.int64)), bits)
        counter.record_scan()
        return cls(n_rows, n_cols, words)

    def _column(self, item: int) -> np.ndarray:
        if not 0 <= item < self.n_cols:
            raise ValueError(f"item {item} outside universe of {self.n_cols} items")
        return self._words[item]

    def support(self, itemset: Itemset) -> int:
        """Number of transactions containing every item of ``itemset``.

        Columns are intersected in the given (ascending) order with an early
        exit once the running vector is all zero. Rejects empty itemsets and
        out-of-range items.
        """
        if not itemset:
            raise ValueError("support of the empty itemset is not queryable")
        if len(itemset) == 1:
            return int(np.bitwise_count(self._column(itemset[0])).sum())
        acc = self._column(itemset[0]).copy()
        for item in itemset[1:]:
            acc &= self._column(item)
            if not acc.any():
                return 0
        return int(np.bitwise_count(acc).sum())

    def support_batch(self, itemsets: list[Itemset]) -> list[int]:
        """Map support() over ``itemsets``; errors name the offending index."""
        out = []
        for i, x in enumerate(itemsets):
            try:
                out.append(self.support(x))
            except ValueError as err:
                raise ValueError(f"itemset at index {i}: {err}") from None
        return out

    def dump_rows(self) -> list[str]:
        """Debug view: one '0'/'1' string per transaction (row-major display)."""
        rows = []
        for r in range(self.n_rows):
            word, bit = r >> 6, np.uint64(r & 63)
            rows.append(
                "".join(
                    "1" if (self._words[c, word] >> bit) & np.uint64(1) else "0"
                    for c in range(self.n_cols)
                )
            )
        return rows
