"""Level-wise frequent-itemset machinery: thresholds, candidate generation,
and a sequential miner used as the correctness reference for the
distributed algorithms."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dataset import Itemset, TransactionDb
from .lmatrix import LMatrix, ScanCounter


def itemset_key(x: Itemset) -> tuple[int, Itemset]:
    """Canonical ordering key: length first, then lexicographic."""
    return (len(x), x)


def parse_minsup(value) -> Fraction:
    """Convert a minimum-support spec to an exact Fraction in (0, 1].

    Accepts Fraction, int, str ("2/3" or "0.4"), or float. Floats are read
    through their shortest decimal repr, so 0.2 means exactly 1/5 rather
    than the nearest binary float.
    """
    if isinstance(value, Fraction):
        s = value
    elif isinstance(value, bool):
        raise TypeError("minsup must be a number or string, not bool")
    elif isinstance(value, int):
        s = Fraction(value)
    elif isinstance(value, float):
        s = Fraction(str(value))
    elif isinstance(value, str):
        try:
            s = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"cannot parse minsup {value!r}") from None
    else:
        raise TypeError(f"cannot parse minsup of type {type(value).__name__}")
    if not 0 < s <= 1:
        raise ValueError(f"minsup must be in (0, 1], got {s}")
    return s


def threshold(minsup, size: int) -> int:
    """Minimum support count for a database of ``size`` transactions.

    Exact integer ceiling of minsup * size; an itemset is frequent iff its
    count is >= the returned value. No floating point touches the boundary.
    """
    s = parse_minsup(minsup)
    return -(-(s.numerator * size) // s.denominator)


def apriori_gen(prev_frequent) -> list[Itemset]:
    """Generate (k+1)-candidates from the frequent k-itemsets.

    Join step merges pairs agreeing on their first k-1 items; the prune
    step drops any candidate with a k-subset missing from ``prev_frequent``.
    The result is duplicate-free and lexicographically sorted. Raises
    ValueError if the input mixes itemset lengths.
    """
    prev = sorted(set(prev_frequent))
    if not prev:
        return []
    k = len(prev[0])
    if k < 1 or len(prev[-1]) != k or any(len(x) != k for x in prev):
        raise ValueError("apriori_gen input must be non-empty itemsets of one length")
    prev_set = set(prev)
    out: list[Itemset] = []
    for i, a in enumerate(prev):
        for b in prev[i + 1 :]:
            if a[:-1] != b[:-1]:
                break
            cand = a + (b[-1],)
            # Dropping either of the two joined positions gives a or b, which
            # are present by construction; check the remaining k-1 subsets.
            if all(cand[:j] + cand[j + 1 :] in prev_set for j in range(k - 1)):
                out.append(cand)
    return out


@dataclass(frozen=True)
class MiningResult:
    """Frequent itemsets with their global support counts."""

    minsup: Fraction
    db_size: int
    frequent: dict[Itemset, int]

    @property
    def threshold(self) -> int:
        return threshold(self.minsup, self.db_size)

    def sorted_items(self) -> list[tuple[Itemset, int]]:
        """Entries ordered by (length, lexicographic) for stable serialization."""
        return sorted(self.frequent.items(), key=lambda e: itemset_key(e[0]))

    def level(self, k: int) -> dict[Itemset, int]:
        """The frequent k-itemsets."""
        return {x: n for x, n in self.frequent.items() if len(x) == k}


def sequential_apriori(db: TransactionDb, minsup) -> MiningResult:
    """Exact single-site Apriori over a bit matrix.

    Counts candidates level by level on an LMatrix built in one scan. An
    empty database yields an empty result (its threshold of zero would
    otherwise make every itemset vacuously frequent).
    """
    s = parse_minsup(minsup)
    frequent: dict[Itemset, int] = {}
    if db.size > 0:
        thr = threshold(s, db.size)
        matrix = LMatrix.from_db(db, ScanCounter())
        candidates: list[Itemset] = [(i,) for i in range(db.universe)]
        while candidates:
            counts = matrix.support_batch(candidates)
            level = {x: n for x, n in zip(candidates, counts) if n >= thr}
            frequent.update(level)
            candidates = apriori_gen(level) if level else []
    return MiningResult(minsup=s, db_size=db.size, frequent=frequent)
