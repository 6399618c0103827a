#!/usr/bin/env python3
# Build a bit matrix from a tiny supermarket database and answer support
# queries by column intersection instead of rescanning transactions.

from distmine import LMatrix, ScanCounter, load_fimi

# Five items: 0=coffee, 1=tea, 2=milk, 3=bread, 4=butter.
# Three baskets: {coffee,tea,milk}, {coffee,tea,bread,butter}, {coffee,milk,butter}.
db = load_fimi("""
0 1 2
0 1 3 4
0 2 4
""")
print(f"{db.size} transactions over {db.universe} items")

counter = ScanCounter()
matrix = LMatrix.from_db(db, counter)

# One row per transaction, one column per item:
for row in matrix.dump_rows():
    print(" ", row)
print(f"raw scans so far: {counter.raw_scans}")

# Support of a single item is the popcount of its column.
print("support(coffee)       =", matrix.support((0,)))

# Support of an itemset is the popcount of the AND of its columns.
print("support(coffee, milk) =", matrix.support((0, 2)))

# Batched queries amortize per-call overhead; the raw transactions are
# never touched again.
singles = [(i,) for i in range(db.universe)]
print("all single supports   =", matrix.support_batch(singles))
print(f"raw scans after queries: {counter.raw_scans}")
