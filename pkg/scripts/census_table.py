"""Secret-space sizes under each restriction, n = 1..6, with the recurrence check."""
from graphshare.analysis import census, connected_count_recurrence
from graphshare.graph import PREDICATE_KINDS, Predicate

kinds = [k for k in PREDICATE_KINDS if k != "proper_coloring"]
print(f"{'n':>2} {'total':>7} " + " ".join(f"{k:>10}" for k in kinds) + "  recurrence")
for n in range(1, 7):
    rows = [census(n, Predicate(k)) for k in kinds]
    print(f"{n:>2} {rows[0].total:>7} " + " ".join(f"{r.valid:>10}" for r in rows)
          + f"  {connected_count_recurrence(n):>10}")
