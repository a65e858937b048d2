"""
Variants agree, and nothing falls outside the lists
====================================================

Two checks over every labeled semigroup of order 2:

* each equation and its left-twisted variant have the same solutions;
* every converged solver point lands in one of the listed cases.

Order 3 works the same way but takes about three minutes; pass ``3`` on the
command line to include it.
"""

import sys
import time
from collections import Counter

from twistlab.equations import SIGMA_EQUATIONS
from twistlab.oracle import EQUIVALENT_PAIRS, SolverConfig, equivalence_breaches, sweep

max_order = int(sys.argv[1]) if len(sys.argv) > 1 else 2
cfg = SolverConfig()

t0 = time.perf_counter()
cases, runs, unclassified, breaches, singular = Counter(), 0, 0, 0, 0
by_key = {}
for order in range(2, max_order + 1):
    for rep in sweep(order, SIGMA_EQUATIONS, cfg):
        runs += 1
        unclassified += len(rep.unclassified)
        singular += sum(s.projection is not None for s in rep.solutions)
        for s in rep.solutions:
            cases[s.case or "unclassified"] += s.multiplicity
        by_key.setdefault((rep.semigroup.table.tobytes(), rep.sigma.perm.tobytes()), {})[rep.equation] = rep

for group in by_key.values():
    for a, b in EQUIVALENT_PAIRS.values():
        breaches += len(equivalence_breaches(group[a], b)) + len(equivalence_breaches(group[b], a))

print(f"{runs} runs in {time.perf_counter() - t0:.1f}s")
print(f"unclassified points: {unclassified}")
print(f"variant breaches:    {breaches}")
print(f"points checked via their family projection: {singular}")
print("case histogram:")
for case, k in sorted(cases.items()):
    print(f"  {case:8s} {k}")
