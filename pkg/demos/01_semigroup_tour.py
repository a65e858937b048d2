"""
A tour of the fixture semigroups
================================

Six small semigroups carry most of the checks in this package. This script
prints what the solvers later rely on: the square set S², the automorphisms,
the multiplicative functions and the special sine spaces.

Run with ``python demos/01_semigroup_tour.py``.
"""

import numpy as np

from twistlab.fixtures import fixture_set
from twistlab.funcspace import enumerate_multiplicative, index_period, solve_special_sine, twist_invariant
from twistlab.semigroup import enumerate_automorphisms, enumerate_semigroups, square_set


def fmt(v):
    return "(" + ", ".join(f"{complex(z).real:+.3g}{complex(z).imag:+.3g}i" if abs(complex(z).imag) > 1e-12
                           else f"{complex(z).real:+.3g}" for z in v) + ")"


# %%
# Counting tables. Labeled semigroups grow quickly with the order.
for n in (1, 2, 3):
    print(f"order {n}: {sum(1 for _ in enumerate_semigroups(n))} labeled tables")

# %%
# The fixtures, each with the twist used in the checks.
for s, sigma in fixture_set():
    print()
    print(f"{s.label}  (order {s.order}, twist {sigma.literal()}, twist order {sigma.order})")
    print("  S² =", np.flatnonzero(square_set(s)).tolist())
    ip = index_period(s)
    print("  index/period =", list(zip(ip.index.tolist(), ip.period.tolist())))
    print("  automorphisms:", len(enumerate_automorphisms(s)))
    chars = enumerate_multiplicative(s)
    fixed = [c for c in chars if twist_invariant(c.values, sigma)]
    print(f"  multiplicative functions: {len(chars)}, fixed by the twist: {len(fixed)}")
    if s.order <= 4:
        for c in chars:
            dim = len(solve_special_sine(s, c.values))
            print(f"    chi = {fmt(c.values)}  special sine dimension {dim}")
