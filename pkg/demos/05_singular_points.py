"""
Why some solver points need a looser match
==========================================

Where two solution families meet, the residual grows like the cube of the
distance to the solution set instead of linearly. A converged point with
residual r ~ 1e-16 may therefore still sit 1e-5 away from the nearest
family member. The classifier tries a strict match first and, if that fails,
retries at a radius proportional to r^(1/3); such matches are tagged
``fit="singular"`` and the identity checks run on the exact family member.

This script counts how often that happens on the order-3 null-like table
where the effect is strongest.
"""

from collections import Counter

import numpy as np

from twistlab.families import singular_radius
from twistlab.oracle import find_all_solutions
from twistlab.semigroup import identity, validate_table

s = validate_table([[2, 1, 1], [1, 1, 1], [1, 1, 1]], label="nil3")
rep = find_all_solutions("cos-sub", s, identity(3))
fits = Counter((sol.case, sol.classification.fit) for sol in rep.solutions if sol.case)
print("case/fit counts:", dict(sorted(fits.items())))

sing = [sol for sol in rep.solutions if sol.projection is not None]
if sing:
    dist = [max(np.max(np.abs(sol.f - sol.projection[0])), np.max(np.abs(sol.g - sol.projection[1])))
            for sol in sing]
    radii = [singular_radius(sol.residual) for sol in sing]
    print(f"{len(sing)} points checked through their projection")
    print(f"  distance to family: median {np.median(dist):.1e}, max {max(dist):.1e}")
    print(f"  retry radius:       median {np.median(radii):.1e}, max {max(radii):.1e}")
    print(f"  residuals:          max {max(sol.residual for sol in sing):.1e}")
