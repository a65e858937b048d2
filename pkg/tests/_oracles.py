"""Slow, obviously-correct reference implementations used by the tests.

Nothing here imports the package's numerics: every oracle works from the
raw Cayley table with plain loops so that agreement is meaningful.
"""

from __future__ import annotations

import cmath
import itertools

import numpy as np

# (lhs function, placement, coefficients of ff, fg, gf, gg)
SHAPES = {
    "cos-sub": ("g", "right", 1, 0, 0, 1),
    "sine-add": ("f", "right", 0, 1, 1, 0),
    "sine-sub": ("f", "right", 0, 1, -1, 0),
    "cos-sub-var": ("g", "left", 1, 0, 0, 1),
    "sine-add-var": ("f", "left", 0, 1, 1, 0),
    "cos-add-plain": ("g", "plain", -1, 0, 0, 1),
    "sine-add-plain": ("f", "plain", 0, 1, 1, 0),
}


def naive_residual(eq: str, table, perm, f, g) -> float:
    """max |LHS - RHS| over all pairs, straight from the equation text."""
    lhs, where, ff, fg, gf, gg = SHAPES[eq]
    n = len(table)
    worst = 0.0
    for x in range(n):
        for y in range(n):
            sy = perm[y]
            arg = {"right": table[x][sy], "left": table[sy][x], "plain": table[x][y]}[where]
            left = (f if lhs == "f" else g)[arg]
            right = ff * f[x] * f[y] + fg * f[x] * g[y] + gf * g[x] * f[y] + gg * g[x] * g[y]
            worst = max(worst, abs(left - right))
    return worst


def naive_associative(table) -> bool:
    n = len(table)
    return all(table[table[x][y]][z] == table[x][table[y][z]]
               for x in range(n) for y in range(n) for z in range(n))


def naive_semigroups(n: int) -> list[tuple]:
    """Every labeled table on {0..n-1}, filtered by the full triple check."""
    out = []
    for flat in itertools.product(range(n), repeat=n * n):
        table = [flat[i * n:(i + 1) * n] for i in range(n)]
        if naive_associative(table):
            out.append(tuple(flat))
    return out


def naive_automorphisms(table) -> list[tuple]:
    n = len(table)
    return [p for p in itertools.permutations(range(n))
            if all(p[table[x][y]] == table[p[x]][p[y]] for x in range(n) for y in range(n))]


GRID = [0j] + [cmath.exp(2j * cmath.pi * k / 12) for k in range(12)]


def grid_characters(table, include_zero: bool = False) -> list[tuple]:
    """Multiplicative functions found by trying every value in {0} ∪ μ₁₂.

    On semigroups of order ≤ 3 every period divides 1, 2 or 3, so every
    multiplicative value lies in this grid.
    """
    n = len(table)
    out = []
    for vals in itertools.product(GRID, repeat=n):
        if not include_zero and all(v == 0 for v in vals):
            continue
        if all(abs(vals[table[x][y]] - vals[x] * vals[y]) < 1e-9 for x in range(n) for y in range(n)):
            out.append(vals)
    return out


def special_sine_rows(table, chi) -> np.ndarray:
    """Coefficient matrix of φ(xy) - φ(x)χ(y) - φ(y)χ(x) = 0, row per pair."""
    n = len(table)
    rows = []
    for x in range(n):
        for y in range(n):
            r = np.zeros(n, dtype=complex)
            r[table[x][y]] += 1
            r[x] -= chi[y]
            r[y] -= chi[x]
            rows.append(r)
    return np.array(rows)


def same_vector_sets(a, b, tol: float = 1e-9) -> bool:
    a = [np.asarray(v, dtype=complex) for v in a]
    b = [np.asarray(v, dtype=complex) for v in b]
    if len(a) != len(b):
        return False
    left = list(b)
    for v in a:
        hit = next((k for k, w in enumerate(left) if np.max(np.abs(v - w)) < tol), None)
        if hit is None:
            return False
        left.pop(hit)
    return True


def central_fd_jacobian(fun, z: np.ndarray, h: float = 1e-6) -> np.ndarray:
    """Complex derivative by central differences along the real axis."""
    r0 = fun(z)
    jac = np.zeros((len(r0), len(z)), dtype=complex)
    for k in range(len(z)):
        e = np.zeros_like(z)
        e[k] = h
        jac[:, k] = (fun(z + e) - fun(z - e)) / (2 * h)
    return jac
