"""Named small semigroups used throughout the tests, demos and CLI goldens."""

from __future__ import annotations

import numpy as np

from .semigroup import Automorphism, FiniteSemigroup, identity, make_automorphism, validate_table


def cyclic_group(n: int) -> FiniteSemigroup:
    a = np.arange(n)
    return validate_table((a[:, None] + a[None, :]) % n, label=f"Z{n}")


def null_semigroup(n: int) -> FiniteSemigroup:
    """Every product equals element 0."""
    return validate_table(np.zeros((n, n), dtype=int), label=f"N{n}")


def right_zero(n: int) -> FiniteSemigroup:
    """``xy = y``."""
    return validate_table(np.tile(np.arange(n), (n, 1)), label=f"RZ{n}")


def left_zero(n: int) -> FiniteSemigroup:
    return validate_table(np.tile(np.arange(n)[:, None], (1, n)), label=f"LZ{n}")


def truncated_addition(n: int) -> FiniteSemigroup:
    """``{0..n-1}`` with ``x∘y = min(x+y, n-1)``."""
    a = np.arange(n)
    return validate_table(np.minimum(a[:, None] + a[None, :], n - 1), label=f"T{n}")


def level_semigroup() -> FiniteSemigroup:
    """S4 = {0, 1, 1', 2}: 0 is the identity, any product of two level-one
    elements is 2, and 2 is absorbing. Indices: 0, 1, 1' -> 2, 2 -> 3."""
    level = np.array([0, 1, 1, 2])
    n = 4
    t = np.zeros((n, n), dtype=int)
    for x in range(n):
        for y in range(n):
            if level[x] == 0:
                t[x, y] = y
            elif level[y] == 0:
                t[x, y] = x
            else:
                t[x, y] = 3
    return validate_table(t, label="S4")


Z2 = cyclic_group(2)
N2 = null_semigroup(2)
RZ3 = right_zero(3)
T3 = truncated_addition(3)
S4 = level_semigroup()
Z15 = cyclic_group(15)

RZ3_CYCLE = make_automorphism(RZ3, [1, 2, 0])
S4_SWAP = make_automorphism(S4, [0, 2, 1, 3])
Z15_DOUBLE = make_automorphism(Z15, (2 * np.arange(15)) % 15)


def fixture_set() -> list[tuple[FiniteSemigroup, Automorphism]]:
    """The standard (S, σ) pairs for forward verification."""
    return [
        (Z2, identity(2)),
        (N2, identity(2)),
        (RZ3, RZ3_CYCLE),
        (T3, identity(3)),
        (S4, S4_SWAP),
        (Z15, Z15_DOUBLE),
    ]


def by_name(name: str) -> FiniteSemigroup:
    table = {"Z2": Z2, "N2": N2, "RZ3": RZ3, "T3": T3, "S4": S4, "Z15": Z15}
    return table[name]


def cyclic_character(n: int, j: int) -> np.ndarray:
    """``x -> exp(2πi j x / n)`` on the cyclic group of order n."""
    x = np.arange(n)
    return np.exp(2j * np.pi * j * x / n)
