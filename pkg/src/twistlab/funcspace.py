"""Complex-valued functions on a finite semigroup.

A function ``S -> C`` is a complex numpy vector of length ``n`` indexed by
element. This module holds the twist ``f -> f∘σ``, the enumeration of all
multiplicative functions, the solution space of the special sine law
``φ(xy) = φ(x)χ(y) + φ(y)χ(x)`` and the linear-dependence test used by the
classifier.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .linalg import nullspace
from .semigroup import Automorphism, FiniteSemigroup, automorphism_power

MULT_TOL = 1e-9
DEP_TOL = 1e-8


def cfunc(values) -> np.ndarray:
    return np.asarray(values, dtype=np.complex128)


def compose_sigma(f, sigma: Automorphism) -> np.ndarray:
    """``f* = f∘σ``."""
    f = cfunc(f)
    if len(f) != len(sigma.perm):
        raise ValueError("function and automorphism act on different orders")
    return f[sigma.perm]


def max_dev(a, b) -> float:
    return float(np.max(np.abs(cfunc(a) - cfunc(b)), initial=0.0))


def sup(f) -> float:
    return float(np.max(np.abs(f), initial=0.0))


def vanishes_on(f, mask: np.ndarray, tol: float) -> bool:
    return sup(cfunc(f)[mask]) <= tol


def lex_key(f, decimals: int = 9) -> tuple:
    """Sort key ordering functions lexicographically by (re, im) per entry."""
    f = cfunc(f)
    re = np.round(f.real, decimals) + 0.0
    im = np.round(f.imag, decimals) + 0.0
    return tuple(v for pair in zip(re.tolist(), im.tolist()) for v in pair)


# ------------------------------------------------------------ index and period

class IndexPeriod(NamedTuple):
    index: np.ndarray
    period: np.ndarray


def index_period(s: FiniteSemigroup) -> IndexPeriod:
    """Least ``(i, p)`` with ``x^(i+p) = x^i`` for every element."""
    n = s.order
    idx = np.zeros(n, dtype=np.int64)
    per = np.zeros(n, dtype=np.int64)
    for x in range(n):
        seen = {}
        cur, k = x, 1
        while cur not in seen:
            seen[cur] = k
            cur = s.mul(cur, x)
            k += 1
        i = seen[cur]
        idx[x], per[x] = i, k - i
    return IndexPeriod(idx, per)


# ------------------------------------------------------ multiplicative functions

def root_of_unity(k: int, p: int) -> complex:
    k %= p
    if (4 * k) % p == 0:
        return (1, 1j, -1, -1j)[4 * k // p]
    return cmath.exp(2j * math.pi * k / p)


@dataclass(frozen=True, eq=False)
class MultiplicativeFunction:
    values: np.ndarray
    residual: float

    def __array__(self, dtype=None, copy=None):
        return self.values if dtype is None else self.values.astype(dtype)

    def __len__(self):
        return len(self.values)

    @property
    def is_zero(self) -> bool:
        return not np.any(self.values)

    def __repr__(self):
        vals = ", ".join(f"{v:.4g}" for v in self.values)
        return f"MultiplicativeFunction([{vals}])"


def multiplicative_residual(f, s: FiniteSemigroup) -> float:
    f = cfunc(f)
    return float(np.max(np.abs(f[s.table] - np.outer(f, f)), initial=0.0))


def is_multiplicative(f, s: FiniteSemigroup, tol: float = MULT_TOL) -> bool:
    scale = max(1.0, sup(f)) ** 2
    return multiplicative_residual(f, s) <= tol * scale


def enumerate_multiplicative(s: FiniteSemigroup, include_zero: bool = False,
                             tol: float = MULT_TOL) -> list[MultiplicativeFunction]:
    """Every multiplicative ``χ: S -> C``.

    ``χ(x)`` is 0 or a ``p``-th root of unity, ``p`` the period of ``x``, so a
    backtracking search over that finite grid is exhaustive. The result is
    sorted lexicographically by value vector.
    """
    n = s.order
    t = s.table
    _, per = index_period(s)
    cands = [[0j] + [root_of_unity(k, int(p)) for k in range(p)] for p in per]
    vals = np.zeros(n, dtype=np.complex128)
    assigned = np.zeros(n, dtype=bool)
    found = []

    # pairs (a, b) in which x occurs as a factor or as the product
    touching = [[] for _ in range(n)]
    for a in range(n):
        for b in range(n):
            for e in {a, b, int(t[a, b])}:
                touching[e].append((a, b, int(t[a, b])))

    def consistent(x: int) -> bool:
        for a, b, ab in touching[x]:
            if assigned[a] and assigned[b] and assigned[ab]:
                if abs(vals[ab] - vals[a] * vals[b]) > tol:
                    return False
        return True

    def rec(x: int):
        if x == n:
            found.append(vals.copy())
            return
        assigned[x] = True
        for c in cands[x]:
            vals[x] = c
            if consistent(x):
                rec(x + 1)
        assigned[x] = False
        vals[x] = 0

    rec(0)
    out = []
    seen = set()
    for v in found:
        if not include_zero and not np.any(v):
            continue
        key = v.tobytes()
        if key in seen:
            continue
        seen.add(key)
        out.append(MultiplicativeFunction(v, multiplicative_residual(v, s)))
    out.sort(key=lambda m: lex_key(m.values))
    return out


def twist_invariant(f, sigma: Automorphism, tol: float = MULT_TOL) -> bool:
    """``f∘σ == f`` within tolerance."""
    return max_dev(compose_sigma(f, sigma), f) <= tol * max(1.0, sup(f))


def sigma_squared_invariant(f, sigma: Automorphism, tol: float = MULT_TOL) -> bool:
    return twist_invariant(f, automorphism_power(sigma, 2), tol)


# ------------------------------------------------------------ special sine law

def special_sine_matrix(s: FiniteSemigroup, chi) -> np.ndarray:
    """Rows ``e_{xy} - χ(y) e_x - χ(x) e_y`` over all pairs, shape (n², n)."""
    n = s.order
    chi = cfunc(chi)
    xs, ys = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    xs, ys = xs.ravel(), ys.ravel()
    rows = np.arange(n * n)
    a = np.zeros((n * n, n), dtype=np.complex128)
    np.add.at(a, (rows, s.table[xs, ys]), 1.0)
    np.add.at(a, (rows, xs), -chi[ys])
    np.add.at(a, (rows, ys), -chi[xs])
    return a


def solve_special_sine(s: FiniteSemigroup, chi) -> list[np.ndarray]:
    """Pivot-normalized basis of all ``φ`` with ``φ(xy) = φ(x)χ(y) + φ(y)χ(x)``."""
    return nullspace(special_sine_matrix(s, chi))


def special_sine_residual(s: FiniteSemigroup, chi, phi) -> float:
    chi, phi = cfunc(chi), cfunc(phi)
    rhs = np.outer(phi, chi) + np.outer(chi, phi)
    return float(np.max(np.abs(phi[s.table] - rhs), initial=0.0))


# ------------------------------------------------------------ linear dependence

@dataclass(frozen=True)
class Dependence:
    kind: str  # "both_zero" | "first_zero" | "second_zero" | "proportional" | "independent"
    ratio: complex | None = None

    @property
    def independent(self) -> bool:
        return self.kind == "independent"


BothZero = Dependence("both_zero")
FirstZero = Dependence("first_zero")
SecondZero = Dependence("second_zero")
Independent = Dependence("independent")


def Proportional(ratio: complex) -> Dependence:
    return Dependence("proportional", complex(ratio))


def linear_dependence(f, g, tol: float = DEP_TOL) -> Dependence:
    """Classify the pair by the rank of the n×2 matrix ``[f g]``.

    Zero tests are relative to ``max(1, |f|, |g|)``; dependence compares the
    largest 2×2 minor with ``|f|·|g|``.
    """
    f, g = cfunc(f), cfunc(g)
    if len(f) != len(g):
        raise ValueError("length mismatch")
    nf, ng = sup(f), sup(g)
    scale = max(1.0, nf, ng)
    fz, gz = nf <= tol * scale, ng <= tol * scale
    if fz and gz:
        return BothZero
    if fz:
        return FirstZero
    if gz:
        return SecondZero
    minors = np.outer(f, g) - np.outer(g, f)
    if sup(minors) <= tol * nf * ng:
        lam = np.vdot(f, g) / np.vdot(f, f)
        return Proportional(lam)
    return Independent


# ------------------------------------------------------------ serialization

def to_pairs(f) -> list[list[float]]:
    f = cfunc(f)
    return [[float(v.real), float(v.imag)] for v in f]


def from_pairs(pairs) -> np.ndarray:
    return np.array([complex(re, im) for re, im in pairs], dtype=np.complex128)


def dumps_cfunc(f) -> str:
    return json.dumps(to_pairs(f))


def loads_cfunc(text: str) -> np.ndarray:
    return from_pairs(json.loads(text))
