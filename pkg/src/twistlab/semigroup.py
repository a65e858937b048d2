"""Finite semigroups given by Cayley tables, and their automorphisms.

Elements are the indices ``0..n-1`` and ``table[x, y]`` is the product ``xy``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

DEFAULT_ENUM_CAP = 4
DEFAULT_LOAD_CAP = 16


class SemigroupError(ValueError):
    pass


class OutOfRangeEntry(SemigroupError):
    def __init__(self, x: int, y: int, value: int):
        super().__init__(f"table[{x}][{y}] = {value} is outside [0, n)")
        self.x, self.y, self.value = x, y, value


class AssociativityViolation(SemigroupError):
    def __init__(self, x: int, y: int, z: int):
        super().__init__(f"(x*y)*z != x*(y*z) at (x, y, z) = ({x}, {y}, {z})")
        self.triple = (x, y, z)


class CapExceeded(SemigroupError):
    pass


class NotAnAutomorphism(SemigroupError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteSemigroup:
    table: np.ndarray
    label: str = ""

    def __post_init__(self):
        self.table.setflags(write=False)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def power(self, x: int, k: int) -> int:
        """``x**k`` for ``k >= 1``."""
        r = x
        for _ in range(k - 1):
            r = int(self.table[r, x])
        return r

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def triple_products(self) -> tuple[np.ndarray, np.ndarray]:
        """Index arrays ``xyz`` and ``xzy`` of shape (n, n, n)."""
        t = self.table
        xy = t[:, :, None]
        xyz = t[xy, np.arange(self.order)[None, None, :]]
        xzy = np.swapaxes(xyz, 1, 2)
        return xyz, xzy

    def relabel(self, perm: Sequence[int]) -> "FiniteSemigroup":
        """Transport the structure along the bijection ``x -> perm[x]``."""
        p = np.asarray(perm)
        inv = np.argsort(p)
        new = p[self.table[np.ix_(inv, inv)]]
        return FiniteSemigroup(new, self.label)

    def __eq__(self, other):
        if not isinstance(other, FiniteSemigroup):
            return NotImplemented
        return np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def __repr__(self):
        name = f" {self.label!r}" if self.label else ""
        return f"FiniteSemigroup{name}(order={self.order}, table={self.table.tolist()})"


def _first_associativity_failure(t: np.ndarray):
    n = t.shape[0]
    left = t[t, :]  # left[x, y, z] = (xy)z
    right = t[:, t]  # right[x, y, z] = x(yz)
    bad = np.argwhere(left != right)
    if len(bad):
        return tuple(int(v) for v in bad[0])
    return None


def validate_table(raw_table, order: int | None = None, label: str = "",
                   cap: int = DEFAULT_LOAD_CAP) -> FiniteSemigroup:
    """Check closure and associativity; raise on the first failing cell or triple."""
    t = np.array(raw_table, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise SemigroupError(f"table must be square, got shape {t.shape}")
    n = t.shape[0]
    if order is not None and order != n:
        raise SemigroupError(f"declared order {order} but table has {n} rows")
    if n == 0:
        raise SemigroupError("empty table")
    if n > cap:
        raise CapExceeded(f"order {n} exceeds cap {cap}")
    for x, y in itertools.product(range(n), repeat=2):
        if not 0 <= t[x, y] < n:
            raise OutOfRangeEntry(x, y, int(t[x, y]))
    bad = _first_associativity_failure(t)
    if bad is not None:
        raise AssociativityViolation(*bad)
    return FiniteSemigroup(t, label)


def is_associative(t: np.ndarray) -> bool:
    return _first_associativity_failure(np.asarray(t)) is None


def enumerate_semigroups(order: int, cap: int = DEFAULT_ENUM_CAP,
                         canonical: bool = False) -> Iterator[FiniteSemigroup]:
    """Yield every labeled associative table of the given order exactly once.

    Cells are filled row-major; after each assignment every triple whose three
    products are already known is checked. With ``canonical=True`` only tables
    that are minimal among all their relabelings are yielded.
    """
    if order < 1:
        raise SemigroupError("order must be positive")
    if order > cap:
        raise CapExceeded(f"order {order} exceeds enumeration cap {cap}")
    n = order
    t = -np.ones((n, n), dtype=np.int64)
    cells = [(x, y) for x in range(n) for y in range(n)]
    perms = [np.array(p) for p in itertools.permutations(range(n))] if canonical else []

    def consistent(x: int, y: int) -> bool:
        # every triple involving the new cell (x, y) as an inner or outer product
        for a, b, c in _triples_touching(x, y, n):
            ab = t[a, b]
            if ab < 0:
                continue
            left = t[ab, c]
            bc = t[b, c]
            if left < 0 or bc < 0:
                continue
            right = t[a, bc]
            if right >= 0 and left != right:
                return False
        return True

    def rec(k: int):
        if k == len(cells):
            yield t.copy()
            return
        x, y = cells[k]
        for v in range(n):
            t[x, y] = v
            if consistent(x, y):
                yield from rec(k + 1)
        t[x, y] = -1

    for tab in rec(0):
        s = FiniteSemigroup(tab)
        if canonical and not _is_canonical(tab, perms):
            continue
        yield s


def _triples_touching(x: int, y: int, n: int):
    r = range(n)
    for c in r:
        yield x, y, c
    for a in r:
        yield a, x, y
    # (x, y) appearing as an outer lookup t[ab, c] or t[a, bc]
    for a, b in itertools.product(r, r):
        yield a, b, y
        yield x, a, b


def _is_canonical(tab: np.ndarray, perms) -> bool:
    key = tab.tobytes()
    for p in perms:
        inv = np.argsort(p)
        other = p[tab[np.ix_(inv, inv)]]
        if other.tobytes() < key:
            return False
    return True


def canonical_form(s: FiniteSemigroup) -> FiniteSemigroup:
    """Byte-minimal table among all relabelings (isomorphism invariant)."""
    best = None
    for p in itertools.permutations(range(s.order)):
        cand = s.relabel(p).table
        if best is None or cand.tobytes() < best.tobytes():
            best = cand
    return FiniteSemigroup(best.copy(), s.label)


def square_set(s: FiniteSemigroup) -> np.ndarray:
    """Boolean membership vector of S² = {xy}."""
    mask = np.zeros(s.order, dtype=bool)
    mask[s.table.ravel()] = True
    return mask


# ---------------------------------------------------------------- automorphisms

def _perm_order(perm: np.ndarray) -> int:
    ident = np.arange(len(perm))
    q = perm.copy()
    k = 1
    while not np.array_equal(q, ident):
        q = perm[q]
        k += 1
    return k


@dataclass(frozen=True, eq=False)
class Automorphism:
    perm: np.ndarray
    order: int = field(init=False)

    def __post_init__(self):
        p = np.asarray(self.perm, dtype=np.int64)
        if sorted(p.tolist()) != list(range(len(p))):
            raise NotAnAutomorphism(f"{p.tolist()} is not a permutation")
        p.setflags(write=False)
        object.__setattr__(self, "perm", p)
        object.__setattr__(self, "order", _perm_order(p))

    @property
    def involutive(self) -> bool:
        return self.order <= 2

    @property
    def is_identity(self) -> bool:
        return self.order == 1

    def __call__(self, x):
        return self.perm[x]

    def compose(self, other: "Automorphism") -> "Automorphism":
        """``self ∘ other``."""
        return Automorphism(self.perm[other.perm])

    def inverse(self) -> "Automorphism":
        return Automorphism(np.argsort(self.perm))

    def literal(self) -> str:
        if self.is_identity:
            return "id"
        return ",".join(str(int(v)) for v in self.perm)

    def __eq__(self, other):
        if not isinstance(other, Automorphism):
            return NotImplemented
        return np.array_equal(self.perm, other.perm)

    def __hash__(self):
        return hash(self.perm.tobytes())

    def __repr__(self):
        return f"Automorphism({self.perm.tolist()}, order={self.order})"


def identity(n: int) -> Automorphism:
    return Automorphism(np.arange(n))


def is_automorphism(s: FiniteSemigroup, perm) -> bool:
    p = np.asarray(perm)
    t = s.table
    return bool(np.array_equal(p[t], t[np.ix_(p, p)]))


def make_automorphism(s: FiniteSemigroup, perm) -> Automorphism:
    a = Automorphism(perm)
    if len(a.perm) != s.order:
        raise NotAnAutomorphism(f"permutation has length {len(a.perm)}, semigroup order {s.order}")
    if not is_automorphism(s, a.perm):
        raise NotAnAutomorphism(f"{a.perm.tolist()} does not preserve products")
    return a


def enumerate_automorphisms(s: FiniteSemigroup) -> list[Automorphism]:
    """All product-preserving permutations, in lexicographic order of image lists.

    Backtracking over the smallest unassigned element; after each choice the
    forced images ``σ(ab) = σ(a)σ(b)`` are propagated to a fixed point, so a
    generated group costs little more than its generators.
    """
    n = s.order
    t = s.table
    out = []

    def propagate(perm: np.ndarray) -> bool:
        changed = True
        while changed:
            changed = False
            done = np.flatnonzero(perm >= 0)
            for a in done:
                for b in done:
                    ab, img = t[a, b], t[perm[a], perm[b]]
                    if perm[ab] < 0:
                        if np.any(perm == img):
                            return False
                        perm[ab] = img
                        changed = True
                    elif perm[ab] != img:
                        return False
        return True

    def rec(perm: np.ndarray):
        free = np.flatnonzero(perm < 0)
        if len(free) == 0:
            out.append(Automorphism(perm.copy()))
            return
        k = free[0]
        for v in sorted(set(range(n)) - set(perm[perm >= 0].tolist())):
            trial = perm.copy()
            trial[k] = v
            if propagate(trial):
                rec(trial)

    rec(-np.ones(n, dtype=np.int64))
    out.sort(key=lambda a: a.perm.tolist())
    return [a for a in out if is_automorphism(s, a.perm)]


def automorphism_power(sigma: Automorphism, k: int) -> Automorphism:
    if k < 0:
        raise ValueError("power must be non-negative")
    p = np.arange(len(sigma.perm))
    for _ in range(k):
        p = sigma.perm[p]
    return Automorphism(p)


# ------------------------------------------------------------ function classes

def is_central(f, s: FiniteSemigroup, tol: float = 1e-9) -> bool:
    f = np.asarray(f)
    t = s.table
    scale = max(1.0, float(np.max(np.abs(f), initial=0.0)))
    return bool(np.max(np.abs(f[t] - f[t.T]), initial=0.0) <= tol * scale)


def is_abelian(f, s: FiniteSemigroup, tol: float = 1e-9) -> bool:
    """Central and ``f(xyz) = f(xzy)`` for every triple."""
    if not is_central(f, s, tol):
        return False
    f = np.asarray(f)
    xyz, xzy = s.triple_products()
    scale = max(1.0, float(np.max(np.abs(f), initial=0.0)))
    return bool(np.max(np.abs(f[xyz] - f[xzy]), initial=0.0) <= tol * scale)
