"""The seven functional equations as bilinear residual maps.

Every equation has the shape ``u(P(x, y)) = Σ c_ab a(x) b(y)`` where ``u`` is
``f`` or ``g``, ``P`` is one of ``xσ(y)``, ``σ(y)x`` or ``xy`` and ``a, b``
range over ``{f, g}``. That common shape gives one residual routine and one
analytic Jacobian for all of them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .semigroup import Automorphism, FiniteSemigroup, identity


class EquationTag(str, enum.Enum):
    COS_SUB = "cos-sub"
    SINE_ADD = "sine-add"
    SINE_SUB = "sine-sub"
    COS_SUB_VARIANT = "cos-sub-var"
    SINE_ADD_VARIANT = "sine-add-var"
    COS_ADD_PLAIN = "cos-add-plain"
    SINE_ADD_PLAIN = "sine-add-plain"

    @property
    def plain(self) -> bool:
        return self in (EquationTag.COS_ADD_PLAIN, EquationTag.SINE_ADD_PLAIN)

    @classmethod
    def parse(cls, text) -> "EquationTag":
        if isinstance(text, EquationTag):
            return text
        key = str(text).strip().lower().replace("_", "-")
        aliases = {"e3": "cos-sub", "e1": "sine-add", "e2": "sine-sub",
                   "var1": "cos-sub-var", "var2": "sine-add-var",
                   "cos-sub-variant": "cos-sub-var", "sine-add-variant": "sine-add-var"}
        key = aliases.get(key, key)
        for tag in cls:
            if tag.value == key or tag.name.lower().replace("_", "-") == key:
                return tag
        raise ValueError(f"unknown equation {text!r}")


SIGMA_EQUATIONS = (
    EquationTag.COS_SUB,
    EquationTag.SINE_ADD,
    EquationTag.SINE_SUB,
    EquationTag.COS_SUB_VARIANT,
    EquationTag.SINE_ADD_VARIANT,
)


@dataclass(frozen=True)
class _Shape:
    lhs: str  # "f" or "g"
    placement: str  # "right": xσ(y), "left": σ(y)x, "plain": xy
    ff: float = 0.0
    fg: float = 0.0  # coefficient of f(x) g(y)
    gf: float = 0.0  # coefficient of g(x) f(y)
    gg: float = 0.0


_SHAPES = {
    EquationTag.COS_SUB: _Shape("g", "right", ff=1, gg=1),
    EquationTag.SINE_ADD: _Shape("f", "right", fg=1, gf=1),
    EquationTag.SINE_SUB: _Shape("f", "right", fg=1, gf=-1),
    EquationTag.COS_SUB_VARIANT: _Shape("g", "left", ff=1, gg=1),
    EquationTag.SINE_ADD_VARIANT: _Shape("f", "left", fg=1, gf=1),
    EquationTag.COS_ADD_PLAIN: _Shape("g", "plain", ff=-1, gg=1),
    EquationTag.SINE_ADD_PLAIN: _Shape("f", "plain", fg=1, gf=1),
}


def product_index(eq: EquationTag, s: FiniteSemigroup, sigma: Automorphism | None) -> np.ndarray:
    """``P[x, y]``: the element at which the left-hand side is evaluated."""
    shape = _SHAPES[EquationTag.parse(eq)]
    t = s.table
    if shape.placement == "plain":
        return t
    p = (sigma or identity(s.order)).perm
    if shape.placement == "right":
        return t[:, p]
    return t[p, :].T


def residual_matrix(eq, s: FiniteSemigroup, sigma: Automorphism | None, f, g) -> np.ndarray:
    """``LHS - RHS`` for every pair, shape (n, n)."""
    eq = EquationTag.parse(eq)
    shape = _SHAPES[eq]
    f = np.asarray(f, dtype=np.complex128)
    g = np.asarray(g, dtype=np.complex128)
    u = f if shape.lhs == "f" else g
    lhs = u[product_index(eq, s, sigma)]
    rhs = (shape.ff * np.outer(f, f) + shape.fg * np.outer(f, g)
           + shape.gf * np.outer(g, f) + shape.gg * np.outer(g, g))
    return lhs - rhs


def equation_residual(eq, s: FiniteSemigroup, sigma: Automorphism | None, f, g) -> float:
    """Max over all pairs of ``|LHS - RHS|``."""
    return float(np.max(np.abs(residual_matrix(eq, s, sigma, f, g)), initial=0.0))


class BatchSystem:
    """Vectorized residual and complex Jacobian of one equation on one (S, σ).

    Unknowns are ``z = (f, g)`` in ``C^(2n)``; residuals are the ``n²`` pairs in
    row-major order. The map is holomorphic, so the real Jacobian of the
    re/im-split system follows from the complex one.
    """

    def __init__(self, eq, s: FiniteSemigroup, sigma: Automorphism | None):
        self.eq = EquationTag.parse(eq)
        self.shape = _SHAPES[self.eq]
        self.n = n = s.order
        self.P = product_index(self.eq, s, sigma).ravel()
        self.xs = np.repeat(np.arange(n), n)
        self.ys = np.tile(np.arange(n), n)
        lhs_offset = 0 if self.shape.lhs == "f" else n
        # constant part of the Jacobian from the left-hand side
        j0 = np.zeros((n * n, 2 * n))
        j0[np.arange(n * n), lhs_offset + self.P] = 1.0
        self._j_lhs = j0

    def residual(self, z: np.ndarray) -> np.ndarray:
        """``z`` has shape (B, 2n) complex; returns (B, n²)."""
        n, sh = self.n, self.shape
        f, g = z[:, :n], z[:, n:]
        u = f if sh.lhs == "f" else g
        fx, fy = f[:, self.xs], f[:, self.ys]
        gx, gy = g[:, self.xs], g[:, self.ys]
        rhs = sh.ff * fx * fy + sh.fg * fx * gy + sh.gf * gx * fy + sh.gg * gx * gy
        return u[:, self.P] - rhs

    def jacobian(self, z: np.ndarray) -> np.ndarray:
        """Complex Jacobian d(residual)/dz, shape (B, n², 2n)."""
        n, sh = self.n, self.shape
        B = z.shape[0]
        f, g = z[:, :n], z[:, n:]
        fx, fy = f[:, self.xs], f[:, self.ys]
        gx, gy = g[:, self.xs], g[:, self.ys]
        # object arrays (extended-precision scalars) keep their dtype
        dtype = object if z.dtype == object else np.complex128
        jac = np.broadcast_to(self._j_lhs, (B, n * n, 2 * n)).astype(dtype)
        rows = np.arange(n * n)
        # d/d f(x), d/d f(y), d/d g(x), d/d g(y) of -RHS
        dfx = -(sh.ff * fy + sh.fg * gy)
        dfy = -(sh.ff * fx + sh.gf * gx)
        dgx = -(sh.gf * fy + sh.gg * gy)
        dgy = -(sh.fg * fx + sh.gg * gx)
        jac[:, rows, self.xs] += dfx
        jac[:, rows, self.ys] += dfy
        jac[:, rows, n + self.xs] += dgx
        jac[:, rows, n + self.ys] += dgy
        return jac
