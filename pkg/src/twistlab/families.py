"""Solution families of the twisted cosine/sine laws and a classifier for them.

Case tags follow the theorem numbering used throughout the project:

* ``TE3.1``-``TE3.6``: cosine subtraction law ``g(xσ(y)) = g(x)g(y) + f(x)f(y)``
  (and its variant ``g(σ(y)x) = ...``).
* ``P1.1``-``P1.5``: sine addition law ``f(xσ(y)) = f(x)g(y) + f(y)g(x)`` (and
  variant).
* ``TH3.1``-``TH3.4``: sine subtraction law ``f(xσ(y)) = f(x)g(y) - f(y)g(x)``.
* ``PHI1.1``-``PHI1.4``: ``g(xy) = g(x)g(y) - f(x)f(y)``.
* ``PHI2.0``-``PHI2.3``: ``f(xy) = f(x)g(y) + f(y)g(x)``; ``PHI2.0`` is the
  trivial ``f = 0`` branch that the ``f != 0`` listing leaves out.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass, field
from typing import Any, Iterator

import numpy as np

from .equations import EquationTag, equation_residual
from .funcspace import (
    DEP_TOL,
    MultiplicativeFunction,
    cfunc,
    compose_sigma,
    enumerate_multiplicative,
    from_pairs,
    is_multiplicative,
    lex_key,
    linear_dependence,
    max_dev,
    solve_special_sine,
    special_sine_residual,
    sup,
    to_pairs,
)
from .linalg import nullspace
from .semigroup import Automorphism, FiniteSemigroup, automorphism_power, identity, square_set

CLASS_TOL = 1e-7
FIT_TOL = 1e-6
CONSTRUCT_TOL = 1e-9
LEMMA_TOL = 1e-10
SINGULAR_KAPPA = 10.0

I = 1j


class FamilyError(ValueError):
    pass


class ConstraintViolation(FamilyError):
    pass


class SideConditionFailure(FamilyError):
    pass


class ResidualFailure(FamilyError):
    pass


class HypothesisFailure(FamilyError):
    pass


class NotASolution(FamilyError):
    def __init__(self, max_residual: float):
        super().__init__(f"not a solution: max residual {max_residual:.3g}")
        self.max_residual = max_residual


# ------------------------------------------------------------------ data types

CASE_EQUATION = {
    "TE3": EquationTag.COS_SUB,
    "P1": EquationTag.SINE_ADD,
    "TH3": EquationTag.SINE_SUB,
    "PHI1": EquationTag.COS_ADD_PLAIN,
    "PHI2": EquationTag.SINE_ADD_PLAIN,
}

EQUATION_THEOREM = {
    EquationTag.COS_SUB: "TE3",
    EquationTag.COS_SUB_VARIANT: "TE3",
    EquationTag.SINE_ADD: "P1",
    EquationTag.SINE_ADD_VARIANT: "P1",
    EquationTag.SINE_SUB: "TH3",
    EquationTag.COS_ADD_PLAIN: "PHI1",
    EquationTag.SINE_ADD_PLAIN: "PHI2",
}

ALL_CASES = (
    ["TE3.%d" % k for k in range(1, 7)]
    + ["P1.%d" % k for k in range(1, 6)]
    + ["TH3.%d" % k for k in range(1, 5)]
    + ["PHI1.%d" % k for k in range(1, 5)]
    + ["PHI2.%d" % k for k in range(0, 4)]
)

# the "arbitrary function" branches; exempt from the abelian claims
EXCEPTIONAL_CASES = frozenset({"P1.1", "TH3.1", "PHI2.0"})


@dataclass(frozen=True, eq=False)
class FamilyCase:
    """One theorem case with its parameters.

    Function-valued parameters (``chi``, ``chi1``, ``chi2``, ``phi``, ``f``,
    ``g``) are complex vectors; ``alpha``, ``delta``, ``c``, ``c1``, ``c2`` are
    complex scalars; ``sign`` is ±1.
    """

    case: str
    params: dict = field(default_factory=dict)
    fit: str = "strict"  # "singular" when matched at the forward-error radius

    def __post_init__(self):
        if self.case not in ALL_CASES:
            raise ValueError(f"unknown case {self.case!r}")

    @property
    def theorem(self) -> str:
        return self.case.split(".")[0]

    @property
    def equation(self) -> EquationTag:
        return CASE_EQUATION[self.theorem]

    def to_json(self) -> dict:
        out = {}
        for k, v in sorted(self.params.items()):
            if isinstance(v, (np.ndarray, MultiplicativeFunction, list)):
                out[k] = to_pairs(np.asarray(v))
            elif k == "sign":
                out[k] = int(v)
            else:
                z = complex(v)
                out[k] = [z.real, z.imag]
        obj = {"case": self.case, "params": out}
        if self.fit != "strict":
            obj["fit"] = self.fit
        return obj

    @classmethod
    def from_json(cls, obj) -> "FamilyCase":
        if isinstance(obj, str):
            obj = json.loads(obj)
        params = {}
        for k, v in obj.get("params", {}).items():
            if k == "sign":
                params[k] = int(v)
            elif v and isinstance(v[0], list):
                params[k] = from_pairs(v)
            else:
                params[k] = complex(v[0], v[1])
        return cls(obj["case"], params, obj.get("fit", "strict"))

    def __repr__(self):
        parts = []
        for k, v in sorted(self.params.items()):
            if isinstance(v, np.ndarray):
                parts.append(f"{k}=[{', '.join(f'{x:.4g}' for x in v)}]")
            else:
                parts.append(f"{k}={v:.4g}" if not isinstance(v, int) else f"{k}={v}")
        return f"{self.case}({', '.join(parts)})"


@dataclass(frozen=True)
class Unclassified:
    residual_profile: dict

    case = None

    def to_json(self) -> dict:
        return {"case": None, "profile": self.residual_profile}


# ------------------------------------------------------------------ context

class Context:
    """Everything the constructors and the classifier need about one (S, σ)."""

    def __init__(self, s: FiniteSemigroup, sigma: Automorphism | None):
        self.s = s
        self.sigma = sigma if sigma is not None else identity(s.order)
        self.sigma2 = automorphism_power(self.sigma, 2)
        self.n = s.order
        self.s2 = square_set(s)
        self.chars = [m.values for m in enumerate_multiplicative(s)]
        self.C = np.array(self.chars).T if self.chars else np.zeros((self.n, 0), complex)
        self.pinvC = np.linalg.pinv(self.C) if self.chars else self.C.T
        perm = self.sigma.perm
        self.star = [self.index_of(c[perm]) for c in self.chars]
        self.invariant = [self.star[k] == k for k in range(len(self.chars))]
        self.sq_invariant = [self.index_of(c[self.sigma2.perm]) == k for k, c in enumerate(self.chars)]
        self.phi_basis = [np.array(solve_special_sine(s, c)).reshape(-1, self.n).T for c in self.chars]
        self.phi_proj = []
        for b in self.phi_basis:
            self.phi_proj.append(b @ np.linalg.pinv(b) if b.shape[1] else np.zeros((self.n, self.n)))

    def index_of(self, v, tol: float = 1e-9):
        for k, c in enumerate(self.chars):
            if max_dev(c, v) <= tol:
                return k
        return None

    def nearest_char(self, v, tol: float):
        """Index of the enumerated character within ``tol`` of ``v``, if any."""
        if not self.chars:
            return None
        d = np.max(np.abs(self.C - cfunc(v)[:, None]), axis=0)
        k = int(np.argmin(d))
        return k if d[k] <= tol else None

    def symmetric_phi_basis(self, k: int, sign: int) -> np.ndarray:
        """Basis (columns) of ``{φ in φ_χ : φ∘σ = sign·φ}`` for character k."""
        b = self.phi_basis[k]
        if b.shape[1] == 0:
            return b
        m = b[self.sigma.perm] - sign * b
        coeffs = nullspace(m)
        if not coeffs:
            return np.zeros((self.n, 0), complex)
        return b @ np.array(coeffs).T


@functools.lru_cache(maxsize=256)
def context(s: FiniteSemigroup, sigma: Automorphism | None = None) -> Context:
    return Context(s, sigma)


# ------------------------------------------------------------------ construction

def _vec(params, key, n) -> np.ndarray:
    if key not in params:
        raise ConstraintViolation(f"missing parameter {key!r}")
    v = cfunc(np.asarray(params[key]))
    if v.shape != (n,):
        raise ConstraintViolation(f"parameter {key!r} has length {len(v)}, expected {n}")
    return v


def _scalar(params, key, default=None) -> complex:
    if key not in params:
        if default is None:
            raise ConstraintViolation(f"missing parameter {key!r}")
        return default
    return complex(params[key])


def _near(z: complex, targets, tol=1e-12) -> bool:
    return any(abs(z - t) <= tol for t in targets)


def _require_mult(ctx: Context, chi, name="chi", nonzero=True):
    if nonzero and sup(chi) <= CONSTRUCT_TOL:
        raise SideConditionFailure(f"{name} must be a non-zero multiplicative function")
    if not is_multiplicative(chi, ctx.s, CONSTRUCT_TOL):
        raise SideConditionFailure(f"{name} is not multiplicative")


def _require_twist(ctx: Context, v, sign: int, name: str):
    dev = max_dev(compose_sigma(v, ctx.sigma), sign * v)
    if dev > CONSTRUCT_TOL * max(1.0, sup(v)):
        rel = "=" if sign == 1 else "= -"
        raise SideConditionFailure(f"{name}∘σ {rel} {name} fails (deviation {dev:.3g})")


def _require_phi(ctx: Context, chi, phi):
    if sup(phi) <= CONSTRUCT_TOL:
        raise ConstraintViolation("phi must be non-zero")
    r = special_sine_residual(ctx.s, chi, phi)
    if r > CONSTRUCT_TOL * max(1.0, sup(phi)):
        raise SideConditionFailure(f"phi does not solve the special sine law for chi (residual {r:.3g})")


def _require_off_square(ctx: Context, v, name: str):
    if sup(v) <= CONSTRUCT_TOL:
        raise ConstraintViolation(f"{name} must be non-zero")
    if sup(v[ctx.s2]) > CONSTRUCT_TOL * max(1.0, sup(v)):
        raise SideConditionFailure(f"{name} must vanish on S²")


def _require_distinct(chi1, chi2):
    if max_dev(chi1, chi2) <= CONSTRUCT_TOL:
        raise ConstraintViolation("chi1 and chi2 must be different")


def _formula(case: FamilyCase, ctx: Context) -> tuple[np.ndarray, np.ndarray]:
    """Literal (f, g) tables, after checking constraints and side conditions."""
    p, n, tag = case.params, ctx.n, case.case
    zero = np.zeros(n, dtype=np.complex128)
    star = lambda v: compose_sigma(v, ctx.sigma)  # noqa: E731

    if tag in ("TE3.1", "PHI1.1"):
        return zero, zero.copy()

    if tag == "TE3.2":
        g = _vec(p, "g", n)
        c = _scalar(p, "c")
        if not _near(c, (I, -I)):
            raise ConstraintViolation("c must be i or -i")
        _require_off_square(ctx, g, "g")
        return c * g, g
    if tag == "TE3.3":
        chi, a = _vec(p, "chi", n), _scalar(p, "alpha")
        if _near(a, (I, -I)):
            raise ConstraintViolation("alpha must avoid ±i")
        _require_mult(ctx, chi)
        _require_twist(ctx, chi, 1, "chi")
        return a * chi / (1 + a * a), chi / (1 + a * a)
    if tag == "TE3.4":
        c1, c2, d = _vec(p, "chi1", n), _vec(p, "chi2", n), _scalar(p, "delta")
        if _near(d, (0, I, -I)):
            raise ConstraintViolation("delta must avoid 0 and ±i")
        _require_distinct(c1, c2)
        _require_mult(ctx, c1, "chi1")
        _require_mult(ctx, c2, "chi2")
        _require_twist(ctx, c1, 1, "chi1")
        _require_twist(ctx, c2, 1, "chi2")
        den = 1 / d + d
        return (c2 - c1) / den, (c1 / d + d * c2) / den
    if tag == "TE3.5":
        chi = _vec(p, "chi", n)
        _require_mult(ctx, chi)
        cs = star(chi)
        if max_dev(cs, chi) <= CONSTRUCT_TOL:
            raise SideConditionFailure("chi∘σ must differ from chi")
        if max_dev(chi[ctx.sigma2.perm], chi) > CONSTRUCT_TOL:
            raise SideConditionFailure("chi∘σ² must equal chi")
        return (chi - cs) / (2 * I), (chi + cs) / 2
    if tag == "TE3.6":
        chi, phi, sg = _vec(p, "chi", n), _vec(p, "phi", n), int(p.get("sign", 1))
        if sg not in (1, -1):
            raise ConstraintViolation("sign must be ±1")
        _require_mult(ctx, chi)
        _require_twist(ctx, chi, 1, "chi")
        _require_phi(ctx, chi, phi)
        _require_twist(ctx, phi, 1, "phi")
        return -I * phi, chi + sg * phi

    if tag in ("P1.1", "TH3.1", "PHI2.0"):
        return zero, _vec(p, "g", n)
    if tag in ("P1.2", "PHI2.2"):
        f = _vec(p, "f", n)
        _require_off_square(ctx, f, "f")
        return f, zero
    if tag == "P1.3":
        chi, a = _vec(p, "chi", n), _scalar(p, "alpha")
        if _near(a, (0,)):
            raise ConstraintViolation("alpha must be non-zero")
        _require_mult(ctx, chi)
        _require_twist(ctx, chi, 1, "chi")
        return chi / (2 * a), chi / 2
    if tag in ("P1.4", "PHI2.1"):
        c1, c2, c = _vec(p, "chi1", n), _vec(p, "chi2", n), _scalar(p, "c")
        if _near(c, (0,)):
            raise ConstraintViolation("c must be non-zero")
        _require_distinct(c1, c2)
        if tag == "P1.4":
            # a zero character would collapse the pair into P1.3
            _require_mult(ctx, c1, "chi1")
            _require_mult(ctx, c2, "chi2")
            _require_twist(ctx, c1, 1, "chi1")
            _require_twist(ctx, c2, 1, "chi2")
        else:
            _require_mult(ctx, c1, "chi1", nonzero=False)
            _require_mult(ctx, c2, "chi2", nonzero=False)
        return c * (c1 - c2), (c1 + c2) / 2
    if tag in ("P1.5", "PHI2.3"):
        chi, phi = _vec(p, "chi", n), _vec(p, "phi", n)
        _require_mult(ctx, chi)
        _require_phi(ctx, chi, phi)
        if tag == "P1.5":
            _require_twist(ctx, chi, 1, "chi")
            _require_twist(ctx, phi, 1, "phi")
        return phi, chi

    if tag == "TH3.2":
        f, a = _vec(p, "f", n), _scalar(p, "alpha", 0j)
        _require_off_square(ctx, f, "f")
        return f, a * f
    if tag == "TH3.3":
        chi, c, c1 = _vec(p, "chi", n), _scalar(p, "c"), _scalar(p, "c1", 0j)
        if _near(c, (0,)):
            raise ConstraintViolation("c must be non-zero")
        _require_mult(ctx, chi)
        cs = star(chi)
        if max_dev(cs, chi) <= CONSTRUCT_TOL:
            raise SideConditionFailure("chi∘σ must differ from chi")
        if max_dev(chi[ctx.sigma2.perm], chi) > CONSTRUCT_TOL:
            raise SideConditionFailure("chi∘σ² must equal chi")
        return c * (chi - cs), (chi + cs) / 2 + c1 * (chi - cs) / 2
    if tag == "TH3.4":
        chi, phi, c2 = _vec(p, "chi", n), _vec(p, "phi", n), _scalar(p, "c2", 0j)
        _require_mult(ctx, chi)
        _require_twist(ctx, chi, 1, "chi")
        _require_phi(ctx, chi, phi)
        _require_twist(ctx, phi, -1, "phi")
        return phi, chi + c2 * phi

    if tag == "PHI1.2":
        c1, c2, d = _vec(p, "chi1", n), _vec(p, "chi2", n), _scalar(p, "delta")
        if _near(d, (0, I, -I)):
            raise ConstraintViolation("delta must avoid 0 and ±i")
        _require_distinct(c1, c2)
        _require_mult(ctx, c1, "chi1", nonzero=False)
        _require_mult(ctx, c2, "chi2", nonzero=False)
        den = 1 / d + d
        return (c1 - c2) / (I * den), (c1 / d + d * c2) / den
    if tag == "PHI1.3":
        f, sg = _vec(p, "f", n), int(p.get("sign", 1))
        if sg not in (1, -1):
            raise ConstraintViolation("sign must be ±1")
        _require_off_square(ctx, f, "f")
        return f, sg * f
    if tag == "PHI1.4":
        chi, sg = _vec(p, "chi", n), int(p.get("sign", 1))
        phi = _vec(p, "phi", n) if "phi" in p else zero
        if sg not in (1, -1):
            raise ConstraintViolation("sign must be ±1")
        _require_mult(ctx, chi)
        if special_sine_residual(ctx.s, chi, phi) > CONSTRUCT_TOL * max(1.0, sup(phi)):
            raise SideConditionFailure("phi does not solve the special sine law for chi")
        return phi, chi + sg * phi

    raise ValueError(f"no constructor for {tag}")


def construct(case: FamilyCase, s: FiniteSemigroup, sigma: Automorphism | None = None,
              eq: EquationTag | str | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Build the (f, g) tables of a case and re-verify them against the equation."""
    ctx = context(s, sigma)
    f, g = _formula(case, ctx)
    eq = EquationTag.parse(eq) if eq is not None else case.equation
    r = equation_residual(eq, s, ctx.sigma, f, g)
    if r > CONSTRUCT_TOL * max(1.0, sup(f), sup(g)) ** 2:
        raise ResidualFailure(f"{case.case} instance has residual {r:.3g}")
    return f, g


# ------------------------------------------------------------------ Lemma M

def lemma_m_reduce(s: FiniteSemigroup, sigma: Automorphism | None, f, beta: complex,
                   tol: float = LEMMA_TOL) -> MultiplicativeFunction:
    """If ``f(xσ(y)) = β f(x) f(y)`` with ``f != 0``, return ``χ = βf``.

    The result is certified multiplicative and σ-invariant.
    """
    f = cfunc(f)
    beta = complex(beta)
    sigma = sigma if sigma is not None else identity(s.order)
    if beta == 0:
        raise HypothesisFailure("beta must be non-zero")
    if sup(f) == 0:
        raise HypothesisFailure("f must be non-zero")
    lhs = f[s.table[:, sigma.perm]]
    prem = float(np.max(np.abs(lhs - beta * np.outer(f, f))))
    scale = max(1.0, abs(beta) * sup(f) ** 2)
    if prem > tol * scale:
        raise HypothesisFailure(f"f(xσ(y)) != βf(x)f(y) (residual {prem:.3g})")
    chi = beta * f
    mres = float(np.max(np.abs(chi[s.table] - np.outer(chi, chi))))
    cs = compose_sigma(chi, sigma)
    if mres > tol * max(1.0, sup(chi)) ** 2 or max_dev(cs, chi) > tol * max(1.0, sup(chi)):
        raise HypothesisFailure("reduction did not produce a σ-invariant multiplicative function")
    return MultiplicativeFunction(chi, mres)


# ------------------------------------------------------------------ classification

def _recon_ok(ctx: Context, case: FamilyCase, f, g, scale: float, tol: float) -> bool:
    try:
        f2, g2 = _formula(case, ctx)
    except FamilyError:
        return False
    return max(max_dev(f, f2), max_dev(g, g2)) <= tol * scale


class _Matcher:
    """Case fitting for one (S, σ) and one solution pair."""

    def __init__(self, ctx: Context, f, g, tol: float, fit_tol: float, zero_tol: float | None = None):
        self.ctx, self.f, self.g = ctx, f, g
        self.tol, self.fit_tol = tol, fit_tol
        self.scale = max(1.0, sup(f), sup(g))
        self.zero_tol = (tol if zero_tol is None else zero_tol) * self.scale
        self._coef = None

    def ok(self, case: FamilyCase) -> FamilyCase | None:
        return case if _recon_ok(self.ctx, case, self.f, self.g, self.scale, self.fit_tol) else None

    def is_zero(self, v) -> bool:
        return sup(v) <= self.zero_tol

    def off_square(self, v) -> bool:
        return not self.is_zero(v) and sup(v[self.ctx.s2]) <= self.zero_tol

    def off_part(self, v) -> np.ndarray:
        """Copy of ``v`` with its (near-zero) values on S² set to zero."""
        out = cfunc(v).copy()
        out[self.ctx.s2] = 0
        return out

    def char(self, v, need_invariant: bool = False):
        k = self.ctx.nearest_char(v, self.fit_tol * max(1.0, sup(v)))
        if k is None or (need_invariant and not self.ctx.invariant[k]):
            return None
        return k

    def coefficients(self):
        """Least-squares coordinates of g and f over the non-zero characters."""
        if self._coef is None:
            ctx = self.ctx
            if not ctx.chars:
                self._coef = (None, None, [])
            else:
                a = ctx.pinvC @ self.g
                t = ctx.pinvC @ self.f
                fit = max(max_dev(ctx.C @ a, self.g), max_dev(ctx.C @ t, self.f))
                if fit > self.fit_tol * self.scale:
                    self._coef = (None, None, [])
                else:
                    cut = self.fit_tol * self.scale
                    support = [k for k in range(len(ctx.chars)) if abs(a[k]) > cut or abs(t[k]) > cut]
                    self._coef = (a, t, support)
        return self._coef

    def top_pair(self, a, t, need_invariant: bool = False):
        """The two characters carrying the largest coefficients, in index order."""
        ks = [k for k in range(len(self.ctx.chars)) if not need_invariant or self.ctx.invariant[k]]
        if len(ks) < 2:
            return None
        ks.sort(key=lambda k: -(abs(a[k]) + abs(t[k])))
        return sorted(ks[:2])

    def direction(self, need_invariant: bool = False):
        """Character ``χ_k`` spanning the larger of f, g, with the least-squares
        coordinates ``(μ, ν)`` of f and g along it."""
        ctx = self.ctx
        if not ctx.chars:
            return None
        v = self.f if sup(self.f) >= sup(self.g) else self.g
        coef = (np.conj(ctx.C).T @ v) / np.sum(np.abs(ctx.C) ** 2, axis=0)
        dev = np.max(np.abs(ctx.C * coef[None, :] - v[:, None]), axis=0)
        order = np.argsort(dev, kind="stable")
        for k in order:
            if dev[k] > self.fit_tol * self.scale:
                break
            if need_invariant and not ctx.invariant[k]:
                continue
            chi = ctx.C[:, k]
            den = np.vdot(chi, chi)
            return int(k), complex(np.vdot(chi, self.f) / den), complex(np.vdot(chi, self.g) / den)
        return None

    def fit_scalar(self, target, basis) -> complex:
        """Least-squares λ in ``target ≈ λ basis``."""
        den = np.vdot(basis, basis)
        return complex(np.vdot(basis, target) / den) if den != 0 else 0j

    def phi_ok(self, k: int, phi, sign: int | None) -> bool:
        ctx = self.ctx
        if ctx.phi_basis[k].shape[1] == 0 or self.is_zero(phi):
            return False
        proj = ctx.phi_proj[k] @ phi
        if max_dev(proj, phi) > self.fit_tol * self.scale:
            return False
        if sign is not None:
            return max_dev(compose_sigma(phi, ctx.sigma), sign * phi) <= self.fit_tol * self.scale
        return True


def _ratio_param(mu: complex, nu: complex, kappa: complex = 1) -> complex | None:
    """Solve ``μ = κd/(1+d²)``, ``ν = 1/(1+d²)`` for ``d``.

    Uses ``d = μ/(κν)`` while ``ν`` dominates; otherwise the root of
    ``μd² - κd + μ = 0`` that best reproduces ``ν``, which stays accurate when
    both coordinates are tiny.
    """
    if nu != 0 and abs(nu) >= abs(mu):
        return mu / (kappa * nu)
    if mu == 0:
        return None
    disc = np.sqrt(complex(kappa * kappa - 4 * mu * mu))
    roots = [r for r in ((kappa + disc) / (2 * mu), (kappa - disc) / (2 * mu)) if r != 0]
    if not roots:
        return None
    return min(roots, key=lambda d: abs(nu - 1 / (1 + d * d)) if 1 + d * d != 0 else np.inf)


def _project_phi(m: _Matcher, k: int, phi) -> np.ndarray:
    return m.ctx.phi_proj[k] @ phi


# ---- cosine subtraction (TE3)

def _te3_candidates(m: _Matcher):
    f, g, ctx = m.f, m.g, m.ctx
    if m.is_zero(f) and m.is_zero(g):
        yield FamilyCase("TE3.1")
        return
    if m.off_square(g):
        c = m.fit_scalar(f, g)
        c = I if abs(c - I) <= abs(c + I) else -I
        yield FamilyCase("TE3.2", {"g": m.off_part(g), "c": c})
    dep = linear_dependence(g, f, DEP_TOL)
    if dep.kind == "second_zero":
        k = m.char(g, need_invariant=True)
        if k is not None:
            yield FamilyCase("TE3.3", {"chi": ctx.chars[k], "alpha": 0j})
    hit = m.direction(need_invariant=True)
    if hit is not None:
        k, mu, nu = hit
        alpha = _ratio_param(mu, nu)
        if alpha is not None:
            yield FamilyCase("TE3.3", {"chi": ctx.chars[k], "alpha": complex(alpha)})
    yield from _te3_independent(m)


def _te3_independent(m: _Matcher):
    f, g, ctx = m.f, m.g, m.ctx
    a, t, support = m.coefficients()
    if len(support) == 1:
        # δ near 0 or ∞ leaves the second character below the support cut
        support = m.top_pair(a, t, need_invariant=True) or support
    if len(support) == 2 and all(ctx.invariant[k] for k in support):
        k1, k2 = support
        # g = a1 χ1 + a2 χ2, f = t (χ2 - χ1), δ = t / a1 = a2 / t
        tt = (t[k2] - t[k1]) / 2
        if abs(a[k1]) >= abs(a[k2]) and a[k1] != 0:
            d = tt / a[k1]
        elif tt != 0:
            d = a[k2] / tt
        else:
            d = None
        if d is not None and d != 0:
            yield FamilyCase("TE3.4", {"chi1": ctx.chars[k1], "chi2": ctx.chars[k2], "delta": complex(d)})
    k = m.char(g + I * f)
    if k is not None and ctx.star[k] != k and ctx.sq_invariant[k]:
        yield FamilyCase("TE3.5", {"chi": ctx.chars[k]})
    phi = I * f
    for k, chi in enumerate(ctx.chars):
        if not ctx.invariant[k] or not m.phi_ok(k, phi, 1):
            continue
        d = g - chi
        sg = 1 if max_dev(d, phi) <= max_dev(d, -phi) else -1
        yield FamilyCase("TE3.6", {"chi": chi, "phi": _project_phi(m, k, phi), "sign": sg})


# ---- sine addition (P1)

def _p1_candidates(m: _Matcher):
    f, g, ctx = m.f, m.g, m.ctx
    if m.is_zero(f):
        yield FamilyCase("P1.1", {"g": g.copy()})
        return
    if m.off_square(f) and m.is_zero(g):
        yield FamilyCase("P1.2", {"f": m.off_part(f)})
    hit = m.direction(need_invariant=True)
    if hit is not None:
        k, mu, nu = hit
        # f = χ/(2α), g = χ/2
        if mu != 0 and nu != 0:
            yield FamilyCase("P1.3", {"chi": ctx.chars[k], "alpha": complex(nu / mu)})
    a, t, support = m.coefficients()
    if len(support) == 1:
        # δ near 0 or ∞ leaves the second character below the support cut
        support = m.top_pair(a, t, need_invariant=True) or support
    if len(support) == 2 and all(ctx.invariant[k] for k in support):
        k1, k2 = support
        c = (t[k1] - t[k2]) / 2
        if c != 0:
            yield FamilyCase("P1.4", {"chi1": ctx.chars[k1], "chi2": ctx.chars[k2], "c": complex(c)})
    k = m.char(g, need_invariant=True)
    if k is not None and m.phi_ok(k, f, 1):
        yield FamilyCase("P1.5", {"chi": ctx.chars[k], "phi": _project_phi(m, k, f)})


# ---- sine subtraction (TH3)

def phase_key(v, decimals: int = 9) -> tuple:
    """Order by argument in ``[0, 2π)`` entry by entry, zeros first."""
    v = cfunc(v)
    ang = np.round(np.mod(np.angle(v), 2 * np.pi), decimals)
    ang = np.where(ang >= round(2 * np.pi, decimals), 0.0, ang)  # -0 rounds up to 2π
    return tuple(np.where(np.abs(v) < 10.0 ** -decimals, -1.0, ang).tolist())


def swap_representative(ctx: Context, k: int) -> int:
    """Canonical member of the pair ``{χ, χ∘σ}`` (TH3.3 is parameterized
    two-to-one by it): the smaller phase key, so on a cyclic group the
    character ``x -> e^(2πijx/n)`` with the smaller ``j``."""
    j = ctx.star[k]
    return min((k, j), key=lambda i: phase_key(ctx.chars[i]))


def _th3_candidates(m: _Matcher):
    f, g, ctx = m.f, m.g, m.ctx
    if m.is_zero(f):
        yield FamilyCase("TH3.1", {"g": g.copy()})
        return
    if m.off_square(f):
        yield FamilyCase("TH3.2", {"f": m.off_part(f), "alpha": m.fit_scalar(g, f)})
    a, t, support = m.coefficients()
    if len(support) == 2:
        k1, k2 = support
        if ctx.star[k1] == k2 and ctx.sq_invariant[k1]:
            k1 = swap_representative(ctx, k1)
            k2 = ctx.star[k1]
            c = (t[k1] - t[k2]) / 2
            c1 = a[k1] - a[k2]
            if c != 0:
                yield FamilyCase("TH3.3", {"chi": ctx.chars[k1], "c": complex(c), "c1": complex(c1)})
    for k, chi in enumerate(ctx.chars):
        if not ctx.invariant[k] or not m.phi_ok(k, f, -1):
            continue
        c2 = m.fit_scalar(g - chi, f)
        yield FamilyCase("TH3.4", {"chi": chi, "phi": _project_phi(m, k, f), "c2": c2})


# ---- plain laws (PHI1, PHI2)

def _ordered_pair(ctx: Context, support):
    """(chi1, chi2, idx1, idx2) ordered lexicographically; a lone character
    is paired with the zero function (index None)."""
    zero = np.zeros(ctx.n, dtype=np.complex128)
    items = [(ctx.chars[k], k) for k in support]
    if len(items) == 1:
        items.append((zero, None))
    items.sort(key=lambda it: lex_key(it[0]))
    (c1, k1), (c2, k2) = items
    return c1, c2, k1, k2


def _phi1_candidates(m: _Matcher):
    f, g, ctx = m.f, m.g, m.ctx
    if m.is_zero(f) and m.is_zero(g):
        yield FamilyCase("PHI1.1")
        return
    if m.off_square(f):
        sg = 1 if max_dev(g, f) <= max_dev(g, -f) else -1
        yield FamilyCase("PHI1.3", {"f": m.off_part(f), "sign": sg})
    if m.is_zero(f):
        k = m.char(g)
        if k is not None:
            yield FamilyCase("PHI1.4", {"chi": ctx.chars[k], "phi": np.zeros(ctx.n, complex), "sign": 1})
    a, t, support = m.coefficients()
    if len(support) in (1, 2):
        c1, c2, k1, k2 = _ordered_pair(ctx, support)
        # g = (χ1 + δ²χ2)/(1+δ²),  f = -iδ(χ1 - χ2)/(1+δ²)
        d = None
        if k1 is not None and k2 is not None:
            d = _ratio_param(t[k1], a[k1], -I) if abs(a[k1]) >= abs(a[k2]) else None
            if d is None:
                e = _ratio_param(-t[k2], a[k2], -I)
                d = 1 / e if e else None
        elif k1 is not None:
            d = _ratio_param(t[k1], a[k1], -I)
        else:
            # χ1 = 0: swapping slots maps δ to 1/δ and flips the sign of f
            e = _ratio_param(-t[k2], a[k2], -I)
            d = 1 / e if e else None
        if d is not None and d != 0:
            yield FamilyCase("PHI1.2", {"chi1": c1, "chi2": c2, "delta": complex(d)})
    for k, chi in enumerate(ctx.chars):
        if not m.phi_ok(k, f, None):
            continue
        d = g - chi
        sg = 1 if max_dev(d, f) <= max_dev(d, -f) else -1
        yield FamilyCase("PHI1.4", {"chi": chi, "phi": _project_phi(m, k, f), "sign": sg})


def _phi2_candidates(m: _Matcher):
    f, g, ctx = m.f, m.g, m.ctx
    if m.is_zero(f):
        yield FamilyCase("PHI2.0", {"g": g.copy()})
        return
    if m.off_square(f) and m.is_zero(g):
        yield FamilyCase("PHI2.2", {"f": m.off_part(f)})
    a, t, support = m.coefficients()
    if len(support) in (1, 2):
        c1, c2, k1, k2 = _ordered_pair(ctx, support)
        if k1 is not None and k2 is not None:
            c = (t[k1] - t[k2]) / 2
        elif k1 is not None:
            c = t[k1]
        else:
            c = -t[k2]
        if c != 0:
            yield FamilyCase("PHI2.1", {"chi1": c1, "chi2": c2, "c": complex(c)})
    k = m.char(g)
    if k is not None and m.phi_ok(k, f, None):
        yield FamilyCase("PHI2.3", {"chi": ctx.chars[k], "phi": _project_phi(m, k, f)})


_CANDIDATES = {
    "TE3": _te3_candidates,
    "P1": _p1_candidates,
    "TH3": _th3_candidates,
    "PHI1": _phi1_candidates,
    "PHI2": _phi2_candidates,
}


def classify(eq, s: FiniteSemigroup, sigma: Automorphism | None, f, g,
             tol: float = CLASS_TOL, fit_tol: float = FIT_TOL, singular_retry: bool = True):
    """Assign a solution pair to its theorem case, or return ``Unclassified``.

    Candidates are generated in the order of the theorem proofs (zero pair,
    vanishing on S², dependent pair, independent pair) and the first one whose
    parameters rebuild (f, g) within ``fit_tol`` wins. A pair that fails
    only because it sits near a singular point of the solution set is retried
    at :func:`singular_radius`; such matches carry ``fit == "singular"``.
    """
    eq = EquationTag.parse(eq)
    ctx = context(s, None if eq.plain else sigma)
    f, g = cfunc(f), cfunc(g)
    scale = max(1.0, sup(f), sup(g))
    r = equation_residual(eq, s, ctx.sigma, f, g)
    if r > tol * scale * scale:
        raise NotASolution(r)
    m = _Matcher(ctx, f, g, tol, fit_tol)
    for cand in _CANDIDATES[EQUATION_THEOREM[eq]](m):
        hit = m.ok(cand)
        if hit is not None:
            return hit
    radius = singular_radius(r, scale)
    if singular_retry and radius > fit_tol:
        # near a singular point of the solution set the forward error is only
        # bounded by ~ r^(1/3); retry once with every tolerance at that radius
        m = _Matcher(ctx, f, g, tol, radius, zero_tol=radius)
        for cand in _CANDIDATES[EQUATION_THEOREM[eq]](m):
            hit = m.ok(cand)
            if hit is not None:
                return FamilyCase(hit.case, hit.params, fit="singular")
    return Unclassified(_profile(ctx, f, g, r))


def singular_radius(residual: float, scale: float = 1.0) -> float:
    """Relative forward-error radius ``κ (r/scale²)^(1/3)`` of a point with
    residual ``r`` near a root of multiplicity up to three."""
    return SINGULAR_KAPPA * (residual / (scale * scale)) ** (1.0 / 3.0)


def _profile(ctx: Context, f, g, residual: float) -> dict:
    dep = linear_dependence(f, g)
    fs, gs = compose_sigma(f, ctx.sigma), compose_sigma(g, ctx.sigma)
    return {
        "residual": residual,
        "dependence": dep.kind,
        "f_norm": sup(f),
        "g_norm": sup(g),
        "f_on_square": sup(f[ctx.s2]),
        "g_on_square": sup(g[ctx.s2]),
        "f_star_minus_f": max_dev(fs, f),
        "f_star_plus_f": max_dev(fs, -f),
        "g_star_minus_g": max_dev(gs, g),
    }


# ------------------------------------------------------------------ symmetry lemmas

@dataclass
class SymmetryReport:
    lemma: str
    applicable: bool
    holds: bool | None = None
    f_sign: int | None = None
    beta: complex | None = None
    deviations: dict = field(default_factory=dict)
    reason: str = ""

    def to_json(self) -> dict:
        out = {"lemma": self.lemma, "applicable": self.applicable, "holds": self.holds,
               "deviations": self.deviations}
        if self.f_sign is not None:
            out["f_sign"] = self.f_sign
        if self.beta is not None:
            out["beta"] = [self.beta.real, self.beta.imag]
        if self.reason:
            out["reason"] = self.reason
        return out


_LEMMA = {
    EquationTag.COS_SUB: "Le1",
    EquationTag.COS_SUB_VARIANT: "RR1",
    EquationTag.SINE_ADD: "Le2",
    EquationTag.SINE_ADD_VARIANT: "RR2",
    EquationTag.SINE_SUB: "Le3",
}


def check_symmetry_lemmas(eq, s: FiniteSemigroup, sigma: Automorphism | None, f, g,
                          tol: float = CLASS_TOL) -> SymmetryReport:
    """Check the twist symmetries forced on linearly independent solutions.

    cosine laws: g* = g and f* = ±f; sine addition laws: f* = f and g* = g;
    sine subtraction: f* = -f and g* - g = βf for a fitted constant β.
    """
    eq = EquationTag.parse(eq)
    if eq not in _LEMMA:
        raise ValueError(f"no symmetry lemma for {eq.value}")
    lemma = _LEMMA[eq]
    sigma = sigma if sigma is not None else identity(s.order)
    f, g = cfunc(f), cfunc(g)
    scale = max(1.0, sup(f), sup(g))
    r = equation_residual(eq, s, sigma, f, g)
    if r > tol * scale * scale:
        raise NotASolution(r)
    if not linear_dependence(f, g).independent:
        return SymmetryReport(lemma, False, reason="f and g are not linearly independent")
    fs, gs = compose_sigma(f, sigma), compose_sigma(g, sigma)
    lim = tol * scale
    dev = {"f_star_minus_f": max_dev(fs, f), "f_star_plus_f": max_dev(fs, -f),
           "g_star_minus_g": max_dev(gs, g)}
    if lemma in ("Le1", "RR1"):
        sign = 1 if dev["f_star_minus_f"] <= dev["f_star_plus_f"] else -1
        best = min(dev["f_star_minus_f"], dev["f_star_plus_f"])
        holds = dev["g_star_minus_g"] <= lim and best <= lim
        return SymmetryReport(lemma, True, holds, f_sign=sign, deviations=dev)
    if lemma in ("Le2", "RR2"):
        holds = dev["f_star_minus_f"] <= lim and dev["g_star_minus_g"] <= lim
        return SymmetryReport(lemma, True, holds, f_sign=1, deviations=dev)
    d = gs - g
    beta = complex(np.vdot(f, d) / np.vdot(f, f))
    dev["g_star_minus_g_minus_beta_f"] = max_dev(d, beta * f)
    holds = dev["f_star_plus_f"] <= lim and dev["g_star_minus_g_minus_beta_f"] <= lim
    return SymmetryReport(lemma, True, holds, f_sign=-1, beta=beta, deviations=dev)


# ------------------------------------------------------------------ instances

_ALPHAS = (0j, 1 + 0j, 0.5 - 0.3j)
_DELTAS = (2 + 0j, 0.5 + 0.5j)
_CS = (1 + 0j, 0.3 - 0.7j)


def _off_square_vectors(ctx: Context) -> list[np.ndarray]:
    free = np.flatnonzero(~ctx.s2)
    if len(free) == 0:
        return []
    v = np.zeros(ctx.n, dtype=np.complex128)
    v[free] = 1.0 + 0.5j * np.arange(1, len(free) + 1)
    return [v]


def _arbitrary(ctx: Context) -> np.ndarray:
    k = np.arange(ctx.n)
    return np.cos(1.3 * k + 0.4) + 1j * np.sin(0.7 * k + 1.1)


def family_instances(eq, s: FiniteSemigroup, sigma: Automorphism | None = None) -> Iterator[FamilyCase]:
    """Representative instances of every case that is non-empty on (S, σ)."""
    eq = EquationTag.parse(eq)
    thm = EQUATION_THEOREM[eq]
    ctx = context(s, None if eq.plain else sigma)
    chars = ctx.chars
    inv = [k for k in range(len(chars)) if ctx.invariant[k]]
    swapping = [k for k in range(len(chars)) if ctx.star[k] != k and ctx.sq_invariant[k]]
    off = _off_square_vectors(ctx)

    def phis(k, sign):
        b = ctx.symmetric_phi_basis(k, sign) if sign else ctx.phi_basis[k]
        return [b[:, j] for j in range(b.shape[1])]

    if thm == "TE3":
        yield FamilyCase("TE3.1")
        for v in off:
            for c in (I, -I):
                yield FamilyCase("TE3.2", {"g": v, "c": c})
        for k in inv:
            for a in _ALPHAS:
                yield FamilyCase("TE3.3", {"chi": chars[k], "alpha": a})
        for i, k1 in enumerate(inv):
            for k2 in inv[i + 1:]:
                for d in _DELTAS:
                    yield FamilyCase("TE3.4", {"chi1": chars[k1], "chi2": chars[k2], "delta": d})
        for k in swapping:
            yield FamilyCase("TE3.5", {"chi": chars[k]})
        for k in inv:
            for phi in phis(k, 1):
                for sg in (1, -1):
                    yield FamilyCase("TE3.6", {"chi": chars[k], "phi": phi, "sign": sg})
    elif thm == "P1":
        yield FamilyCase("P1.1", {"g": _arbitrary(ctx)})
        for v in off:
            yield FamilyCase("P1.2", {"f": v})
        for k in inv:
            for a in _ALPHAS[1:]:
                yield FamilyCase("P1.3", {"chi": chars[k], "alpha": a})
        for i, k1 in enumerate(inv):
            for k2 in inv[i + 1:]:
                for c in _CS:
                    yield FamilyCase("P1.4", {"chi1": chars[k1], "chi2": chars[k2], "c": c})
        for k in inv:
            for phi in phis(k, 1):
                yield FamilyCase("P1.5", {"chi": chars[k], "phi": phi})
    elif thm == "TH3":
        yield FamilyCase("TH3.1", {"g": _arbitrary(ctx)})
        for v in off:
            for a in (0j, 1.5 + 0j):
                yield FamilyCase("TH3.2", {"f": v, "alpha": a})
        for k in swapping:
            if swap_representative(ctx, k) != k:
                continue
            for c in _CS:
                for c1 in (0j, 0.4 + 0.2j):
                    yield FamilyCase("TH3.3", {"chi": chars[k], "c": c, "c1": c1})
        for k in inv:
            for phi in phis(k, -1):
                for c2 in (0j, 0.7 + 0j):
                    yield FamilyCase("TH3.4", {"chi": chars[k], "phi": phi, "c2": c2})
    elif thm == "PHI1":
        yield FamilyCase("PHI1.1")
        zero = np.zeros(ctx.n, dtype=np.complex128)
        pool = sorted([zero] + chars, key=lex_key)
        for i, c1 in enumerate(pool):
            for c2 in pool[i + 1:]:
                for d in _DELTAS:
                    yield FamilyCase("PHI1.2", {"chi1": c1, "chi2": c2, "delta": d})
        for v in off:
            for sg in (1, -1):
                yield FamilyCase("PHI1.3", {"f": v, "sign": sg})
        for k, chi in enumerate(chars):
            yield FamilyCase("PHI1.4", {"chi": chi, "phi": zero, "sign": 1})
            for phi in phis(k, 0):
                for sg in (1, -1):
                    yield FamilyCase("PHI1.4", {"chi": chi, "phi": phi, "sign": sg})
    else:
        yield FamilyCase("PHI2.0", {"g": _arbitrary(ctx)})
        zero = np.zeros(ctx.n, dtype=np.complex128)
        pool = sorted([zero] + chars, key=lex_key)
        for i, c1 in enumerate(pool):
            for c2 in pool[i + 1:]:
                for c in _CS:
                    yield FamilyCase("PHI2.1", {"chi1": c1, "chi2": c2, "c": c})
        for v in off:
            yield FamilyCase("PHI2.2", {"f": v})
        for k, chi in enumerate(chars):
            for phi in phis(k, 0):
                yield FamilyCase("PHI2.3", {"chi": chi, "phi": phi})
