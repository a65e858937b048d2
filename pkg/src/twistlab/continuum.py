"""Closed-form solution families on two continuous groups, checked by sampling.

Carriers:

* ``real``: ``(R, +)`` twisted by ``σ(x) = βx`` with ``β ∉ {0, ±1}``. The only
  σ-invariant character is ``χ ≡ 1`` and the only σ-invariant additive map is
  zero, so every family is constant apart from the arbitrary ``g`` of the
  sine-addition law.
* ``axb``: the affine group ``{(a, b): a > 0}`` with ``(a, b)(a', b') =
  (aa', ab' + b)``, twisted by ``σ(a, b) = (a, k b)``. Characters are
  ``a^λ`` and additive maps ``c log a``; both are σ-invariant for every ``k``.

Only the cosine-subtraction law ``g(xσ(y)) = g(x)g(y) + f(x)f(y)`` and the
sine-addition law ``f(xσ(y)) = f(x)g(y) + f(y)g(x)`` are covered.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .equations import EquationTag

SAMPLE_BOX = 10.0
A_RANGE = (0.1, 10.0)
DEFAULT_SCALE = 2023.0

CONTINUUM_EQUATIONS = (EquationTag.COS_SUB, EquationTag.SINE_ADD)


class InvalidBeta(ValueError):
    pass


class InvalidParameter(ValueError):
    pass


@dataclass(frozen=True)
class RealTwist:
    """``σ(x) = βx`` on the additive reals."""

    beta: float

    def __post_init__(self):
        b = float(self.beta)
        if not np.isfinite(b) or b in (0.0, 1.0, -1.0):
            raise InvalidBeta(f"beta must be a finite real outside {{0, 1, -1}}, got {self.beta!r}")

    def __call__(self, x):
        return self.beta * np.asarray(x, dtype=float)

    def power(self, m: int) -> "RealTwistPower":
        return RealTwistPower(self.beta ** m)

    def literal(self) -> dict:
        return {"beta": float(self.beta)}


@dataclass(frozen=True)
class RealTwistPower:
    """An iterate ``x -> β^m x``; may be the identity, hence unchecked."""

    factor: float

    def __call__(self, x):
        return self.factor * np.asarray(x, dtype=float)


@dataclass(frozen=True)
class AxBElement:
    a: float
    b: float

    def __post_init__(self):
        if not self.a > 0:
            raise InvalidParameter(f"a must be positive, got {self.a!r}")

    def __mul__(self, other: "AxBElement") -> "AxBElement":
        a, b = axb_mul((self.a, self.b), (other.a, other.b))
        return AxBElement(float(a), float(b))

    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [0.0, 1.0]])


def axb_mul(x, y):
    """Vectorized product of ``x = (a, b)`` and ``y = (a', b')``."""
    a, b = x
    a2, b2 = y
    return a * a2, a * b2 + b


@dataclass(frozen=True)
class AxBTwist:
    """``σ(a, b) = (a, k b)``; an automorphism for every ``k ≠ 0``."""

    scale: float = DEFAULT_SCALE

    def __post_init__(self):
        k = float(self.scale)
        if not np.isfinite(k) or k in (0.0, 1.0, -1.0):
            raise InvalidParameter(f"scale must be a finite real outside {{0, 1, -1}}, got {self.scale!r}")

    def __call__(self, x):
        a, b = x
        return a, self.scale * np.asarray(b, dtype=float)

    def power(self, m: int) -> Callable:
        k = self.scale ** m
        return lambda x: (x[0], k * np.asarray(x[1], dtype=float))

    def literal(self) -> dict:
        return {"scale": float(self.scale)}


# ------------------------------------------------------------------ families

def _cval(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


@dataclass(frozen=True, eq=False)
class ContinuumFamily:
    """One closed-form family member.

    ``carrier`` is ``"real"`` or ``"axb"``; ``kind`` names the family within
    the carrier/equation list; ``params`` holds the complex parameters
    (``alpha``, ``c``, ``lam``) and, for the arbitrary-g family, a seed.
    """

    carrier: str
    equation: EquationTag
    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "equation", _eq(self.equation))
        key = (self.carrier, self.equation, self.kind)
        if key not in _EVALUATORS:
            raise InvalidParameter(f"unknown family {key!r}")
        _CHECKS.get(key, lambda p: None)(self.params)

    def f(self, x) -> np.ndarray:
        return _EVALUATORS[(self.carrier, self.equation, self.kind)](self.params, x)[0]

    def g(self, x) -> np.ndarray:
        return _EVALUATORS[(self.carrier, self.equation, self.kind)](self.params, x)[1]

    def to_json(self) -> dict:
        out = {}
        for k, v in sorted(self.params.items()):
            out[k] = int(v) if k in ("sign", "seed") else _cval(v)
        return {"carrier": self.carrier, "equation": self.equation.value, "kind": self.kind, "params": out}

    def __repr__(self):
        ps = ", ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.carrier}:{self.equation.value}:{self.kind}({ps})"


def seeded_function(seed: int, terms: int = 6) -> Callable:
    """A fixed "arbitrary" complex function of one real variable.

    Random trigonometric sum; deterministic in ``seed`` so repeated evaluation
    at the same point agrees.
    """
    rng = np.random.default_rng(seed)
    amp = rng.normal(size=terms) + 1j * rng.normal(size=terms)
    freq = rng.uniform(-3.0, 3.0, size=terms)
    phase = rng.uniform(0.0, 2 * np.pi, size=terms)

    def g(x):
        x = np.asarray(x, dtype=float)
        return np.sum(amp * np.exp(1j * (np.multiply.outer(x, freq) + phase)), axis=-1)

    return g


def _ones(x):
    return np.ones(np.shape(x), dtype=np.complex128)


def _real_e3(params, x, kind):
    one = _ones(x)
    if kind == "Zero":
        return 0 * one, 0 * one
    if kind == "One":
        return 0 * one, one
    al = complex(params["alpha"])
    return al / (1 + al * al) * one, 1 / (1 + al * al) * one


def _real_e1(params, x, kind):
    one = _ones(x)
    if kind == "FZero":
        return 0 * one, seeded_function(int(params.get("seed", 0)))(x)
    al = complex(params["alpha"])
    return one / (2 * al), one / 2


def _chi(params, x):
    a = np.asarray(x[0], dtype=float)
    return a ** complex(params["lam"]) + 0j, np.log(a)


def _axb_e3(params, x, kind):
    chi, la = _chi(params, x)
    if kind == "ScaledChar":
        al = complex(params["alpha"])
        return al * chi / (1 + al * al), chi / (1 + al * al)
    c, sg = complex(params["c"]), int(params["sign"])
    return -1j * c * chi * la, chi + sg * c * chi * la


def _axb_e1(params, x, kind):
    chi, la = _chi(params, x)
    if kind == "Char":
        al = complex(params["alpha"])
        return chi / (2 * al), chi / 2
    c = complex(params["c"])
    return c * chi * la, chi


E3, E1 = EquationTag.COS_SUB, EquationTag.SINE_ADD

_EVALUATORS = {
    ("real", E3, "Zero"): lambda p, x: _real_e3(p, x, "Zero"),
    ("real", E3, "Const"): lambda p, x: _real_e3(p, x, "Const"),
    ("real", E3, "One"): lambda p, x: _real_e3(p, x, "One"),
    ("real", E1, "FZero"): lambda p, x: _real_e1(p, x, "FZero"),
    ("real", E1, "Const"): lambda p, x: _real_e1(p, x, "Const"),
    ("axb", E3, "ScaledChar"): lambda p, x: _axb_e3(p, x, "ScaledChar"),
    ("axb", E3, "LogFamily"): lambda p, x: _axb_e3(p, x, "LogFamily"),
    ("axb", E1, "Char"): lambda p, x: _axb_e1(p, x, "Char"),
    ("axb", E1, "LogFamily"): lambda p, x: _axb_e1(p, x, "LogFamily"),
}


def _need(params, *keys):
    for k in keys:
        if k not in params:
            raise InvalidParameter(f"missing parameter {k!r}")


def _alpha_not(excluded):
    def check(params):
        _need(params, "alpha")
        if any(abs(complex(params["alpha"]) - e) < 1e-12 for e in excluded):
            raise InvalidParameter(f"alpha must avoid {excluded}")
    return check


def _log_check(with_sign: bool):
    def check(params):
        _need(params, "c", "lam", *(["sign"] if with_sign else []))
        if complex(params["c"]) == 0:
            raise InvalidParameter("c must be non-zero")
        if with_sign and int(params["sign"]) not in (1, -1):
            raise InvalidParameter("sign must be +1 or -1")
    return check


_CHECKS = {
    ("real", E3, "Const"): _alpha_not((1j, -1j)),
    ("real", E1, "Const"): _alpha_not((0,)),
    ("axb", E3, "ScaledChar"): lambda p: (_need(p, "lam"), _alpha_not((0, 1j, -1j))(p)),
    ("axb", E3, "LogFamily"): _log_check(True),
    ("axb", E1, "Char"): lambda p: (_need(p, "lam"), _alpha_not((0,))(p)),
    ("axb", E1, "LogFamily"): _log_check(False),
}


def _eq(eq) -> EquationTag:
    eq = EquationTag.parse(eq)
    if eq not in CONTINUUM_EQUATIONS:
        raise ValueError(f"continuum carriers support cos-sub and sine-add only, got {eq.value}")
    return eq


def real_families(eq, twist: RealTwist, alphas=(1.0,), seed: int = 0) -> list[ContinuumFamily]:
    """The solution list on the twisted reals, one member per listed ``α``."""
    eq = _eq(eq)
    if not isinstance(twist, RealTwist):
        twist = RealTwist(twist)
    if eq is E3:
        out = [ContinuumFamily("real", E3, "Zero")]
        out += [ContinuumFamily("real", E3, "Const", {"alpha": complex(a)}) for a in alphas]
        out.append(ContinuumFamily("real", E3, "One"))
        return out
    out = [ContinuumFamily("real", E1, "FZero", {"seed": seed})]
    out += [ContinuumFamily("real", E1, "Const", {"alpha": complex(a)}) for a in alphas]
    return out


def axb_families(eq, alphas=(1.0,), cs=(1.0,), lams=(0.0,)) -> list[ContinuumFamily]:
    """The non-zero continuous solutions on the affine group over a parameter grid."""
    eq = _eq(eq)
    out = []
    for lam in lams:
        lam = complex(lam)
        if eq is E3:
            out += [ContinuumFamily("axb", E3, "ScaledChar", {"alpha": complex(a), "lam": lam}) for a in alphas]
            out += [ContinuumFamily("axb", E3, "LogFamily", {"c": complex(c), "lam": lam, "sign": sg})
                    for c in cs for sg in (1, -1)]
        else:
            out += [ContinuumFamily("axb", E1, "Char", {"alpha": complex(a), "lam": lam}) for a in alphas]
            out += [ContinuumFamily("axb", E1, "LogFamily", {"c": complex(c), "lam": lam}) for c in cs]
    return out


# ------------------------------------------------------------------ sampling

def sample_points(carrier: str, sampler: str = "random", n_samples: int = 10_000, seed: int = 0):
    """``(x, y)`` sample pairs; for ``axb`` each is an ``(a, b)`` array pair."""
    if n_samples < 1:
        raise ValueError("n_samples must be at least 1")
    lo, hi = np.log(A_RANGE[0]), np.log(A_RANGE[1])
    if sampler == "grid":
        side = max(1, int(np.ceil(np.sqrt(n_samples))))
        if carrier == "real":
            t = np.linspace(-SAMPLE_BOX, SAMPLE_BOX, side)
            x, y = np.meshgrid(t, t, indexing="ij")
            return x.ravel()[:n_samples], y.ravel()[:n_samples]
        # a on a log grid, b on a linear grid; pairs drawn from the product
        m = max(1, int(np.ceil(side ** 0.5)))
        a = np.exp(np.linspace(lo, hi, m))
        b = np.linspace(-SAMPLE_BOX, SAMPLE_BOX, m)
        pa, pb = np.meshgrid(a, b, indexing="ij")
        pts = (pa.ravel(), pb.ravel())
        i, j = np.meshgrid(np.arange(len(pts[0])), np.arange(len(pts[0])), indexing="ij")
        i, j = i.ravel()[:n_samples], j.ravel()[:n_samples]
        return (pts[0][i], pts[1][i]), (pts[0][j], pts[1][j])
    if sampler != "random":
        raise ValueError(f"unknown sampler {sampler!r}")
    rng = np.random.default_rng(seed)
    if carrier == "real":
        return (rng.uniform(-SAMPLE_BOX, SAMPLE_BOX, n_samples),
                rng.uniform(-SAMPLE_BOX, SAMPLE_BOX, n_samples))
    a1, a2 = np.exp(rng.uniform(lo, hi, (2, n_samples)))
    b1, b2 = rng.uniform(-SAMPLE_BOX, SAMPLE_BOX, (2, n_samples))
    return (a1, b1), (a2, b2)


def residuals(family: ContinuumFamily, twist, x, y) -> np.ndarray:
    """``|LHS - RHS|`` of the family's equation at each sample pair."""
    if family.carrier == "real":
        p = np.asarray(x, dtype=float) + twist(y)
    else:
        p = axb_mul(x, twist(y))
    f, g = family.f, family.g
    if family.equation is E3:
        lhs, rhs = g(p), g(x) * g(y) + f(x) * f(y)
    else:
        lhs, rhs = f(p), f(x) * g(y) + f(y) * g(x)
    return np.abs(lhs - rhs)


def sample_residual(family: ContinuumFamily, twist=None, sampler: str = "random",
                    n_samples: int = 10_000, seed: int = 0) -> float:
    """Max equation residual over sampled pairs: ``x, y ∈ [-10, 10]`` on the
    reals; ``a`` log-uniform in ``[0.1, 10]`` and ``b ∈ [-10, 10]`` on the
    affine group."""
    if twist is None:
        twist = AxBTwist() if family.carrier == "axb" else None
    if twist is None:
        raise ValueError("the real carrier needs a RealTwist")
    x, y = sample_points(family.carrier, sampler, n_samples, seed)
    return float(np.max(residuals(family, twist, x, y), initial=0.0))


# ------------------------------------------------------------------ derivation checks

def invariant_exponents(beta: float, xs=None, tol: float = 1e-9, k_max: int = 1000,
                        seed: int = 0) -> list[complex]:
    """Exponents ``s`` with ``exp(s(β-1)x) = 1`` at every sample ``x``.

    A real part would change the modulus, so ``s = 2πik / ((β-1)x₀)`` for the
    smallest non-zero ``|x₀|``; every such candidate with ``|k| ≤ k_max`` is
    tested on all samples. Equally spaced samples admit aliased exponents, so
    the default is 200 seeded uniform samples in ``[-10, 10]``, on which only
    ``s = 0`` survives.
    """
    if xs is None:
        xs = np.random.default_rng(seed).uniform(-SAMPLE_BOX, SAMPLE_BOX, 200)
    xs = np.asarray(xs, dtype=float)
    nz = xs[np.abs(xs) > 0]
    if len(nz) == 0:
        raise ValueError("need a non-zero sample")
    x0 = nz[np.argmin(np.abs(nz))]
    out = []
    for k in range(-k_max, k_max + 1):
        s = 2j * np.pi * k / ((beta - 1) * x0)
        if np.max(np.abs(np.exp(s * (beta - 1) * xs) - 1)) <= tol:
            out.append(complex(s) + 0j)  # drop signed zeros
    return out


def twist_is_involutive(twist, carrier: str, n_samples: int = 1000, seed: int = 0) -> bool:
    """Whether ``σ²`` fixes every sampled point."""
    x, _ = sample_points(carrier, "random", n_samples, seed)
    sq = twist.power(2)
    if carrier == "real":
        return bool(np.allclose(sq(x), x, rtol=0, atol=1e-12))
    a2, b2 = sq(x)
    return bool(np.allclose(a2, x[0], rtol=0, atol=1e-12) and np.allclose(b2, x[1], rtol=0, atol=1e-12))


def continuum_report(carrier: str, eq, beta: float | None = None, scale: float = DEFAULT_SCALE,
                     sampler: str = "random", n_samples: int = 10_000, seed: int = 0,
                     alphas=(1.0,), cs=(1.0,), lams=(0.0,)) -> dict:
    """Families and their sampled residuals, in the report schema."""
    eq = _eq(eq)
    if carrier == "real":
        twist = RealTwist(beta if beta is not None else 2.0)
        fams = real_families(eq, twist, alphas, seed)
    elif carrier == "axb":
        twist = AxBTwist(scale)
        fams = axb_families(eq, alphas, cs, lams)
    else:
        raise ValueError(f"unknown carrier {carrier!r}")
    rows = []
    for fam in fams:
        row = fam.to_json()
        row["residual"] = sample_residual(fam, twist, sampler, n_samples, seed)
        rows.append(row)
    return {
        "carrier": carrier,
        "equation": eq.value,
        "twist": twist.literal(),
        "involutive": twist_is_involutive(twist, carrier, seed=seed),
        "sampler": sampler,
        "samples": n_samples,
        "seed": seed,
        "families": rows,
        "max_residual": max((r["residual"] for r in rows), default=0.0),
    }
