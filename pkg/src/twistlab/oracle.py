"""Brute-force discovery of solutions and the verification reports built on it.

The solver treats ``(f, g)`` as ``2n`` complex unknowns and drives the ``n²``
pair residuals to zero with a batched Levenberg-Marquardt iteration from many
seeded random starts, plus one start at every constructible family instance.
Every converged point is then handed to the classifier independently.
"""

from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from .equations import (
    SIGMA_EQUATIONS,
    BatchSystem,
    EquationTag,
    equation_residual,
)
from .families import (
    CLASS_TOL,
    EXCEPTIONAL_CASES,
    FIT_TOL,
    FamilyError,
    NotASolution,
    Unclassified,
    check_symmetry_lemmas,
    classify,
    construct,
    family_instances,
)
from .funcspace import linear_dependence, sup, to_pairs
from .semigroup import Automorphism, FiniteSemigroup, enumerate_automorphisms, identity, is_abelian

log = logging.getLogger(__name__)

DIVERGENCE_CUTOFF = 1e6
PROJECTION_TOL = 1e-10


@dataclass(frozen=True)
class SolverConfig:
    n_starts: int = 500
    seed: int = 42
    newton_max_iter: int = 200
    converge_tol: float = 1e-12
    damping: float = 1e-3
    start_box: float = 2.0
    dedup_tol: float = 1e-6
    polish_iter: int = 40
    refine_iter: int = 300  # extra polish for points the first pass leaves unclassified
    seed_families: bool = True
    class_tol: float = CLASS_TOL
    fit_tol: float = FIT_TOL
    singular_retry: bool = True
    batch_size: int = 512

    def __post_init__(self):
        for name in ("n_starts", "newton_max_iter", "converge_tol", "damping", "start_box", "dedup_tol"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


@dataclass
class Solution:
    f: np.ndarray
    g: np.ndarray
    residual: float
    classification: object  # FamilyCase | Unclassified
    multiplicity: int = 1
    projection: tuple | None = None  # exact family member, for unresolved points

    @property
    def case(self) -> str | None:
        return getattr(self.classification, "case", None)

    @property
    def check_pair(self) -> tuple:
        """The pair identity checks run on: the projection onto the matched
        family when the solver point is not resolved to ``PROJECTION_TOL``."""
        return self.projection if self.projection is not None else (self.f, self.g)

    def to_json(self) -> dict:
        out = {"f": to_pairs(self.f), "g": to_pairs(self.g), "residual": self.residual,
               "multiplicity": self.multiplicity, "class": self.classification.to_json()}
        if self.projection is not None:
            out["projection"] = {"f": to_pairs(self.projection[0]), "g": to_pairs(self.projection[1])}
        return out


@dataclass
class SolutionReport:
    equation: EquationTag
    semigroup: FiniteSemigroup
    sigma: Automorphism
    seed: int
    solutions: list = field(default_factory=list)
    converged: int = 0
    diverged: int = 0

    @property
    def unclassified(self) -> list:
        return [s for s in self.solutions if s.case is None]

    @property
    def classified(self) -> list:
        return [s for s in self.solutions if s.case is not None]

    def case_counts(self) -> dict:
        out = {}
        for s in self.solutions:
            key = s.case or "unclassified"
            out[key] = out.get(key, 0) + s.multiplicity
        return dict(sorted(out.items()))

    def to_json(self) -> dict:
        return {
            "equation": self.equation.value,
            "semigroup": {"label": self.semigroup.label, "table": self.semigroup.table.tolist()},
            "sigma": self.sigma.literal(),
            "solutions": [s.to_json() for s in self.classified],
            "unclassified": [s.to_json() for s in self.unclassified],
            "starts": {"converged": self.converged, "diverged": self.diverged},
            "seed": self.seed,
        }

    def dumps(self) -> str:
        return dumps_report(self.to_json())


def _float_repr(x: float) -> str:
    return format(x, ".17g")


def dumps_report(obj) -> str:
    """JSON with floats at 17 significant digits and sorted keys."""

    def enc(o):
        if isinstance(o, float):
            if o != o or o in (float("inf"), float("-inf")):
                return json.dumps(o)
            return _float_repr(o + 0.0)
        if isinstance(o, dict):
            return "{" + ", ".join(f"{json.dumps(str(k))}: {enc(v)}" for k, v in sorted(o.items())) + "}"
        if isinstance(o, (list, tuple)):
            return "[" + ", ".join(enc(v) for v in o) + "]"
        if isinstance(o, (np.floating,)):
            return enc(float(o))
        if isinstance(o, (np.integer,)):
            return str(int(o))
        return json.dumps(o)

    return enc(obj) + "\n"


# ------------------------------------------------------------------ numerics

def real_residual(system: BatchSystem, x: np.ndarray) -> np.ndarray:
    """Residual of the re/im split system: ``x`` (B, 4n) -> (B, 2n²)."""
    m = 2 * system.n
    z = x[:, :m] + 1j * x[:, m:]
    r = system.residual(z)
    return np.concatenate([r.real, r.imag], axis=1)


def real_jacobian(system: BatchSystem, x: np.ndarray) -> np.ndarray:
    """Analytic Jacobian of :func:`real_residual`, shape (B, 2n², 4n)."""
    m = 2 * system.n
    z = x[:, :m] + 1j * x[:, m:]
    j = system.jacobian(z)
    top = np.concatenate([j.real, -j.imag], axis=2)
    bot = np.concatenate([j.imag, j.real], axis=2)
    return np.concatenate([top, bot], axis=1)


def _maxnorm(r: np.ndarray) -> np.ndarray:
    return np.max(np.abs(r), axis=1)


def levenberg_marquardt(system: BatchSystem, z0: np.ndarray, cfg: SolverConfig):
    """Batched damped Gauss-Newton.

    The residual is holomorphic in ``z``, so the least-squares step of the
    re/im split system equals the complex normal-equation step used here.
    Returns ``(z, residual_maxnorm, converged_mask)``.
    """
    z = z0.astype(np.complex128).copy()
    B, m = z.shape
    mu = np.full(B, cfg.damping)
    r = system.residual(z)
    cost = np.sum(np.abs(r) ** 2, axis=1)
    res = _maxnorm(r)
    active = np.ones(B, dtype=bool)
    converged = res <= cfg.converge_tol
    extra = np.zeros(B, dtype=np.int64)
    eye = np.eye(m)
    for _ in range(cfg.newton_max_iter + cfg.polish_iter):
        idx = np.flatnonzero(active)
        if len(idx) == 0:
            break
        za, ra = z[idx], r[idx]
        j = system.jacobian(za)
        jh = np.conj(np.swapaxes(j, 1, 2))
        a = jh @ j
        g = (jh @ ra[:, :, None])[:, :, 0]
        diag = np.real(np.einsum("bii->bi", a))
        lam = mu[idx][:, None, None] * (eye * (1.0 + diag[:, None, :]))
        try:
            step = -np.linalg.solve(a + lam, g[:, :, None])[:, :, 0]
        except np.linalg.LinAlgError:
            step = -np.stack([np.linalg.lstsq(a[k] + lam[k], g[k], rcond=None)[0] for k in range(len(idx))])
        zn = za + step
        rn = system.residual(zn)
        cn = np.sum(np.abs(rn) ** 2, axis=1)
        ok = np.isfinite(cn) & (cn <= cost[idx])
        acc = idx[ok]
        z[acc], r[acc], cost[acc] = zn[ok], rn[ok], cn[ok]
        res[acc] = _maxnorm(rn[ok])
        mu[acc] = np.maximum(mu[acc] / 3.0, 1e-15)
        mu[idx[~ok]] *= 4.0
        newly = ~converged & (res <= cfg.converge_tol)
        converged |= newly
        extra[converged & active] += 1
        step_size = np.zeros(B)
        step_size[idx] = np.max(np.abs(step), axis=1)
        scale = np.maximum(1.0, np.max(np.abs(z), axis=1))
        polished = converged & ((step_size <= 1e-15 * scale) | (extra >= cfg.polish_iter)
                                | (res == 0.0) | (mu > 1e8))
        blown = ~converged & (~np.isfinite(res) | (res > DIVERGENCE_CUTOFF) | (mu > 1e12))
        active &= ~(polished | blown)
    return z, res, converged


def _starts(s: FiniteSemigroup, cfg: SolverConfig) -> np.ndarray:
    rng = np.random.default_rng(cfg.seed)
    m = 2 * s.order
    re = rng.uniform(-cfg.start_box, cfg.start_box, size=(cfg.n_starts, m))
    im = rng.uniform(-cfg.start_box, cfg.start_box, size=(cfg.n_starts, m))
    return re + 1j * im


def _seeded_starts(eq, s, sigma) -> np.ndarray:
    rows = []
    for case in family_instances(eq, s, sigma):
        try:
            f, g = construct(case, s, sigma, eq)
        except FamilyError:
            continue
        rows.append(np.concatenate([f, g]))
    return np.array(rows) if rows else np.zeros((0, 2 * s.order), complex)


def _round_key(z: np.ndarray, tol: float) -> tuple:
    q = np.round(np.concatenate([z.real, z.imag]) / tol).astype(np.int64)
    return tuple(q.tolist())


def _projection(cls, s, sigma, eq, f, g):
    """The matched family member, kept when the solver point is not resolved
    to ``PROJECTION_TOL`` (singular points of the solution set)."""
    if cls.case is None:
        return None
    f2, g2 = construct(cls, s, sigma, eq)
    scale = max(1.0, sup(f), sup(g))
    if max(np.max(np.abs(f2 - f)), np.max(np.abs(g2 - g))) <= PROJECTION_TOL * scale:
        return None
    return f2, g2


def _classify_point(eq, s, sigma, f, g, r, cfg):
    try:
        return classify(eq, s, sigma, f, g, tol=cfg.class_tol, fit_tol=cfg.fit_tol,
                        singular_retry=cfg.singular_retry)
    except NotASolution:
        return Unclassified({"residual": r, "reason": "rejected by classifier residual check"})


def find_all_solutions(eq, s: FiniteSemigroup, sigma: Automorphism | None = None,
                       cfg: SolverConfig | None = None) -> SolutionReport:
    """Multistart search for all (f, g) on (S, σ), each converged point classified."""
    cfg = cfg or SolverConfig()
    eq = EquationTag.parse(eq)
    sigma = sigma if sigma is not None else identity(s.order)
    n = s.order
    system = BatchSystem(eq, s, sigma)
    starts = _starts(s, cfg)
    if cfg.seed_families:
        starts = np.concatenate([starts, _seeded_starts(eq, s, sigma)])
    zs, ress, conv = [], [], []
    for lo in range(0, len(starts), cfg.batch_size):
        z, res, c = levenberg_marquardt(system, starts[lo:lo + cfg.batch_size], cfg)
        zs.append(z), ress.append(res), conv.append(c)
    z = np.concatenate(zs)
    conv = np.concatenate(conv)
    report = SolutionReport(eq, s, sigma, cfg.seed)
    report.diverged = int(np.sum(~conv))
    merged: dict = {}
    points = []
    for k in np.flatnonzero(conv):
        f, g = z[k, :n], z[k, n:]
        r = equation_residual(eq, s, sigma, f, g)
        if r > 10 * cfg.converge_tol:
            report.diverged += 1
            continue
        report.converged += 1
        points.append([k, r, _classify_point(eq, s, sigma, f, g, r, cfg)])
    # stalled iterates near very flat parts of the solution set: polish harder
    stuck = [p for p in points if p[2].case is None]
    if stuck and cfg.refine_iter > 0:
        idx = [p[0] for p in stuck]
        fine = replace(cfg, polish_iter=cfg.refine_iter, converge_tol=cfg.converge_tol * 1e-3)
        z2, _, _ = levenberg_marquardt(system, z[idx], fine)
        for p, row in zip(stuck, z2):
            r2 = equation_residual(eq, s, sigma, row[:n], row[n:])
            if r2 <= p[1]:
                cls = _classify_point(eq, s, sigma, row[:n], row[n:], r2, cfg)
                if cls.case is not None:
                    z[p[0]], p[1], p[2] = row, r2, cls
    for k, r, cls in points:
        f, g = z[k, :n].copy(), z[k, n:].copy()
        key = (cls.case or "~", _round_key(z[k], cfg.dedup_tol))
        if key in merged:
            merged[key].multiplicity += 1
        else:
            merged[key] = Solution(f, g, r, cls, projection=_projection(cls, s, sigma, eq, f, g))
    report.solutions = [merged[k] for k in sorted(merged)]
    return report


# ------------------------------------------------------------------ reports

@dataclass
class CheckResult:
    passed: bool
    details: dict = field(default_factory=dict)
    reports: list = field(default_factory=list)


def check_completeness(eq, s: FiniteSemigroup, sigma: Automorphism | None = None,
                       cfg: SolverConfig | None = None) -> CheckResult:
    """Pass iff every converged solver point lands in a listed case."""
    rep = find_all_solutions(eq, s, sigma, cfg)
    bad = sum(x.multiplicity for x in rep.unclassified)
    return CheckResult(bad == 0, {"unclassified": bad, "cases": rep.case_counts(),
                                  "converged": rep.converged, "diverged": rep.diverged}, [rep])


EQUIVALENT_PAIRS = {
    "cos": (EquationTag.COS_SUB, EquationTag.COS_SUB_VARIANT),
    "sine": (EquationTag.SINE_ADD, EquationTag.SINE_ADD_VARIANT),
}


def equivalence_breaches(rep: SolutionReport, other: EquationTag, tol: float = CLASS_TOL) -> list:
    """Solutions of ``rep`` whose residual under ``other`` exceeds ``tol``."""
    out = []
    for sol in rep.solutions:
        r = equation_residual(other, rep.semigroup, rep.sigma, *sol.check_pair)
        if r > tol:
            out.append((sol, r))
    return out


def check_equivalence(s: FiniteSemigroup, sigma: Automorphism | None, pair: str,
                      cfg: SolverConfig | None = None, reports: dict | None = None,
                      tol: float = CLASS_TOL) -> CheckResult:
    """Both equations of the pair have the same solutions, tested both ways."""
    a, b = EQUIVALENT_PAIRS[pair]
    reports = reports or {}
    ra = reports.get(a) or find_all_solutions(a, s, sigma, cfg)
    rb = reports.get(b) or find_all_solutions(b, s, sigma, cfg)
    ab = equivalence_breaches(ra, b, tol)
    ba = equivalence_breaches(rb, a, tol)
    details = {"pair": pair, "breaches_forward": len(ab), "breaches_backward": len(ba),
               "max_forward": max((r for _, r in ab), default=0.0),
               "max_backward": max((r for _, r in ba), default=0.0)}
    return CheckResult(not ab and not ba, details, [ra, rb])


def symmetry_failures(rep: SolutionReport, tol: float = CLASS_TOL) -> list:
    """Independent solutions violating the applicable twist-symmetry lemma."""
    out = []
    for sol in rep.solutions:
        f, g = sol.check_pair
        if not linear_dependence(f, g).independent:
            continue
        sr = check_symmetry_lemmas(rep.equation, rep.semigroup, rep.sigma, f, g, tol)
        if sr.applicable and not sr.holds:
            out.append((sol, sr))
    return out


def abelian_failures(rep: SolutionReport, tol: float = 1e-9) -> list:
    """Solutions outside the arbitrary-function cases that are not abelian."""
    out = []
    for sol in rep.solutions:
        if sol.case in EXCEPTIONAL_CASES or sol.case is None:
            continue
        f, g = sol.check_pair
        if not (is_abelian(f, rep.semigroup, tol) and is_abelian(g, rep.semigroup, tol)):
            out.append(sol)
    return out


def sweep(order: int, equations=SIGMA_EQUATIONS, cfg: SolverConfig | None = None,
          semigroups=None, progress=None):
    """Yield a report for every labeled semigroup of the order, automorphism and equation."""
    from .semigroup import enumerate_semigroups

    groups = semigroups if semigroups is not None else enumerate_semigroups(order)
    for s in groups:
        for sigma in enumerate_automorphisms(s):
            for eq in equations:
                rep = find_all_solutions(eq, s, sigma, cfg)
                if progress:
                    progress(rep)
                yield rep
