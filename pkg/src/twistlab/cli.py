"""Command-line front end.

Exit codes: 0 success, 1 invalid input or file, 2 verification failure
(unclassified solution, equivalence breach, failed residual or lemma check),
3 internal residual guard.
"""

from __future__ import annotations

import argparse
import sys

from . import continuum
from .equations import SIGMA_EQUATIONS, EquationTag, equation_residual
from .families import (
    CLASS_TOL,
    NotASolution,
    ResidualFailure,
    check_symmetry_lemmas,
    classify,
)
from .funcspace import enumerate_multiplicative, solve_special_sine, to_pairs
from .io import FormatError, parse_sigma, read_solution, read_table
from .oracle import (
    EQUIVALENT_PAIRS,
    SolverConfig,
    check_equivalence,
    dumps_report,
    find_all_solutions,
)
from .semigroup import SemigroupError, enumerate_automorphisms, enumerate_semigroups

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_GUARD = 0, 1, 2, 3

EQUATION_CHOICES = [t.value for t in EquationTag]


class InputError(ValueError):
    pass


def _emit(obj, args) -> None:
    text = dumps_report(obj)
    out = getattr(args, "json", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _positive(kind):
    def conv(text):
        try:
            v = kind(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
        if v <= 0:
            raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
        return v
    return conv


def _load(args):
    s = read_table(args.table)
    sigma = parse_sigma(getattr(args, "sigma", "id") or "id", s)
    return s, sigma


def _cfg(args) -> SolverConfig:
    kw = {"n_starts": args.starts, "seed": args.seed}
    if getattr(args, "tol", None) is not None:
        kw["converge_tol"] = args.tol
    return SolverConfig(**kw)


def _table_json(s):
    return {"label": s.label, "table": s.table.tolist()}


# ------------------------------------------------------------------ commands

def cmd_gen(args) -> int:
    tables = list(enumerate_semigroups(args.order, cap=args.cap, canonical=args.canonical))
    _emit({"order": args.order, "canonical": args.canonical, "count": len(tables),
           "tables": [t.table.tolist() for t in tables]}, args)
    return EXIT_OK


def cmd_auts(args) -> int:
    s = read_table(args.table)
    auts = enumerate_automorphisms(s)
    _emit({"semigroup": _table_json(s), "count": len(auts),
           "automorphisms": [{"sigma": a.literal(), "perm": a.perm.tolist(), "order": a.order,
                              "involutive": a.involutive} for a in auts]}, args)
    return EXIT_OK


def cmd_mult(args) -> int:
    s = read_table(args.table)
    chars = enumerate_multiplicative(s, include_zero=args.include_zero)
    _emit({"semigroup": _table_json(s), "count": len(chars),
           "characters": [{"index": k, "values": to_pairs(c.values), "residual": c.residual}
                          for k, c in enumerate(chars)]}, args)
    return EXIT_OK


def cmd_phi(args) -> int:
    s = read_table(args.table)
    chars = enumerate_multiplicative(s)
    if not 0 <= args.chi < len(chars):
        raise InputError(f"--chi must index one of the {len(chars)} non-zero characters")
    chi = chars[args.chi].values
    basis = solve_special_sine(s, chi)
    _emit({"semigroup": _table_json(s), "chi": to_pairs(chi), "dimension": len(basis),
           "basis": [to_pairs(b) for b in basis]}, args)
    return EXIT_OK


def cmd_solve(args) -> int:
    s, sigma = _load(args)
    rep = find_all_solutions(args.eq, s, sigma, _cfg(args))
    _emit(rep.to_json(), args)
    if args.json:
        print(f"{rep.equation.value}: {len(rep.classified)} classified, {len(rep.unclassified)} unclassified, "
              f"{rep.converged} converged / {rep.diverged} diverged starts")
    return EXIT_VERIFY if rep.unclassified else EXIT_OK


def cmd_classify(args) -> int:
    s, sigma = _load(args)
    f, g = read_solution(args.sol, s.order)
    try:
        cls = classify(args.eq, s, sigma, f, g)
    except NotASolution as exc:
        _emit({"equation": args.eq, "error": "not a solution", "residual": exc.max_residual}, args)
        return EXIT_VERIFY
    _emit({"equation": args.eq, "class": cls.to_json()}, args)
    return EXIT_VERIFY if cls.case is None else EXIT_OK


def cmd_verify(args) -> int:
    s, sigma = _load(args)
    f, g = read_solution(args.sol, s.order)
    r = equation_residual(args.eq, s, sigma, f, g)
    ok = r <= args.tol
    _emit({"equation": args.eq, "residual": r, "tol": args.tol, "ok": ok}, args)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_equiv(args) -> int:
    s, sigma = _load(args)
    res = check_equivalence(s, sigma, args.pair, _cfg(args))
    _emit({"semigroup": _table_json(s), "sigma": sigma.literal(), "passed": res.passed, **res.details}, args)
    return EXIT_OK if res.passed else EXIT_VERIFY


def cmd_symm(args) -> int:
    s, sigma = _load(args)
    f, g = read_solution(args.sol, s.order)
    try:
        rep = check_symmetry_lemmas(args.eq, s, sigma, f, g)
    except NotASolution as exc:
        _emit({"equation": args.eq, "error": "not a solution", "residual": exc.max_residual}, args)
        return EXIT_VERIFY
    _emit({"equation": args.eq, "report": rep.to_json()}, args)
    return EXIT_VERIFY if rep.applicable and not rep.holds else EXIT_OK


def cmd_continuum(args) -> int:
    if args.app == "real" and args.scale is not None:
        raise InputError("--scale applies to --app axb")
    if args.app == "axb" and args.beta is not None:
        raise InputError("--beta applies to --app real")
    eq = EquationTag.parse(args.eq)
    if eq not in continuum.CONTINUUM_EQUATIONS:
        raise InputError("continuum supports --eq cos-sub or sine-add")
    rep = continuum.continuum_report(
        args.app, eq, beta=args.beta, scale=args.scale if args.scale is not None else continuum.DEFAULT_SCALE,
        sampler=args.sampler, n_samples=args.samples, seed=args.seed,
        alphas=args.alpha, cs=args.c, lams=args.lam)
    _emit(rep, args)
    return EXIT_OK if rep["max_residual"] <= args.tol else EXIT_VERIFY


def cmd_sweep(args) -> int:
    cfg = _cfg(args)
    eqs = [EquationTag.parse(args.eq)] if args.eq != "all" else list(SIGMA_EQUATIONS)
    rows = []
    total_bad = 0
    for order in range(1, args.order + 1):
        for s in enumerate_semigroups(order, cap=args.cap):
            for sigma in enumerate_automorphisms(s):
                for eq in eqs:
                    rep = find_all_solutions(eq, s, sigma, cfg)
                    bad = sum(x.multiplicity for x in rep.unclassified)
                    total_bad += bad
                    rows.append({"table": s.table.tolist(), "sigma": sigma.literal(), "equation": eq.value,
                                 "unclassified": bad, "cases": rep.case_counts()})
    _emit({"max_order": args.order, "equations": [e.value for e in eqs], "seed": cfg.seed,
           "starts": cfg.n_starts, "runs": len(rows), "unclassified": total_bad, "results": rows}, args)
    return EXIT_VERIFY if total_bad else EXIT_OK


# ------------------------------------------------------------------ parser

def _add_table(p, sigma=True, table_flag=True):
    if table_flag:
        p.add_argument("--table", required=True, help="Cayley table file")
    else:
        p.add_argument("table", help="Cayley table file")
    if sigma:
        p.add_argument("--sigma", default="id", help='automorphism: "id", "1,2,0" or "pow:BASE:K"')


def _add_solver(p):
    p.add_argument("--starts", type=_positive(int), default=SolverConfig.n_starts)
    p.add_argument("--seed", type=int, default=SolverConfig.seed)
    p.add_argument("--tol", type=_positive(float), default=None, help="solver convergence tolerance")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="twistlab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="enumerate labeled semigroups of one order")
    p.add_argument("--order", type=_positive(int), required=True)
    p.add_argument("--canonical", action="store_true", help="one table per isomorphism class")
    p.add_argument("--cap", type=_positive(int), default=4)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("auts", help="list automorphisms")
    _add_table(p, sigma=False, table_flag=False)
    p.set_defaults(func=cmd_auts)

    p = sub.add_parser("mult", help="list multiplicative functions")
    _add_table(p, sigma=False, table_flag=False)
    p.add_argument("--include-zero", action="store_true")
    p.set_defaults(func=cmd_mult)

    p = sub.add_parser("phi", help="basis of the special sine law for one character")
    _add_table(p, sigma=False, table_flag=False)
    p.add_argument("--chi", type=int, required=True, help="index into the mult listing")
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("solve", help="multistart search plus classification")
    p.add_argument("--eq", required=True, choices=EQUATION_CHOICES)
    _add_table(p)
    _add_solver(p)
    p.set_defaults(func=cmd_solve)

    for name, func, hlp in (("classify", cmd_classify, "assign a solution to its family"),
                            ("verify", cmd_verify, "residual of a solution"),
                            ("symm", cmd_symm, "twist-symmetry lemma report")):
        p = sub.add_parser(name, help=hlp)
        _add_table(p)
        p.add_argument("--eq", required=True, choices=EQUATION_CHOICES)
        p.add_argument("--sol", required=True, help='JSON file {"f": [[re, im], …], "g": …}')
        if name == "verify":
            p.add_argument("--tol", type=_positive(float), default=CLASS_TOL)
        p.set_defaults(func=func)

    p = sub.add_parser("equiv", help="an equation and its variant have the same solutions")
    _add_table(p)
    p.add_argument("--pair", required=True, choices=sorted(EQUIVALENT_PAIRS))
    _add_solver(p)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("continuum", help="closed-form families on the reals or the affine group")
    p.add_argument("--app", required=True, choices=["real", "axb"])
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--scale", type=float, default=None)
    p.add_argument("--eq", required=True, choices=["cos-sub", "sine-add"])
    p.add_argument("--samples", type=_positive(int), default=10_000)
    p.add_argument("--sampler", choices=["random", "grid"], default="random")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alpha", type=complex, nargs="+", default=[1.0])
    p.add_argument("--c", type=complex, nargs="+", default=[1.0])
    p.add_argument("--lam", type=complex, nargs="+", default=[0.0])
    p.add_argument("--tol", type=_positive(float), default=1e-9)
    p.set_defaults(func=cmd_continuum)

    p = sub.add_parser("sweep", help="completeness over all semigroups up to an order")
    p.add_argument("--order", type=_positive(int), required=True, help="maximum order")
    p.add_argument("--eq", default="all", choices=[t.value for t in SIGMA_EQUATIONS] + ["all"])
    p.add_argument("--cap", type=_positive(int), default=4)
    _add_solver(p)
    p.set_defaults(func=cmd_sweep)

    for p in sub.choices.values():
        p.add_argument("--json", default=None, help="write the JSON report here instead of stdout")
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except ResidualFailure as exc:
        print(f"internal residual guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (OSError, FormatError, SemigroupError, InputError, continuum.InvalidBeta,
            continuum.InvalidParameter, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
