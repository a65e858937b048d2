"""Algebraic identities checked on generated inputs."""

import json

import numpy as np
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from _oracles import naive_residual
from twistlab.continuum import AxBTwist, ContinuumFamily, RealTwist, sample_residual
from twistlab.equations import EquationTag, equation_residual
from twistlab.families import FamilyCase, construct, lemma_m_reduce
from twistlab.funcspace import enumerate_multiplicative, linear_dependence, twist_invariant
from twistlab.oracle import dumps_report
from twistlab.semigroup import enumerate_automorphisms, enumerate_semigroups, make_automorphism

ORDER3 = list(enumerate_semigroups(3))
ORDER2 = list(enumerate_semigroups(2))
SMALL = ORDER2 + ORDER3

finite = st.floats(-3, 3, allow_nan=False, allow_infinity=False)
cplx = st.builds(complex, finite, finite)
semigroups = st.sampled_from(SMALL)
equations = st.sampled_from(list(EquationTag))


@settings(max_examples=60, deadline=None)
@given(semigroups, equations, st.data())
def test_residual_is_relabeling_invariant(s, eq, data):
    n = s.order
    sigma = data.draw(st.sampled_from(enumerate_automorphisms(s)))
    p = np.array(data.draw(st.permutations(range(n))))
    f = np.array(data.draw(st.lists(cplx, min_size=n, max_size=n)))
    g = np.array(data.draw(st.lists(cplx, min_size=n, max_size=n)))
    t = s.relabel(p)
    inv = np.argsort(p)
    # transported functions and automorphism: x' = p(x)
    f2, g2 = f[inv], g[inv]
    sig2 = make_automorphism(t, p[sigma.perm[inv]])
    a = equation_residual(eq, s, sigma, f, g)
    b = equation_residual(eq, t, sig2, f2, g2)
    assert abs(a - b) <= 1e-12 * max(1.0, a)
    perm = sigma.perm.tolist() if not eq.plain else list(range(n))
    assert abs(a - naive_residual(eq.value, s.table.tolist(), perm, f, g)) <= 1e-12 * max(1.0, a)


@settings(max_examples=60, deadline=None)
@given(semigroups, cplx, st.data())
def test_scaled_character_family(s, alpha, data):
    assume(abs(alpha - 1j) > 1e-2 and abs(alpha + 1j) > 1e-2)
    sigma = data.draw(st.sampled_from(enumerate_automorphisms(s)))
    chars = [c.values for c in enumerate_multiplicative(s) if twist_invariant(c.values, sigma)]
    chi = data.draw(st.sampled_from(chars))
    f, g = construct(FamilyCase("TE3.3", {"chi": chi, "alpha": alpha}), s, sigma)
    scale = max(1.0, np.max(np.abs(f)), np.max(np.abs(g)))
    for eq in ("cos-sub", "cos-sub-var"):
        assert equation_residual(eq, s, sigma, f, g) <= 1e-12 * scale ** 2


@settings(max_examples=60, deadline=None)
@given(semigroups, st.data(), cplx)
def test_lemma_m_round_trip(s, data, beta):
    assume(abs(beta) > 1e-2)
    sigma = data.draw(st.sampled_from(enumerate_automorphisms(s)))
    chars = [c.values for c in enumerate_multiplicative(s) if twist_invariant(c.values, sigma)]
    chi = data.draw(st.sampled_from(chars))
    got = lemma_m_reduce(s, sigma, chi / beta, beta)
    assert np.max(np.abs(got.values - chi)) <= 1e-10


@given(st.lists(cplx, min_size=1, max_size=6), cplx)
def test_proportional_pairs(f, lam):
    f = np.array(f)
    assume(np.max(np.abs(f)) > 1e-3 and abs(lam) > 1e-3)
    dep = linear_dependence(f, lam * f)
    assert dep.kind == "proportional" and abs(dep.ratio - lam) <= 1e-9 * max(1.0, abs(lam))


@given(st.recursive(st.floats(allow_nan=False, allow_infinity=False) | st.integers(-10**6, 10**6),
                    lambda c: st.lists(c, max_size=4) | st.dictionaries(st.text("abc", max_size=3), c, max_size=3),
                    max_leaves=12))
def test_report_floats_round_trip(obj):
    assert json.loads(dumps_report(obj)) == obj


@settings(max_examples=30, deadline=None)
@given(cplx, cplx, st.sampled_from([1, -1]), st.floats(-2, 2))
def test_axb_log_family(c, lam, sign, k_exp):
    assume(abs(c) > 1e-3)
    k = 10.0 ** k_exp
    assume(abs(k - 1) > 1e-6)
    fam = ContinuumFamily("axb", "cos-sub", "LogFamily", {"c": c, "lam": lam, "sign": sign})
    f_mag = np.exp(abs(lam.real) * 2.31) * (1 + abs(c) * 2.31)
    assert sample_residual(fam, AxBTwist(k), n_samples=500) <= 1e-12 * max(1.0, f_mag) ** 2


@settings(max_examples=30, deadline=None)
@given(cplx, st.floats(-5, 5).filter(lambda b: min(abs(b), abs(b - 1), abs(b + 1)) > 1e-3))
def test_real_constants(alpha, beta):
    assume(abs(alpha) > 1e-2)
    fam = ContinuumFamily("real", "sine-add", "Const", {"alpha": alpha})
    assert sample_residual(fam, RealTwist(beta), n_samples=500) <= 1e-12 * max(1.0, 1 / abs(alpha)) ** 2
