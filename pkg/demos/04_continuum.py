"""
Closed forms on the reals and on the affine group
=================================================

On (R, +) with x -> βx the only twist-fixed exponential is the constant one,
so every solution is constant (apart from an arbitrary g when f = 0). On the
affine group (a, b) with (a, b)(a', b') = (aa', ab' + b), the twist
(a, b) -> (a, kb) fixes every a^λ and every c log a, and the families are
built from those.

Residuals are measured on 10^4 sampled pairs.
"""

from twistlab.continuum import (
    AxBTwist,
    RealTwist,
    axb_families,
    invariant_exponents,
    real_families,
    sample_residual,
    twist_is_involutive,
)

for beta in (2.0, -3.0, 0.5):
    tw = RealTwist(beta)
    print(f"reals, beta={beta}: invariant exponents {invariant_exponents(beta)}")
    for eq in ("cos-sub", "sine-add"):
        for fam in real_families(eq, tw, alphas=(1.0, 0.5 - 0.3j)):
            print(f"  {fam!r:55s} residual {sample_residual(fam, tw):.1e}")

tw = AxBTwist()
print(f"\naffine group, k={tw.scale:g}: twist is involutive? {twist_is_involutive(tw, 'axb')}")
for eq in ("cos-sub", "sine-add"):
    for fam in axb_families(eq, alphas=(1.0,), cs=(1.0, 0.3 - 0.7j), lams=(0.0, 1.5j)):
        print(f"  {fam!r:70s} residual {sample_residual(fam, tw):.1e}")

# %%
# The excluded scalings are refused outright.
for beta in (0, 1, -1):
    try:
        RealTwist(beta)
    except ValueError as exc:
        print(f"beta={beta}: {exc}")
