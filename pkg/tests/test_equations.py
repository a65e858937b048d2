import numpy as np
import pytest

from _oracles import central_fd_jacobian, naive_residual
from twistlab.equations import BatchSystem, EquationTag, equation_residual
from twistlab.fixtures import N2, S4, S4_SWAP, T3, Z2, Z15_DOUBLE, RZ3, RZ3_CYCLE, Z15, fixture_set
from twistlab.semigroup import identity

ALL = list(EquationTag)


def _rand(rng, n):
    return rng.normal(size=n) + 1j * rng.normal(size=n)


@pytest.mark.parametrize("eq", ALL)
def test_residual_matches_loop_oracle(eq):
    rng = np.random.default_rng(3)
    for s, sigma in fixture_set():
        f, g = _rand(rng, s.order), _rand(rng, s.order)
        perm = sigma.perm.tolist() if not eq.plain else list(range(s.order))
        want = naive_residual(eq.value, s.table.tolist(), perm, f, g)
        assert equation_residual(eq, s, sigma, f, g) == pytest.approx(want, rel=1e-12)


def test_known_residuals():
    z = np.zeros(2)
    g = np.array([0.3, -2.0 + 1j])
    assert equation_residual("sine-add", Z2, None, z, g) == 0.0
    one = np.ones(2)
    assert equation_residual("cos-sub", Z2, None, one, one) == 1.0
    chi, phi = np.array([1, 0, 0]), np.array([0, 1, 0])
    assert equation_residual("cos-sub", T3, None, -1j * phi, chi + phi) <= 1e-12


def test_aliases():
    assert EquationTag.parse("E3") is EquationTag.COS_SUB
    assert EquationTag.parse("var2") is EquationTag.SINE_ADD_VARIANT
    with pytest.raises(ValueError):
        EquationTag.parse("wave")


def test_plain_equations_ignore_sigma():
    rng = np.random.default_rng(5)
    f, g = _rand(rng, 3), _rand(rng, 3)
    for eq in (EquationTag.COS_ADD_PLAIN, EquationTag.SINE_ADD_PLAIN):
        assert equation_residual(eq, RZ3, RZ3_CYCLE, f, g) == equation_residual(eq, RZ3, None, f, g)


@pytest.mark.parametrize("eq", ALL)
def test_jacobian_against_central_differences(eq):
    rng = np.random.default_rng(11)
    cases = [(S4, S4_SWAP), (Z15, Z15_DOUBLE), (N2, identity(2))]
    for s, sigma in cases:
        system = BatchSystem(eq, s, sigma)
        z = np.stack([_rand(rng, 2 * s.order) for _ in range(10)])
        jac = system.jacobian(z)
        for k in range(len(z)):
            fd = central_fd_jacobian(lambda v: system.residual(v[None])[0], z[k])
            rel = np.max(np.abs(jac[k] - fd)) / max(1.0, np.max(np.abs(fd)))
            assert rel <= 1e-5
