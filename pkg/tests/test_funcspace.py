import numpy as np
import pytest
from scipy.linalg import null_space

from _oracles import grid_characters, same_vector_sets, special_sine_rows
from twistlab.fixtures import RZ3, RZ3_CYCLE, S4, T3, Z2, Z15, Z15_DOUBLE, cyclic_character
from twistlab.funcspace import (
    BothZero,
    Independent,
    compose_sigma,
    enumerate_multiplicative,
    from_pairs,
    index_period,
    linear_dependence,
    loads_cfunc,
    dumps_cfunc,
    sigma_squared_invariant,
    solve_special_sine,
    special_sine_residual,
    twist_invariant,
)
from twistlab.linalg import nullspace, rank
from twistlab.semigroup import identity


def test_compose_sigma():
    f = np.array([1, 2, 3], dtype=complex)
    assert np.array_equal(compose_sigma(f, identity(3)), f)
    assert compose_sigma(f, RZ3_CYCLE).tolist() == [2, 3, 1]


def test_index_period():
    ip = index_period(Z2)
    assert (ip.index[1], ip.period[1]) == (1, 2)
    ip = index_period(T3)
    assert (ip.index[1], ip.period[1]) == (2, 1)
    # idempotents
    ip = index_period(RZ3)
    assert ip.index.tolist() == [1, 1, 1] and ip.period.tolist() == [1, 1, 1]


@pytest.mark.parametrize("s, expected", [
    (Z2, [(1, 1), (1, -1)]),
    (RZ3, [(1, 1, 1)]),
    (T3, [(1, 1, 1), (1, 0, 0)]),
])
def test_multiplicative_listings(s, expected):
    got = [c.values for c in enumerate_multiplicative(s)]
    assert same_vector_sets(got, expected)


@pytest.mark.parametrize("s", [Z2, RZ3, T3])
def test_multiplicative_matches_grid_oracle(s):
    for zero in (False, True):
        got = [c.values for c in enumerate_multiplicative(s, include_zero=zero)]
        assert same_vector_sets(got, grid_characters(s.table.tolist(), include_zero=zero))


def test_cyclic_characters_complete():
    got = [c.values for c in enumerate_multiplicative(Z15)]
    assert same_vector_sets(got, [cyclic_character(15, j) for j in range(15)])


def test_twist_invariance_of_character_five():
    chi = cyclic_character(15, 5)
    assert not twist_invariant(chi, Z15_DOUBLE)
    assert sigma_squared_invariant(chi, Z15_DOUBLE)
    assert np.allclose(compose_sigma(chi, Z15_DOUBLE), cyclic_character(15, 10))


@pytest.mark.parametrize("s, chi, dim, basis", [
    (Z2, [1, 1], 0, []),
    (T3, [1, 0, 0], 1, [[0, 1, 0]]),
    (S4, [1, 0, 0, 0], 2, [[0, 1, 0, 0], [0, 0, 1, 0]]),
])
def test_special_sine_dimensions(s, chi, dim, basis):
    got = solve_special_sine(s, chi)
    assert len(got) == dim
    assert same_vector_sets(got, basis)
    ref = null_space(special_sine_rows(s.table.tolist(), chi))
    assert ref.shape[1] == dim
    for phi in got:
        assert special_sine_residual(s, chi, phi) <= 1e-12


def test_nullspace_agrees_with_svd():
    rng = np.random.default_rng(7)
    for _ in range(20):
        m, n, r = 6, 5, int(rng.integers(0, 5))
        a = (rng.normal(size=(m, r)) + 1j * rng.normal(size=(m, r))) @ \
            (rng.normal(size=(r, n)) + 1j * rng.normal(size=(r, n)))
        basis = nullspace(a)
        assert len(basis) == n - r == null_space(a).shape[1]
        assert rank(a) == r
        for v in basis:
            assert np.max(np.abs(a @ v)) <= 1e-9 * max(1, np.max(np.abs(a)))


def test_linear_dependence_kinds():
    assert linear_dependence([1, 2], [2, 4]).ratio == pytest.approx(2)
    assert linear_dependence([1, 0], [0, 1]) == Independent
    assert linear_dependence([0, 0], [0, 0]) == BothZero
    assert linear_dependence([0, 0], [1, 1]).kind == "first_zero"
    assert linear_dependence([1, 1j], [0, 0]).kind == "second_zero"


def test_cfunc_json_round_trip():
    f = np.array([0.1 + 2j, -3.5e-17, 1j])
    assert np.array_equal(loads_cfunc(dumps_cfunc(f)), f)
    assert np.array_equal(from_pairs([[1, 2]]), np.array([1 + 2j]))
