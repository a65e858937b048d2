import numpy as np
import pytest

from _oracles import naive_associative, naive_automorphisms, naive_semigroups
from twistlab.fixtures import N2, RZ3, RZ3_CYCLE, S4, T3, Z2, Z15, Z15_DOUBLE, fixture_set
from twistlab.semigroup import (
    AssociativityViolation,
    CapExceeded,
    NotAnAutomorphism,
    OutOfRangeEntry,
    automorphism_power,
    canonical_form,
    enumerate_automorphisms,
    enumerate_semigroups,
    identity,
    is_abelian,
    is_central,
    make_automorphism,
    square_set,
    validate_table,
)


def test_group_table_is_valid():
    s = validate_table([[0, 1], [1, 0]])
    assert s.order == 2 and s.is_commutative


def test_right_zero_table_is_valid():
    s = validate_table([[0, 1, 2]] * 3)
    assert naive_associative(s.table.tolist())


def test_associativity_violation_reports_a_triple():
    assert validate_table([[0, 1], [1, 1]]).order == 2
    with pytest.raises(AssociativityViolation) as info:
        validate_table([[1, 0], [0, 0]])
    x, y, z = info.value.triple
    t = [[1, 0], [0, 0]]
    assert t[t[x][y]][z] != t[x][t[y][z]]


def test_out_of_range_entry():
    with pytest.raises(OutOfRangeEntry):
        validate_table([[0, 2], [1, 0]])


def test_enumeration_cap():
    with pytest.raises(CapExceeded):
        list(enumerate_semigroups(5))


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 8), (3, 113)])
def test_labeled_counts(n, expected):
    assert sum(1 for _ in enumerate_semigroups(n)) == expected


def test_enumeration_matches_naive_filter_order3():
    ours = {tuple(s.table.ravel().tolist()) for s in enumerate_semigroups(3)}
    assert ours == set(naive_semigroups(3))


def test_canonical_enumeration_is_one_per_class():
    reps = list(enumerate_semigroups(3, canonical=True))
    classes = {canonical_form(s).table.tobytes() for s in enumerate_semigroups(3)}
    assert len(reps) == len(classes) == 24


def test_square_sets():
    assert square_set(Z2).all()
    assert square_set(N2).tolist() == [True, False]
    assert square_set(T3).all()


def test_automorphisms_match_brute_force():
    for s, _ in fixture_set()[:5]:
        ours = {tuple(a.perm.tolist()) for a in enumerate_automorphisms(s)}
        assert ours == set(naive_automorphisms(s.table.tolist()))


def test_specific_automorphism_groups():
    assert [a.is_identity for a in enumerate_automorphisms(Z2)] == [True]
    assert len(enumerate_automorphisms(T3)) == 1
    auts = enumerate_automorphisms(RZ3)
    assert len(auts) == 6
    assert RZ3_CYCLE.order == 3 and not RZ3_CYCLE.involutive


def test_not_an_automorphism():
    with pytest.raises(NotAnAutomorphism):
        make_automorphism(Z2, [1, 0])


def test_powers():
    assert automorphism_power(RZ3_CYCLE, 2) == RZ3_CYCLE.inverse()
    assert automorphism_power(identity(4), 5).is_identity
    sq = automorphism_power(Z15_DOUBLE, 2)
    assert sq.perm.tolist() == [(4 * x) % 15 for x in range(15)]
    assert Z15_DOUBLE.order == 4


def test_central_and_abelian():
    rng = np.random.default_rng(1)
    assert is_central(rng.normal(size=15) + 0j, Z15)
    assert not is_central(np.array([1.0, 2.0, 3.0]), RZ3)
    assert is_abelian(np.full(4, 2.5 + 1j), S4)


def test_relabel_preserves_associativity():
    s = RZ3.relabel([2, 0, 1])
    assert naive_associative(s.table.tolist())
    assert canonical_form(s) == canonical_form(RZ3)
