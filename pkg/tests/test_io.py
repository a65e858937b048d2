import json
import os

import numpy as np
import pytest

from twistlab.fixtures import RZ3, RZ3_CYCLE, S4, Z15, Z15_DOUBLE, fixture_set
from twistlab.io import (
    FormatError,
    format_table,
    parse_sigma,
    parse_solution,
    parse_table,
    read_solution,
    read_table,
    solution_to_json,
    write_table,
)
from twistlab.semigroup import AssociativityViolation, NotAnAutomorphism

DATA = os.path.join(os.path.dirname(os.path.dirname(__file__)), "data")


@pytest.mark.parametrize("name, fixture", [("z2", 0), ("n2", 1), ("rz3", 2), ("t3", 3), ("s4", 4), ("z15", 5)])
def test_data_tables_match_fixtures(name, fixture):
    s = read_table(os.path.join(DATA, f"{name}.tbl"))
    assert s == fixture_set()[fixture][0]
    assert s.label == name


def test_table_round_trip(tmp_path):
    path = tmp_path / "s4.tbl"
    write_table(str(path), S4, comment="level semigroup\nsecond line")
    text = path.read_text()
    assert text.startswith("# level semigroup\n# second line\n4\n")
    assert read_table(str(path)) == S4
    assert parse_table(format_table(RZ3)) == RZ3


@pytest.mark.parametrize("text", ["", "x\n", "2\n0 1\n", "2\n0 1\n1\n", "2\n0 a\n1 0\n", "0\n"])
def test_malformed_tables(text):
    with pytest.raises(FormatError):
        parse_table(text)


def test_non_associative_file_is_rejected():
    with pytest.raises(AssociativityViolation):
        parse_table("2\n1 0\n0 0\n")


def test_sigma_literals():
    assert parse_sigma("id", RZ3).is_identity
    assert parse_sigma("1,2,0", RZ3) == RZ3_CYCLE
    assert parse_sigma("pow:1;2;0:2", RZ3) == RZ3_CYCLE.inverse()
    lit = ",".join(str(2 * x % 15) for x in range(15))
    assert parse_sigma(lit, Z15) == Z15_DOUBLE
    assert parse_sigma(f"pow:{lit}:4", Z15).is_identity
    with pytest.raises(FormatError):
        parse_sigma("1,2", RZ3)
    with pytest.raises(FormatError):
        parse_sigma("pow:1,2,0", RZ3)
    with pytest.raises(NotAnAutomorphism):
        parse_sigma("0,2,1", parse_table("3\n0 1 2\n1 2 2\n2 2 2\n"))


def test_solution_files(tmp_path):
    f, g = np.array([1 + 2j, -0.5]), np.array([0j, 3.25 - 1e-17j])
    path = tmp_path / "sol.json"
    path.write_text(json.dumps(solution_to_json(f, g)))
    f2, g2 = read_solution(str(path), 2)
    assert np.array_equal(f, f2) and np.array_equal(g, g2)
    with pytest.raises(FormatError):
        read_solution(str(path), 3)
    with pytest.raises(FormatError):
        parse_solution({"f": [[1, 0]]})
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(FormatError):
        read_solution(str(bad))
