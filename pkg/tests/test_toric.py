from fractions import Fraction

import pytest

from logfano.errors import DegeneracyError, ValidationError
from logfano.toric import (
    Fan2D,
    Polytope2D,
    ToricDivisorData,
    area,
    barycenter,
    builtin_blowup_divisor,
    builtin_valuation,
    polytope_from_divisor,
    psi,
    toric_expected_vanishing,
)


def test_fan_validation():
    Fan2D(((1, 0), (0, 1), (-1, -1)))
    with pytest.raises(ValidationError):
        Fan2D(((1, 0), (0, 1)))  # not complete
    with pytest.raises(ValidationError):
        Fan2D(((2, 0), (0, 1), (-1, -1)))  # non-primitive ray
    with pytest.raises(ValidationError):
        Fan2D(((1, 0), (-1, -1), (0, 1)))  # clockwise step
    with pytest.raises(ValidationError):
        Fan2D(((1, 0), (1, 0), (0, 1), (-1, -1)))  # repeated ray


def test_divisor_data_validation():
    fan = Fan2D(((1, 0), (0, 1), (-1, -1)))
    ToricDivisorData(fan, (1, 1, 1))
    with pytest.raises(ValidationError):
        ToricDivisorData(fan, (1, 1))


def test_polytope_validation():
    Polytope2D(((0, 0), (1, 0), (0, 1)))
    with pytest.raises(ValidationError):
        Polytope2D(((0, 0), (1, 0)))
    with pytest.raises(ValidationError):
        Polytope2D(((0, 0), (0, 1), (1, 0)))  # clockwise
    with pytest.raises(ValidationError):
        Polytope2D(((0, 0), (1, 0), (2, 0), (0, 1)))  # collinear triple


def test_builtin_pentagon():
    beta = Fraction(1, 2)
    p = polytope_from_divisor(builtin_blowup_divisor(beta))
    want = {
        (0, 0),
        (Fraction(-3, 2), 0),
        (Fraction(-3, 2), Fraction(-1, 2)),
        (-1, -1),
        (0, -1),
    }
    assert {(Fraction(x), Fraction(y)) for x, y in p.vertices} == want
    assert area(p) == 2 * beta + Fraction(3, 2) * beta**2


def test_builtin_anchor_values():
    beta = Fraction(1)
    d = builtin_blowup_divisor(beta)
    p = polytope_from_divisor(d)
    assert barycenter(p) == (Fraction(-19, 21), Fraction(-19, 21))
    assert psi(p, (2, 1)) == -5
    assert toric_expected_vanishing(d, (2, 1)) == Fraction(16, 7)
    assert builtin_valuation() == (2, 1)


def test_toric_matches_closed_form():
    # S = (4 + 8b + 4b^2) / (4 + 3b) for the one-numeric-label candidate
    for beta in (Fraction(1, 10), Fraction(1, 3), Fraction(1)):
        got = toric_expected_vanishing(builtin_blowup_divisor(beta), (2, 1))
        want = (4 + 8 * beta + 4 * beta**2) / (4 + 3 * beta)
        assert got == want


def test_empty_polytope_is_degenerate():
    fan = Fan2D(((1, 0), (0, 1), (-1, -1)))
    d = ToricDivisorData(fan, (-5, -5, 0))
    with pytest.raises(DegeneracyError):
        polytope_from_divisor(d)


def test_corrupt_asset_rejected(tmp_path):
    bad = tmp_path / "fan.json"
    bad.write_text("{not json", encoding="utf-8")
    with pytest.raises(ValidationError):
        builtin_blowup_divisor(Fraction(1, 2), path=str(bad))
    missing_keys = tmp_path / "empty.json"
    missing_keys.write_text("{}", encoding="utf-8")
    with pytest.raises(ValidationError):
        builtin_valuation(path=str(missing_keys))
