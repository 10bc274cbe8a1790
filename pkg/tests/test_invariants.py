from fractions import Fraction

import pytest

from logfano.algebra import Polynomial, RationalFunctionOfBeta, taylor_prefix
from logfano.errors import ValidationError
from logfano.invariants import (
    delta_upper_bound,
    evaluate_scenario,
    expected_vanishing_order,
    log_discrepancy,
    log_discrepancy_symbolic,
    product_delta_upper_bound,
    ratio_as_function_of_beta,
    report_to_json,
    s_as_function_of_beta,
)
from logfano.scenarios import (
    ScenarioConfig,
    build_candidate,
    pulled_back_polarization,
)

BETA = Fraction(1, 7)


def rfb(num, den=(1,)):
    return RationalFunctionOfBeta(Polynomial(num), Polynomial(den))


def cfg_of(case, r, labels, beta=BETA):
    return ScenarioConfig(case, r, labels, beta)


# (case, r, labels) -> log discrepancy as a polynomial in beta, lowest first
DISCREPANCIES = {
    ("on-S:E_i", 2, ("0", "inf")): (1,),
    ("on-S:F_i", 2, ("0", "inf")): (1,),
    ("on-S:C", 2, ("0", "inf")): (0, 1),
    ("on-S:fiber", 2, ("0", "inf")): (1,),
    ("over-S:1", 2, ("0", "inf")): (1, 1),
    ("over-S:2", 2, ("0", "inf")): (1, 1),
    ("over-S:3", 2, ("1", "inf")): (1, 1),
    ("over-S:4", 2, ("1", "2")): (1, 2),
}


@pytest.mark.parametrize("key,coeffs", sorted(DISCREPANCIES.items()))
def test_log_discrepancy_symbolic(key, coeffs):
    _, _, tower = build_candidate(cfg_of(*key))
    assert log_discrepancy_symbolic(tower) == rfb(coeffs)
    want = Polynomial(coeffs).evaluate(Fraction(1, 5))
    assert log_discrepancy(tower, Fraction(1, 5)) == want


def test_log_discrepancy_beta_range():
    _, _, tower = build_candidate(cfg_of("over-S:2", 2, ("0", "inf")))
    with pytest.raises(ValidationError):
        log_discrepancy(tower, Fraction(0))
    with pytest.raises(ValidationError):
        log_discrepancy(tower, Fraction(3, 2))


def test_expected_vanishing_order_values():
    values = {
        ("over-S:2", 2, ("0", "inf")): Fraction(8, 7),
        ("over-S:2", 1, ("0",)): Fraction(256, 217),
        ("over-S:4", 1, ("1",)): Fraction(271, 217),
        ("over-S:1", 0, ()): Fraction(5, 7),
        ("on-S:C", 2, ("0", "inf")): Fraction(22, 315),
        ("on-S:E_i", 2, ("0", "inf")): Fraction(4, 7),
        ("on-S:E_i", 1, ("1",)): Fraction(55, 93),
        ("on-S:fiber", 2, ("0", "inf")): Fraction(169, 315),
    }
    for key, want in values.items():
        surf, z, tower = build_candidate(cfg_of(*key))
        l = pulled_back_polarization(tower)
        assert expected_vanishing_order(surf, l, z) == want, key


def test_closed_forms():
    assert s_as_function_of_beta(cfg_of("over-S:2", 1, ("0",))) == rfb(
        (4, 8, 4), (4, 3)
    )
    assert s_as_function_of_beta(cfg_of("on-S:C", 1, ("1",))) == rfb(
        (0, 2, 1), (4, 3)
    )
    assert s_as_function_of_beta(cfg_of("over-S:4", 2, ("1", "2"))) == rfb(
        (4, 8, Fraction(8, 3)), (4, 2)
    )
    assert ratio_as_function_of_beta(cfg_of("over-S:2", 1, ("0",))) == rfb(
        (4, 3), (4, 4)
    )


def test_closed_form_sample_count_validation():
    with pytest.raises(ValidationError):
        s_as_function_of_beta(cfg_of("over-S:2", 1, ("0",)), sample_count=3)


def test_case4_ratio_slope_is_quarter_r():
    # The beta-linear coefficient of A/S grows like r/4 across r = 0, 1, 2.
    for r in range(3):
        labels = tuple(str(i + 1) for i in range(r))
        ratio = ratio_as_function_of_beta(cfg_of("over-S:4", r, labels))
        prefix = taylor_prefix(ratio, 1)
        assert prefix[0] == 1
        assert prefix[1] == Fraction(r, 4)


def test_delta_upper_bound():
    assert delta_upper_bound([(Fraction(3), Fraction(2)), (1, 1)]) == 1
    assert delta_upper_bound([(Fraction(1, 2), Fraction(2))]) == Fraction(1, 4)
    with pytest.raises(ValidationError):
        delta_upper_bound([])
    with pytest.raises(ValidationError):
        delta_upper_bound([(1, 0)])
    assert product_delta_upper_bound(Fraction(3, 2), Fraction(5, 4)) == Fraction(5, 4)
    with pytest.raises(ValidationError):
        product_delta_upper_bound(Fraction(3, 2), 0)


def test_evaluate_scenario_report():
    rep = evaluate_scenario(cfg_of("over-S:2", 2, ("0", "inf")))
    assert rep.s_value == Fraction(8, 7)
    assert rep.a_value == Fraction(8, 7)
    assert rep.ratio == 1
    assert rep.scenario == "over-S:2 r=2 I={0,inf}"
    assert rep.closed_forms is None and rep.ratio_expansion is None
    doc = report_to_json(rep)
    assert doc == {
        "scenario": "over-S:2 r=2 I={0,inf}",
        "beta": "1/7",
        "S": "8/7",
        "A": "8/7",
        "ratio": "1",
    }


def test_evaluate_scenario_with_expansion():
    rep = evaluate_scenario(cfg_of("over-S:2", 1, ("0",)), order=2, closed_forms=True)
    assert rep.closed_forms["S"] == rfb((4, 8, 4), (4, 3))
    assert rep.closed_forms["ratio"] == rfb((4, 3), (4, 4))
    assert rep.ratio_expansion == (1, Fraction(-1, 4), Fraction(1, 4))
    doc = report_to_json(rep, decimals=True)
    assert doc["ratio_expansion"] == ["1", "-1/4", "1/4"]
    assert doc["closed_forms"]["S"] == {"num": ["4", "8", "4"], "den": ["4", "3"]}
    assert "approx_decimal" in doc
    assert float(doc["approx_decimal"]["S"]) == pytest.approx(256 / 217, abs=1e-11)
