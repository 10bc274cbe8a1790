from fractions import Fraction

import pytest

from logfano.algebra import Polynomial, integrate_piecewise
from logfano.errors import ConfigurationError, ValidationError
from logfano.scenarios import (
    ScenarioConfig,
    build_candidate,
    pulled_back_polarization,
)
from logfano.surface import DivisorClass
from logfano.zariski import decompose, sweep, volume, volume_profile_to_json

BETA = Fraction(1, 7)


def candidate(case, r, labels, beta=BETA):
    cfg = ScenarioConfig(case, r, labels, beta)
    surf, z, tower = build_candidate(cfg)
    return surf, pulled_back_polarization(tower), z


def test_decompose_nef_class_has_empty_negative_part():
    surf, l, _ = candidate("over-S:2", 2, ("0", "inf"))
    res = decompose(surf, l)
    assert res.negative == ()
    assert res.positive == l


def test_decompose_interior_chamber():
    # l - x Z deep in the last chamber: four curves carry the negative part.
    surf, l, z = candidate("over-S:2", 2, ("0", "inf"))
    d = l - Fraction(31, 14) * surf.curve_class(z)
    res = decompose(surf, d)
    assert res.positive.coords == (
        Fraction(1, 14),
        Fraction(1, 7),
        Fraction(-1, 14),
        Fraction(-1, 14),
        Fraction(-1, 14),
    )
    neg = dict(res.negative)
    assert sorted(neg) == ["E0", "F0", "H0", "Hinf"]
    assert neg["E0"] == neg["F0"] == Fraction(15, 14)
    assert neg["H0"] == neg["Hinf"] == Fraction(1, 14)
    # positive part is orthogonal to every support curve
    for name in neg:
        assert surf.intersect(res.positive, surf.curve_class(name)) == 0


def test_decompose_beyond_threshold():
    # past tau = 2 + 2 beta = 16/7 the seeded support stops being negative
    # definite, so no decomposition exists and the volume convention is 0
    surf, l, z = candidate("over-S:2", 2, ("0", "inf"))
    d = l - 3 * surf.curve_class(z)
    with pytest.raises(ConfigurationError):
        decompose(surf, d)
    assert volume(surf, d) == 0


def test_volume_zero_on_degenerate_support():
    # -Fgen pairs negatively with curves whose Gram block is not negative
    # definite; volume folds that into the zero branch as well
    surf, _, _ = candidate("over-S:2", 2, ("0", "inf"))
    d = -1 * surf.curve_class("Fgen")
    assert volume(surf, d) == 0


def test_volume_matches_square_on_nef():
    surf, l, _ = candidate("over-S:2", 2, ("0", "inf"))
    assert volume(surf, l) == surf.intersect(l, l)


def test_sweep_tangential_candidate_profile():
    surf, l, z = candidate("over-S:2", 2, ("0", "inf"))
    vp = sweep(surf, l, z)
    assert vp.tau == Fraction(16, 7)
    assert vp.profile.breakpoints == (
        0,
        Fraction(1, 7),
        Fraction(15, 7),
        Fraction(16, 7),
    )
    assert vp.profile.segments == (
        Polynomial((Fraction(30, 49), 0, -1)),
        Polynomial((Fraction(31, 49), Fraction(-2, 7))),
        Polynomial((Fraction(256, 49), Fraction(-32, 7), 1)),
    )
    supports = tuple(tuple(sorted(c.support)) for c in vp.chambers)
    assert supports == ((), ("E0", "F0"), ("E0", "F0", "H0", "Hinf"))
    s_val = integrate_piecewise(vp.profile) / surf.intersect(l, l)
    assert s_val == 1 + BETA


def test_sweep_exceptional_curve_profile():
    surf, l, z = candidate("on-S:E_i", 2, ("0", "inf"))
    vp = sweep(surf, l, z)
    assert vp.tau == 1 + BETA
    assert vp.profile.breakpoints == (0, Fraction(1, 7), 1, Fraction(8, 7))
    supports = tuple(tuple(sorted(c.support)) for c in vp.chambers)
    assert supports == ((), ("F0",), ("F0", "H0"))
    s_val = integrate_piecewise(vp.profile) / surf.intersect(l, l)
    assert s_val == Fraction(4, 7)


def test_sweep_two_curves_enter_at_once():
    # For the generic fiber both horizontal sections hit their wall at the
    # same x; the final chamber support has two curves appearing together.
    surf, l, z = candidate("on-S:fiber", 2, ("0", "inf"))
    vp = sweep(surf, l, z)
    assert vp.tau == 1 + BETA
    assert vp.profile.breakpoints == (0, 1, Fraction(8, 7))
    supports = tuple(tuple(sorted(c.support)) for c in vp.chambers)
    assert supports == ((), ("H0", "Hinf"))
    s_val = integrate_piecewise(vp.profile) / surf.intersect(l, l)
    assert s_val == Fraction(169, 315)


def test_sweep_boundary_curve_single_chamber():
    surf, l, z = candidate("on-S:C", 2, ("0", "inf"))
    vp = sweep(surf, l, z)
    assert vp.tau == BETA
    assert len(vp.profile.segments) == 1
    assert vp.chambers[0].support == ()


def test_sweep_profile_shape():
    surf, l, z = candidate("over-S:4", 2, ("1", "2"))
    vp = sweep(surf, l, z)
    l2 = surf.intersect(l, l)
    assert vp.profile.evaluate(Fraction(0)) == l2
    assert vp.profile.evaluate(vp.tau) == 0
    prev = l2
    for k in range(1, 65):
        x = vp.tau * Fraction(k, 64)
        cur = vp.profile.evaluate(x)
        assert cur <= prev
        prev = cur
    for seg in vp.profile.segments:
        assert seg.degree <= 2


def test_sweep_input_validation():
    surf, l, z = candidate("over-S:2", 2, ("0", "inf"))
    with pytest.raises(ValidationError):
        sweep(surf, l, "ghost")
    bad = l - 5 * surf.curve_class("Z")
    with pytest.raises(ValidationError) as info:
        sweep(surf, bad, z)
    assert "'C'" in str(info.value)  # first declared curve it violates
    with pytest.raises(ValidationError):
        sweep(surf, DivisorClass((0, 0, 0, 0, 0)), z)


def test_volume_profile_json():
    surf, l, z = candidate("on-S:C", 2, ("0", "inf"))
    vp = sweep(surf, l, z)
    doc = volume_profile_to_json(vp, beta=BETA)
    assert doc["beta"] == "1/7"
    assert doc["breakpoints"] == ["0", "1/7"]
    assert len(doc["segments"]) == 1
    assert doc["chambers"] == [{"from": "0", "to": "1/7", "support": []}]
