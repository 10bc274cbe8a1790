from fractions import Fraction

import pytest

from logfano.errors import ValidationError
from logfano.surface import (
    CurveRecord,
    DivisorClass,
    PointRecord,
    SurfaceModel,
    TowerSpec,
    TowerStep,
    apply_tower,
    blow_up,
    is_nef,
    surface_from_json,
    surface_to_json,
)


def quadric() -> SurfaceModel:
    """P1 x P1 with the boundary curve, one fiber of each ruling, a point."""
    return SurfaceModel(
        basis_names=("F", "H"),
        gram=((0, 1), (1, 0)),
        curves=(
            CurveRecord("C", DivisorClass((1, 2)), is_boundary_component=True),
            CurveRecord("F0", DivisorClass((1, 0))),
            CurveRecord("H0", DivisorClass((0, 1))),
            CurveRecord("H1", DivisorClass((0, 1))),
        ),
        points=(
            PointRecord.make("pbar0", ("C", "F0", "H0"), {("C", "F0"): 2}),
        ),
        canonical_class=DivisorClass((-2, -2)),
        boundary=(("C", Fraction(1, 2)),),
    )


def test_divisor_class_arithmetic():
    a = DivisorClass((1, 2))
    b = DivisorClass((0, 1))
    assert (a + b).coords == (1, 3)
    assert (a - b).coords == (1, 1)
    assert (3 * a).coords == (3, 6)
    assert (a * Fraction(1, 2)).coords == (Fraction(1, 2), 1)
    assert (-a).coords == (-1, -2)
    assert a.extended(Fraction(5)).coords == (1, 2, 5)
    with pytest.raises(ValidationError):
        a + DivisorClass((1, 2, 3))


def test_intersection_numbers():
    s = quadric()
    c = s.curve_class("C")
    assert s.intersect(c, c) == 4
    assert s.intersect(c, s.curve_class("F0")) == 2
    assert s.intersect(c, s.curve_class("H0")) == 1
    # adjunction: C^2 + K.C = -2 for a smooth rational curve
    assert s.intersect(s.canonical_class, c) == -6
    with pytest.raises(ValidationError):
        s.intersect(c, DivisorClass((1, 0, 0)))


def test_lookups_raise_on_unknown_names():
    s = quadric()
    with pytest.raises(ValidationError):
        s.curve("nope")
    with pytest.raises(ValidationError):
        s.point("nope")


def test_surface_validation():
    with pytest.raises(ValidationError):
        SurfaceModel(
            basis_names=("F", "F"),
            gram=((0, 1), (1, 0)),
            curves=(),
            points=(),
            canonical_class=DivisorClass((-2, -2)),
        )
    with pytest.raises(ValidationError):
        SurfaceModel(
            basis_names=("F", "H"),
            gram=((0, 1), (2, 0)),
            curves=(),
            points=(),
            canonical_class=DivisorClass((-2, -2)),
        )
    with pytest.raises(ValidationError):
        SurfaceModel(
            basis_names=("F", "H"),
            gram=((0, 1), (1, 0)),
            curves=(CurveRecord("C", DivisorClass((1, 2, 3))),),
            points=(),
            canonical_class=DivisorClass((-2, -2)),
        )
    with pytest.raises(ValidationError):
        SurfaceModel(
            basis_names=("F", "H"),
            gram=((0, 1), (1, 0)),
            curves=(CurveRecord("C", DivisorClass((1, 2))),),
            points=(PointRecord.make("p", ("C", "ghost")),),
            canonical_class=DivisorClass((-2, -2)),
        )


def test_point_record_contact_bookkeeping():
    p = PointRecord.make("pbar0", ("C", "F0", "H0"), {("F0", "C"): 2})
    assert p.contact_order("C", "F0") == 2
    assert p.contact_order("F0", "C") == 2
    assert p.contact_order("C", "H0") == 1
    ids = dict(p.incidences)
    assert ids["C"] is not None and ids["C"] == ids["F0"]
    assert ids["H0"] is None
    with pytest.raises(ValidationError):
        p.contact_order("C", "ghost")
    with pytest.raises(ValidationError):
        PointRecord.make("q", ())
    with pytest.raises(ValidationError):
        PointRecord.make("q", ("C", "C"))


def test_is_nef():
    s = quadric()
    assert is_nef(s, DivisorClass((1, 1))).nef is True
    res = is_nef(s, DivisorClass((1, -1)))
    assert res.nef is False
    assert res.violator == "F0"  # first declared curve with negative pairing
    assert res.conditional is False


def test_blow_up_transverse_point():
    s = quadric()
    layout = (
        PointRecord.make("d0", ("E0", "C", "F0"), {("C", "F0"): 1}),
        PointRecord.make("d1", ("E0", "H0")),
    )
    with pytest.raises(ValidationError):
        # C and F0 are tangent at pbar0: separating them on the blow-up is wrong
        blow_up(
            s,
            "pbar0",
            (
                PointRecord.make("d0", ("E0", "C")),
                PointRecord.make("d1", ("E0", "F0")),
                PointRecord.make("d2", ("E0", "H0")),
            ),
            "E0",
        )
    out = blow_up(s, "pbar0", layout, "E0")
    assert out.rank == 3
    assert out.basis_names == ("F", "H", "E0")
    assert out.curve_class("C").coords == (1, 2, -1)
    assert out.curve_class("F0").coords == (1, 0, -1)
    assert out.curve_class("E0").coords == (0, 0, 1)
    assert out.canonical_class.coords == (-2, -2, 1)
    assert out.intersect(out.curve_class("C"), out.curve_class("C")) == 3
    assert out.intersect(out.curve_class("C"), out.curve_class("F0")) == 1
    assert out.intersect(out.curve_class("C"), out.curve_class("E0")) == 1
    assert out.boundary == (("C", Fraction(1, 2)),)
    # the center is consumed; the direction points exist
    with pytest.raises(ValidationError):
        out.point("pbar0")
    assert out.point("d0").contact_order("C", "F0") == 1


def test_blow_up_layout_validation():
    s = quadric()
    with pytest.raises(ValidationError):
        blow_up(s, "missing", (), "E0")
    with pytest.raises(ValidationError):
        # exceptional name collides with an existing curve
        blow_up(
            s,
            "pbar0",
            (PointRecord.make("d0", ("C", "C0")),),
            "C",
        )
    with pytest.raises(ValidationError):
        # layout point not on the exceptional curve
        blow_up(s, "pbar0", (PointRecord.make("d0", ("C", "F0")),), "E0")
    with pytest.raises(ValidationError):
        # layout references a curve that misses the center
        blow_up(
            s,
            "pbar0",
            (
                PointRecord.make("d0", ("E0", "C", "F0"), {("C", "F0"): 1}),
                PointRecord.make("d1", ("E0", "H0")),
                PointRecord.make("d2", ("E0", "H1")),
            ),
            "E0",
        )
    with pytest.raises(ValidationError):
        # omits H0, which passes through the center
        blow_up(
            s,
            "pbar0",
            (PointRecord.make("d0", ("E0", "C", "F0"), {("C", "F0"): 1}),),
            "E0",
        )
    with pytest.raises(ValidationError):
        # transverse pair forced to share a layout point
        blow_up(
            s,
            "pbar0",
            (
                PointRecord.make("d0", ("E0", "C", "F0", "H0"), {("C", "F0"): 1}),
            ),
            "E0",
        )
    with pytest.raises(ValidationError):
        # tangent pair must drop contact from 2 to 1, not keep 2
        blow_up(
            s,
            "pbar0",
            (
                PointRecord.make("d0", ("E0", "C", "F0"), {("C", "F0"): 2}),
                PointRecord.make("d1", ("E0", "H0")),
            ),
            "E0",
        )


def test_iterated_blow_up_separates_tangency():
    # Two blow-ups resolve a contact-2 pair: after the second, C and F0 no
    # longer meet (C.F0 = 2 - 1 - 1 = 0).
    s = quadric()
    s1 = blow_up(
        s,
        "pbar0",
        (
            PointRecord.make("d0", ("E0", "C", "F0"), {("C", "F0"): 1}),
            PointRecord.make("d1", ("E0", "H0")),
        ),
        "E0",
    )
    s2 = blow_up(
        s1,
        "d0",
        (
            PointRecord.make("e0", ("Z", "E0")),
            PointRecord.make("e1", ("Z", "C")),
            PointRecord.make("e2", ("Z", "F0")),
        ),
        "Z",
    )
    c, f0 = s2.curve_class("C"), s2.curve_class("F0")
    assert s2.intersect(c, f0) == 0
    assert s2.intersect(c, c) == 2
    assert s2.intersect(s2.curve_class("Z"), s2.curve_class("Z")) == -1
    assert s2.intersect(s2.curve_class("E0"), s2.curve_class("E0")) == -2


def test_tower_spec_and_apply():
    s = quadric()
    step = TowerStep(
        "pbar0",
        "E0",
        (
            PointRecord.make("d0", ("E0", "C", "F0"), {("C", "F0"): 1}),
            PointRecord.make("d1", ("E0", "H0")),
        ),
    )
    top = apply_tower(TowerSpec(s, (step,)))
    assert top.rank == 3
    with pytest.raises(ValidationError):
        TowerSpec(s, (step,), divisor="C")
    with pytest.raises(ValidationError):
        TowerSpec(s, (), divisor="ghost")
    assert TowerSpec(s, (), divisor="C").divisor == "C"


def test_surface_json_roundtrip():
    s = quadric()
    doc = surface_to_json(s)
    back = surface_from_json(doc)
    assert back == s
    with pytest.raises(ValidationError):
        surface_from_json({"basis": ["F"]})
