"""Picard-lattice surface models: curves, points, tangency, blow-ups.

A SurfaceModel is a purely numerical description of a smooth projective
surface: an intersection form on a named basis, named curve classes, and
named points carrying incidence and contact-order data.  Blowing up a named
point returns a new model in which the exceptional curve is appended to the
basis, every incident curve is replaced by its proper transform, and the
caller declares explicitly how the transforms meet the exceptional curve
(tangent curves keep a shared point with the contact order reduced by one,
transverse curves separate).  Keeping the layout explicit avoids a general
infinitely-near-point resolver; every configuration used here is small and
known in advance.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .algebra import rational_from_string, rational_to_string
from .errors import ValidationError


@dataclass(frozen=True)
class DivisorClass:
    """Rational divisor class as a coordinate vector in the ambient basis."""

    coords: tuple[Fraction, ...]

    def __init__(self, coords: Iterable[Fraction | int]) -> None:
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in coords))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        if other.dim != self.dim:
            raise ValidationError("divisor classes live in different lattices")
        return DivisorClass(a + b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(-a for a in self.coords)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + (-other)

    def __mul__(self, scalar: Fraction | int) -> "DivisorClass":
        return DivisorClass(a * scalar for a in self.coords)

    __rmul__ = __mul__

    def extended(self, extra: Fraction | int = 0) -> "DivisorClass":
        """The same class viewed in a lattice with one more basis vector."""
        return DivisorClass(self.coords + (Fraction(extra),))


@dataclass(frozen=True)
class CurveRecord:
    """A named irreducible curve with its divisor class."""

    name: str
    divisor_class: DivisorClass
    is_boundary_component: bool = False


@dataclass(frozen=True)
class PointRecord:
    """A named point with the curves through it and their pairwise contact.

    incidences pairs each curve with a tangency class id: two curves carry
    the same id exactly when their contact order at this point is >= 2.
    contact stores the order for every unordered pair of incident curves
    (order 1 means transverse).
    """

    name: str
    incidences: tuple[tuple[str, int | None], ...]
    contact: tuple[tuple[tuple[str, str], int], ...]

    def __post_init__(self) -> None:
        names = [c for c, _ in self.incidences]
        if not names:
            raise ValidationError(f"point {self.name!r} has no incident curves")
        if len(set(names)) != len(names):
            raise ValidationError(f"point {self.name!r} lists a curve twice")
        orders: dict[tuple[str, str], int] = {}
        for (a, b), k in self.contact:
            if a >= b:
                raise ValidationError(f"contact pair ({a},{b}) not sorted")
            if a not in names or b not in names:
                raise ValidationError(f"contact pair ({a},{b}) not incident at {self.name!r}")
            if not isinstance(k, int) or k < 1:
                raise ValidationError(f"contact order must be a positive integer, got {k!r}")
            orders[(a, b)] = k
        expected = {tuple(sorted(p)) for p in itertools.combinations(names, 2)}
        if set(orders) != expected:
            raise ValidationError(f"point {self.name!r} must declare contact for every curve pair")
        ids = dict(self.incidences)
        for (a, b), k in orders.items():
            shared = ids[a] is not None and ids[a] == ids[b]
            if shared != (k >= 2):
                raise ValidationError(
                    f"point {self.name!r}: curves share a tangency class iff contact >= 2 "
                    f"(pair ({a},{b}) has order {k})"
                )

    @staticmethod
    def make(
        name: str,
        curves: Sequence[str],
        tangencies: Mapping[tuple[str, str], int] | None = None,
    ) -> "PointRecord":
        """Build a record from curve names plus the contact orders above 1."""
        curves = tuple(curves)
        orders: dict[tuple[str, str], int] = {}
        for pair, k in (tangencies or {}).items():
            a, b = sorted(pair)
            orders[(a, b)] = k
        # Tangency classes are the connected components of the order>=2 graph.
        parent = {c: c for c in curves}

        def find(c: str) -> str:
            while parent[c] != c:
                parent[c] = parent[parent[c]]
                c = parent[c]
            return c

        for (a, b), k in orders.items():
            if k >= 2 and a in parent and b in parent:
                parent[find(a)] = find(b)
        grouped = [c for c in curves if any(
            k >= 2 and c in pair for pair, k in orders.items())]
        ids: dict[str, int] = {}
        next_id = 0
        for c in grouped:
            root = find(c)
            if root not in ids:
                ids[root] = next_id
                next_id += 1
        incidences = tuple((c, ids[find(c)] if c in grouped else None) for c in curves)
        contact = tuple(
            (pair, orders.get(pair, 1))
            for pair in (tuple(sorted(p)) for p in itertools.combinations(curves, 2))
        )
        return PointRecord(name, incidences, contact)

    @property
    def curve_names(self) -> tuple[str, ...]:
        return tuple(c for c, _ in self.incidences)

    def contact_order(self, a: str, b: str) -> int:
        key = tuple(sorted((a, b)))
        for pair, k in self.contact:
            if pair == key:
                return k
        raise ValidationError(f"curves {a!r}, {b!r} are not both incident at {self.name!r}")


@dataclass(frozen=True)
class NefResult:
    """Verdict of a nef test against the declared curve list.

    violator is the first curve (in declaration order) with negative pairing,
    or None when the failure is negative self-intersection.  conditional is
    set when the model does not promise a complete negative-curve list, in
    which case a positive verdict is only as good as the declarations.
    """

    nef: bool
    violator: str | None
    conditional: bool


@dataclass(frozen=True)
class SurfaceModel:
    """Intersection lattice with named curves, points, and boundary data."""

    basis_names: tuple[str, ...]
    gram: tuple[tuple[Fraction, ...], ...]
    curves: tuple[CurveRecord, ...]
    points: tuple[PointRecord, ...]
    canonical_class: DivisorClass
    boundary: tuple[tuple[str, Fraction], ...] = ()
    curves_complete: bool = True

    def __post_init__(self) -> None:
        basis = tuple(self.basis_names)
        gram = tuple(tuple(Fraction(v) for v in row) for row in self.gram)
        object.__setattr__(self, "basis_names", basis)
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "curves", tuple(self.curves))
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(
            self, "boundary", tuple((n, Fraction(c)) for n, c in self.boundary)
        )
        n = len(basis)
        if len(set(basis)) != n:
            raise ValidationError("basis names must be distinct")
        if len(gram) != n or any(len(row) != n for row in gram):
            raise ValidationError("Gram matrix shape does not match the basis")
        for i in range(n):
            for j in range(n):
                if gram[i][j] != gram[j][i]:
                    raise ValidationError("Gram matrix must be symmetric")
        names = [c.name for c in self.curves]
        if len(set(names)) != len(names):
            raise ValidationError("curve names must be distinct")
        for c in self.curves:
            if c.divisor_class.dim != n:
                raise ValidationError(f"curve {c.name!r} has a class of wrong dimension")
        if self.canonical_class.dim != n:
            raise ValidationError("canonical class has wrong dimension")
        known = set(names)
        pt_names = [p.name for p in self.points]
        if len(set(pt_names)) != len(pt_names):
            raise ValidationError("point names must be distinct")
        for p in self.points:
            for cn in p.curve_names:
                if cn not in known:
                    raise ValidationError(f"point {p.name!r} references unknown curve {cn!r}")
        for cn, _ in self.boundary:
            if cn not in known:
                raise ValidationError(f"boundary references unknown curve {cn!r}")

    @property
    def rank(self) -> int:
        return len(self.basis_names)

    def curve(self, name: str) -> CurveRecord:
        for c in self.curves:
            if c.name == name:
                return c
        raise ValidationError(f"no curve named {name!r}")

    def curve_class(self, name: str) -> DivisorClass:
        return self.curve(name).divisor_class

    def point(self, name: str) -> PointRecord:
        for p in self.points:
            if p.name == name:
                return p
        raise ValidationError(f"no point named {name!r}")

    def intersect(self, a: DivisorClass, b: DivisorClass) -> Fraction:
        if a.dim != self.rank or b.dim != self.rank:
            raise ValidationError("divisor class dimension does not match the surface rank")
        total = Fraction(0)
        for i, ai in enumerate(a.coords):
            if ai == 0:
                continue
            row = self.gram[i]
            total += ai * sum(row[j] * bj for j, bj in enumerate(b.coords) if bj != 0)
        return total


def intersect(s: SurfaceModel, a: DivisorClass, b: DivisorClass) -> Fraction:
    return s.intersect(a, b)


def is_nef(s: SurfaceModel, d: DivisorClass) -> NefResult:
    """Test d against every declared curve, then against d itself."""
    conditional = not s.curves_complete
    for c in s.curves:
        if s.intersect(d, c.divisor_class) < 0:
            return NefResult(False, c.name, conditional)
    if s.intersect(d, d) < 0:
        return NefResult(False, None, conditional)
    return NefResult(True, None, conditional)


def blow_up(
    s: SurfaceModel,
    point_name: str,
    new_point_layout: Sequence[PointRecord],
    exceptional_name: str | None = None,
) -> SurfaceModel:
    """Blow up a named point, with the layout of points on the new curve given.

    Every curve through the center must appear in exactly one layout point
    (its transform meets the exceptional curve once); pairs of curves with
    contact order k >= 2 at the center must share the layout point with
    contact k-1 there, and transverse pairs must separate.
    """
    center = s.point(point_name)
    exc = exceptional_name if exceptional_name is not None else f"E<{point_name}>"
    if any(c.name == exc for c in s.curves):
        raise ValidationError(f"exceptional name {exc!r} collides with an existing curve")
    incident = set(center.curve_names)

    taken = {p.name for p in s.points if p.name != point_name}
    where: dict[str, str] = {}
    for np_ in new_point_layout:
        if np_.name in taken:
            raise ValidationError(f"layout point {np_.name!r} collides with an existing point")
        taken.add(np_.name)
        names = np_.curve_names
        if exc not in names:
            raise ValidationError(f"layout point {np_.name!r} must lie on {exc!r}")
        for nm in names:
            if nm == exc:
                continue
            if nm not in incident:
                raise ValidationError(
                    f"curve {nm!r} does not pass through {point_name!r}"
                )
            if nm in where:
                raise ValidationError(f"curve {nm!r} appears at two layout points")
            where[nm] = np_.name
    missing = incident - set(where)
    if missing:
        raise ValidationError(
            f"layout omits curves through {point_name!r}: {sorted(missing)}"
        )
    for a, b in itertools.combinations(sorted(incident), 2):
        k = center.contact_order(a, b)
        shared = where[a] == where[b]
        if k >= 2:
            if not shared:
                raise ValidationError(
                    f"curves {a!r}, {b!r} have contact {k} at {point_name!r} "
                    f"and must share a layout point"
                )
            np_ = next(p for p in new_point_layout if p.name == where[a])
            if np_.contact_order(a, b) != k - 1:
                raise ValidationError(
                    f"contact of {a!r}, {b!r} must drop from {k} to {k - 1}"
                )
        elif shared:
            raise ValidationError(
                f"transverse curves {a!r}, {b!r} may not share a layout point"
            )
    for np_ in new_point_layout:
        for nm in np_.curve_names:
            if nm != exc and np_.contact_order(exc, nm) != 1:
                raise ValidationError(
                    "proper transforms meet the exceptional curve transversally"
                )

    n = s.rank
    gram = tuple(
        tuple(row) + (Fraction(0),) for row in s.gram
    ) + (tuple([Fraction(0)] * n) + (Fraction(-1),),)
    curves = tuple(
        CurveRecord(
            c.name,
            c.divisor_class.extended(-1 if c.name in incident else 0),
            c.is_boundary_component,
        )
        for c in s.curves
    ) + (CurveRecord(exc, DivisorClass([0] * n + [1])),)
    points = tuple(p for p in s.points if p.name != point_name) + tuple(new_point_layout)
    return SurfaceModel(
        basis_names=s.basis_names + (exc,),
        gram=gram,
        curves=curves,
        points=points,
        canonical_class=s.canonical_class.extended(1),
        boundary=s.boundary,
        curves_complete=s.curves_complete,
    )


@dataclass(frozen=True)
class TowerStep:
    """One blow-up in a tower: center, exceptional curve name, point layout."""

    center: str
    exceptional: str
    layout: tuple[PointRecord, ...]


@dataclass(frozen=True)
class TowerSpec:
    """A chain of blow-ups over a base surface.

    An empty tower names an existing curve via `divisor` instead; the two
    forms are mutually exclusive.
    """

    base: SurfaceModel
    steps: tuple[TowerStep, ...]
    divisor: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "steps", tuple(self.steps))
        if self.steps and self.divisor is not None:
            raise ValidationError("a tower with steps must not also name a divisor")
        if self.divisor is not None:
            self.base.curve(self.divisor)


def apply_tower(t: TowerSpec) -> SurfaceModel:
    s = t.base
    for step in t.steps:
        s = blow_up(s, step.center, step.layout, step.exceptional)
    return s


def surface_to_json(s: SurfaceModel) -> dict:
    return {
        "basis": list(s.basis_names),
        "gram": [[rational_to_string(v) for v in row] for row in s.gram],
        "curves": [
            {
                "name": c.name,
                "coords": [rational_to_string(v) for v in c.divisor_class.coords],
                "boundary": c.is_boundary_component,
            }
            for c in s.curves
        ],
        "points": [
            {
                "name": p.name,
                "incidences": [
                    {"curve": cn, "tangency_class": tc} for cn, tc in p.incidences
                ],
                "contact": [
                    {"pair": [a, b], "order": k} for (a, b), k in p.contact
                ],
            }
            for p in s.points
        ],
        "canonical": [rational_to_string(v) for v in s.canonical_class.coords],
        "boundary": [
            {"curve": cn, "coeff": rational_to_string(v)} for cn, v in s.boundary
        ],
        "curves_complete": s.curves_complete,
    }


def surface_from_json(doc: Mapping) -> SurfaceModel:
    try:
        curves = tuple(
            CurveRecord(
                c["name"],
                DivisorClass(rational_from_string(v) for v in c["coords"]),
                bool(c.get("boundary", False)),
            )
            for c in doc["curves"]
        )
        points = tuple(
            PointRecord(
                p["name"],
                tuple((i["curve"], i["tangency_class"]) for i in p["incidences"]),
                tuple(
                    ((e["pair"][0], e["pair"][1]), e["order"]) for e in p["contact"]
                ),
            )
            for p in doc["points"]
        )
        return SurfaceModel(
            basis_names=tuple(doc["basis"]),
            gram=tuple(
                tuple(rational_from_string(v) for v in row) for row in doc["gram"]
            ),
            curves=curves,
            points=points,
            canonical_class=DivisorClass(
                rational_from_string(v) for v in doc["canonical"]
            ),
            boundary=tuple(
                (e["curve"], rational_from_string(e["coeff"]))
                for e in doc.get("boundary", [])
            ),
            curves_complete=bool(doc.get("curves_complete", True)),
        )
    except (KeyError, TypeError, IndexError) as exc:
        raise ValidationError(f"malformed surface document: {exc}") from exc
