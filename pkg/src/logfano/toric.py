"""Toric cross-check machinery: fans, divisor polytopes, barycenters.

For a torus-invariant divisor D = sum a_rho D_rho on a smooth complete toric
surface, the associated polytope is P = {u : <u, v_rho> >= -a_rho}.  The
expected vanishing order of the toric valuation v is then <bc(P), v> -
psi(v), where bc is the barycenter of P and psi is the minimum of <., v>
over P.  Everything here is exact: vertices are solved pairwise from the
supporting lines, infeasible and redundant intersection points are dropped,
and the hull is rebuilt by a monotone chain with strict turns.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from math import gcd
from typing import Iterable, Sequence

from .algebra import Polynomial
from .errors import DegeneracyError, ValidationError

Vector = tuple[int, int]
Point = tuple[Fraction, Fraction]


def _cross(a: Sequence[Fraction | int], b: Sequence[Fraction | int]) -> Fraction:
    return Fraction(a[0]) * Fraction(b[1]) - Fraction(a[1]) * Fraction(b[0])


def _dot(a: Sequence[Fraction | int], b: Sequence[Fraction | int]) -> Fraction:
    return Fraction(a[0]) * Fraction(b[0]) + Fraction(a[1]) * Fraction(b[1])


@dataclass(frozen=True)
class Fan2D:
    """A complete fan in the plane: primitive rays sorted counterclockwise."""

    rays: tuple[Vector, ...]

    def __post_init__(self) -> None:
        rays = tuple((int(a), int(b)) for a, b in self.rays)
        object.__setattr__(self, "rays", rays)
        if len(rays) < 3:
            raise ValidationError("a complete fan needs at least three rays")
        for a, b in rays:
            if (a, b) == (0, 0) or gcd(abs(a), abs(b)) != 1:
                raise ValidationError(f"ray ({a},{b}) is not primitive")
        if len(set(rays)) != len(rays):
            raise ValidationError("fan rays must be distinct")
        for i, r in enumerate(rays):
            nxt = rays[(i + 1) % len(rays)]
            if _cross(r, nxt) <= 0:
                raise ValidationError(
                    "rays must be sorted counterclockwise with convex "
                    f"successive cones (rays {r} and {nxt})"
                )


@dataclass(frozen=True)
class ToricDivisorData:
    """A fan together with one rational coefficient per ray."""

    fan: Fan2D
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) != len(self.fan.rays):
            raise ValidationError("one coefficient is required per fan ray")


@dataclass(frozen=True)
class Polytope2D:
    """A bounded convex polygon: counterclockwise vertices, no three collinear."""

    vertices: tuple[Point, ...]

    def __post_init__(self) -> None:
        verts = tuple((Fraction(x), Fraction(y)) for x, y in self.vertices)
        object.__setattr__(self, "vertices", verts)
        n = len(verts)
        if n < 3:
            raise ValidationError("a polygon needs at least three vertices")
        if len(set(verts)) != n:
            raise ValidationError("polygon vertices must be distinct")
        for i in range(n):
            a, b, c = verts[i], verts[(i + 1) % n], verts[(i + 2) % n]
            turn = _cross((b[0] - a[0], b[1] - a[1]), (c[0] - b[0], c[1] - b[1]))
            if turn <= 0:
                raise ValidationError(
                    "vertices must make strictly counterclockwise turns"
                )


def _hull(points: Iterable[Point]) -> list[Point]:
    """Convex hull by monotone chain, dropping collinear boundary points."""
    pts = sorted(set(points))
    if len(pts) < 3:
        return pts

    def build(seq: list[Point]) -> list[Point]:
        out: list[Point] = []
        for p in seq:
            while len(out) >= 2 and _cross(
                (out[-1][0] - out[-2][0], out[-1][1] - out[-2][1]),
                (p[0] - out[-2][0], p[1] - out[-2][1]),
            ) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = build(pts)
    upper = build(pts[::-1])
    return lower[:-1] + upper[:-1]


def polytope_from_divisor(d: ToricDivisorData) -> Polytope2D:
    """Exact polytope {u : <u, ray> >= -coeff} of a toric divisor.

    Candidate vertices come from pairwise intersections of the supporting
    lines; infeasible points and redundancy are pruned.  Completeness of the
    fan keeps the region bounded, so fewer than three surviving vertices
    means the polytope has degenerated.
    """
    rays = d.fan.rays
    coeffs = d.coeffs
    candidates: set[Point] = set()
    for i, j in itertools.combinations(range(len(rays)), 2):
        det = _cross(rays[i], rays[j])
        if det == 0:
            continue
        ux = (coeffs[j] * rays[i][1] - coeffs[i] * rays[j][1]) / det
        uy = (coeffs[i] * rays[j][0] - coeffs[j] * rays[i][0]) / det
        if all(_dot((ux, uy), r) >= -a for r, a in zip(rays, coeffs)):
            candidates.add((ux, uy))
    hull = _hull(candidates)
    if len(hull) < 3:
        raise DegeneracyError("divisor polytope degenerates to fewer than three vertices")
    return Polytope2D(tuple(hull))


def barycenter(p: Polytope2D) -> Point:
    """Exact centroid, by triangulating from the first vertex."""
    v0 = p.vertices[0]
    total = Fraction(0)
    cx = Fraction(0)
    cy = Fraction(0)
    for a, b in zip(p.vertices[1:], p.vertices[2:]):
        area = _cross((a[0] - v0[0], a[1] - v0[1]), (b[0] - v0[0], b[1] - v0[1])) / 2
        total += area
        cx += area * (v0[0] + a[0] + b[0]) / 3
        cy += area * (v0[1] + a[1] + b[1]) / 3
    if total == 0:
        raise DegeneracyError("polygon has zero area")
    return (cx / total, cy / total)


def area(p: Polytope2D) -> Fraction:
    v0 = p.vertices[0]
    total = Fraction(0)
    for a, b in zip(p.vertices[1:], p.vertices[2:]):
        total += _cross((a[0] - v0[0], a[1] - v0[1]), (b[0] - v0[0], b[1] - v0[1])) / 2
    return total


def psi(p: Polytope2D, v: Sequence[int]) -> Fraction:
    """Support value min_{u in P} <u, v>, attained at a vertex."""
    return min(_dot(u, v) for u in p.vertices)


def toric_expected_vanishing(d: ToricDivisorData, v: Sequence[int]) -> Fraction:
    """Barycenter pairing minus support value, for the valuation vector v."""
    p = polytope_from_divisor(d)
    bc = barycenter(p)
    return _dot(bc, v) - psi(p, v)


_ASSET = "bl2p2_fan.json"


def _load_asset(path: str | None = None) -> dict:
    try:
        if path is not None:
            with open(path, encoding="utf-8") as fh:
                return json.load(fh)
        text = resources.files(__package__).joinpath("data").joinpath(_ASSET).read_text()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read fan asset {_ASSET}: {exc}") from exc


def builtin_blowup_divisor(beta: Fraction, path: str | None = None) -> ToricDivisorData:
    """The stored toric model of the one-numeric-label blow-up, at parameter beta.

    The asset stores the fan rays plus one coefficient polynomial in beta per
    ray (lowest degree first); its polytope realizes the polarization used by
    the sweep machinery, so the two routes can be compared value by value.
    """
    doc = _load_asset(path)
    try:
        fan = Fan2D(tuple((int(a), int(b)) for a, b in doc["rays"]))
        coeffs = tuple(
            Polynomial([Fraction(c) for c in poly]).evaluate(Fraction(beta))
            for poly in doc["coefficients"]
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed fan asset {_ASSET}: {exc}") from exc
    return ToricDivisorData(fan, coeffs)


def builtin_valuation(path: str | None = None) -> Vector:
    """The distinguished toric valuation stored alongside the fan."""
    doc = _load_asset(path)
    try:
        a, b = doc["valuation"]
        return (int(a), int(b))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed fan asset {_ASSET}: {exc}") from exc
