"""Zariski decomposition and exact volume sweeps.

A pseudo-effective divisor D on a smooth surface splits uniquely as
D = P + N with P nef, N an effective combination of curves whose Gram
matrix is negative definite, and P orthogonal to every component of N;
the volume of D is P².  The support of N is found iteratively: seed with
the curves pairing negatively against D, solve the orthogonality system,
and enlarge with any curve the candidate positive part still hits
negatively.

sweep() runs the decomposition along the ray L - x·Z for x >= 0.  On a
chamber where the support set is constant the solved coefficients are
affine in x and the volume is a quadratic, so the whole profile comes out
exactly: chamber walls are roots of affine pairings (a curve entering the
support or a coefficient exiting through zero) and the endpoint tau is a
root of the final quadratic.  Signs "just after" a wall are decided by a
first-order jet (value, then slope), which sidesteps any epsilon probing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import (
    PiecewiseProfile,
    Polynomial,
    is_negative_definite,
    rational_sqrt,
    rational_to_string,
    solve_linear_system,
)
from .errors import (
    ConfigurationError,
    InternalComputationError,
    NotPseudoEffectiveError,
    UnsupportedConfigurationError,
    ValidationError,
)
from .surface import DivisorClass, SurfaceModel, is_nef


@dataclass(frozen=True)
class ZariskiResult:
    """Positive part plus the supported negative part, as (curve, coefficient)."""

    positive: DivisorClass
    negative: tuple[tuple[str, Fraction], ...]


@dataclass(frozen=True)
class Chamber:
    """An x-interval on which the negative-part support is constant."""

    lo: Fraction
    hi: Fraction
    support: tuple[str, ...]


@dataclass(frozen=True)
class VolumeProfile:
    """Piecewise-quadratic volume of L - x·Z on [0, tau], with chamber data."""

    profile: PiecewiseProfile
    tau: Fraction
    chambers: tuple[Chamber, ...]


def _pairing_matrix(s: SurfaceModel, names: Sequence[str]) -> list[list[Fraction]]:
    classes = [s.curve_class(n) for n in names]
    return [[s.intersect(a, b) for b in classes] for a in classes]


def decompose(s: SurfaceModel, d: DivisorClass) -> ZariskiResult:
    """Zariski decomposition of d against the declared curve list."""
    if d.dim != s.rank:
        raise ValidationError("divisor class dimension does not match the surface rank")
    support = [c.name for c in s.curves if s.intersect(d, c.divisor_class) < 0]
    for _ in range(len(s.curves) + 1):
        if not support:
            return ZariskiResult(d, ())
        gram = _pairing_matrix(s, support)
        if not is_negative_definite(gram):
            raise ConfigurationError(
                f"support Gram matrix is not negative definite: {support}"
            )
        classes = [s.curve_class(n) for n in support]
        rhs = [s.intersect(d, cls) for cls in classes]
        coeffs = solve_linear_system(gram, rhs)
        if coeffs is None:  # unreachable for a definite matrix; kept defensive
            raise ConfigurationError("singular support Gram matrix")
        p = d
        for c, cls in zip(coeffs, classes):
            p = p - c * cls
        grown = False
        for c in s.curves:
            if c.name not in support and s.intersect(p, c.divisor_class) < 0:
                support.append(c.name)
                grown = True
        if grown:
            continue
        if any(c < 0 for c in coeffs):
            raise NotPseudoEffectiveError(
                "solved negative part has a negative coefficient"
            )
        for cls in classes:
            if s.intersect(p, cls) != 0:
                raise InternalComputationError("positive part not orthogonal to support")
        return ZariskiResult(p, tuple(zip(support, coeffs)))
    raise InternalComputationError("support iteration failed to stabilize")


def volume(s: SurfaceModel, d: DivisorClass) -> Fraction:
    """P² of the decomposition, or 0 when d is not pseudo-effective.

    A support Gram matrix that fails negative definiteness cannot arise for
    a pseudo-effective class on a validly declared surface, so that failure
    mode is also folded into the zero branch.
    """
    try:
        res = decompose(s, d)
    except (NotPseudoEffectiveError, ConfigurationError):
        return Fraction(0)
    v = s.intersect(res.positive, res.positive)
    return v if v > 0 else Fraction(0)


@dataclass(frozen=True)
class _Aff:
    """Affine function c + s·x with exact sign queries just after a point."""

    c: Fraction
    s: Fraction

    def at(self, x: Fraction) -> Fraction:
        return self.c + self.s * x

    def sign_after(self, x0: Fraction) -> int:
        v = self.at(x0)
        if v != 0:
            return -1 if v < 0 else 1
        if self.s != 0:
            return -1 if self.s < 0 else 1
        return 0

    def downward_root(self, x0: Fraction) -> Fraction | None:
        """Root > x0 where the function crosses into negative values."""
        if self.s >= 0:
            return None
        r = -self.c / self.s
        return r if r > x0 else None


def _support_after(
    s: SurfaceModel,
    d0: DivisorClass,
    dslope: DivisorClass,
    x0: Fraction,
) -> tuple[list[str], DivisorClass, DivisorClass, list[_Aff]]:
    """Support and affine decomposition data valid just after x0.

    d(x) = d0 + x·dslope.  Returns (support names, P constant part, P slope
    part, coefficient affines aligned with the support list).
    """

    def pair(u0: DivisorClass, u1: DivisorClass, cls: DivisorClass) -> _Aff:
        return _Aff(s.intersect(u0, cls), s.intersect(u1, cls))

    support = [
        c.name
        for c in s.curves
        if pair(d0, dslope, c.divisor_class).sign_after(x0) < 0
    ]
    for _ in range(len(s.curves) + 1):
        if not support:
            return [], d0, dslope, []
        gram = _pairing_matrix(s, support)
        if not is_negative_definite(gram):
            raise ConfigurationError(
                f"support Gram matrix is not negative definite: {support}"
            )
        classes = [s.curve_class(n) for n in support]
        const = solve_linear_system(gram, [s.intersect(d0, cls) for cls in classes])
        slope = solve_linear_system(gram, [s.intersect(dslope, cls) for cls in classes])
        if const is None or slope is None:
            raise ConfigurationError("singular support Gram matrix")
        p0, p1 = d0, dslope
        for c0, c1, cls in zip(const, slope, classes):
            p0 = p0 - c0 * cls
            p1 = p1 - c1 * cls
        grown = False
        for c in s.curves:
            if c.name in support:
                continue
            if pair(p0, p1, c.divisor_class).sign_after(x0) < 0:
                support.append(c.name)
                grown = True
        if grown:
            continue
        coeffs = [_Aff(c0, c1) for c0, c1 in zip(const, slope)]
        if any(a.sign_after(x0) < 0 for a in coeffs):
            raise InternalComputationError(
                "negative support coefficient inside the pseudo-effective range"
            )
        for cls in classes:
            if s.intersect(p0, cls) != 0 or s.intersect(p1, cls) != 0:
                raise InternalComputationError("positive part not orthogonal to support")
        return support, p0, p1, coeffs
    raise InternalComputationError("support iteration failed to stabilize")


def _smallest_quadratic_root(q: Polynomial, lo: Fraction, hi: Fraction | None) -> Fraction:
    """Smallest root of q in (lo, hi]; hi=None means unbounded above."""
    coeffs = list(q.coeffs) + [Fraction(0)] * (3 - len(q.coeffs))
    c0, c1, c2 = coeffs[:3]
    roots: list[Fraction] = []
    if c2 == 0:
        if c1 == 0:
            raise InternalComputationError("volume does not reach zero along the ray")
        roots = [-c0 / c1]
    else:
        disc = c1 * c1 - 4 * c2 * c0
        if disc < 0:
            raise InternalComputationError("volume does not reach zero along the ray")
        sq = rational_sqrt(disc)
        if sq is None:
            raise UnsupportedConfigurationError(
                "pseudo-effective threshold is irrational; "
                "the declared curve list cannot certify a rational chamber end"
            )
        roots = sorted(((-c1 - sq) / (2 * c2), (-c1 + sq) / (2 * c2)))
    for r in roots:
        if r > lo and (hi is None or r <= hi):
            return r
    raise InternalComputationError("volume does not reach zero along the ray")


def _touch_point(q: Polynomial, lo: Fraction, hi: Fraction) -> Fraction | None:
    """Smallest root of q strictly inside (lo, hi), given q(lo) > 0, q(hi) > 0.

    Only an upward parabola with its vertex in the interval can vanish there.
    """
    coeffs = list(q.coeffs) + [Fraction(0)] * (3 - len(q.coeffs))
    c0, c1, c2 = coeffs[:3]
    if c2 <= 0:
        return None
    v = -c1 / (2 * c2)
    if not (lo < v < hi):
        return None
    qv = q.evaluate(v)
    if qv > 0:
        return None
    if qv == 0:
        return v
    return _smallest_quadratic_root(q, lo, hi)


def sweep(s: SurfaceModel, l: DivisorClass, z: str) -> VolumeProfile:
    """Exact profile of vol(l - x·curve(z)) from x = 0 to exhaustion.

    l must be nef against the declared curves with l² > 0.  The returned
    profile starts at l², decreases, and ends at exactly 0 at x = tau.
    """
    zc = s.curve_class(z)
    res = is_nef(s, l)
    if not res.nef:
        raise ValidationError(
            f"polarization is not nef (violated by {res.violator!r})"
            if res.violator
            else "polarization has negative self-intersection"
        )
    l2 = s.intersect(l, l)
    if l2 <= 0:
        raise ValidationError("polarization must have positive self-intersection")

    x0 = Fraction(0)
    breakpoints: list[Fraction] = [x0]
    segments: list[Polynomial] = []
    chambers: list[Chamber] = []
    tau: Fraction | None = None
    for _ in range(6 * len(s.curves) + 16):
        support, p0, p1, coeffs = _support_after(s, l, -1 * zc, x0)
        q = Polynomial(
            [
                s.intersect(p0, p0),
                2 * s.intersect(p0, p1),
                s.intersect(p1, p1),
            ]
        )
        if q.evaluate(x0) == 0:
            tau = x0
            break
        walls: list[Fraction] = []
        outside = [c for c in s.curves if c.name not in support]
        for c in outside:
            aff = _Aff(s.intersect(p0, c.divisor_class), s.intersect(p1, c.divisor_class))
            r = aff.downward_root(x0)
            if r is not None:
                walls.append(r)
        for aff in coeffs:
            r = aff.downward_root(x0)
            if r is not None:
                walls.append(r)
        wall = min(walls) if walls else None
        if wall is None:
            tau = _smallest_quadratic_root(q, x0, None)
        else:
            qw = q.evaluate(wall)
            if qw > 0:
                # Volume cannot recover once exhausted, so a dip to zero
                # strictly inside the chamber (double root of q) is tau even
                # though both chamber ends are positive.
                dip = _touch_point(q, x0, wall)
                if dip is None:
                    segments.append(q)
                    breakpoints.append(wall)
                    chambers.append(Chamber(x0, wall, tuple(support)))
                    x0 = wall
                    continue
                tau = dip
            else:
                tau = wall if qw == 0 else _smallest_quadratic_root(q, x0, wall)
        segments.append(q)
        breakpoints.append(tau)
        chambers.append(Chamber(x0, tau, tuple(support)))
        break
    if tau is None:
        raise InternalComputationError("sweep did not terminate")
    if not segments:
        raise ValidationError("polarization is exhausted already at x = 0")
    profile = PiecewiseProfile(breakpoints, segments)
    if profile.evaluate(Fraction(0)) != l2 or profile.evaluate(tau) != 0:
        raise InternalComputationError("volume profile endpoint values are wrong")
    for lo, hi, seg in zip(breakpoints, breakpoints[1:], segments):
        dq = seg.derivative()
        if dq.evaluate(lo) > 0 or dq.evaluate(hi) > 0:
            raise InternalComputationError("volume profile is not non-increasing")
    return VolumeProfile(profile, tau, tuple(chambers))


def volume_profile_to_json(vp: VolumeProfile, beta: Fraction | None = None) -> dict:
    doc: dict = {}
    if beta is not None:
        doc["beta"] = rational_to_string(beta)
    doc.update(
        {
            "breakpoints": [rational_to_string(b) for b in vp.profile.breakpoints],
            "segments": [
                [rational_to_string(c) for c in seg.coeffs] or ["0"]
                for seg in vp.profile.segments
            ],
            "chambers": [
                {
                    "from": rational_to_string(ch.lo),
                    "to": rational_to_string(ch.hi),
                    "support": list(ch.support),
                }
                for ch in vp.chambers
            ],
        }
    )
    return doc
