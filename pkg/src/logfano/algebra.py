"""Exact rational arithmetic building blocks.

Everything downstream (intersection theory, Zariski decompositions, volume
integrals, series expansions) runs over the rationals with no floats anywhere.
This module holds the small algebra kit those computations share: univariate
polynomials, piecewise-polynomial profiles, rational functions of the log
parameter, exact linear algebra, and reconstruction of a rational function
from interpolation samples.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    PoleError,
    ReconstructionError,
    ValidationError,
)

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(-?\d+)\s*)?$")


def rational_from_string(text: str) -> Fraction:
    """Parse "p/q" or "p" into an exact rational.

    Floats and decimal points are rejected on purpose: a decimal literal is
    almost always a silently-rounded value, and every consumer here needs the
    exact one.
    """
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValidationError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValidationError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def rational_to_string(q: Fraction) -> str:
    """Render a rational as "p/q", omitting the denominator when it is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    if q < 0:
        return None
    if q == 0:
        return Fraction(0)
    n, d = q.numerator, q.denominator
    rn = math.isqrt(n)
    rd = math.isqrt(d)
    if rn * rn != n or rd * rd != d:
        return None
    return Fraction(rn, rd)


@dataclass(frozen=True)
class Polynomial:
    """Univariate polynomial over the rationals, coefficients lowest-degree first.

    Instances are immutable and always stored in canonical form (no trailing
    zero coefficients; the zero polynomial is the empty tuple).
    """

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable[Fraction | int]) -> None:
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @staticmethod
    def constant(c: Fraction | int) -> "Polynomial":
        return Polynomial([Fraction(c)])

    @staticmethod
    def x() -> "Polynomial":
        return Polynomial([0, 1])

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial assigned -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def evaluate(self, x: Fraction | int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(
            [
                (self.coeffs[i] if i < len(self.coeffs) else 0)
                + (other.coeffs[i] if i < len(other.coeffs) else 0)
                for i in range(n)
            ]
        )

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial | Fraction | int") -> "Polynomial":
        if isinstance(other, (Fraction, int)):
            return Polynomial([c * other for c in self.coeffs])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def derivative(self) -> "Polynomial":
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def antiderivative(self) -> "Polynomial":
        """Primitive with zero constant term."""
        return Polynomial([0] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def divmod_exact(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        """Long division; exact because coefficients are rational."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quo = [Fraction(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        d = other.coeffs
        while len(rem) >= len(d) and any(rem):
            if rem[-1] == 0:
                rem.pop()
                continue
            shift = len(rem) - len(d)
            factor = rem[-1] / d[-1]
            quo[shift] = factor
            for i, c in enumerate(d):
                rem[shift + i] -= factor * c
            rem.pop()
        return Polynomial(quo), Polynomial(rem)

    @staticmethod
    def gcd(a: "Polynomial", b: "Polynomial") -> "Polynomial":
        """Monic greatest common divisor via the Euclidean algorithm."""
        while not b.is_zero():
            _, r = a.divmod_exact(b)
            a, b = b, r
        if a.is_zero():
            return a
        lead = a.coeffs[-1]
        return Polynomial([c / lead for c in a.coeffs])

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(rational_to_string(c))
            elif i == 1:
                parts.append(f"{rational_to_string(c)}*x")
            else:
                parts.append(f"{rational_to_string(c)}*x^{i}")
        return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True)
class PiecewiseProfile:
    """Continuous piecewise-polynomial function on [breakpoints[0], breakpoints[-1]].

    breakpoints must be strictly increasing; segment i is the polynomial on
    [breakpoints[i], breakpoints[i+1]].  Continuity at every interior
    breakpoint is validated at construction.
    """

    breakpoints: tuple[Fraction, ...]
    segments: tuple[Polynomial, ...]

    def __init__(
        self,
        breakpoints: Sequence[Fraction],
        segments: Sequence[Polynomial],
    ) -> None:
        bps = tuple(Fraction(b) for b in breakpoints)
        segs = tuple(segments)
        if len(bps) != len(segs) + 1:
            raise ValidationError(
                f"{len(bps)} breakpoints need {len(bps) - 1} segments, got {len(segs)}"
            )
        if len(bps) < 2:
            raise ValidationError("a profile needs at least one segment")
        for a, b in zip(bps, bps[1:]):
            if not a < b:
                raise ValidationError("breakpoints must be strictly increasing")
        for i in range(len(segs) - 1):
            x = bps[i + 1]
            if segs[i].evaluate(x) != segs[i + 1].evaluate(x):
                raise ValidationError(f"profile discontinuous at x = {x}")
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "segments", segs)

    def evaluate(self, x: Fraction | int) -> Fraction:
        x = Fraction(x)
        if x < self.breakpoints[0] or x > self.breakpoints[-1]:
            raise ValidationError(f"x = {x} outside profile domain")
        for i in range(len(self.segments)):
            if x <= self.breakpoints[i + 1]:
                return self.segments[i].evaluate(x)
        return self.segments[-1].evaluate(x)  # pragma: no cover

    def integrate(self) -> Fraction:
        total = Fraction(0)
        for i, seg in enumerate(self.segments):
            F = seg.antiderivative()
            total += F.evaluate(self.breakpoints[i + 1]) - F.evaluate(self.breakpoints[i])
        return total


def integrate_piecewise(profile: PiecewiseProfile) -> Fraction:
    return profile.integrate()


@dataclass(frozen=True)
class RationalFunctionOfBeta:
    """Quotient of polynomials in the log parameter, kept in canonical form.

    Canonical: numerator and denominator coprime, denominator with integer
    coefficients of gcd 1 and positive leading coefficient.  Two equal
    rational functions therefore compare equal as dataclasses.
    """

    numerator: Polynomial
    denominator: Polynomial

    def __init__(self, numerator: Polynomial, denominator: Polynomial) -> None:
        if denominator.is_zero():
            raise ValidationError("zero denominator polynomial")
        if not numerator.is_zero():
            g = Polynomial.gcd(numerator, denominator)
            if g.degree > 0:
                numerator, _ = numerator.divmod_exact(g)
                denominator, _ = denominator.divmod_exact(g)
        # Scale: denominator gets primitive integer coefficients, positive lead.
        mult = 1
        for c in denominator.coeffs:
            mult = mult * c.denominator // math.gcd(mult, c.denominator)
        ints = [c * mult for c in denominator.coeffs]
        g = 0
        for c in ints:
            g = math.gcd(g, c.numerator)
        scale = Fraction(mult, g if g else 1)
        if denominator.coeffs[-1] * scale < 0:
            scale = -scale
        object.__setattr__(self, "numerator", numerator * scale)
        object.__setattr__(self, "denominator", denominator * scale)

    @staticmethod
    def from_polynomial(p: Polynomial) -> "RationalFunctionOfBeta":
        return RationalFunctionOfBeta(p, Polynomial.constant(1))

    @staticmethod
    def constant(c: Fraction | int) -> "RationalFunctionOfBeta":
        return RationalFunctionOfBeta(Polynomial.constant(c), Polynomial.constant(1))

    def evaluate(self, beta: Fraction | int) -> Fraction:
        den = self.denominator.evaluate(beta)
        if den == 0:
            raise PoleError(f"pole at beta = {beta}")
        return self.numerator.evaluate(beta) / den

    def divide(self, other: "RationalFunctionOfBeta") -> "RationalFunctionOfBeta":
        if other.numerator.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunctionOfBeta(
            self.numerator * other.denominator,
            self.denominator * other.numerator,
        )

    def __str__(self) -> str:
        if self.denominator.degree == 0 and self.denominator.coeffs[0] == 1:
            return str(self.numerator)
        return f"({self.numerator}) / ({self.denominator})"


def taylor_prefix(f: RationalFunctionOfBeta, order: int) -> list[Fraction]:
    """First coefficients of the series of f at 0, constant term first.

    Returns order + 1 coefficients.  Raises PoleError when the denominator
    vanishes at 0.
    """
    if order < 0:
        raise ValidationError("order must be nonnegative")
    den0 = f.denominator.evaluate(0)
    if den0 == 0:
        raise PoleError("expansion point is a pole")
    num = list(f.numerator.coeffs) + [Fraction(0)] * (order + 1)
    den = list(f.denominator.coeffs) + [Fraction(0)] * (order + 1)
    out: list[Fraction] = []
    for k in range(order + 1):
        acc = num[k]
        for j in range(k):
            acc -= out[j] * den[k - j]
        out.append(acc / den0)
    return out


def solve_linear_system(
    matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]
) -> list[Fraction] | None:
    """Solve a square system exactly; None if the matrix is singular."""
    n = len(matrix)
    aug = [[Fraction(matrix[i][j]) for j in range(n)] + [Fraction(rhs[i])] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [v / pv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def nullspace(matrix: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Basis of the right nullspace of a (possibly rectangular) matrix."""
    rows = [list(map(Fraction, row)) for row in matrix]
    if not rows:
        return []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][col]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -rows[i][fc]
        basis.append(vec)
    return basis


def determinant(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    n = len(matrix)
    rows = [[Fraction(matrix[i][j]) for j in range(n)] for i in range(n)]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        pv = rows[col][col]
        for r in range(col + 1, n):
            if rows[r][col] != 0:
                factor = rows[r][col] / pv
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return det


def is_negative_definite(matrix: Sequence[Sequence[Fraction]]) -> bool:
    """Sylvester test: leading principal minors strictly alternate, starting < 0."""
    n = len(matrix)
    for k in range(1, n + 1):
        minor = determinant([row[:k] for row in matrix[:k]])
        if k % 2 == 1 and not minor < 0:
            return False
        if k % 2 == 0 and not minor > 0:
            return False
    return True


def reconstruct_rational_function(
    samples: Sequence[tuple[Fraction, Fraction]],
    numerator_degree: int,
    denominator_degree: int,
) -> RationalFunctionOfBeta:
    """Recover num/den of bounded degrees from exact point samples.

    Sets up the homogeneous linear system num(b_i) - y_i * den(b_i) = 0 on the
    first numerator_degree + denominator_degree + 1 samples, takes a nullspace
    vector, canonicalizes, then verifies every sample, including any held-out
    extras; the extras are what catch a wrong degree bound.
    """
    needed = numerator_degree + denominator_degree + 2
    if len(samples) < needed:
        raise ReconstructionError(
            f"need at least {needed} samples "
            f"(degrees {numerator_degree}/{denominator_degree} plus one held out), "
            f"got {len(samples)}"
        )
    betas = [b for b, _ in samples]
    if len(set(betas)) != len(betas):
        raise ReconstructionError("duplicate sample points")
    fit = samples[: needed - 1]
    rows = []
    for b, y in fit:
        row = [b**k for k in range(numerator_degree + 1)]
        row += [-y * b**k for k in range(denominator_degree + 1)]
        rows.append(row)
    basis = nullspace(rows)
    if not basis:
        raise ReconstructionError("no nontrivial solution; system is overdetermined")
    vec = basis[0]
    num = Polynomial(vec[: numerator_degree + 1])
    den = Polynomial(vec[numerator_degree + 1 :])
    if den.is_zero():
        raise ReconstructionError("degenerate fit: zero denominator")
    f = RationalFunctionOfBeta(num, den)
    for b, y in samples:
        if f.denominator.evaluate(b) == 0 or f.evaluate(b) != y:
            raise ReconstructionError(
                f"reconstructed function disagrees with sample at beta = {b}: "
                f"expected {y}"
            )
    return f
