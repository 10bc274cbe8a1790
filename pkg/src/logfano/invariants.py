"""Expected vanishing orders, log discrepancies, and delta-invariant bounds.

The expected vanishing order of a curve Z against a polarization L is the
normalized integral of the volume profile, (1/L²) ∫ vol(L - x·Z) dx taken
from 0 to exhaustion.  The log discrepancy of the last exceptional curve of
a tower follows the crepant-pullback recursion: blowing up a point where
the running boundary has total multiplicity m makes the new curve enter the
boundary with coefficient m - 1, i.e. its log discrepancy is 2 - m.  Both
the discrepancy and (by exact reconstruction from rational samples) the
vanishing order are available as closed-form rational functions of the
boundary parameter beta, so quotients and Taylor prefixes are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .algebra import (
    Polynomial,
    RationalFunctionOfBeta,
    integrate_piecewise,
    rational_to_string,
    reconstruct_rational_function,
    taylor_prefix,
)
from .errors import DegeneracyError, RegimeUnstableError, ValidationError
from .scenarios import ScenarioConfig, build_candidate, pulled_back_polarization
from .surface import DivisorClass, SurfaceModel, TowerSpec, blow_up
from .zariski import sweep


def expected_vanishing_order(s: SurfaceModel, l: DivisorClass, z: str) -> Fraction:
    """(1/l²) ∫ vol(l - x·z) dx over the pseudo-effective range of x.

    l must be nef against the declared curves, with l² > 0.
    """
    l2 = s.intersect(l, l)
    if l2 == 0:
        raise DegeneracyError("polarization self-intersection is zero")
    vp = sweep(s, l, z)
    return integrate_piecewise(vp.profile) / l2


def _discrepancy_polynomial(t: TowerSpec) -> Polynomial:
    """Log discrepancy as a polynomial in beta, for boundary coefficient 1 - beta."""
    one_minus_beta = Polynomial((1, -1))
    running: dict[str, Polynomial] = {
        name: one_minus_beta for name, _ in t.base.boundary
    }
    if not t.steps:
        if t.divisor is None:
            raise ValidationError("an empty tower must name its divisor")
        return Polynomial.constant(1) - running.get(t.divisor, Polynomial.constant(0))
    s = t.base
    a = Polynomial.constant(1)
    for step in t.steps:
        pt = s.point(step.center)
        m = Polynomial.constant(0)
        for cn in pt.curve_names:
            m = m + running.get(cn, Polynomial.constant(0))
        a = Polynomial.constant(2) - m
        s = blow_up(s, step.center, step.layout, step.exceptional)
        running[step.exceptional] = Polynomial.constant(1) - a
    return a


def log_discrepancy(t: TowerSpec, boundary_beta: Fraction) -> Fraction:
    """Log discrepancy of the tower's divisor for boundary (1 - beta)·C."""
    beta = Fraction(boundary_beta)
    if not (0 < beta <= 1):
        raise ValidationError("beta must satisfy 0 < beta <= 1")
    return _discrepancy_polynomial(t).evaluate(beta)


def log_discrepancy_symbolic(t: TowerSpec) -> RationalFunctionOfBeta:
    """Log discrepancy as an exact rational function of beta."""
    return RationalFunctionOfBeta.from_polynomial(_discrepancy_polynomial(t))


def delta_upper_bound(candidates: Sequence[tuple[Fraction, Fraction]]) -> Fraction:
    """min A/S over (A, S) pairs; each S must be positive."""
    if not candidates:
        raise ValidationError("at least one candidate is required")
    best: Fraction | None = None
    for a, s_val in candidates:
        s_val = Fraction(s_val)
        if s_val <= 0:
            raise ValidationError("expected vanishing orders must be positive")
        q = Fraction(a) / s_val
        if best is None or q < best:
            best = q
    return best


def product_delta_upper_bound(d1: Fraction, d2: Fraction) -> Fraction:
    """Bound for a product: the smaller of the two factor bounds."""
    d1, d2 = Fraction(d1), Fraction(d2)
    if d1 <= 0 or d2 <= 0:
        raise ValidationError("delta bounds must be positive")
    return min(d1, d2)


_FIRST_SAMPLE_DENOMINATOR = 10


@lru_cache(maxsize=None)
def _s_function(
    case: str,
    r: int,
    labels: tuple[str, ...],
    deg_num: int,
    deg_den: int,
    sample_count: int,
) -> RationalFunctionOfBeta:
    betas = [
        Fraction(1, _FIRST_SAMPLE_DENOMINATOR + i) for i in range(sample_count)
    ]
    # One extra sweep at half the smallest sample guards the reconstruction:
    # if the chamber structure still changes below the band, the samples do
    # not pin down a single rational function.
    guard = betas[-1] / 2
    samples: list[tuple[Fraction, Fraction]] = []
    signatures: set[tuple] = set()
    for b in betas + [guard]:
        cfg = ScenarioConfig(case=case, r=r, labels=labels, beta=b)
        surf, z, tower = build_candidate(cfg)
        l = pulled_back_polarization(tower)
        vp = sweep(surf, l, z)
        signatures.add(tuple(ch.support for ch in vp.chambers))
        if b != guard:
            samples.append(
                (b, integrate_piecewise(vp.profile) / surf.intersect(l, l))
            )
    if len(signatures) != 1:
        raise RegimeUnstableError(
            "chamber structure changes across the sampled small-beta band"
        )
    return reconstruct_rational_function(samples, deg_num, deg_den)


def s_as_function_of_beta(
    cfg: ScenarioConfig,
    deg_num: int = 4,
    deg_den: int = 2,
    sample_count: int | None = None,
) -> RationalFunctionOfBeta:
    """Exact expected vanishing order as a function of beta.

    Samples the sweep at small rational beta values (ignoring cfg.beta),
    checks that every sample sees the same chamber structure, and
    reconstructs the unique rational function of the requested degrees.
    """
    if sample_count is None:
        sample_count = deg_num + deg_den + 2
    if sample_count < deg_num + deg_den + 2:
        raise ValidationError(
            f"need at least {deg_num + deg_den + 2} samples for degrees "
            f"({deg_num}, {deg_den})"
        )
    return _s_function(cfg.case, cfg.r, cfg.labels, deg_num, deg_den, sample_count)


def ratio_as_function_of_beta(
    cfg: ScenarioConfig,
    deg_num: int = 4,
    deg_den: int = 2,
) -> RationalFunctionOfBeta:
    """A/S as an exact rational function of beta."""
    _, _, tower = build_candidate(cfg)
    return log_discrepancy_symbolic(tower).divide(s_as_function_of_beta(cfg, deg_num, deg_den))


@dataclass(frozen=True)
class InvariantReport:
    """Exact values of one scenario at one beta, plus optional closed forms."""

    scenario: str
    beta: Fraction
    s_value: Fraction
    a_value: Fraction
    ratio: Fraction
    closed_forms: Mapping[str, RationalFunctionOfBeta] | None = None
    ratio_expansion: tuple[Fraction, ...] | None = None


def evaluate_scenario(
    cfg: ScenarioConfig,
    order: int | None = None,
    closed_forms: bool = False,
) -> InvariantReport:
    """Compute S, A, and their ratio for one scenario at its beta."""
    surf, z, tower = build_candidate(cfg)
    l = pulled_back_polarization(tower)
    s_val = expected_vanishing_order(surf, l, z)
    a_val = log_discrepancy(tower, cfg.beta)
    forms = None
    expansion = None
    if closed_forms or order is not None:
        s_rfb = s_as_function_of_beta(cfg)
        a_rfb = log_discrepancy_symbolic(tower)
        ratio_rfb = a_rfb.divide(s_rfb)
        forms = {"S": s_rfb, "A": a_rfb, "ratio": ratio_rfb}
        if order is not None:
            expansion = tuple(taylor_prefix(ratio_rfb, order))
    return InvariantReport(
        scenario=cfg.scenario_id,
        beta=cfg.beta,
        s_value=s_val,
        a_value=a_val,
        ratio=a_val / s_val,
        closed_forms=forms,
        ratio_expansion=expansion,
    )


def rational_function_to_json(f: RationalFunctionOfBeta) -> dict:
    return {
        "num": [rational_to_string(c) for c in f.numerator.coeffs] or ["0"],
        "den": [rational_to_string(c) for c in f.denominator.coeffs] or ["0"],
    }


def report_to_json(rep: InvariantReport, decimals: bool = False) -> dict:
    doc: dict = {
        "scenario": rep.scenario,
        "beta": rational_to_string(rep.beta),
        "S": rational_to_string(rep.s_value),
        "A": rational_to_string(rep.a_value),
        "ratio": rational_to_string(rep.ratio),
    }
    if rep.closed_forms is not None:
        doc["closed_forms"] = {
            key: rational_function_to_json(f) for key, f in rep.closed_forms.items()
        }
    if rep.ratio_expansion is not None:
        doc["ratio_expansion"] = [rational_to_string(c) for c in rep.ratio_expansion]
    if decimals:
        doc["approx_decimal"] = {
            "note": "approximate rendering of the exact values above",
            "S": f"{float(rep.s_value):.12g}",
            "A": f"{float(rep.a_value):.12g}",
            "ratio": f"{float(rep.ratio):.12g}",
        }
    return doc
