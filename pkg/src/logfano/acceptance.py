"""Self-contained acceptance checks, runnable from the CLI and from pytest.

Every check compares exactly computed quantities against independently
frozen expectations: hand-worked decompositions, closed forms, small-beta
expansion coefficients, and brute-force oracles that share no code path
with the implementations they judge.  All comparisons are exact; there are
no tolerances anywhere.

One check that encodes a demanded first-order coefficient table for the
ratio A/S in the fourth over-surface case is known to fail for r in {1, 2}:
the computed coefficient is r/4, not the demanded r.  The mismatch is
reported honestly rather than masked; see the README note.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Callable, Sequence

from .algebra import (
    Polynomial,
    RationalFunctionOfBeta,
    integrate_piecewise,
    is_negative_definite,
    rational_to_string,
    solve_linear_system,
    taylor_prefix,
)
from .errors import DegeneracyError, LogFanoError
from .invariants import (
    evaluate_scenario,
    log_discrepancy,
    log_discrepancy_symbolic,
    ratio_as_function_of_beta,
    s_as_function_of_beta,
)
from .scenarios import (
    INF,
    ScenarioConfig,
    alpha_invariant_coefficients,
    build_candidate,
    git_config_for_labels,
    git_stability,
    kstab_row_for_labels,
    pulled_back_polarization,
)
from .surface import DivisorClass, SurfaceModel
from .toric import (
    barycenter,
    builtin_blowup_divisor,
    builtin_valuation,
    polytope_from_divisor,
    psi,
    area,
    toric_expected_vanishing,
)
from .zariski import decompose, sweep, volume


@dataclass(frozen=True)
class CheckLine:
    """One exact comparison: a check id, a human label, and both sides."""

    check: str
    label: str
    expected: str
    computed: str
    ok: bool


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return rational_to_string(v)
    if isinstance(v, (tuple, list)):
        return "(" + ", ".join(_fmt(x) for x in v) + ")"
    if isinstance(v, (frozenset, set)):
        return "{" + ", ".join(_fmt(x) for x in sorted(v)) + "}"
    return str(v)


def _line(check: str, label: str, expected, computed) -> CheckLine:
    return CheckLine(check, label, _fmt(expected), _fmt(computed), expected == computed)


def format_line(line: CheckLine) -> str:
    status = "PASS" if line.ok else "FAIL"
    return (
        f"[{status}] {line.check} :: {line.label}: "
        f"expected {line.expected}, computed {line.computed}"
    )


_BETAS_MAIN = (
    Fraction(1, 5),
    Fraction(1, 7),
    Fraction(1, 10),
    Fraction(1, 100),
    Fraction(3, 50),
)
_BETAS_TORIC = (
    Fraction(1, 10),
    Fraction(1, 12),
    Fraction(1, 20),
    Fraction(1, 50),
    Fraction(1, 100),
)


def _cfg(case: str, r: int, labels: Sequence[str], beta=Fraction(1, 7)) -> ScenarioConfig:
    return ScenarioConfig(case=case, r=r, labels=tuple(labels), beta=beta)


def _sweep_for(cfg: ScenarioConfig):
    surf, z, tower = build_candidate(cfg)
    l = pulled_back_polarization(tower)
    return surf, l, z, sweep(surf, l, z)


def _rfb(num: Sequence, den: Sequence = (1,)) -> RationalFunctionOfBeta:
    return RationalFunctionOfBeta(Polynomial(num), Polynomial(den))


# --- check 1: full profile of the tangency-label candidate at r = 2 ----------


def _check_profile_case2() -> list[CheckLine]:
    cid = "zariski-case2-r2-exact"
    out = []
    for beta in _BETAS_MAIN:
        cfg = _cfg("over-S:2", 2, ("0", INF), beta)
        surf, l, z, vp = _sweep_for(cfg)
        s_val = integrate_piecewise(vp.profile) / surf.intersect(l, l)
        out.append(_line(cid, f"S at beta={beta}", 1 + beta, s_val))
        out.append(_line(cid, f"tau at beta={beta}", 2 + 2 * beta, vp.tau))
        out.append(
            _line(
                cid,
                f"breakpoints at beta={beta}",
                (Fraction(0), beta, 2 + beta, 2 + 2 * beta),
                vp.profile.breakpoints,
            )
        )
        out.append(
            _line(
                cid,
                f"chamber supports at beta={beta}",
                ((), ("E0", "F0"), ("E0", "F0", "H0", "Hinf")),
                tuple(tuple(sorted(ch.support)) for ch in vp.chambers),
            )
        )
    beta = Fraction(1, 7)
    cfg = _cfg("over-S:2", 2, ("0", INF), beta)
    surf, l, z, vp = _sweep_for(cfg)
    out.append(
        _line(
            cid,
            "segment polynomials at beta=1/7",
            (
                Polynomial((Fraction(30, 49), 0, -1)),
                Polynomial((Fraction(31, 49), Fraction(-2, 7))),
                Polynomial((Fraction(256, 49), Fraction(-32, 7), 1)),
            ),
            vp.profile.segments,
        )
    )
    x = Fraction(31, 14)
    res = decompose(surf, l - x * surf.curve_class(z))
    out.append(
        _line(
            cid,
            "positive part at beta=1/7, x=31/14",
            (
                Fraction(1, 14),
                Fraction(1, 7),
                Fraction(-1, 14),
                Fraction(-1, 14),
                Fraction(-1, 14),
            ),
            res.positive.coords,
        )
    )
    out.append(
        _line(
            cid,
            "negative support at beta=1/7, x=31/14",
            ("E0", "F0", "H0", "Hinf"),
            tuple(sorted(n for n, _ in res.negative)),
        )
    )
    return out


# --- check 2: double blow-up candidate with no labels ------------------------


def _check_profile_case4() -> list[CheckLine]:
    cid = "zariski-case4-r0-exact"
    out = []
    for beta in _BETAS_MAIN:
        rep = evaluate_scenario(_cfg("over-S:4", 0, (), beta))
        out.append(_line(cid, f"S at beta={beta}", 1 + 2 * beta, rep.s_value))
        out.append(_line(cid, f"A at beta={beta}", 1 + 2 * beta, rep.a_value))
        out.append(_line(cid, f"A/S at beta={beta}", Fraction(1), rep.ratio))
    return out


# --- check 3: small-beta expansions, candidates on the surface itself --------


def _check_expansions_on() -> list[CheckLine]:
    cid = "on-surface-expansions"
    out = []
    for case in ("on-S:E_i", "on-S:F_i"):
        for r, labels in ((1, ("1",)), (2, ("1", "2"))):
            f = s_as_function_of_beta(_cfg(case, r, labels))
            out.append(
                _line(
                    cid,
                    f"{case} r={r} S expansion",
                    (Fraction(1, 2), Fraction(6 - r, 8)),
                    tuple(taylor_prefix(f, 1)),
                )
            )
    for r, labels in ((0, ()), (1, ("1",)), (2, ("1", "2"))):
        f = s_as_function_of_beta(_cfg("on-S:C", r, labels))
        out.append(
            _line(
                cid,
                f"on-S:C r={r} S expansion",
                (Fraction(0), Fraction(1, 2), Fraction(r - 4, 24)),
                tuple(taylor_prefix(f, 2)),
            )
        )
        f = s_as_function_of_beta(_cfg("on-S:fiber", r, labels))
        out.append(
            _line(
                cid,
                f"on-S:fiber r={r} S expansion",
                (Fraction(1, 2), Fraction(4 - r, 8)),
                tuple(taylor_prefix(f, 1)),
            )
        )
    return out


# --- check 4: small-beta expansions, candidates over the surface -------------


def _check_expansions_over() -> list[CheckLine]:
    cid = "over-surface-expansions"
    combos = (
        ("over-S:1", (0, ()), (1, ("1",)), (2, ("1", "2"))),
        ("over-S:2", (1, ("0",)), (2, ("0", INF))),
        ("over-S:3", (1, ("1",)), (2, ("1", "2"))),
        ("over-S:4", (0, ()), (1, ("1",)), (2, ("1", "2"))),
    )
    first_order = {
        "over-S:1": lambda r: Fraction(12 - r, 8),
        "over-S:2": lambda r: Fraction(6 - r, 4),
        "over-S:3": lambda r: Fraction(14 - r, 8),
        "over-S:4": lambda r: Fraction(8 - r, 4),
    }
    constant = {
        "over-S:1": Fraction(1, 2),
        "over-S:2": Fraction(1),
        "over-S:3": Fraction(1, 2),
        "over-S:4": Fraction(1),
    }
    out = []
    for case, *pairs in combos:
        for r, labels in pairs:
            f = s_as_function_of_beta(_cfg(case, r, labels))
            out.append(
                _line(
                    cid,
                    f"{case} r={r} S expansion",
                    (constant[case], first_order[case](r)),
                    tuple(taylor_prefix(f, 1)),
                )
            )
    return out


# --- check 5: ratio expansions and the delta bound below one ------------------


def _check_ratio_bounds() -> list[CheckLine]:
    cid = "delta-ratio-bounds"
    out = []
    for r, labels in ((1, ("0",)), (2, ("0", INF))):
        f = ratio_as_function_of_beta(_cfg("over-S:2", r, labels))
        out.append(
            _line(
                cid,
                f"over-S:2 r={r} ratio expansion",
                (Fraction(1), Fraction(r - 2, 4)),
                tuple(taylor_prefix(f, 1)),
            )
        )
    for r, labels in ((0, ()), (1, ("1",)), (2, ("1", "2"))):
        f = ratio_as_function_of_beta(_cfg("over-S:4", r, labels))
        out.append(
            _line(
                cid,
                f"over-S:4 r={r} ratio expansion",
                (Fraction(1), Fraction(r)),
                tuple(taylor_prefix(f, 1)),
            )
        )
    cfg = _cfg("over-S:2", 1, ("0",))
    out.append(
        _line(
            cid,
            "over-S:2 r=1 ratio closed form",
            _rfb((4, 3), (4, 4)),
            ratio_as_function_of_beta(cfg),
        )
    )
    for beta in _BETAS_MAIN:
        rep = evaluate_scenario(_cfg("over-S:2", 1, ("0",), beta))
        out.append(
            _line(cid, f"over-S:2 r=1 ratio below one at beta={beta}", True, rep.ratio < 1)
        )
    return out


# --- check 6: toric cross-check of the r = 1 tangency-label candidate --------


def _check_toric() -> list[CheckLine]:
    cid = "toric-cross-check"
    out = []
    val = builtin_valuation()
    out.append(_line(cid, "valuation vector", (2, 1), tuple(val)))
    for beta in _BETAS_TORIC:
        div = builtin_blowup_divisor(beta)
        s_toric = toric_expected_vanishing(div, val)
        rep = evaluate_scenario(_cfg("over-S:2", 1, ("0",), beta))
        out.append(_line(cid, f"toric S equals sweep S at beta={beta}", rep.s_value, s_toric))
        poly = polytope_from_divisor(div)
        den = 3 * (4 + 3 * beta)
        out.append(
            _line(
                cid,
                f"barycenter at beta={beta}",
                (
                    Fraction(-(6 + 9 * beta + 4 * beta**2), 1) / den,
                    Fraction(-(12 * beta + 7 * beta**2), 1) / den,
                ),
                barycenter(poly),
            )
        )
        out.append(
            _line(
                cid,
                f"support value at beta={beta}",
                -(2 + 3 * beta),
                psi(poly, val),
            )
        )
    out.append(
        _line(
            cid,
            "reconstructed S closed form",
            _rfb((4, 8, 4), (4, 3)),
            s_as_function_of_beta(_cfg("over-S:2", 1, ("0",))),
        )
    )
    return out


# --- check 7: log discrepancies along the blow-up towers ---------------------


def _check_discrepancies() -> list[CheckLine]:
    cid = "log-discrepancy-towers"
    out = []
    towers = (
        ("over-S:1 r=0", _cfg("over-S:1", 0, ()), _rfb((1, 1))),
        ("over-S:2 r=1 I={0}", _cfg("over-S:2", 1, ("0",)), _rfb((1, 1))),
        ("over-S:3 r=1 I={1}", _cfg("over-S:3", 1, ("1",)), _rfb((1, 1))),
        ("over-S:4 r=0", _cfg("over-S:4", 0, ()), _rfb((1, 2))),
        ("on-S:E_i r=1 I={1}", _cfg("on-S:E_i", 1, ("1",)), _rfb((1,))),
        ("on-S:F_i r=1 I={1}", _cfg("on-S:F_i", 1, ("1",)), _rfb((1,))),
        ("on-S:fiber r=0", _cfg("on-S:fiber", 0, ()), _rfb((1,))),
        ("on-S:C r=0", _cfg("on-S:C", 0, ()), _rfb((0, 1))),
    )
    beta = Fraction(1, 5)
    for label, cfg, expected in towers:
        _, _, tower = build_candidate(cfg)
        out.append(_line(cid, f"{label} symbolic A", expected, log_discrepancy_symbolic(tower)))
        out.append(
            _line(
                cid,
                f"{label} numeric A at beta=1/5",
                expected.evaluate(beta),
                log_discrepancy(tower, beta),
            )
        )
    return out


# --- check 8: coefficients of the invariant anticanonical decomposition ------


def _check_alpha() -> list[CheckLine]:
    cid = "alpha-coefficients"
    out = []
    for k in range(10):
        gamma = Fraction(2 * k, 9)
        out.append(
            _line(
                cid,
                f"coefficients at gamma={gamma}",
                (1 - gamma / 2, 1 - gamma / 2, 1 - gamma, Fraction(2)),
                alpha_invariant_coefficients(gamma),
            )
        )
    return out


# --- check 9: point-configuration verdicts against the K-verdict table -------


def _check_git() -> list[CheckLine]:
    cid = "git-concordance"
    concordant = {
        "unstable": ("K-unstable",),
        "strictly_semistable": ("strictly K-polystable", "strictly K-semistable"),
        "stable": ("K-stable",),
    }
    cases = (
        (("0",), "unstable", "K-unstable"),
        (("0", INF), "strictly_semistable", "strictly K-polystable"),
        (("0", "1"), "strictly_semistable", "strictly K-semistable"),
        (tuple(str(i) for i in range(1, 8)), "stable", "K-stable"),
    )
    out = []
    for labels, git_expected, k_expected in cases:
        verdict = git_stability(git_config_for_labels(labels))
        _, k_verdict = kstab_row_for_labels(labels)
        shown = "{" + ",".join(labels) + "}"
        out.append(_line(cid, f"point verdict for I={shown}", git_expected, verdict))
        out.append(_line(cid, f"K-verdict for I={shown}", k_expected, k_verdict))
        out.append(
            _line(
                cid,
                f"concordance for I={shown}",
                True,
                k_verdict in concordant.get(verdict, ()),
            )
        )
    return out


# --- check 10: randomized property suites with brute-force oracles -----------


def _brute_force_volume(s: SurfaceModel, d: DivisorClass) -> Fraction | None:
    """Volume by exhaustive search over supports of declared negative curves.

    Every subset with a negative-definite pairing matrix, nonnegative solved
    coefficients, and a residual class nonnegative against all declared
    curves is a valid decomposition; they must all agree on the square.
    Returns None when they disagree, which the caller reports as a failure.
    """
    neg = [
        c.name
        for c in s.curves
        if s.intersect(c.divisor_class, c.divisor_class) < 0
    ]
    vols: set[Fraction] = set()
    for mask in range(1 << len(neg)):
        names = [neg[i] for i in range(len(neg)) if mask >> i & 1]
        classes = [s.curve_class(n) for n in names]
        coeffs: list[Fraction] = []
        if names:
            gram = [[s.intersect(a, b) for b in classes] for a in classes]
            if not is_negative_definite(gram):
                continue
            sol = solve_linear_system(gram, [s.intersect(d, cls) for cls in classes])
            if sol is None or any(c < 0 for c in sol):
                continue
            coeffs = sol
        p = d
        for c, cls in zip(coeffs, classes):
            p = p - c * cls
        if any(s.intersect(p, c.divisor_class) < 0 for c in s.curves):
            continue
        v = s.intersect(p, p)
        if v >= 0:
            vols.add(v)
    if len(vols) > 1:
        return None
    return vols.pop() if vols else Fraction(0)


def _angular_hull(points) -> list:
    """Convex polygon from vertex candidates, by angular sort around the mean.

    Independent of the monotone-chain construction used by the toric module.
    Collinear points are pruned; fewer than three survivors mean degeneracy.
    """
    pts = sorted(set(points))
    if len(pts) < 3:
        return pts
    n = len(pts)
    cx = sum(p[0] for p in pts) / n
    cy = sum(p[1] for p in pts) / n

    def half(p) -> int:
        dx, dy = p[0] - cx, p[1] - cy
        return 0 if dy > 0 or (dy == 0 and dx > 0) else 1

    def compare(a, b) -> int:
        ha, hb = half(a), half(b)
        if ha != hb:
            return -1 if ha < hb else 1
        cr = (a[0] - cx) * (b[1] - cy) - (a[1] - cy) * (b[0] - cx)
        if cr > 0:
            return -1
        if cr < 0:
            return 1
        return 0

    ordered = sorted(pts, key=cmp_to_key(compare))
    changed = True
    while changed and len(ordered) >= 3:
        changed = False
        kept = []
        m = len(ordered)
        for i in range(m):
            a, b, c = ordered[i - 1], ordered[i], ordered[(i + 1) % m]
            turn = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])
            if turn == 0:
                changed = True
            else:
                kept.append(b)
        ordered = kept
    return ordered


_RAY_POOL = (
    (1, 0), (2, 1), (1, 1), (1, 2), (0, 1), (-1, 2), (-1, 1), (-2, 1),
    (-1, 0), (-2, -1), (-1, -1), (-1, -2), (0, -1), (1, -2), (1, -1), (2, -1),
)


def _random_complete_rays(rng: random.Random) -> tuple:
    while True:
        k = rng.randint(3, 8)
        idx = sorted(rng.sample(range(len(_RAY_POOL)), k))
        rays = tuple(_RAY_POOL[i] for i in idx)
        ok = True
        for i in range(k):
            a, b = rays[i], rays[(i + 1) % k]
            if a[0] * b[1] - a[1] * b[0] <= 0:
                ok = False
                break
        if ok:
            return rays


def _check_properties() -> list[CheckLine]:
    cid = "property-suites"
    out = []
    scenario_pool = (
        _cfg("over-S:2", 2, ("0", INF)),
        _cfg("over-S:4", 1, ("1",)),
        _cfg("on-S:C", 2, ("0", INF)),
        _cfg("over-S:1", 0, ()),
    )
    beta_pool = (
        Fraction(1, 5),
        Fraction(1, 7),
        Fraction(2, 11),
        Fraction(3, 17),
        Fraction(1, 12),
    )
    rng = random.Random(97)
    for cfg in scenario_pool:
        sweeps: dict[Fraction, tuple] = {}
        bad: list[str] = []
        for _ in range(20):
            beta = rng.choice(beta_pool)
            if beta not in sweeps:
                sweeps[beta] = _sweep_for(
                    ScenarioConfig(case=cfg.case, r=cfg.r, labels=cfg.labels, beta=beta)
                )
            surf, l, z, vp = sweeps[beta]
            x = vp.tau * Fraction(rng.randint(0, 72), 64)
            d = l - x * surf.curve_class(z)
            got = volume(surf, d)
            want = _brute_force_volume(surf, d)
            if want is None or got != want:
                bad.append(f"beta={beta}, x={x}: {got} vs {want}")
            elif x <= vp.tau and vp.profile.evaluate(x) != got:
                bad.append(f"beta={beta}, x={x}: profile {vp.profile.evaluate(x)} vs {got}")
        out.append(
            _line(
                cid,
                f"volume oracle, {cfg.case} r={cfg.r}",
                "20 agreements",
                "20 agreements" if not bad else "; ".join(bad),
            )
        )
        issues: list[str] = []
        for beta, (surf, l, z, vp) in sorted(sweeps.items()):
            if vp.profile.evaluate(0) != surf.intersect(l, l):
                issues.append(f"beta={beta}: profile(0) != L^2")
            if vp.profile.evaluate(vp.tau) != 0:
                issues.append(f"beta={beta}: profile(tau) != 0")
            xs = sorted(vp.tau * Fraction(rng.randint(0, 64), 64) for _ in range(15))
            values = [vp.profile.evaluate(x) for x in xs]
            if any(a < b for a, b in zip(values, values[1:])):
                issues.append(f"beta={beta}: profile increases")
        out.append(
            _line(
                cid,
                f"profile shape, {cfg.case} r={cfg.r}",
                "monotone, exact endpoints",
                "monotone, exact endpoints" if not issues else "; ".join(issues),
            )
        )
    rng = random.Random(1291)
    mismatches: list[str] = []
    for trial in range(50):
        rays = _random_complete_rays(rng)
        coeffs = tuple(Fraction(rng.randint(-2, 4)) for _ in rays)
        pts = set()
        for i in range(len(rays)):
            for j in range(i + 1, len(rays)):
                det = rays[i][0] * rays[j][1] - rays[i][1] * rays[j][0]
                if det == 0:
                    continue
                ux = Fraction(coeffs[j] * rays[i][1] - coeffs[i] * rays[j][1], det)
                uy = Fraction(coeffs[i] * rays[j][0] - coeffs[j] * rays[i][0], det)
                if all(
                    ux * r[0] + uy * r[1] >= -a for r, a in zip(rays, coeffs)
                ):
                    pts.add((ux, uy))
        oracle = _angular_hull(pts)
        from .toric import Fan2D, ToricDivisorData

        div = ToricDivisorData(Fan2D(rays), coeffs)
        try:
            poly = polytope_from_divisor(div)
        except DegeneracyError:
            if len(oracle) >= 3:
                mismatches.append(f"trial {trial}: degenerate vs {len(oracle)} vertices")
            continue
        if set(poly.vertices) != set(oracle):
            mismatches.append(f"trial {trial}: vertex sets differ")
    out.append(
        _line(
            cid,
            "polytope hull oracle, 50 random fans",
            "50 agreements",
            "50 agreements" if not mismatches else "; ".join(mismatches),
        )
    )
    pentagon_bad: list[str] = []
    for beta in (Fraction(1, 9), Fraction(1, 3), Fraction(1)):
        poly = polytope_from_divisor(builtin_blowup_divisor(beta))
        expected = {
            (Fraction(0), Fraction(0)),
            (-1 - beta, Fraction(0)),
            (-1 - beta, -beta),
            (Fraction(-1), -2 * beta),
            (Fraction(0), -2 * beta),
        }
        if set(poly.vertices) != expected:
            pentagon_bad.append(f"beta={beta}: vertices differ")
        if area(poly) != 2 * beta + Fraction(3, 2) * beta**2:
            pentagon_bad.append(f"beta={beta}: area differs")
    out.append(
        _line(
            cid,
            "builtin polytope pentagon",
            "exact vertices and area",
            "exact vertices and area" if not pentagon_bad else "; ".join(pentagon_bad),
        )
    )
    return out


_REGISTRY: tuple[tuple[str, Callable[[], list[CheckLine]]], ...] = (
    ("zariski-case2-r2-exact", _check_profile_case2),
    ("zariski-case4-r0-exact", _check_profile_case4),
    ("on-surface-expansions", _check_expansions_on),
    ("over-surface-expansions", _check_expansions_over),
    ("delta-ratio-bounds", _check_ratio_bounds),
    ("toric-cross-check", _check_toric),
    ("log-discrepancy-towers", _check_discrepancies),
    ("alpha-coefficients", _check_alpha),
    ("git-concordance", _check_git),
    ("property-suites", _check_properties),
)

CHECK_IDS = tuple(cid for cid, _ in _REGISTRY)


def run_checks(only: str | None = None) -> list[CheckLine]:
    """Run the registered checks, optionally filtered by id substring.

    A check that raises one of the package's own errors is reported as a
    single failing line instead of aborting the rest of the run.
    """
    lines: list[CheckLine] = []
    for cid, fn in _REGISTRY:
        if only is not None and only not in cid:
            continue
        try:
            lines.extend(fn())
        except LogFanoError as exc:
            lines.append(
                CheckLine(cid, "execution", "completes", f"{type(exc).__name__}: {exc}", False)
            )
    return lines


def summarize(lines: Sequence[CheckLine]) -> dict[str, bool]:
    """Map each check id present in lines to the conjunction of its results."""
    summary: dict[str, bool] = {}
    for line in lines:
        summary[line.check] = summary.get(line.check, True) and line.ok
    return summary
