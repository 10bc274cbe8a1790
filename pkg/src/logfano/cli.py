"""Command-line interface: exact invariants, profiles, tables, and checks.

Every numeric value is printed as an exact rational string "p/q"; decimal
approximations appear only behind the explicit --decimal flag and are
marked as approximate.  JSON output is deterministic (sorted keys, fixed
indentation), so identical invocations produce identical bytes.

Exit codes: 0 on success, 1 when reproduce finds a failing check, 2 for
invalid input or unsupported configurations, 3 for internal errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .acceptance import format_line, run_checks, summarize
from .algebra import rational_from_string, rational_to_string, taylor_prefix
from .errors import InternalComputationError, LogFanoError, ValidationError
from .invariants import (
    evaluate_scenario,
    log_discrepancy_symbolic,
    rational_function_to_json,
    report_to_json,
    s_as_function_of_beta,
)
from .scenarios import (
    CASES,
    ScenarioConfig,
    build_candidate,
    git_config_for_labels,
    git_stability,
    kstab_row_for_labels,
    kstab_table,
    pulled_back_polarization,
)
from .toric import (
    area,
    barycenter,
    builtin_blowup_divisor,
    builtin_valuation,
    polytope_from_divisor,
    psi,
    toric_expected_vanishing,
)
from .zariski import sweep, volume_profile_to_json

_CONCORDANT = {
    "unstable": ("K-unstable",),
    "strictly_semistable": ("strictly K-polystable", "strictly K-semistable"),
    "stable": ("K-stable",),
}


def _parse_labels(text: str) -> tuple[str, ...]:
    return tuple(t.strip() for t in text.split(",") if t.strip())


def _parse_betas(args) -> list[Fraction]:
    if not args.beta:
        raise ValidationError("at least one --beta is required")
    return [rational_from_string(b) for b in args.beta]


def _scenario(args, beta: Fraction) -> ScenarioConfig:
    return ScenarioConfig(
        case=args.case, r=args.r, labels=_parse_labels(args.I), beta=beta
    )


def _check_order(order: int | None) -> None:
    if order is not None and not (0 <= order <= 6):
        raise ValidationError("order must be between 0 and 6")


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_text(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _cmd_compute(args) -> int:
    _check_order(args.order)
    betas = _parse_betas(args)
    reports = [
        evaluate_scenario(_scenario(args, beta), order=args.order) for beta in betas
    ]
    if args.format == "csv":
        rows = [
            (
                rep.scenario,
                rational_to_string(rep.beta),
                rational_to_string(rep.s_value),
                rational_to_string(rep.a_value),
                rational_to_string(rep.ratio),
            )
            for rep in reports
        ]
        _emit(_csv_text(("scenario", "beta", "S", "A", "ratio"), rows), args.out)
    else:
        doc = {"results": [report_to_json(rep, decimals=args.decimal) for rep in reports]}
        _emit(_json_text(doc), args.out)
    return 0


def _cmd_profile(args) -> int:
    if args.format == "csv":
        raise ValidationError("profiles are nested; csv output is not supported here")
    betas = _parse_betas(args)
    docs = []
    for beta in betas:
        cfg = _scenario(args, beta)
        surf, z, tower = build_candidate(cfg)
        l = pulled_back_polarization(tower)
        vp = sweep(surf, l, z)
        doc = volume_profile_to_json(vp, beta=beta)
        doc["scenario"] = cfg.scenario_id
        docs.append(doc)
    _emit(_json_text({"profiles": docs}), args.out)
    return 0


def _cmd_expand(args) -> int:
    if args.format == "csv":
        raise ValidationError("closed forms are nested; csv output is not supported here")
    _check_order(args.order)
    order = args.order if args.order is not None else 2
    cfg = _scenario(args, Fraction(1, 7))  # sampling ignores this placeholder
    _, _, tower = build_candidate(cfg)
    s_rfb = s_as_function_of_beta(cfg)
    a_rfb = log_discrepancy_symbolic(tower)
    ratio_rfb = a_rfb.divide(s_rfb)
    doc = {
        "scenario": cfg.scenario_id,
        "closed_forms": {
            "S": rational_function_to_json(s_rfb),
            "A": rational_function_to_json(a_rfb),
            "ratio": rational_function_to_json(ratio_rfb),
        },
        "expansions": {
            "S": [rational_to_string(c) for c in taylor_prefix(s_rfb, order)],
            "A": [rational_to_string(c) for c in taylor_prefix(a_rfb, order)],
            "ratio": [rational_to_string(c) for c in taylor_prefix(ratio_rfb, order)],
        },
    }
    _emit(_json_text(doc), args.out)
    return 0


def _cmd_table(args) -> int:
    rows = kstab_table()
    if args.format == "csv":
        _emit(_csv_text(("shape", "verdict"), rows), args.out)
    else:
        doc = {"rows": [{"shape": shape, "verdict": verdict} for shape, verdict in rows]}
        _emit(_json_text(doc), args.out)
    return 0


def _cmd_toric(args) -> int:
    if args.format == "csv":
        raise ValidationError("toric reports are nested; csv output is not supported here")
    betas = _parse_betas(args)
    val = builtin_valuation(args.asset)
    entries = []
    for beta in betas:
        div = builtin_blowup_divisor(beta, args.asset)
        poly = polytope_from_divisor(div)
        bc = barycenter(poly)
        entries.append(
            {
                "beta": rational_to_string(beta),
                "valuation": list(val),
                "S": rational_to_string(toric_expected_vanishing(div, val)),
                "support_value": rational_to_string(psi(poly, val)),
                "barycenter": [rational_to_string(bc[0]), rational_to_string(bc[1])],
                "area": rational_to_string(area(poly)),
                "vertices": [
                    [rational_to_string(x), rational_to_string(y)]
                    for x, y in poly.vertices
                ],
            }
        )
    _emit(_json_text({"toric": entries}), args.out)
    return 0


def _cmd_git(args) -> int:
    labels = _parse_labels(args.I)
    config = git_config_for_labels(labels)
    verdict = git_stability(config)
    row_shape, k_verdict = kstab_row_for_labels(labels)
    concordant = k_verdict in _CONCORDANT.get(verdict, ())
    if args.format == "csv":
        rows = [
            (
                ",".join(labels),
                " ".join(str(m) for m in config.multiplicities),
                verdict,
                row_shape,
                k_verdict,
                "true" if concordant or k_verdict == "unknown" else "false",
            )
        ]
        header = ("labels", "multiplicities", "verdict", "shape", "k_verdict", "concordant")
        _emit(_csv_text(header, rows), args.out)
    else:
        doc = {
            "labels": list(labels),
            "multiplicities": list(config.multiplicities),
            "verdict": verdict,
            "k_row": {"shape": row_shape, "verdict": k_verdict},
            "concordant": concordant or k_verdict == "unknown",
        }
        _emit(_json_text(doc), args.out)
    return 0


def _cmd_reproduce(args) -> int:
    lines = run_checks(only=args.only)
    if not lines:
        raise ValidationError(f"no check id contains {args.only!r}")
    summary = summarize(lines)
    if args.format == "json":
        doc = {
            "lines": [
                {
                    "check": ln.check,
                    "label": ln.label,
                    "expected": ln.expected,
                    "computed": ln.computed,
                    "ok": ln.ok,
                }
                for ln in lines
            ],
            "summary": summary,
        }
        _emit(_json_text(doc), args.out)
    elif args.format == "csv":
        rows = [
            (ln.check, ln.label, ln.expected, ln.computed, "true" if ln.ok else "false")
            for ln in lines
        ]
        _emit(_csv_text(("check", "label", "expected", "computed", "ok"), rows), args.out)
    else:
        text = "\n".join(format_line(ln) for ln in lines) + "\n"
        passed = sum(1 for ok in summary.values() if ok)
        text += f"checks passed: {passed}/{len(summary)}\n"
        _emit(text, args.out)
    return 0 if all(summary.values()) else 1


def _add_scenario_args(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--case", required=True, choices=CASES, help="scenario case tag")
    sp.add_argument("--r", required=True, type=int, help="number of blown-up labels")
    sp.add_argument(
        "--I",
        default="",
        help="comma-separated labels from {0, 1, ..., r, inf}, e.g. 0,inf",
    )


def _add_output_args(sp: argparse.ArgumentParser, formats=("json", "csv")) -> None:
    sp.add_argument("--format", choices=formats, default=formats[0])
    sp.add_argument("--out", default=None, help="write output to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logfano",
        description="Exact stability invariants for blow-ups of the quadric "
        "surface along points of a bidegree-(1,2) curve.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("compute", help="exact S, A, and A/S for a scenario")
    _add_scenario_args(sp)
    sp.add_argument("--beta", action="append", default=[], help="rational, repeatable")
    sp.add_argument("--order", type=int, default=None, help="also expand A/S to this order")
    sp.add_argument("--decimal", action="store_true", help="add approximate decimals")
    _add_output_args(sp)
    sp.set_defaults(func=_cmd_compute)

    sp = sub.add_parser("profile", help="piecewise volume profile of a scenario")
    _add_scenario_args(sp)
    sp.add_argument("--beta", action="append", default=[], help="rational, repeatable")
    _add_output_args(sp)
    sp.set_defaults(func=_cmd_profile)

    sp = sub.add_parser("expand", help="closed forms and small-beta expansions")
    _add_scenario_args(sp)
    sp.add_argument("--order", type=int, default=None, help="expansion order (default 2)")
    _add_output_args(sp)
    sp.set_defaults(func=_cmd_expand)

    sp = sub.add_parser("table", help="the verdict table by label-set shape")
    _add_output_args(sp)
    sp.set_defaults(func=_cmd_table)

    sp = sub.add_parser("toric", help="toric cross-check data for the builtin model")
    sp.add_argument("--beta", action="append", default=[], help="rational, repeatable")
    sp.add_argument("--asset", default=None, help="override the builtin fan data file")
    _add_output_args(sp)
    sp.set_defaults(func=_cmd_toric)

    sp = sub.add_parser("git", help="point-configuration stability for a label set")
    sp.add_argument("--I", default="", help="comma-separated labels")
    _add_output_args(sp)
    sp.set_defaults(func=_cmd_git)

    sp = sub.add_parser("reproduce", help="run the acceptance checks")
    sp.add_argument("--only", default=None, help="run only checks whose id contains this")
    _add_output_args(sp, formats=("text", "json", "csv"))
    sp.set_defaults(func=_cmd_reproduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InternalComputationError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    except LogFanoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # catch-all so scripts see a stable exit code
        print(f"unexpected error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
