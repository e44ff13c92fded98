"""Command-line surface with machine-readable output.

Every subcommand runs exactly one operation and writes a single JSON
document (or a CSV table for the tabular commands) to stdout or --out.
All reports echo the command, its inputs, the error bounds, the runtime
and the tool version.  Exit codes: 0 success, 1 computation error,
2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import __version__
from .criteria import classify_euler, sign_test_euler, sign_test_theta
from .constants import c_n, critical_a, q_infinity, threshold_table, transition_scan
from .errors import LplabError
from .series import FamilyKind, SeriesFamily, evaluate, quotients
from .verify import (
    check_block_inequalities,
    check_circle_minimum,
    check_cubic_min_algebra,
    check_positivity_interval,
    check_sign_alternation,
    check_tail_gap,
)
from .zerocount import count_zeros_in_disk, rho_radius

_FAMILIES = {
    "eulerF": FamilyKind.EULER_F,
    "theta": FamilyKind.THETA,
    "eulerH": FamilyKind.EULER_H,
}


def _parse_complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise argparse.ArgumentTypeError(f"expected RE or RE,IM, got {text!r}")


def _parse_grid(text: str) -> List[float]:
    try:
        lo, hi, steps = text.split(":")
        return [float(x) for x in np.linspace(float(lo), float(hi), int(steps))]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"expected LO:HI:STEPS, got {text!r}"
        ) from exc


def _jsonable(value):
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="lplab",
        description="Zero localization and Laguerre-Polya membership tests "
        "for order-zero entire series with positive coefficients.",
    )
    top.add_argument("--version", action="version", version=f"lplab {__version__}")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("json", "csv", "text"), default="json")
        p.add_argument("--out", default=None, help="write the report here instead of stdout")

    p = sub.add_parser("eval", help="evaluate a family with a certified tail bound")
    p.add_argument("--family", choices=sorted(_FAMILIES), required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--z", type=_parse_complex, required=True, metavar="RE[,IM]")
    p.add_argument("--tol", type=float, default=1e-12)
    common(p)

    p = sub.add_parser("section", help="evaluate a truncated section exactly")
    p.add_argument("--family", choices=sorted(_FAMILIES), required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--z", type=_parse_complex, required=True, metavar="RE[,IM]")
    common(p)

    p = sub.add_parser("quotients", help="tabulate p_n and q_n")
    p.add_argument("--family", choices=sorted(_FAMILIES), required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--n-max", type=int, required=True, dest="n_max")
    common(p)

    p = sub.add_parser("classify", help="membership decision cascade for eulerF")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    common(p)

    p = sub.add_parser("sign-test", help="interval-minimum sign test")
    p.add_argument("--family", choices=("eulerF", "theta"), required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--n", type=int, default=None, help="theta section degree")
    p.add_argument("--grid", type=int, default=512)
    common(p)

    p = sub.add_parser("zeros", help="winding-number zero count for eulerF")
    p.add_argument("--a", type=float, required=True)
    p.add_argument(
        "--radius",
        required=True,
        help="disk radius in the normalized variable, or rho:J for the "
        "J-th block radius",
    )
    p.add_argument("--samples", type=int, default=256)
    common(p)

    p = sub.add_parser("constants", help="certified critical constants")
    p.add_argument(
        "--name",
        choices=("q_infinity", "c_n", "critical_a", "thresholds"),
        required=True,
    )
    p.add_argument("--n", type=int, default=None, help="section index for c_n")
    p.add_argument("--tol", type=float, default=1e-6)
    common(p)

    p = sub.add_parser("verify", help="run an inequality check suite")
    p.add_argument(
        "--lemma",
        choices=("2", "rouche", "3", "6", "positivity", "4algebra"),
        required=True,
        help="which suite: 2=circle minimum, rouche=tail gap, 3=block "
        "inequalities, 6=sign alternation, positivity=interval positivity, "
        "4algebra=cubic-minimum algebra",
    )
    p.add_argument("--a-grid", type=_parse_grid, default=None, dest="a_grid",
                   metavar="LO:HI:STEPS")
    p.add_argument("--seed", type=int, default=0)
    common(p)

    p = sub.add_parser("scan-conjecture", help="verdict scan across a parameter range")
    p.add_argument("--a-lo", type=float, required=True, dest="a_lo")
    p.add_argument("--a-hi", type=float, required=True, dest="a_hi")
    p.add_argument("--steps", type=int, required=True)
    common(p)

    return top


# ---------------------------------------------------------------------------
# command handlers: return (result, error_bounds, csv_rows)
# ---------------------------------------------------------------------------

CsvRows = Optional[Tuple[List[str], List[List]]]


def _family(args, alternating: bool = False) -> SeriesFamily:
    return SeriesFamily(_FAMILIES[args.family], args.a, alternating=alternating)


def _run_eval(args) -> Tuple[Dict, Dict, CsvRows]:
    res = evaluate(_family(args), args.z, args.tol)
    return (
        {"value": res.value, "terms_used": res.terms_used},
        {"abs_error_bound": res.abs_error_bound, "rel_tol": args.tol},
        None,
    )


def _run_section(args) -> Tuple[Dict, Dict, CsvRows]:
    fam = _family(args)
    term = complex(1.0)
    total = complex(1.0)
    abs_acc = 1.0
    for k in range(1, args.n + 1):
        term *= args.z * fam.ratio(k)
        total += term
        abs_acc += abs(term)
    roundoff = 4.0 * 2.220446049250313e-16 * (args.n + 1) * abs_acc
    return (
        {"value": total, "n": args.n},
        {"abs_error_bound": roundoff, "note": "exact truncation, roundoff only"},
        None,
    )


def _run_quotients(args) -> Tuple[Dict, Dict, CsvRows]:
    qv = quotients(_family(args))
    rows = [[n, qv.p(n), qv.q(n) if n >= 2 else None] for n in range(1, args.n_max + 1)]
    result = {
        "limit": qv.limit,
        "monotonicity": qv.monotonicity,
        "table": [{"n": n, "p": pn, "q": qn} for n, pn, qn in rows],
    }
    return result, {"type": "closed_form"}, (["n", "p", "q"], rows)


def _run_classify(args) -> Tuple[Dict, Dict, CsvRows]:
    rep = classify_euler(args.a, tol=args.tol)
    return (
        {
            "verdict": rep.verdict.value,
            "criterion": rep.criterion,
            "margin": rep.margin,
            "witness_x": rep.witness_x,
            "witness_value": rep.witness_value,
        },
        {"tol": args.tol},
        None,
    )


def _run_sign_test(args) -> Tuple[Dict, Dict, CsvRows]:
    if args.family == "eulerF":
        if args.n is not None:
            raise LplabError("--n applies to the theta family only")
        rep = sign_test_euler(args.a, grid=args.grid)
    else:
        rep = sign_test_theta(args.a, n=args.n, grid=args.grid)
    return (
        {
            "verdict": rep.verdict.value,
            "criterion": rep.criterion,
            "margin": rep.margin,
            "witness_x": rep.witness_x,
            "witness_value": rep.witness_value,
        },
        {"grid": args.grid},
        None,
    )


def _run_zeros(args) -> Tuple[Dict, Dict, CsvRows]:
    fam = SeriesFamily(FamilyKind.EULER_F, args.a, alternating=True)
    if args.radius.startswith("rho:"):
        j = int(args.radius.split(":", 1)[1])
        radius = rho_radius(fam, j)
        radius_spec = {"kind": "block_radius", "j": j, "value": radius}
    else:
        radius = float(args.radius)
        radius_spec = {"kind": "explicit", "value": radius}
    res = count_zeros_in_disk(fam, radius, base_samples=args.samples)
    return (
        {
            "count": res.count,
            "radius": res.radius,
            "radius_spec": radius_spec,
            "certified": res.certified,
            "samples_used": res.samples_used,
        },
        {"residual_turns": res.residual, "min_modulus_seen": res.min_modulus_seen},
        None,
    )


def _run_constants(args) -> Tuple[Dict, Dict, CsvRows]:
    if args.name == "q_infinity":
        br = q_infinity(args.tol)
    elif args.name == "c_n":
        if args.n is None:
            raise LplabError("constants --name c_n requires --n")
        br = c_n(args.n, args.tol)
    elif args.name == "critical_a":
        br = critical_a(max(args.tol, 1e-8))
    else:
        table = threshold_table()
        rows = [
            [e.name, e.computed_root, e.reference, e.deviation] for e in table
        ]
        result = {
            "thresholds": [
                {
                    "name": e.name,
                    "computed_root": e.computed_root,
                    "reference": e.reference,
                    "deviation": e.deviation,
                }
                for e in table
            ]
        }
        return result, {"root_tol": 1e-10}, (
            ["name", "computed_root", "reference", "deviation"], rows,
        )
    result = {
        "name": args.name,
        "lo": br.lo,
        "hi": br.hi,
        "midpoint": br.midpoint,
        "predicate": br.predicate,
        "pred_lo": br.pred_lo,
        "pred_hi": br.pred_hi,
        "evaluations": br.evaluations,
    }
    if br.note:
        result["note"] = br.note
    return result, {"width": br.width, "tol": args.tol}, None


def _run_verify(args) -> Tuple[Dict, Dict, CsvRows]:
    grid = args.a_grid
    if args.lemma == "2":
        res = check_circle_minimum(grid or _parse_grid("3.6:4.6:8"))
    elif args.lemma == "rouche":
        res = check_tail_gap(grid or _parse_grid("3.2:4.6:8"))
    elif args.lemma == "3":
        parts = [check_block_inequalities(a, (4, 12)) for a in (grid or [4.0])]
        merged = parts[0]
        for extra in parts[1:]:
            merged.failures.extend(extra.failures)
            merged.inapplicable.extend(extra.inapplicable)
            merged.grid_points += extra.grid_points
            merged.worst_margin = min(merged.worst_margin, extra.worst_margin)
        merged.name = "block_inequalities"
        res = merged
    elif args.lemma == "6":
        res = check_sign_alternation(grid or _parse_grid("3.0:4.6:5"), k_max=20)
    elif args.lemma == "positivity":
        res = check_positivity_interval(grid or _parse_grid("3.6:4.6:5"))
    else:
        res = check_cubic_min_algebra(samples=64, seed=args.seed)
    result = {
        "suite": res.name,
        "passed": res.passed,
        "grid_points": res.grid_points,
        "failures": res.failures,
        "inapplicable": res.inapplicable,
        "worst_margin": res.worst_margin,
    }
    rows = (
        ["suite", "passed", "grid_points", "failures", "inapplicable", "worst_margin"],
        [[res.name, res.passed, res.grid_points, len(res.failures),
          len(res.inapplicable), res.worst_margin]],
    )
    return result, {"worst_margin": res.worst_margin}, rows


def _run_scan(args) -> Tuple[Dict, Dict, CsvRows]:
    res = transition_scan(args.a_lo, args.a_hi, args.steps)
    rows = [[p.a, p.min_value, p.verdict] for p in res.points]
    result = {
        "single_transition": res.single_transition,
        "transition_interval": list(res.transition_interval)
        if res.transition_interval
        else None,
        "points": [
            {"a": p.a, "min_value": p.min_value, "verdict": p.verdict}
            for p in res.points
        ],
    }
    step = (args.a_hi - args.a_lo) / max(args.steps - 1, 1)
    return result, {"grid_step": step}, (["a", "min_value", "verdict"], rows)


_HANDLERS = {
    "eval": _run_eval,
    "section": _run_section,
    "quotients": _run_quotients,
    "classify": _run_classify,
    "sign-test": _run_sign_test,
    "zeros": _run_zeros,
    "constants": _run_constants,
    "verify": _run_verify,
    "scan-conjecture": _run_scan,
}

_INPUT_FIELDS = (
    "family", "a", "z", "n", "n_max", "tol", "grid", "radius", "samples",
    "name", "lemma", "a_grid", "seed", "a_lo", "a_hi", "steps",
)


def _collect_inputs(args) -> Dict:
    out = {}
    for key in _INPUT_FIELDS:
        if hasattr(args, key) and getattr(args, key) is not None:
            out[key] = _jsonable(getattr(args, key))
    return out


def _emit(text: str, out_path: Optional[str]) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render_text(report: Dict) -> str:
    buf = io.StringIO()
    buf.write(f"command: {report['command']}\n")
    for key, value in report.get("inputs", {}).items():
        buf.write(f"  {key}: {value}\n")
    buf.write("result:\n")
    buf.write(json.dumps(report.get("result", report.get("error")), indent=2))
    buf.write("\n")
    return buf.getvalue()


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    inputs = _collect_inputs(args)
    try:
        result, bounds, csv_rows = _HANDLERS[args.command](args)
    except LplabError as exc:
        report = {
            "command": args.command,
            "inputs": inputs,
            "error": str(exc),
            "error_type": type(exc).__name__,
            "runtime_ms": (time.perf_counter() - started) * 1e3,
            "tool_version": __version__,
        }
        _emit(json.dumps(_jsonable(report), indent=2) + "\n", args.out)
        return 1
    report = {
        "command": args.command,
        "inputs": inputs,
        "result": _jsonable(result),
        "error_bounds": _jsonable(bounds),
        "runtime_ms": (time.perf_counter() - started) * 1e3,
        "tool_version": __version__,
    }
    if args.format == "csv":
        if csv_rows is None:
            parser.error(f"--format csv is not available for {args.command!r}")
        header, rows = csv_rows
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        _emit(buf.getvalue(), args.out)
    elif args.format == "text":
        _emit(_render_text(report), args.out)
    else:
        _emit(json.dumps(report, indent=2) + "\n", args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
