"""Command-line front end.

Subcommands: ``analyze`` (full criterion report for one state as JSON),
``sweep`` (CSV grid over a family), ``table1`` (detection-window table for
the bound entangled alpha family) and ``estimate-m1`` (first-moment
intervals). Exit codes: 0 success, 1 usage error, 2 invalid state file,
3 domain violation.

Numbers are serialized with 17 significant digits ('.' decimal separator,
no locale), so reports round-trip doubles exactly and output bytes are
deterministic for fixed inputs.
"""

from __future__ import annotations

import argparse
import sys

from .config import DEFAULT
from .criteria import criterion_report, q1_realignment_moments
from .exceptions import DomainError, StateValidationError
from .moment_estimation import EstimationInput, m1_case_bounds, m1_interval_quadratic, simulate_s
from .realign import Verdict, realignment_criterion
from .spa import certify_completely_positive, spa_threshold
from .states import DensityMatrix, read_matrix_file, read_state_file, write_state_file
from .sweeps import FAMILIES, family_state, sweep_rows, table1_rows

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BAD_STATE = 2
EXIT_DOMAIN = 3


def _fmt(value) -> str:
    """Serialize one scalar deterministically."""
    if value is None:
        return "null"
    if isinstance(value, Verdict):
        return f'"{value.value}"'
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int,)):
        return str(value)
    if isinstance(value, float):
        if value != value:
            return '"nan"'
        return format(value, ".17g")
    if isinstance(value, str):
        return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'
    raise TypeError(f"cannot serialize {type(value)}")


def _json(obj, indent: int = 0) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ",\n".join(f'{inner}"{k}": {_json(v, indent + 1)}' for k, v in obj.items())
        return "{\n" + items + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if len(obj) == 0:
            return "[]"
        return "[" + ", ".join(_json(v, indent) for v in obj) + "]"
    return _fmt(obj)


def _emit(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(rows: list[dict], columns: list[str]) -> str:
    def cell(v):
        if v is None:
            return ""
        if isinstance(v, float):
            return format(v, ".17g")
        return str(v)

    lines = [",".join(columns)]
    lines += [",".join(cell(row[c]) for c in columns) for row in rows]
    return "\n".join(lines) + "\n"


def _load_state(args) -> tuple[DensityMatrix, dict]:
    if args.state:
        rho = read_state_file(args.state)
        return rho, {"state": args.state}
    rho = family_state(args.family, args.param)
    return rho, {"family": args.family, "param": args.param}


def _parse_range(spec: str) -> list[float]:
    """'lo:hi:n' -> n evenly spaced values from lo to hi inclusive."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError(f"range must be lo:hi:n, got {spec!r}")
    lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    if n < 1:
        raise ValueError("range needs at least one step")
    if n == 1:
        return [lo]
    step = (hi - lo) / (n - 1)
    return [lo + step * i for i in range(n)]


def analysis_record(rho: DensityMatrix, p: float, source: dict, tol: float) -> dict:
    if rho.dim_a != rho.dim_b:
        # the SPA machinery needs equal subsystem dimensions; report the
        # dimension-agnostic realignment data only
        verdict, score = realignment_criterion(rho, tol=tol)
        return {
            "input": source,
            "dims": [rho.dim_a, rho.dim_b],
            "p": p,
            "tolerance": tol,
            "realignment": {"trace_norm": score, "verdict": verdict},
            "moments": {"q1": q1_realignment_moments(rho), "q2": None},
        }
    report = criterion_report(rho, p, tol=tol)
    record = {
        "input": source,
        "dims": [rho.dim_a, rho.dim_b],
        "p": p,
        "tolerance": tol,
        "realignment": {
            "trace": report.trace_r,
            "trace_norm": report.realignment_score,
            "verdict": report.realignment_verdict,
        },
        "spa_r": {
            "trace_norm": report.trace_norm_spa_r,
            "upper_bound": report.upper_bound,
            "verdict": report.spa_r_verdict,
        },
        "error": {
            "norm": report.error.error_norm,
            "bound_general": report.error.bound_general,
            "bound_separable": report.error.bound_separable,
            "verdict": report.error.verdict,
            "bound_valid": report.error.bound_valid,
        },
        "moments": {"q1": report.q1, "q2": report.q2},
    }
    if rho.dim_a == rho.dim_b:
        threshold = spa_threshold(rho)
        cert = certify_completely_positive(rho, p)
        record["spa"] = {
            "l": threshold.l,
            "k": threshold.k,
            "lower_bound": threshold.lower_bound,
            "trace_r": threshold.trace_r,
            "psd": threshold.psd,
            "coefficients": list(threshold.coefficients),
        }
        record["cp_certificate"] = {
            "certified": cert.certified,
            "gamma1": cert.gamma1,
            "gamma2": cert.gamma2,
        }
    return record


def cmd_analyze(args) -> int:
    try:
        rho, source = _load_state(args)
    except (StateValidationError, OSError) as exc:
        print(f"error: invalid state: {exc}", file=sys.stderr)
        return EXIT_BAD_STATE
    try:
        record = analysis_record(rho, args.p, source, args.tol)
    except DomainError as exc:
        print(f"error: domain violation: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    _emit(_json(record) + "\n", args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    try:
        params = _parse_range(args.param_range)
        ps = _parse_range(args.p_range)
        if args.family not in FAMILIES:
            raise ValueError(f"unknown family {args.family!r}")
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        rows = list(sweep_rows(args.family, params, ps, verdict_tol=args.tol))
    except DomainError as exc:
        print(f"error: domain violation: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if args.dump_states:
        import os

        os.makedirs(args.dump_states, exist_ok=True)
        for i, param in enumerate(params):
            path = os.path.join(args.dump_states, f"{args.family}_{i:04d}.json")
            write_state_file(path, family_state(args.family, param))
    columns = ["param", "p", "traceNormSpaR", "upperBound", "violated", "l", "k", "q1", "q2"]
    _emit(_csv(rows, columns), args.out)
    return EXIT_OK


def cmd_table1(args) -> int:
    rows = table1_rows()
    _emit(_csv(rows, ["alpha", "p_max"]), args.out)
    return EXIT_OK


def cmd_estimate_m1(args) -> int:
    try:
        if args.state or args.family:
            rho, _ = _load_state(args)
            if args.p is None:
                print("error: --p is required when estimating from a state", file=sys.stderr)
                return EXIT_USAGE
            perm = read_matrix_file(args.perm) if args.perm else None
            s = simulate_s(rho, args.p, permutation=perm)
            k = spa_threshold(rho).k if args.k is None else args.k
            d = rho.dim_a
        else:
            if args.s is None or args.d is None or args.k is None:
                print("error: provide --s, --d and --k (or a state source)", file=sys.stderr)
                return EXIT_USAGE
            s, d, k = args.s, args.d, args.k
        inp = EstimationInput(s=s, d=d, k=k)
        if inp.x < -1e-12:
            raise DomainError(f"x = 1 - d^2 s = {inp.x:.3e} is negative")
        quad = m1_interval_quadratic(inp)
        case = m1_case_bounds(inp)
    except (StateValidationError, OSError) as exc:
        print(f"error: invalid state: {exc}", file=sys.stderr)
        return EXIT_BAD_STATE
    except DomainError as exc:
        print(f"error: domain violation: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    record = {
        "s": s,
        "d": d,
        "k": k,
        "x": inp.x,
        "quadratic": {"lower": quad.lower, "upper": quad.upper, "case": quad.case.value},
        "case_bounds": {"lower": case.lower, "upper": case.upper, "case": case.case.value},
    }
    _emit(_json(record) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT.verdict,
                        help="verdict tolerance on strict inequalities")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for randomized subroutines")
    common.add_argument("--out", default=None, help="write output to this path instead of stdout")

    parser = argparse.ArgumentParser(prog="spar",
                                     description="Realignment-based entanglement analysis")
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", parents=[common], help="full criterion report for one state")
    pa.add_argument("--family", choices=sorted(FAMILIES), default=None)
    pa.add_argument("--param", type=float, default=None)
    pa.add_argument("--state", default=None, help="path to a state file")
    pa.add_argument("--p", type=float, required=True, help="mixing probability")
    pa.set_defaults(func=cmd_analyze)

    ps = sub.add_parser("sweep", parents=[common], help="CSV grid over one family")
    ps.add_argument("--family", required=True)
    ps.add_argument("--param-range", required=True, help="lo:hi:n")
    ps.add_argument("--p-range", required=True, help="lo:hi:n")
    ps.add_argument("--dump-states", default=None, help="directory for per-grid-point state files")
    ps.set_defaults(func=cmd_sweep)

    pt = sub.add_parser("table1", parents=[common],
                        help="largest violating p per alpha-state parameter")
    pt.set_defaults(func=cmd_table1)

    pe = sub.add_parser("estimate-m1", parents=[common], help="first-moment intervals")
    pe.add_argument("--s", type=float, default=None, help="measured expectation value")
    pe.add_argument("--d", type=int, default=None, help="subsystem dimension")
    pe.add_argument("--k", type=float, default=None, help="eigenvalue offset")
    pe.add_argument("--family", choices=sorted(FAMILIES), default=None)
    pe.add_argument("--param", type=float, default=None)
    pe.add_argument("--state", default=None)
    pe.add_argument("--p", type=float, default=None)
    pe.add_argument("--perm", default=None,
                    help="matrix file with a unit-trace observable (default: SWAP/d)")
    pe.set_defaults(func=cmd_estimate_m1)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage problems and 0 for --help
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if getattr(args, "family", None) and getattr(args, "state", None):
        print("error: give either --family/--param or --state, not both", file=sys.stderr)
        return EXIT_USAGE
    if args.command == "analyze":
        if not args.state and (args.family is None or args.param is None):
            print("error: analyze needs --state or --family with --param", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
