"""Command-line surface: exact evaluation, asymptotics, optimization,
simulation, oracle counts, and identity verification.

Exit codes: 0 success, 1 identity-verification failure, 2 parameter or usage
error.  Every subcommand takes --format json|csv and --output (default
stdout).  CSV output is locale-free ('.' decimals, LF line endings, header
row); repeated runs with the same flags produce identical bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import _kernels, exact, optimizer
from .asymptotic import kleinberg_bound
from .core import RangeError, SizeError, validate_params
from .montecarlo import mc_estimate
from .oracle import VerificationReport, oracle_table, verify_identities
from .policies import PolicyKind


def _policy_kind(name: str) -> PolicyKind:
    return PolicyKind.SINGLE_REF if name == "single-ref" else PolicyKind.OPTIMISTIC


def _write(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _add_common(sub) -> None:
    sub.add_argument("--format", choices=("json", "csv"), default="json")
    sub.add_argument("--output", default="-", help="output path, '-' for stdout")


def _add_threads(sub) -> None:
    sub.add_argument(
        "--threads",
        type=int,
        default=None,
        help="worker cap, 0 = auto (default: KSEC_THREADS or auto)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ksec",
        description="exact, asymptotic, and simulated analysis of k-secretary threshold policies",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("exact", help="closed-form probabilities and ratio at finite n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--method", choices=("auto", "rational", "float"), default="auto")
    _add_common(p)

    p = subs.add_parser("table", help="optimal parameters and ratios for k = 1..k-max")
    p.add_argument("--k-max", type=int, required=True)
    p.add_argument("--tolerance", type=float, default=1e-6, help="c refinement tolerance")
    _add_common(p)

    p = subs.add_parser("simulate", help="seeded Monte Carlo estimate")
    p.add_argument("--policy", choices=("single-ref", "optimistic"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    _add_threads(p)
    _add_common(p)

    p = subs.add_parser("verify", help="identity sweep against the enumeration oracle")
    p.add_argument("--n-max", type=int, required=True)
    _add_threads(p)
    _add_common(p)

    p = subs.add_parser("optimize", help="best (r, c) for one budget")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--k", type=int)
    group.add_argument("--optimistic-k2", action="store_true")
    p.add_argument("--tolerance", type=float, default=1e-6)
    _add_common(p)

    p = subs.add_parser("oracle", help="exact acceptance counts by full enumeration")
    p.add_argument("--policy", choices=("single-ref", "optimistic"), default="single-ref")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--r", type=int, default=None)
    _add_threads(p)
    _add_common(p)

    return parser


def _cmd_exact(args) -> int:
    params = validate_params(args.n, args.k, args.t, args.r)
    k = params.k
    p_dom = [float(exact.p_dom_exact(params, j, args.method)) for j in range(k)]
    p_item = [
        [float(exact.p_item_exact(params, i, j, args.method)) for j in range(1, k + 1)]
        for i in range(1, k + 1)
    ]
    ratio = float(exact.cr_single_ref_exact(params, args.method))
    if args.format == "json":
        payload = {
            "params": {"n": params.n, "k": params.k, "t": params.t, "r": params.r},
            "p_dom": p_dom,
            "p_item": p_item,
            "ratio": ratio,
        }
        _write(_json_text(payload), args.output)
    else:
        rows = [("p_dom", "", j + 1, repr(v)) for j, v in enumerate(p_dom)]
        rows += [
            ("p_item", i + 1, j + 1, repr(v))
            for i, row in enumerate(p_item)
            for j, v in enumerate(row)
        ]
        rows.append(("ratio", "", "", repr(ratio)))
        _write(_csv_text(("record", "item", "slot", "value"), rows), args.output)
    return 0


def _cmd_table(args) -> int:
    rows = optimizer.build_table(args.k_max, c_tol=args.tolerance)
    if args.format == "json":
        payload = [
            {
                "k": row.k,
                "r": row.r,
                "c": row.c,
                "cr": row.ratio,
                "kleinberg": kleinberg_bound(row.k),
            }
            for row in rows
        ]
        _write(_json_text(payload), args.output)
    else:
        csv_rows = []
        for row in rows:
            bound = kleinberg_bound(row.k)
            csv_rows.append(
                (row.k, row.r, repr(row.c), repr(row.ratio), "" if bound is None else repr(bound))
            )
        _write(_csv_text(("k", "r", "c", "cr", "kleinberg"), csv_rows), args.output)
    return 0


def _cmd_simulate(args) -> int:
    kind = _policy_kind(args.policy)
    if kind is PolicyKind.SINGLE_REF and args.r is None:
        raise RangeError("--r is required for --policy single-ref")
    params = validate_params(args.n, args.k, args.t, args.r)
    est = mc_estimate(params, kind, args.trials, seed=args.seed, threads=args.threads)
    per_slot = [
        {
            "item": i + 1,
            "slot": j + 1,
            "estimate": float(est.prob_estimates[i, j]),
            "stderr": float(est.std_errors[i, j]),
        }
        for i in range(params.k)
        for j in range(params.k)
    ]
    if args.format == "json":
        payload = {
            "params": {"n": params.n, "k": params.k, "t": params.t, "r": params.r},
            "policy": args.policy,
            "trials": args.trials,
            "seed": args.seed,
            "ratioEstimate": est.ratio_estimate,
            "stderr": est.ratio_se,
            "perSlot": per_slot,
        }
        _write(_json_text(payload), args.output)
    else:
        rows = [
            ("seed", "", "", repr(args.seed)),
            ("ratio", "", "", repr(est.ratio_estimate)),
            ("stderr", "", "", repr(est.ratio_se)),
        ]
        rows += [
            ("slot_estimate", e["item"], e["slot"], repr(e["estimate"])) for e in per_slot
        ]
        rows += [
            ("slot_stderr", e["item"], e["slot"], repr(e["stderr"])) for e in per_slot
        ]
        _write(_csv_text(("record", "item", "slot", "value"), rows), args.output)
    return 0


def _report_payload(report: VerificationReport) -> dict:
    return {
        "nMax": report.n_max,
        "backend": _kernels.backend_name(),
        "totalInstances": report.total_instances,
        "allPass": report.ok,
        "checks": [
            {
                "identity": c.identity,
                "config": c.config,
                "instances": c.instances,
                "failures": list(c.failures),
            }
            for c in report.checks
        ],
    }


def _cmd_verify(args) -> int:
    report = verify_identities(args.n_max, threads=args.threads)
    if args.format == "json":
        _write(_json_text(_report_payload(report)), args.output)
    else:
        rows = [
            (
                c.identity,
                c.config.get("n", ""),
                c.config.get("k", ""),
                c.config.get("t", ""),
                c.config.get("r", ""),
                c.instances,
                "ok" if c.ok else "; ".join(c.failures),
            )
            for c in report.checks
        ]
        _write(
            _csv_text(("identity", "n", "k", "t", "r", "instances", "result"), rows),
            args.output,
        )
    status = "all identities hold" if report.ok else f"{len(report.failures)} identities FAILED"
    print(
        f"verify: n_max={report.n_max}, {len(report.checks)} checks, "
        f"{report.total_instances} instances, {status}",
        file=sys.stderr,
    )
    return 0 if report.ok else 1


def _cmd_optimize(args) -> int:
    if args.optimistic_k2:
        c_star, ratio = optimizer.optimize_optimistic_k2(c_tol=args.tolerance)
        if args.format == "json":
            _write(_json_text({"c": c_star, "cr": ratio}), args.output)
        else:
            _write(_csv_text(("c", "cr"), [(repr(c_star), repr(ratio))]), args.output)
        return 0
    row = optimizer.optimize_single_ref(args.k, c_tol=args.tolerance)
    if args.format == "json":
        _write(_json_text({"k": row.k, "r": row.r, "c": row.c, "cr": row.ratio}), args.output)
    else:
        _write(
            _csv_text(("k", "r", "c", "cr"), [(row.k, row.r, repr(row.c), repr(row.ratio))]),
            args.output,
        )
    return 0


def _cmd_oracle(args) -> int:
    kind = _policy_kind(args.policy)
    if kind is PolicyKind.SINGLE_REF and args.r is None:
        raise RangeError("--r is required for --policy single-ref")
    params = validate_params(args.n, args.k, args.t, args.r)
    table = oracle_table(params, kind, threads=args.threads)
    if args.format == "json":
        payload = {
            "params": {"n": params.n, "k": params.k, "t": params.t, "r": params.r},
            "policy": args.policy,
            "total": table.total,
            "counts": table.counts.tolist(),
            "probabilities": [
                [int(c) / table.total for c in row] for row in table.counts
            ],
        }
        _write(_json_text(payload), args.output)
    else:
        rows = [
            (i + 1, j + 1, int(table.counts[i, j]), repr(int(table.counts[i, j]) / table.total))
            for i in range(params.n)
            for j in range(params.k)
        ]
        _write(_csv_text(("item", "slot", "count", "probability"), rows), args.output)
    return 0


_HANDLERS = {
    "exact": _cmd_exact,
    "table": _cmd_table,
    "simulate": _cmd_simulate,
    "verify": _cmd_verify,
    "optimize": _cmd_optimize,
    "oracle": _cmd_oracle,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (RangeError, SizeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
