"""Command-line front end.

Usage examples
--------------
  kernelhom verify --graph cycle:3 --kernel kb.json --claim main
  kernelhom scan --graph path:7 --trials 1000 --n 3 --seed 42 --claim main
  kernelhom scan --graph cycle:5 --trials 500 --n 4 --seed 7 --signed --bound 1 --claim nonneg
  kernelhom spectrum --kernel kd.json
  kernelhom kernel --n 4 --seed 3 --format csv

Exit codes: 0 all verdicts pass, 1 some verdict fails, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from kernelhom.densities import t_path_fast
from kernelhom.graphs import parse_graph
from kernelhom.kernels import (
    constant_kernel,
    kernel_to_csv,
    load_kernel,
    random_graphon,
    random_kernel,
)
from kernelhom.spectral import decompose, moment
from kernelhom.verify import (
    default_tolerance,
    reports_to_csv,
    reports_to_json,
    run_claim,
    validate_claim,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def trial_seed(seed: int, trial: int) -> int:
    """64-bit seed for trial ``trial``, reproducible without running earlier trials."""
    ss = np.random.SeedSequence(seed, spawn_key=(trial,))
    return int(ss.generate_state(1, np.uint64)[0])


def resolve_kernel(spec: str):
    """A kernel JSON path, or ``const:c`` for the constant kernel."""
    if spec.startswith("const:"):
        try:
            return constant_kernel(float(spec[len("const:"):]))
        except ValueError as exc:
            raise UsageError(f"bad constant kernel {spec!r}: {exc}") from None
    try:
        return load_kernel(spec)
    except (OSError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _emit(reports, fmt: str):
    text = reports_to_csv(reports) if fmt == "csv" else reports_to_json(reports) + "\n"
    sys.stdout.write(text)


def cmd_verify(args) -> int:
    H = parse_graph(args.graph)
    W = resolve_kernel(args.kernel)
    validate_claim(args.claim, H)
    reports = run_claim(args.claim, H, W, args.tol)
    _emit(reports, args.format)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _scan_trial(job):
    graph, claim, n, seed, signed, bound, tol, trial = job
    H = parse_graph(graph)
    s = trial_seed(seed, trial)
    W = random_kernel(n, bound, s) if signed else random_graphon(n, s)
    reports = run_claim(claim, H, W, tol)
    for r in reports:
        r.context.update(seed=seed, trial=trial, trial_seed=s)
    return reports


def scan(graph, claim, trials, n, seed, signed=False, bound=1.0, tol=None, jobs=1):
    """Run ``claim`` on ``trials`` random kernels; returns (summary, reports)."""
    H = parse_graph(graph)
    validate_claim(claim, H)
    if trials < 1:
        raise UsageError("--trials must be at least 1")
    if n < 1:
        raise UsageError("--n must be at least 1")
    if signed and not bound > 0:
        raise UsageError("--bound must be positive")
    tol = default_tolerance() if tol is None else tol
    jobs_list = [(graph, claim, n, seed, signed, bound, tol, t) for t in range(trials)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            per_trial = list(pool.map(_scan_trial, jobs_list, chunksize=max(1, trials // (4 * jobs))))
    else:
        per_trial = [_scan_trial(j) for j in jobs_list]
    reports = [r for batch in per_trial for r in batch]

    worst = min(reports, key=lambda r: r.slack)
    summary = {
        "graph": H.describe(),
        "claim": claim,
        "trials": trials,
        "n": n,
        "seed": seed,
        "signed": signed,
        "bound": bound if signed else 1.0,
        "tolerance": tol,
        "reports": len(reports),
        "failures": sum(not r.passed for r in reports),
        "min_slack": worst.slack,
        "argmin": {
            "claim_id": worst.claim_id,
            "trial": worst.context["trial"],
            "trial_seed": worst.context["trial_seed"],
        },
    }
    return summary, reports


def cmd_scan(args) -> int:
    summary, reports = scan(
        args.graph, args.claim, args.trials, args.n, args.seed,
        args.signed, args.bound, args.tol, args.jobs,
    )
    if args.format == "csv":
        sys.stdout.write(reports_to_csv(reports))
    else:
        out = dict(summary)
        if args.reports:
            out["details"] = json.loads(reports_to_json(reports))
        sys.stdout.write(json.dumps(out, indent=2) + "\n")
    return EXIT_OK if summary["failures"] == 0 else EXIT_FAIL


def cmd_spectrum(args) -> int:
    W = resolve_kernel(args.kernel)
    s = decompose(W)
    rows = []
    for m in range(args.max_moment + 1):
        mom = moment(s, m)
        path = t_path_fast(m, W)
        rows.append({"m": m, "moment": mom, "t_path": path, "abs_diff": abs(mom - path)})
    out = s.to_dict()
    out["parseval_sum"] = s.parseval_sum
    out["moments"] = rows
    sys.stdout.write(json.dumps(out, indent=2) + "\n")
    return EXIT_OK


def cmd_kernel(args) -> int:
    W = random_kernel(args.n, args.bound, args.seed) if args.signed else random_graphon(args.n, args.seed)
    if args.format == "csv":
        sys.stdout.write(kernel_to_csv(W))
    else:
        sys.stdout.write(json.dumps(W.to_dict(), indent=2) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kernelhom", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_common(p):
        p.add_argument("--graph", required=True, help="path:m, cycle:m or k2")
        p.add_argument("--claim", default="all", help="main, common, nonneg, qmd:m:d, hunter:m:d, "
                       "even-cycle:m, stability-common, stability-main, identities, all")
        p.add_argument("--tol", type=float, default=None,
                       help="absolute slack tolerance (default: $KERNELHOM_TOL or 1e-9)")
        p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("verify", help="verify claims on one kernel")
    add_common(p)
    p.add_argument("--kernel", required=True, help="kernel JSON file or const:c")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", help="verify claims on seeded random kernels")
    add_common(p)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--n", type=int, default=3, help="number of blocks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--signed", action="store_true", help="draw signed kernels instead of graphons")
    p.add_argument("--bound", type=float, default=1.0, help="entry bound for --signed")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--reports", action="store_true", help="include per-trial reports in JSON output")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("spectrum", help="spectral law and moment table of a kernel")
    p.add_argument("--kernel", required=True, help="kernel JSON file or const:c")
    p.add_argument("--max-moment", type=int, default=10)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("kernel", help="print a seeded random kernel")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--signed", action="store_true")
    p.add_argument("--bound", type=float, default=1.0)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_kernel)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "tol", None) is not None and not args.tol >= 0:
            raise UsageError("--tol must be nonnegative")
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"kernelhom: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
