"""Command-line front end.

Exit codes: 0 success, 1 numeric or I/O failure, 2 bad arguments,
3 a verification check failed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bounds import DEFAULT_N_SAMPLES, bounds_row, bounds_table
from .quartic import BracketError, NumericGuardError
from .records import bounds_payload, render
from .sim import DEFAULT_AWAKE_CAP, DEFAULT_HORIZON, DEFAULT_SEED, SimConfig, simulate_frog_model
from .verify import run_checks

EXIT_OK, EXIT_FAILURE, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2, 3


def _degree(text: str) -> int:
    try:
        d = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if d < 2:
        raise argparse.ArgumentTypeError(f"degree must be >= 2, got {d}")
    return d


def _probability(text: str) -> float:
    try:
        p = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 <= p <= 1.0:
        raise argparse.ArgumentTypeError(f"probability must lie in [0, 1], got {p}")
    return p


def _positive(text: str) -> int:
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if k < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {k}")
    return k


def _seed(text: str) -> int:
    try:
        s = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= s < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return s


def _n_list(text: str) -> tuple[int, ...]:
    if not text.strip():
        return ()
    return tuple(_positive(part) for part in text.split(","))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frogbound",
        description="Upper bounds for the critical probability of the frog model on T_d.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", type=Path, default=None, help="output file (default stdout)")

    default_n = ",".join(map(str, DEFAULT_N_SAMPLES))
    p = sub.add_parser("bound", help="bound panel for one degree")
    p.add_argument("--d", type=_degree, required=True)
    p.add_argument("--n-samples", type=_n_list, default=DEFAULT_N_SAMPLES, help=f"default {default_n}")
    common(p)

    p = sub.add_parser("scan", help="bound panels for a range of degrees")
    p.add_argument("--d-min", type=_degree, required=True)
    p.add_argument("--d-max", type=_degree, required=True)
    p.add_argument("--n-samples", type=_n_list, default=DEFAULT_N_SAMPLES, help=f"default {default_n}")
    p.add_argument("--workers", type=_positive, default=1)
    common(p)

    p = sub.add_parser("simulate", help="Monte Carlo survival frequency")
    p.add_argument("--d", type=_degree, required=True)
    p.add_argument("--p", type=_probability, required=True)
    p.add_argument("--horizon", type=_positive, default=DEFAULT_HORIZON)
    p.add_argument("--trials", type=_positive, default=1000)
    p.add_argument("--cap", type=_positive, default=DEFAULT_AWAKE_CAP)
    p.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    p.add_argument("--workers", type=_positive, default=1)
    common(p)

    p = sub.add_parser("verify", help="run the cross-check suite")
    p.add_argument("--level", choices=("fast", "full"), default="fast")
    p.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    common(p)
    return parser


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    status = EXIT_OK
    try:
        if args.command == "bound":
            row = bounds_row(args.d, args.n_samples)
            text = render("bounds-row", [bounds_payload(row)], args.format)
        elif args.command == "scan":
            if args.d_min > args.d_max:
                parser.error("--d-min must not exceed --d-max")
            rows = bounds_table(args.d_min, args.d_max, args.n_samples, workers=args.workers)
            text = render("bounds-row", [bounds_payload(r) for r in rows], args.format)
        elif args.command == "simulate":
            config = SimConfig(args.d, args.p, args.horizon, args.cap, args.trials, args.seed)
            est = simulate_frog_model(config, workers=args.workers)
            payload = {
                "d": config.d,
                "p": config.p,
                "horizon": config.horizon,
                "awake_cap": config.awake_cap,
                "seed": config.seed,
                "trials": est.trials,
                "successes": est.successes,
                "point": est.point,
                "ci95_halfwidth": est.ci95_halfwidth,
            }
            text = render("estimate", [payload], args.format)
        else:
            results = run_checks(args.level, args.seed)
            text = render("verification-item", [r.payload() for r in results], args.format)
            if not all(r.passed for r in results):
                status = EXIT_VERIFY
        _emit(text, args.out)
    except (NumericGuardError, BracketError) as exc:
        print(f"frogbound: numeric failure: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except OSError as exc:
        print(f"frogbound: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    return status


if __name__ == "__main__":
    sys.exit(main())
