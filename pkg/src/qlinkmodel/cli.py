"""Command-line entry point.

Examples
--------
::

    qlinkmodel teleport --from-km 0 --to-km 100 --step-km 2 --coded
    qlinkmodel ghz --source dual --coded --trials 10000 --seed 7 --out fig10.csv
    qlinkmodel verify
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .errors import ModelError
from .sweep import SweepSpec, format_rows, load_config, run_sweep
from .verify import SUBSETS, report_ok, verify

# Sweep range defaults per subcommand: (from, to, step) in km.
_RANGES = {"teleport": (0.0, 100.0, 2.0), "qecc": (0.0, 100.0, 2.0), "epp": (0.0, 100.0, 2.0), "ghz": (0.0, 40.0, 1.0)}


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key=value file; missing keys take defaults")
    p.add_argument("--from-km", type=float, dest="from_km")
    p.add_argument("--to-km", type=float, dest="to_km")
    p.add_argument("--step-km", type=float, dest="step_km")
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--seed", type=int, default=0, help="master seed for Monte Carlo (u64)")
    p.add_argument("--trials", type=int, help="Monte Carlo trials per sweep point")
    p.add_argument("--coded", action="store_true", help="add five-qubit-coded columns")
    p.add_argument("--workers", type=int, default=1, help="processes for sweep points")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qlinkmodel", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("teleport", help="teleportation fidelity and throughput vs end-to-end length")
    _common(p)
    p = sub.add_parser("qecc", help="teleportation with five-qubit coding (always coded)")
    _common(p)
    p = sub.add_parser("epp", help="hashing yield and purified throughput vs end-to-end length")
    _common(p)
    p = sub.add_parser("ghz", help="GHZ loading state and QSS fidelity vs source-to-memory length")
    _common(p)
    p.add_argument("--source", choices=("dual", "heralded"), default="dual")
    p.add_argument("--scheme", choices=("secret", "shares"), default="secret", help="coded QSS model")
    p = sub.add_parser("verify", help="run oracle checks; exit status 1 on any failure")
    _common(p)
    p.add_argument("--subset", choices=("all",) + SUBSETS, default="all")
    return parser


def _emit(text: str, out) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _spec(args) -> SweepSpec:
    lo, hi, step = _RANGES[args.command]
    system = {"teleport": "teleport", "qecc": "teleport-qecc", "epp": "epp"}.get(args.command)
    if system is None:
        system = f"ghz-{args.source}"
    return SweepSpec(
        system=system,
        start_km=lo if args.from_km is None else args.from_km,
        end_km=hi if args.to_km is None else args.to_km,
        step_km=step if args.step_km is None else args.step_km,
        coded=args.coded,
        trials=args.trials,
        seed=args.seed,
        scheme=getattr(args, "scheme", "secret"),
        workers=args.workers,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.command == "verify":
            checks = verify(args.subset, cfg=cfg, seed=args.seed)
            rows = [c.as_dict() for c in checks]
            text = format_rows(rows, "csv") if args.format == "csv" else json.dumps(rows, indent=1) + "\n"
            _emit(text, args.out)
            return 0 if report_ok(checks) else 1
        rows = run_sweep(_spec(args), cfg)
        _emit(format_rows(rows, args.format), args.out)
    except (ModelError, OSError) as exc:
        print(f"qlinkmodel: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
