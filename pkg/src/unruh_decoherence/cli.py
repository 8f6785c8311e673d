"""Command line entry point.

Exit codes: 0 success, 1 verification failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import sys

from .channels import ChannelKind, Scenario
from .sweep import (
    FIGURES,
    SweepConfig,
    emit_figure,
    esd_rows,
    format_esd,
    parse_r_list,
    run_sweep,
    run_verify,
)

EXIT_OK, EXIT_VERIFY_FAILED, EXIT_USAGE = 0, 1, 2


def _r_list(text):
    try:
        return parse_r_list(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _add_case_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--channel", required=True, choices=[k.value for k in ChannelKind])
    p.add_argument("--scenario", required=True, choices=[s.value for s in Scenario],
                   help="single: noise on Rob's qubit only; both: noise on both qubits")
    p.add_argument("--r", type=_r_list, default=None,
                   help="comma-separated r values in radians; 'inf-accel' means pi/4")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="unruh-decoherence",
        description="Concurrence of Unruh-degraded Alice-Rob entanglement under Kraus noise.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="concurrence over a (r, p) grid as CSV")
    _add_case_flags(sw)
    sw.add_argument("--p-steps", type=int, default=101, help="number of p values on [0, 1]")
    sw.add_argument("--out", default="-", help="output CSV path, '-' for stdout")

    esd = sub.add_parser("esd", help="sudden-death threshold p* for each r")
    _add_case_flags(esd)
    esd.add_argument("--tol", type=float, default=1e-9, help="bisection bracket width")

    ver = sub.add_parser("verify", help="compare numeric and closed-form concurrence")
    ver.add_argument("--grid", type=int, default=11, help="number of p values per case")

    fig = sub.add_parser("figure", help="write the data of one figure as CSV")
    fig.add_argument("figure_id", type=int, choices=sorted(FIGURES))
    fig.add_argument("--out", default="", help="output path (default figure<N>.csv), '-' for stdout")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "sweep":
            cfg_kwargs = {} if args.r is None else {"r_values": args.r}
            cfg = SweepConfig(args.channel, args.scenario, p_count=args.p_steps,
                              output_path=args.out, **cfg_kwargs)
            run_sweep(cfg)
        elif args.command == "esd":
            r_values = args.r if args.r is not None else SweepConfig(args.channel, args.scenario).r_values
            print("channel,scenario,r,p_star,bracket_width")
            for res in esd_rows(args.channel, args.scenario, r_values, args.tol):
                print(format_esd(res))
        elif args.command == "verify":
            report = run_verify(args.grid)
            print("\n".join(report.lines()))
            return report.exit_code
        elif args.command == "figure":
            emit_figure(args.figure_id, args.out)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
