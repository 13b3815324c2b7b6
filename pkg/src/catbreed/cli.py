"""Command-line front end: figure sweeps as CSV (and optionally SVG)."""

from __future__ import annotations

import argparse
import io
import sys
from typing import Sequence

from . import __version__
from .breeding import Parity
from .errors import DegenerateInputError, DomainError, NotFoundError
from .loss import max_alpha_for_fidelity
from .metrics import threshold_alpha
from .svg import heatmap, line_plot
from .sweeps import BREED_COLUMNS, CROSS_COLUMNS, LOSS_COLUMNS, breed_sweep, cross_section, grid, loss_sweep

EXIT_OK, EXIT_USAGE, EXIT_DEGENERATE, EXIT_SELFTEST = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _fmt(x: float) -> str:
    return "%.9g" % x


def write_csv(stream: io.TextIOBase, columns: Sequence[str], rows, comments: Sequence[str] = (), footer: Sequence[str] = ()):
    for c in comments:
        stream.write(f"# {c}\n")
    stream.write(",".join(columns) + "\n")
    for row in rows:
        stream.write(",".join(_fmt(v) for v in row) + "\n")
    for c in footer:
        stream.write(f"# {c}\n")


def _echo(args: argparse.Namespace) -> list[str]:
    skip = {"func", "out", "svg", "jobs"}
    flags = " ".join(f"{k}={v}" for k, v in sorted(vars(args).items()) if k not in skip)
    return [f"catbreed {__version__} {args.command}", flags]


def _emit(args, columns, rows, footer=()):
    if args.out in (None, "-"):
        write_csv(sys.stdout, columns, rows, _echo(args), footer)
    else:
        with open(args.out, "w", newline="") as fh:
            write_csv(fh, columns, rows, _echo(args), footer)


def _write_svg(path: str | None, text: str) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)


def _alphas(args, lo: float = 0.0, hi: float = 10.0) -> list[float]:
    if args.alpha_steps < 1:
        raise UsageError("--alpha-steps must be >= 1")
    if not (lo < args.alpha_min <= args.alpha_max <= hi):
        raise UsageError(f"alpha range must satisfy {lo} < min <= max <= {hi}")
    return grid(args.alpha_min, args.alpha_max, args.alpha_steps)


def _etas(args, lo: float, hi: float, hi_open: bool = False) -> list[float]:
    if args.eta_steps < 1:
        raise UsageError("--eta-steps must be >= 1")
    upper_ok = args.eta_max < hi if hi_open else args.eta_max <= hi
    if not (lo <= args.eta_min <= args.eta_max and upper_ok):
        raise UsageError(f"eta range must lie in [{lo}, {hi}{')' if hi_open else ']'}")
    return grid(args.eta_min, args.eta_max, args.eta_steps)


# --------------------------------------------------------------------------
# commands


def cmd_breed_sweep(args) -> int:
    alphas = _alphas(args)
    etas = _etas(args, 0.5, 1.0)
    rows = breed_sweep(alphas, etas, Parity.parse(args.parity), not args.unmatched, args.jobs)
    _emit(args, BREED_COLUMNS, rows)
    if args.svg:
        values = [[r[2] for r in rows[i * len(etas) : (i + 1) * len(etas)]] for i in range(len(alphas))]
        _write_svg(args.svg, heatmap(alphas, etas, values, "Breeding fidelity", "alpha", "eta (mode overlap)"))
    return EXIT_OK


def cmd_cross_section(args) -> int:
    if not (0.5 <= args.eta <= 1.0):
        raise UsageError("--eta must lie in [0.5, 1]")
    alphas = _alphas(args)
    parity = Parity.parse(args.parity)
    rows = cross_section(args.eta, alphas, parity, not args.unmatched, args.jobs)
    try:
        thr = threshold_alpha(args.eta, args.target_fidelity, matched=not args.unmatched)
        footer = [f"threshold_alpha(eta={args.eta:g}, F={args.target_fidelity:g}) = {_fmt(thr)}"]
    except NotFoundError as exc:
        footer = [f"threshold_alpha(eta={args.eta:g}, F={args.target_fidelity:g}): not found ({exc})"]
    _emit(args, CROSS_COLUMNS, rows, footer)
    if args.svg:
        _write_svg(args.svg, line_plot(alphas, {"fidelity": [r[1] for r in rows]}, f"Fidelity at eta={args.eta:g}", "alpha", "F"))
    return EXIT_OK


def cmd_loss_sweep(args) -> int:
    alphas = _alphas(args)
    etas = _etas(args, 0.0, 1.0, hi_open=True)
    rows = loss_sweep(alphas, etas, args.jobs)
    _emit(args, LOSS_COLUMNS, rows)
    if args.svg:
        values = [[r[2] for r in rows[i * len(etas) : (i + 1) * len(etas)]] for i in range(len(alphas))]
        _write_svg(args.svg, heatmap(alphas, etas, values, "Fidelity under loss", "alpha", "loss rate"))
    return EXIT_OK


def cmd_loss_cross_section(args) -> int:
    if not (0.0 < args.eta < 1.0):
        raise UsageError("--eta must lie in (0, 1)")
    alphas = _alphas(args)
    rows = loss_sweep(alphas, [args.eta], args.jobs)
    thr = max_alpha_for_fidelity(args.eta, args.target_fidelity)
    footer = [f"max_alpha_for_fidelity(eta={args.eta:g}, F={args.target_fidelity:g}) = {_fmt(thr)}"]
    _emit(args, LOSS_COLUMNS, rows, footer)
    if args.svg:
        series = {name: [r[k] for r in rows] for k, name in ((2, "closed form"), (3, "exact even"), (4, "exact odd"))}
        _write_svg(args.svg, line_plot(alphas, series, f"Fidelity at loss {args.eta:g}", "alpha", "F"))
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .selftest import run_selftest

    checks = run_selftest()
    for c in checks:
        print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}  {c.detail}")
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_SELFTEST


# --------------------------------------------------------------------------
# parser


def _add_alpha(p, lo: float, hi: float, steps: int) -> None:
    p.add_argument("--alpha-min", type=float, default=lo)
    p.add_argument("--alpha-max", type=float, default=hi)
    p.add_argument("--alpha-steps", type=int, default=steps)


def _add_eta_range(p, lo: float, hi: float, steps: int) -> None:
    p.add_argument("--eta-min", type=float, default=lo)
    p.add_argument("--eta-max", type=float, default=hi)
    p.add_argument("--eta-steps", type=int, default=steps)


def _add_output(p) -> None:
    p.add_argument("--out", default=None, help="CSV path (default: stdout)")
    p.add_argument("--svg", default=None, help="also write an SVG plot here")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for the grid")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="catbreed", description="Cat-state breeding under mode-mismatch and loss.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("breed-sweep", help="fidelity and cat magnitude over (alpha, eta)")
    _add_alpha(p, 0.1, 5.0, 50)
    _add_eta_range(p, 0.9, 1.0, 50)
    p.add_argument("--parity", choices=["odd", "even"], default="odd")
    p.add_argument("--unmatched", action="store_true", help="disable amplitude matching")
    _add_output(p)
    p.set_defaults(func=cmd_breed_sweep)

    p = sub.add_parser("cross-section", help="fidelity vs alpha at fixed mode overlap")
    p.add_argument("--eta", type=float, default=0.99)
    p.add_argument("--target-fidelity", type=float, default=0.9)
    _add_alpha(p, 0.1, 8.0, 80)
    p.add_argument("--parity", choices=["odd", "even"], default="odd")
    p.add_argument("--unmatched", action="store_true", help="disable amplitude matching")
    _add_output(p)
    p.set_defaults(func=cmd_cross_section)

    p = sub.add_parser("loss-sweep", help="fidelity over (alpha, loss rate)")
    _add_alpha(p, 0.1, 5.0, 50)
    _add_eta_range(p, 0.0, 0.5, 51)
    _add_output(p)
    p.set_defaults(func=cmd_loss_sweep)

    p = sub.add_parser("loss-cross-section", help="fidelity vs alpha at fixed loss rate")
    p.add_argument("--eta", type=float, default=0.05)
    p.add_argument("--target-fidelity", type=float, default=0.9)
    _add_alpha(p, 0.1, 5.0, 50)
    _add_output(p)
    p.set_defaults(func=cmd_loss_cross_section)

    p = sub.add_parser("selftest", help="compare against the Fock-space oracle")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DomainError) as exc:
        print(f"catbreed: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DegenerateInputError as exc:
        print(f"catbreed: degenerate input: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
