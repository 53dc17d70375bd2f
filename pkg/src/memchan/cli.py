"""Command-line front end: ``memchan <rate|optimize|contour|sweep-nbar>``.

Exit codes: 0 on success, 1 on domain or I/O errors, 2 on usage errors.
"""

import argparse
import csv
import io
import sys

import numpy as np

from memchan.channel import InputStrategy, NoiseModel, Pattern
from memchan.errors import MemchanError
from memchan.optimize import DEFAULT_GRID, DEFAULT_RATE_TOL, optimize_rate
from memchan.rates import rate_generic, rate_grid, squeezing_db

CONTOUR_COLUMNS = ("eta", "y", "rate")
SWEEP_COLUMNS = (
    "snr",
    "nbar",
    "N",
    "x",
    "pattern",
    "eta_star",
    "y_star",
    "rate_star",
    "rate_eta0",
    "gain",
    "squeezing_db",
)


def fmt(value):
    """Locale-free number formatting with 9 significant digits."""
    if isinstance(value, str):
        return value
    return format(float(value), ".9g")


def _positive_int(text):
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError(f"resolution must be >= 2, got {value}")
    return value


def _float_list(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _add_channel_args(p, memory=True):
    p.add_argument("--nbar", type=float, default=1.0, help="mean input photons per mode")
    noise = p.add_mutually_exclusive_group()
    noise.add_argument("--noise", type=float, help="thermal noise photons N")
    noise.add_argument("--snr", type=float, help="signal-to-noise ratio; sets N = nbar/snr")
    if memory:
        p.add_argument("--memory", type=float, default=0.0, help="memory coefficient x")
    p.add_argument(
        "--pattern",
        choices=[pat.value for pat in Pattern],
        default=Pattern.PHASE_SENSITIVE.value,
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="memchan",
        description="Rates and capacities of bosonic Gaussian channels with memory.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rate", help="rate of a single input strategy")
    _add_channel_args(p)
    p.add_argument("--eta", type=float, default=0.0)
    p.add_argument("--y", type=float, default=0.0)

    p = sub.add_parser("optimize", help="maximize the rate over (eta, y)")
    _add_channel_args(p)
    p.add_argument("--tol", type=float, default=DEFAULT_RATE_TOL)

    p = sub.add_parser("contour", help="rate on an (eta, y) grid, as CSV")
    _add_channel_args(p)
    p.add_argument("--grid-eta", type=_positive_int, default=DEFAULT_GRID)
    p.add_argument("--grid-y", type=_positive_int, default=DEFAULT_GRID)
    p.add_argument("--out", help="output CSV path (default: stdout)")

    p = sub.add_parser("sweep-nbar", help="optimize along nbar at fixed snr, as CSV")
    _add_channel_args(p, memory=False)
    p.add_argument("--x-list", type=_float_list, default=[0.0, 0.7, 0.9, 1.0])
    p.add_argument("--nbar-min", type=float, default=0.01)
    p.add_argument("--nbar-max", type=float, default=100.0)
    p.add_argument("--nbar-steps", type=_positive_int, default=50)
    p.add_argument("--log-scale", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--tol", type=float, default=DEFAULT_RATE_TOL)
    p.add_argument("--out", help="output CSV path (default: stdout)")
    return parser


def _noise(args, parser, nbar):
    if args.snr is not None:
        if not args.snr > 0:
            parser.error("--snr must be > 0")
        return nbar / args.snr
    if args.noise is None:
        parser.error("one of --noise or --snr is required")
    return args.noise


def _write_csv(rows, header, out):
    buf = io.StringIO(newline="")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    text = buf.getvalue()
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="", encoding="ascii") as fh:
            fh.write(text)


def cmd_rate(args, parser):
    N = _noise(args, parser, args.nbar)
    model = NoiseModel(N, args.memory, Pattern(args.pattern))
    point = rate_generic(InputStrategy(args.eta, args.y, args.nbar), model)
    print(f"rate_bits_per_mode: {fmt(point.rate_bits_per_mode)}")
    print("lambda_out: " + ", ".join(fmt(v) for v in point.lambda_out))
    print("lambda_mix: " + ", ".join(fmt(v) for v in point.lambda_mix))
    print(f"squeezing_db: {fmt(squeezing_db(args.eta, args.nbar))}")


def cmd_optimize(args, parser):
    N = _noise(args, parser, args.nbar)
    res = optimize_rate(args.nbar, N, args.memory, Pattern(args.pattern), tolerance=args.tol)
    print(f"eta_star: {res.eta_star:.3f}")
    print(f"y_star: {res.y_star:.3f}")
    print(f"rate_star: {fmt(res.rate_star)}")
    print(f"rate_eta0: {fmt(res.rate_eta0)}")
    print(f"gain: {fmt(res.gain)}")
    print(f"squeezing_db: {fmt(squeezing_db(res.eta_star, args.nbar))}")
    print(f"evaluations: {res.evaluations}")
    print(f"converged: {str(res.converged).lower()}")


def cmd_contour(args, parser):
    N = _noise(args, parser, args.nbar)
    model = NoiseModel(N, args.memory, Pattern(args.pattern))
    etas = np.linspace(0.0, 1.0, args.grid_eta)
    ys = np.linspace(-1.0, 1.0, args.grid_y)
    E, Y = np.meshgrid(etas, ys, indexing="ij")
    R = rate_grid(E, Y, args.nbar, model)
    rows = zip(E.ravel(), Y.ravel(), R.ravel())
    _write_csv(rows, CONTOUR_COLUMNS, args.out)


def sweep_nbar(snr, x_list, nbars, pattern, tolerance=DEFAULT_RATE_TOL):
    """One row per ``(x, nbar)``: x-major, nbar ascending within each x."""
    for x in x_list:
        for nbar in nbars:
            res = optimize_rate(nbar, nbar / snr, x, pattern, tolerance=tolerance)
            yield (
                snr,
                nbar,
                res.N,
                x,
                res.pattern.value,
                res.eta_star,
                res.y_star,
                res.rate_star,
                res.rate_eta0,
                res.gain,
                squeezing_db(res.eta_star, nbar),
            )


def cmd_sweep_nbar(args, parser):
    if args.snr is None:
        parser.error("sweep-nbar needs --snr")
    if not args.snr > 0:
        parser.error("--snr must be > 0")
    if not 0 < args.nbar_min <= args.nbar_max:
        parser.error("need 0 < --nbar-min <= --nbar-max")
    if not args.x_list:
        parser.error("--x-list is empty")
    if args.log_scale:
        nbars = np.geomspace(args.nbar_min, args.nbar_max, args.nbar_steps)
    else:
        nbars = np.linspace(args.nbar_min, args.nbar_max, args.nbar_steps)
    rows = list(sweep_nbar(args.snr, args.x_list, nbars, Pattern(args.pattern), args.tol))
    _write_csv(rows, SWEEP_COLUMNS, args.out)


COMMANDS = {
    "rate": cmd_rate,
    "optimize": cmd_optimize,
    "contour": cmd_contour,
    "sweep-nbar": cmd_sweep_nbar,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        COMMANDS[args.command](args, parser)
    except (MemchanError, OSError) as exc:
        print(f"memchan: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
