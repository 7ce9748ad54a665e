"""Command-line front end.

Every subcommand parses its files, calls the library once and writes CSV
or ``key=value`` lines.  Exit codes: 0 ok, 2 usage, 3 I/O or file format,
4 domain error (e.g. a basis without fundamental).
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import csvio, harness
from .basis import Mode, builtin, convergence_report, normalize
from .systems import TransferFunction, apply_filter, convolve, eigen_check
from .transform import analyze, rescale_to_raw, synthesize

DEMO_HELP = f"""\
demos (frozen parameters):
  fig1  generic basis {harness.FIG1_BASIS} on a smooth test function,
        N={harness.FIG1_N}, orders {harness.FIG1_ORDERS}; writes fig1_orders.csv
  fig3  sin(x) from the first {harness.FIG3_COMPONENTS} square-basis components,
        N={harness.FIG3_N}; counts components with k <= {harness.FIG3_K_LIMIT}; writes fig3_reconstruction.csv
  fig5  {harness.FIG3_COMPONENTS} square components vs {harness.FIG5_HAAR_COUNT} largest Haar
        coefficients on sin(x), N=64 and N=128; writes fig5_comparison.csv
  fig6  band-limited square wave delayed {harness.FIG6_SHIFT} samples plus cosines at
        bins {harness.FIG6_NOISE_BINS} (amplitude {harness.FIG6_NOISE_AMPLITUDE}), N={harness.FIG6_N},
        square basis, cutoff 1; writes kept.csv, residual.csv, summary.csv
"""


class UsageError(Exception):
    pass


def _emit(**values):
    for key, value in values.items():
        if isinstance(value, float):
            value = csvio.fmt(value)
        print(f"{key}={value}")


def _add_basis_args(p):
    group = p.add_mutually_exclusive_group()
    group.add_argument("--builtin", "--basis-builtin", dest="builtin", metavar="NAME",
                       help="square, sawtooth, triangle or cosine")
    group.add_argument("--basis-file", type=Path, help='CSV of "m,amplitude,phase" lines')
    p.add_argument("--harmonics", type=int, default=99, help="max harmonic of a builtin basis (default 99)")


def _add_mode_arg(p, default="band-limited"):
    p.add_argument("--mode", choices=["band-limited", "sampled"], default=default,
                   help="basis rendering (default band-limited)")


def _basis(args):
    if args.basis_file is not None:
        return csvio.read_basis(args.basis_file)
    if args.builtin is None:
        raise UsageError("a basis is required: --builtin NAME or --basis-file PATH")
    return builtin(args.builtin, args.harmonics)


def _mode(args):
    if args.mode is None:
        return None
    mode = Mode.coerce(args.mode)
    if mode is Mode.SAMPLED:
        print("warning: sampled mode does not guarantee perfect reconstruction", file=sys.stderr)
    return mode


def _transfer(spec: str, k_max: int) -> TransferFunction:
    if Path(spec).is_file():
        return csvio.read_transfer(spec, k_max)
    try:
        return TransferFunction.parse(spec, k_max)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_check_basis(args):
    b = _basis(args)
    report = convergence_report(b)
    _emit(basis=b.name or "custom", harmonics=len(b), ratio=report.ratio,
          classification=report.classification.value)


def cmd_analyze(args):
    f = csvio.read_signal(args.signal)
    b = _basis(args)
    nb = normalize(b)
    ps = analyze(f, nb, _mode(args))
    if args.raw:
        ps = rescale_to_raw(ps, nb.origin)
    csvio.write_spectrum(args.out, ps, [f"N={f.N}", f"coefficients={'raw' if args.raw else 'normalized'}"])
    _emit(N=f.N, k_max=ps.k_max, dc=ps.dc, nonzero=len(ps.nonzero()), out=args.out)


def cmd_synth(args):
    ps = csvio.read_spectrum(args.spectrum)
    b = _basis(args)
    N = args.N or 2 * (ps.k_max + 1)
    mode = _mode(args) or ps.mode
    s = synthesize(ps, b if args.raw else normalize(b), N, mode)
    csvio.write_signal(args.out, s, [f"basis={b.name}", f"mode={mode.value}"])
    _emit(N=N, out=args.out)


def cmd_filter(args):
    f = csvio.read_signal(args.signal)
    nb = normalize(_basis(args))
    g = _transfer(args.gain, f.N // 2 - 1)
    out = apply_filter(f, nb, g, _mode(args))
    csvio.write_signal(args.out, out, [f"basis={nb.name}", f"gain={args.gain}"])
    _emit(N=f.N, out=args.out)


def cmd_convolve(args):
    f = csvio.read_signal(args.signal)
    kernel = csvio.read_signal(args.kernel)
    nb = normalize(_basis(args))
    out = convolve(f, kernel, nb, _mode(args))
    csvio.write_signal(args.out, out, [f"basis={nb.name}"])
    _emit(N=f.N, out=args.out)


def cmd_eigen(args):
    f = csvio.read_signal(args.signal)
    nb = normalize(_basis(args))
    g = _transfer(args.gain, f.N // 2 - 1)
    report = eigen_check(f, nb, g, _mode(args))
    _emit(is_eigenfunction=str(report.is_eigenfunction).lower(), eigen_modulus=report.eigen_modulus,
          eigen_phase=report.eigen_phase, residual_rms=report.residual_rms)


def cmd_demo(args):
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if args.name == "fig1":
        report = harness.fig1()
        csvio.write_reconstruction_report(out_dir / "fig1_orders.csv", report, harness.FIG1_N)
        for n, e in zip(report.orders, report.rms_errors):
            _emit(**{f"rms_error_order_{n}": e})
    elif args.name == "fig3":
        rec, error, count = harness.fig3()
        csvio.write_signal(out_dir / "fig3_reconstruction.csv", rec,
                           ["basis=square", f"components={harness.FIG3_COMPONENTS}"])
        _emit(rms_error=error, components_up_to_55=count)
    elif args.name == "fig5":
        rows = [harness.fig5(64), harness.fig5(128)]
        csvio._write(out_dir / "fig5_comparison.csv", ["square vs haar"],
                     [["N", "square_rms", "haar_rms"]]
                     + [[str(r["N"]), csvio.fmt(r["square_rms"]), csvio.fmt(r["haar_rms"])] for r in rows])
        for r in rows:
            _emit(**{f"square_rms_N{r['N']}": r["square_rms"], f"haar_rms_N{r['N']}": r["haar_rms"]})
    elif args.name == "fig6":
        report = harness.fig6()
        csvio.write_separation_report(out_dir, report, "square", Mode.BAND_LIMITED, 1)
        _emit(kept_rms_error_vs_reference=report.kept_rms_error_vs_reference)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gdt", description="Generic discrete transform over arbitrary bases.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-basis", help="report the convergence ratio of a basis")
    _add_basis_args(p)
    p.set_defaults(func=cmd_check_basis)

    p = sub.add_parser("analyze", help="analyze a signal into a generic spectrum")
    p.add_argument("--signal", type=Path, required=True)
    _add_basis_args(p)
    _add_mode_arg(p)
    p.add_argument("--raw", action="store_true", help="rescale coefficients to the unnormalized basis")
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("synth", help="resynthesize a signal from a generic spectrum")
    p.add_argument("--spectrum", type=Path, required=True)
    _add_basis_args(p)
    _add_mode_arg(p, default=None)
    p.add_argument("--raw", action="store_true", help="spectrum refers to the unnormalized basis")
    p.add_argument("--N", type=int, help="output length (default 2*(K_max+1))")
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("filter", help="apply a generalized filter")
    p.add_argument("--signal", type=Path, required=True)
    _add_basis_args(p)
    _add_mode_arg(p)
    p.add_argument("--gain", required=True, help="allpass | lowpass:K | highpass:K | keep:k1,k2,... | CSV path")
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_filter)

    p = sub.add_parser("convolve", help="generalized convolution of two signals")
    p.add_argument("--signal", type=Path, required=True)
    p.add_argument("--kernel", type=Path, required=True)
    _add_basis_args(p)
    _add_mode_arg(p)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_convolve)

    p = sub.add_parser("eigen", help="check whether a signal is an eigenfunction of a filter")
    p.add_argument("--signal", type=Path, required=True)
    _add_basis_args(p)
    _add_mode_arg(p)
    p.add_argument("--gain", required=True, help="allpass | lowpass:K | highpass:K | keep:k1,k2,... | CSV path")
    p.set_defaults(func=cmd_eigen)

    p = sub.add_parser("demo", help="run a frozen experiment", epilog=DEMO_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("name", choices=["fig1", "fig3", "fig5", "fig6"])
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except UsageError as exc:
        print(f"gdt: error: {exc}", file=sys.stderr)
        return 2
    except (OSError, csvio.FormatError) as exc:
        print(f"gdt: I/O error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:  # GDTError and plain precondition failures
        print(f"gdt: error: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
