"""
Command-line interface.

Subcommands:
    roundtrip   accuracy and timing of analysis followed by synthesis
    tiling      harmonic tiling of the kernels as CSV
    analyze     wavelet analysis of a harmonic map file into a directory
    synth       synthesis of a directory written by analyze
    denoise     hard-threshold denoising of a harmonic map file
    bench       full resolution against multiresolution timing sweep

Exit codes: 0 success, 2 validation error, 3 I/O or parse error.
"""

import argparse
import csv
import logging
import sys

from pathlib import Path
from typing import List, Optional

from .io.json import write_json
from .io.local import list_local_files
from .io.mapfile import HEADER_OFFSET, MAP_EXTENSION, read_map, write_map
from .harmonics.sht import HarmonicCoeffs
from .processing.denoise import NoiseModel, denoise_with_report, snr
from .utils.bench import DEFAULT_SEED, DEFAULT_TRIALS, run_bench, run_roundtrip
from .wavelets.family import DEFAULT_ALPHA, DEFAULT_J0, DEFAULT_N, WaveletParams, build_family, tiling
from .wavelets.transform import WaveletCoefficients, analyze, synthesize
from .exceptions import DimensionError, MapFileError, ParameterError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_IO = 3
SCALING_FILE = f"scaling{MAP_EXTENSION}"
STORED_KEYS = ("L", "alpha", "J0", "N", "s", "multires")


def _scale_file(j: int) -> str:
    return f"scale_{j}{MAP_EXTENSION}"


def _read_harmonic(filename: str) -> HarmonicCoeffs:
    content = read_map(filename)
    if content.kind != "harmonic":
        raise ParameterError(f"{filename} holds a '{content.kind}' map, expected 'harmonic'.")
    return content.data


def _check_flag(name: str, given, stored) -> None:
    if given is not None and given != stored:
        raise ParameterError(f"--{name}={given} conflicts with the file value {stored}.")


def _print_report(report) -> None:
    for entry in report.entries:
        mode = "multires" if entry.multires else "full"
        print(f"\tL={entry.L:<5d} {mode:<9s} trials={entry.trials:<3d} "
              f"mean error={entry.mean_error:.3e}  mean time={entry.mean_time:.3f} s")


def cmd_roundtrip(args) -> int:
    report = run_roundtrip(
        args.bandlimit, args.spin, args.nband, args.alpha, args.jmin,
        trials=args.trials, seed=args.seed, multires=args.multires, workers=args.workers
    )
    _print_report(report)
    if args.report:
        print(f"\t[ NEW ] Report: {write_json(args.report, report.to_dict())}")
    return EXIT_OK


def cmd_tiling(args) -> int:
    params = WaveletParams(L=args.bandlimit, alpha=args.alpha, J0=args.jmin)
    rows = tiling(build_family(params))
    header = ["ell", "scaling"] + [f"kappa_{j}" for j in params.scales] + ["sum"]

    if args.out:
        path = Path(args.out)
        path.parent.mkdir(parents=True, exist_ok=True)
        file = open(path, "w", newline="", encoding="utf-8")
    else:
        file = sys.stdout
    try:
        writer = csv.writer(file)
        writer.writerow(header)
        for row in rows:
            writer.writerow([int(row[0])] + [repr(float(x)) for x in row[1:]])
    finally:
        if args.out:
            file.close()
            print(f"\t[ NEW ] Tiling: {args.out}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    f = _read_harmonic(args.input)
    _check_flag("bandlimit", args.bandlimit, f.L)
    _check_flag("spin", args.spin, f.s)
    params = WaveletParams(L=f.L, alpha=args.alpha, J0=args.jmin, N=args.nband, s=f.s)
    family = build_family(params)
    w = analyze(f, family, multires=args.multires, workers=args.workers)

    extra = {**params.to_dict(), "multires": args.multires}
    out = Path(args.out)
    for j in params.scales:
        write_map(out / _scale_file(j), w.scale(j), extra={**extra, "scale": j})
    write_map(out / SCALING_FILE, w.scaling, extra={**extra, "scale": None})
    print(f"\t[ NEW ] {len(params.scales)} scales and scaling coefficients in {out}")
    return EXIT_OK


def cmd_synth(args) -> int:
    directory = Path(args.input)
    files = {Path(name).name for name in list_local_files(directory, MAP_EXTENSION)}
    if SCALING_FILE not in files:
        raise MapFileError(f"No {SCALING_FILE} in {directory}", offset=0)

    scaling = read_map(directory / SCALING_FILE)
    stored = scaling.extra
    missing = [key for key in STORED_KEYS if key not in stored]
    if missing:
        raise MapFileError(f"{SCALING_FILE} header misses keys {missing}", offset=HEADER_OFFSET)
    _check_flag("bandlimit", args.bandlimit, stored.get("L"))
    _check_flag("spin", args.spin, stored.get("s"))
    _check_flag("nband", args.nband, stored.get("N"))
    _check_flag("alpha", args.alpha, stored.get("alpha"))
    _check_flag("jmin", args.jmin, stored.get("J0"))
    _check_flag("multires", args.multires, stored.get("multires"))

    params = WaveletParams(L=stored["L"], alpha=stored["alpha"], J0=stored["J0"],
                           N=stored["N"], s=stored["s"])
    scales = []
    for j in params.scales:
        if _scale_file(j) not in files:
            raise MapFileError(f"Missing {_scale_file(j)} in {directory}", offset=0)
        content = read_map(directory / _scale_file(j))
        if content.kind != "rotation" or content.extra.get("scale") != j:
            raise ParameterError(f"{_scale_file(j)} does not hold scale {j}.")
        scales.append(content.data)

    w = WaveletCoefficients(params=params, scales=scales, scaling=scaling.data,
                            multires=bool(stored.get("multires", False)))
    f = synthesize(w, build_family(params), workers=args.workers)
    print(f"\t[ NEW ] Harmonics: {write_map(args.out, f, extra=params.to_dict())}")
    return EXIT_OK


def cmd_denoise(args) -> int:
    y = _read_harmonic(args.input)
    _check_flag("bandlimit", args.bandlimit, y.L)
    _check_flag("spin", args.spin, y.s)
    params = WaveletParams(L=y.L, alpha=args.alpha, J0=args.jmin, N=args.nband, s=y.s)
    family = build_family(params)
    result = denoise_with_report(y, family, NoiseModel(args.sigma),
                                 multires=args.multires, workers=args.workers)
    written = write_map(args.out, result.coeffs, extra={**params.to_dict(), "sigma": args.sigma})
    print(f"\t[ NEW ] Denoised harmonics: {written}")

    if args.report:
        report = {"params": {**params.to_dict(), "sigma": args.sigma, "multires": args.multires}}
        report.update(result.to_dict())
        if args.truth:
            x = _read_harmonic(args.truth)
            report["snr_in"] = snr(x, y)
            report["snr_out"] = snr(x, result.coeffs)
            print(f"\tSNR {report['snr_in']:.2f} dB -> {report['snr_out']:.2f} dB")
        print(f"\t[ NEW ] Report: {write_json(args.report, report)}")
    return EXIT_OK


def cmd_bench(args) -> int:
    report = run_bench(
        args.bandlimit, args.spin, args.nband, args.alpha, args.jmin,
        trials=args.trials, seed=args.seed, workers=args.workers
    )
    _print_report(report)
    if args.report:
        print(f"\t[ NEW ] Report: {write_json(args.report, report.to_dict())}")
    return EXIT_OK


def _add_wavelet_flags(parser, optional: bool = False) -> None:
    parser.add_argument("--alpha", type=float, default=None if optional else DEFAULT_ALPHA,
                        help="dilation parameter")
    parser.add_argument("--jmin", type=int, default=None if optional else DEFAULT_J0,
                        help="minimum wavelet scale J0")
    parser.add_argument("-N", "--nband", type=int, default=None if optional else DEFAULT_N,
                        help="azimuthal band-limit")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinwav",
        description="Directional spin scale-discretised wavelets on the sphere"
    )
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="increase log verbosity (-v info, -vv debug)")
    parser.add_argument("--workers", type=int, default=1,
                        help="threads over transform slices")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roundtrip", help="round-trip accuracy of analysis and synthesis")
    p.add_argument("-L", "--bandlimit", type=int, required=True)
    p.add_argument("-s", "--spin", type=int, default=0)
    _add_wavelet_flags(p)
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--multires", action=argparse.BooleanOptionalAction, default=False)
    p.add_argument("--report", help="JSON report path")
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("tiling", help="harmonic tiling CSV")
    p.add_argument("-L", "--bandlimit", type=int, required=True)
    p.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
    p.add_argument("--jmin", type=int, default=DEFAULT_J0)
    p.add_argument("--out", help="CSV path, stdout when omitted")
    p.set_defaults(func=cmd_tiling)

    p = sub.add_parser("analyze", help="wavelet analysis of a harmonic file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("-L", "--bandlimit", type=int)
    p.add_argument("-s", "--spin", type=int)
    _add_wavelet_flags(p)
    p.add_argument("--multires", action=argparse.BooleanOptionalAction, default=False)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("synth", help="synthesis from an analyze directory")
    p.add_argument("--in", dest="input", required=True, help="directory written by analyze")
    p.add_argument("--out", required=True)
    p.add_argument("-L", "--bandlimit", type=int)
    p.add_argument("-s", "--spin", type=int)
    _add_wavelet_flags(p, optional=True)
    p.add_argument("--multires", action=argparse.BooleanOptionalAction, default=None)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("denoise", help="hard-threshold denoising of a harmonic file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--sigma", type=float, required=True,
                   help="noise standard deviation per harmonic coefficient")
    p.add_argument("-L", "--bandlimit", type=int)
    p.add_argument("-s", "--spin", type=int)
    _add_wavelet_flags(p)
    p.add_argument("--multires", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--report", help="JSON report path")
    p.add_argument("--truth", help="clean harmonic file, adds SNRs to the report")
    p.set_defaults(func=cmd_denoise)

    p = sub.add_parser("bench", help="timing sweep over band-limits")
    p.add_argument("-L", "--bandlimit", type=int, nargs="+", required=True)
    p.add_argument("-s", "--spin", type=int, default=0)
    _add_wavelet_flags(p)
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--report", help="JSON report path")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = [logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose, 2)]
    logging.basicConfig(level=level, format="%(asctime)s %(name)s %(levelname)s %(message)s")
    logger.info("Running %s", args.command)

    try:
        return args.func(args)
    except (MapFileError, OSError) as e:
        print(f"\t[ ERROR ] {e}", file=sys.stderr)
        return EXIT_IO
    except (ParameterError, DimensionError, ValueError) as e:
        print(f"\t[ ERROR ] {e}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
