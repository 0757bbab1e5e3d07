import argparse
import os
import sys
from typing import List, Optional

from analysis import SweepAxis, SweepSpec, run_sweep, evaluate_point
from cli.export import CSV, JSON, FORMATS, DETECTORS, detection_lines, metadata_lines, write_csv, write_json, \
    write_gnuplot, write_point
from cli.presets import get_preset
from cli.selftest import results_table, run_selftest
from models import ModelParams
from utils import ALLOWED_AXES, ALLOWED_QUANTITIES, EXIT_OK, EXIT_RUNTIME_ERROR, EXIT_USAGE_ERROR, VERSION, \
    DetectorInputError, DomainError, SweepEvaluationError, SweepSpecError, default_threads, load_flat_config

COMMANDS_WITH_CONFIG = ("point", "sweep")


class UsageError(Exception):
    """Raised for invalid command-line input detected after parsing."""


def log(message: str, quiet: bool = False):
    if not quiet:
        print(message, file=sys.stderr)


def split_list(value: Optional[str], allowed: List[str], what: str) -> List[str]:
    if value is None or value == "":
        return []
    items = [item.strip() for item in str(value).split(",") if item.strip()]
    unknown = [item for item in items if item not in allowed]
    if unknown:
        raise UsageError(f"{what}: '{', '.join(unknown)}' not supported. Try one of {', '.join(allowed)}.")
    return items


def model_params(args) -> ModelParams:
    if args.j is not None:
        return ModelParams(jx=args.j, jy=args.j, jz=args.j, b=args.b, kT=args.kt)
    return ModelParams(jx=args.jx, jy=args.jy, jz=args.jz, b=args.b, kT=args.kt)


def sweep_spec(args) -> SweepSpec:
    if args.axis is None or args.start is None or args.stop is None:
        raise UsageError("sweep needs --axis, --from and --to.")

    axis1 = SweepAxis(name=args.axis, start=args.start, stop=args.stop, count=args.points)
    axis2 = None
    if args.axis2 is not None:
        if args.from2 is None or args.to2 is None:
            raise UsageError("a second axis needs --from2 and --to2.")
        axis2 = SweepAxis(name=args.axis2, start=args.from2, stop=args.to2, count=args.points2)

    quantities = split_list(args.quantities, ALLOWED_QUANTITIES, "quantities") or list(ALLOWED_QUANTITIES)
    return SweepSpec(base=model_params(args), axis1=axis1, axis2=axis2, quantities=tuple(quantities))


def cmd_point(args) -> int:
    params = model_params(args)
    report = evaluate_point(params)

    if args.out is None:
        write_point(params, report, sys.stdout, args.format)
    else:
        with open(args.out, "w", encoding="utf-8") as f:
            write_point(params, report, f, args.format)
        log(f"Wrote point to {args.out}", args.quiet)
    return EXIT_OK


def cmd_sweep(args) -> int:
    spec = sweep_spec(args)
    detectors = split_list(args.detect, DETECTORS, "detect")

    log(f"Sweeping {' x '.join(spec.axis_names)} over {len(spec.grid())} points with {args.threads} threads...",
        args.quiet)
    result = run_sweep(spec, threads=args.threads, progress=not args.quiet)
    summary = detection_lines(result, detectors) if detectors else None

    stream = sys.stdout if args.out is None else open(args.out, "w", encoding="utf-8")
    try:
        if args.format == JSON:
            write_json(result, stream, summary)
        else:
            write_csv(result, stream, metadata_lines(spec), summary)
    finally:
        if stream is not sys.stdout:
            stream.close()

    log("Sweep COMPLETED!" if args.out is None else f"Sweep COMPLETED! Results written to {args.out}", args.quiet)
    return EXIT_OK


def cmd_figure(args) -> int:
    log(f"Loading preset: {args.name}", args.quiet)
    preset = get_preset(args.name)
    detectors = split_list(args.detect, DETECTORS, "detect")
    os.makedirs(args.out_dir, exist_ok=True)

    for curve in preset.curves:
        result = run_sweep(curve.spec, threads=args.threads, progress=not args.quiet,
                           desc=f"{preset.name} {curve.label}")
        summary = detection_lines(result, detectors) if detectors else None

        with open(os.path.join(args.out_dir, curve.file_name(preset.name)), "w", encoding="utf-8") as f:
            write_csv(result, f, metadata_lines(curve.spec, curve.label), summary)

    log(f"Wrote {len(preset.curves)} files to {args.out_dir}", args.quiet)
    if args.gnuplot:
        log(f"Wrote gnuplot script {write_gnuplot(preset, args.out_dir)}", args.quiet)

    log(f"Figure {preset.name} COMPLETED!", args.quiet)
    return EXIT_OK


def cmd_selftest(args) -> int:
    results = run_selftest(seed=args.seed, progress=not args.quiet)
    print(results_table(results))

    failed = [r for r in results if not r.passed]
    log(f"{len(results) - len(failed)}/{len(results)} checks passed", args.quiet)
    return EXIT_OK if not failed else EXIT_RUNTIME_ERROR


def add_model_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("--jx", type=float, default=0.0)
    parser.add_argument("--jy", type=float, default=0.0)
    parser.add_argument("--jz", type=float, default=0.0)
    parser.add_argument("--j", type=float, default=None, help="Sets jx = jy = jz")
    parser.add_argument("--b", type=float, default=0.0, help="Magnetic field along z")
    parser.add_argument("--kt", type=float, default=1.0, help="Temperature kT, strictly positive")


def add_run_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("--threads", type=int, default=default_threads())
    parser.add_argument("--quiet", action="store_true", help="Disable progress bars and status messages")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="thermal_discord",
                                     description="Thermal quantum discord and entanglement of the two-qubit "
                                                 "XYZ Heisenberg chain")
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    point = subparsers.add_parser("point", help="Evaluate every correlation measure at one parameter set")
    add_model_arguments(point)
    point.add_argument("--format", type=str, choices=FORMATS, default=JSON)
    point.add_argument("--out", type=str, default=None)
    point.add_argument("--quiet", action="store_true")
    point.add_argument("--config", type=str, default=None, help="Flat YAML file whose keys mirror the flags")

    sweep = subparsers.add_parser("sweep", help="Evaluate a one- or two-axis parameter sweep")
    add_model_arguments(sweep)
    sweep.add_argument("--axis", type=str, choices=ALLOWED_AXES, default=None)
    sweep.add_argument("--from", dest="start", type=float, default=None)
    sweep.add_argument("--to", dest="stop", type=float, default=None)
    sweep.add_argument("--points", type=int, default=50)
    sweep.add_argument("--axis2", type=str, choices=ALLOWED_AXES, default=None)
    sweep.add_argument("--from2", type=float, default=None)
    sweep.add_argument("--to2", type=float, default=None)
    sweep.add_argument("--points2", type=int, default=50)
    sweep.add_argument("--quantities", type=str, default=None,
                       help=f"Comma-separated subset of {', '.join(ALLOWED_QUANTITIES)}")
    sweep.add_argument("--detect", type=str, default=None, help=f"Comma-separated subset of {', '.join(DETECTORS)}")
    sweep.add_argument("--format", type=str, choices=FORMATS, default=CSV)
    sweep.add_argument("--out", type=str, default=None)
    sweep.add_argument("--config", type=str, default=None, help="Flat YAML file whose keys mirror the flags")
    add_run_arguments(sweep)

    figure = subparsers.add_parser("figure", help="Reproduce a figure preset, one CSV per curve")
    figure.add_argument("name", type=str)
    figure.add_argument("--out-dir", type=str, default=os.path.join(os.getcwd(), "figures"))
    figure.add_argument("--gnuplot", action="store_true", help="Also write a gnuplot script")
    figure.add_argument("--detect", type=str, default=None, help=f"Comma-separated subset of {', '.join(DETECTORS)}")
    add_run_arguments(figure)

    selftest = subparsers.add_parser("selftest", help="Run the oracle-agreement and invariant checks")
    selftest.add_argument("--seed", type=int, default=0)
    selftest.add_argument("--quiet", action="store_true")

    parser.set_defaults(subparsers=subparsers.choices)
    return parser


def flag_destinations(parser: argparse.ArgumentParser) -> dict:
    """Long flag name (without dashes, dashes as underscores) -> argparse destination."""
    destinations = {}
    for action in parser._actions:
        for option in action.option_strings:
            if option.startswith("--"):
                destinations[option[2:].replace("-", "_")] = action.dest
    return destinations


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """
    Parse the command line, using the values of --config as defaults that explicit flags override.
    """
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command in COMMANDS_WITH_CONFIG and args.config is not None:
        subparser = args.subparsers[args.command]
        destinations = flag_destinations(subparser)

        config = load_flat_config(args.config)
        unknown = [key for key in config if key not in destinations or key == "config"]
        if unknown:
            raise UsageError(f"config file: unknown key(s) {', '.join(unknown)}.")

        subparser.set_defaults(**{destinations[key]: value for key, value in config.items()})
        args = parser.parse_args(argv)

    return args


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE_ERROR
    except (UsageError, SweepSpecError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE_ERROR

    commands = {"point": cmd_point, "sweep": cmd_sweep, "figure": cmd_figure, "selftest": cmd_selftest}
    try:
        return commands[args.command](args)
    except (UsageError, SweepSpecError, DomainError, DetectorInputError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE_ERROR
    except SweepEvaluationError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_RUNTIME_ERROR
    except (RuntimeError, ValueError, ArithmeticError) as e:
        print(f"Error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_RUNTIME_ERROR


if __name__ == "__main__":
    sys.exit(main())
