"""Command line entry point: boundary curves, verification suites and witnesses.

Exit codes: 0 ok, 1 verification failure, 2 usage or domain error, 3 I/O error.
"""

import argparse
import json
import sys
from typing import Any, Optional

from config_manager import GRID_PROFILES, get_profile_grid, load_config
from curve_io import FORMATS, atomic_write, render_curve
from geom_kernel import GeometryError
from region_builder import RegionFamily, RegionSpec, boundary_curve
from theorem_solvers import lv_witness, lw_witness
from verification_suite import SUITE_NAMES, run_suite

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_IO = 3


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help="Seed for sampled checks.")
    common.add_argument("--grid", type=int, help="Boundary sample count.")
    common.add_argument("--tol", type=float, help="Witness/residual tolerance.")
    common.add_argument("--out", type=str, help="Output path (default: stdout).")
    common.add_argument("--config", type=str, help="Path to a config.json.")
    common.add_argument("--profile", choices=sorted(GRID_PROFILES), help="Grid preset.")
    common.add_argument(
        "--no-timing",
        action="store_true",
        help="Write runtime_ms as 0 so reports are byte-identical between runs.",
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="cli_verify",
        description="Variability regions of close-to-convex functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    boundary = sub.add_parser("boundary", parents=[common], help="Emit a boundary.")
    boundary.add_argument("family", choices=[f.value for f in RegionFamily])
    boundary.add_argument("r", type=float)
    boundary.add_argument("-n", type=int, default=None, help="Number of samples.")
    boundary.add_argument("--format", choices=FORMATS, default="csv", dest="fmt")

    verify = sub.add_parser("verify", parents=[common], help="Run a check suite.")
    verify.add_argument("suite", nargs="?", choices=SUITE_NAMES, default="all")

    witness = sub.add_parser("witness", parents=[common], help="Solve a witness.")
    witness.add_argument("kind", choices=("lw", "lv"))
    witness.add_argument("re", type=float)
    witness.add_argument("im", type=float)
    return parser


def _apply_flags(config: dict[str, Any], args: argparse.Namespace) -> dict[str, Any]:
    if args.seed is not None:
        config["seed"] = int(args.seed)
    if args.profile is not None:
        config["profile"] = args.profile
    if args.grid is not None:
        config["boundary"]["samples"] = int(args.grid)
        config["boundary"]["pinned"] = True
    if args.tol is not None:
        config["solvers"]["witness_tol"] = float(args.tol)
        config["tolerances"]["residual"] = float(args.tol)
    if args.no_timing:
        config["verify"]["include_timing"] = False
    return config


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        atomic_write(out, text)
        print(f"[cli] wrote {out}", file=sys.stderr)
    else:
        sys.stdout.write(text)


def cmd_boundary(args: argparse.Namespace, config: dict[str, Any]) -> int:
    spec = RegionSpec(RegionFamily(args.family), args.r)
    n = args.n
    if n is None:
        n = int(get_profile_grid(config)["boundary_samples"])
    curve = boundary_curve(spec, n)
    if curve.approximate:
        print(
            f"[cli] {spec.family.value} boundary is approximate (exp of the LV curve)",
            file=sys.stderr,
        )
    _emit(render_curve(curve, spec.family, spec.r, args.fmt), args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, config: dict[str, Any]) -> int:
    report = run_suite(args.suite, config)
    _emit(report.to_json(), args.out)
    counts = report.counts()
    print(
        f"[cli] {args.suite}: {counts['PASS']} pass, {counts['FAIL']} fail, "
        f"{counts['SKIP']} skip",
        file=sys.stderr,
    )
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_witness(args: argparse.Namespace, config: dict[str, Any]) -> int:
    target = complex(args.re, args.im)
    tol = float(config["solvers"]["witness_tol"])
    if args.kind == "lw":
        payload = lw_witness(target, tol).to_dict()
    else:
        payload = lv_witness(target, tol).to_dict()
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return EXIT_OK


COMMANDS = {
    "boundary": cmd_boundary,
    "verify": cmd_verify,
    "witness": cmd_witness,
}


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    config = _apply_flags(load_config(args.config), args)
    try:
        return COMMANDS[args.command](args, config)
    except GeometryError as exc:
        print(f"[cli] error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"[cli] I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
