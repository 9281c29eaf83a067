"""Command-line front end.

One verb per procedure: ``solve`` a zero-height section, sweep a ``family``,
search an ``immersed`` branch, ``verify`` the flux balance, export a swept
``mesh``, or list and run ``presets``. Every invocation writes into a run
directory under ``--out-dir`` (or $CMCYL_OUT_DIR) and prints its headline
numbers; exit codes are 0 on success, 1 for solver failures, 2 for bad
configuration and 3 for bracket or precondition violations.
"""
from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from .errors import CmcylError
from .export import _ALL_FORMATS, _execute, available_presets, run_experiment

_AXES = ("sol-base", "sol-diag-plus", "sol-diag-minus", "ekt")


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out-dir", default=None,
                        help="root for run directories (default: $CMCYL_OUT_DIR "
                             "or ./cmcyl-out)")
    common.add_argument("--format", choices=("csv", "svg", "obj", "all"),
                        default="all", help="restrict the emitted artifacts")
    common.add_argument("--tol-rel", type=float, default=0.0,
                        help="relative slack for verification gates")
    common.add_argument("--tol-abs", type=float, default=None,
                        help="absolute solver/verification tolerance")

    parser = argparse.ArgumentParser(
        prog="cmcyl",
        description="translation-invariant constant mean curvature cylinders: "
                    "solve, sweep, verify and export")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("solve", parents=[common],
                       help="tune the launch height of a zero-height section")
    p.add_argument("--axis", choices=_AXES, default="sol-base")
    p.add_argument("--kappa", type=float, default=-1.0)
    p.add_argument("--tau", type=float, default=0.0)
    p.add_argument("--H", type=float, required=True)
    p.add_argument("--bracket", type=float, nargs=2, metavar=("LO", "HI"))

    p = sub.add_parser("family", parents=[common],
                       help="sweep the embedded family over several H values")
    p.add_argument("--axis", choices=_AXES, default="sol-base")
    p.add_argument("--kappa", type=float, default=-1.0)
    p.add_argument("--tau", type=float, default=0.0)
    p.add_argument("--H", type=float, action="append", required=True,
                   help="repeat once per family member")

    p = sub.add_parser("immersed", parents=[common],
                       help="shoot for an immersed section with a given "
                            "turning number")
    p.add_argument("--H", type=float, required=True)
    p.add_argument("--turn", type=int, required=True)
    p.add_argument("--aim", choices=("YAxis", "DiagMinus"), default="YAxis")
    p.add_argument("--bracket", type=float, nargs=2, metavar=("LO", "HI"),
                   required=True)
    p.add_argument("--max-arc-length", type=float, default=80.0)

    p = sub.add_parser("verify", parents=[common],
                       help="balance the weight formula on integrated sections")
    p.add_argument("--kappa", type=float, action="append")
    p.add_argument("--tau", type=float, action="append")
    p.add_argument("--H", type=float, action="append")

    p = sub.add_parser("mesh", parents=[common],
                       help="solve a section and export the swept tube")
    p.add_argument("--axis", choices=_AXES, default="sol-base")
    p.add_argument("--kappa", type=float, default=-1.0)
    p.add_argument("--tau", type=float, default=0.0)
    p.add_argument("--H", type=float, required=True)
    p.add_argument("--s-min", type=float, default=-2.0)
    p.add_argument("--s-max", type=float, default=2.0)
    p.add_argument("--rings", type=int, default=17)
    p.add_argument("--samples", type=int, default=600)

    p = sub.add_parser("presets", parents=[common],
                       help="list the shipped presets, or run one by name "
                            "(a TOML config path works too)")
    p.add_argument("name", nargs="?", default=None)

    return parser


def _formats(args) -> frozenset:
    return _ALL_FORMATS if args.format == "all" else frozenset({args.format})


def _with_model(cfg: dict, args) -> dict:
    cfg["axis"] = args.axis
    if args.axis == "ekt":
        cfg["kappa"] = args.kappa
        cfg["tau"] = args.tau
    return cfg


def _report(run_dir, results: dict) -> int:
    print(f"run-dir = {run_dir}")
    for key, value in results.items():
        print(f"{key} = {value}")
    return 0


def _dispatch(args) -> int:
    if args.verb == "solve":
        cfg = _with_model({"pipeline": "solve", "H": args.H}, args)
        if args.bracket:
            cfg["bracket"] = list(args.bracket)
        if args.tol_abs is not None:
            cfg["residual_tol"] = args.tol_abs
        name = f"solve-{args.axis}-H{args.H:g}"
        return _report(*_execute(name, cfg, args.out_dir, _formats(args)))

    if args.verb == "family":
        cfg = _with_model({"pipeline": "sweep-family", "H": list(args.H)}, args)
        name = f"family-{args.axis}"
        return _report(*_execute(name, cfg, args.out_dir, _formats(args)))

    if args.verb == "immersed":
        cfg = {"pipeline": "immersed-search", "H": args.H, "turn": args.turn,
               "aim": args.aim, "bracket": list(args.bracket),
               "max_arc_length": args.max_arc_length}
        if args.tol_abs is not None:
            cfg["defect_tol"] = args.tol_abs
        name = f"immersed-turn{args.turn}-H{args.H:g}"
        return _report(*_execute(name, cfg, args.out_dir, _formats(args)))

    if args.verb == "verify":
        cfg = {"pipeline": "verify-flux",
               "kappa": args.kappa or [-1.0],
               "tau": args.tau or [0.0],
               "H": args.H or [1.0],
               "tol_rel": args.tol_rel}
        if args.tol_abs is not None:
            cfg["tol_abs"] = args.tol_abs
        return _report(*_execute("verify-flux", cfg, args.out_dir,
                                 _formats(args)))

    if args.verb == "mesh":
        cfg = _with_model({"pipeline": "export-mesh", "H": args.H,
                           "s_range": [args.s_min, args.s_max],
                           "rings": args.rings, "samples": args.samples}, args)
        name = f"mesh-{args.axis}-H{args.H:g}"
        return _report(*_execute(name, cfg, args.out_dir, _formats(args)))

    # presets
    if args.name is None:
        for name in available_presets():
            print(name)
        return 0
    run_dir = run_experiment(args.name, out_root=args.out_dir)
    print(f"run-dir = {run_dir}")
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return 0
        return code if isinstance(code, int) else 2
    try:
        return _dispatch(args)
    except CmcylError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return getattr(exc, "exit_code", 1)


if __name__ == "__main__":
    sys.exit(main())
