"""Command-line front end.

Subcommands
-----------
check        tightness residual of a frame (exit 1 if not tight)
coherence    frame-dependent coherence of a state
sweep        CSV data for coherence sweeps (polygon, composite, interpolate, surface)
interpolate  shorthand for ``sweep --family interpolate``
naimark      build a Naimark extension and verify the direct-sum identities

Exit status: 0 on success, 1 on a semantic failure (frame not tight,
identity violated), 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Sequence

from .catalog import builtin_frame, builtin_state
from .coherence import frame_coherence
from .errors import FrameCoherenceError
from .frames import verify_tight
from .naimark import naimark_extend, verify_extension
from .sweeps import FAMILIES, SweepSpec, run_sweep

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

SPEC_HELP = """\
frame specs:  canonical:D fourier:D polygon:N rotated:LAMBDA coherent:D
              triangle tetra ico split3 union:A+B[+C..] tensor:A*B  or a JSON file
state specs:  rho0 rho1 rho2 rho3 qutrit136 bell1..bell4 qubit:A,B,THETA
              diag:P1,P2,.. mixed:D  or a JSON file

examples:
  framecoh coherence --frame tetra --state qutrit136
  framecoh check --frame union:canonical:3+fourier:3
  framecoh sweep --family polygon --state rho0 --state rho1 --out fig1.csv
  framecoh sweep --family composite --state bell1 --state bell2 --n-max 30
  framecoh sweep --family surface --theta 1.0471975511965976 --out fig2.csv
  framecoh interpolate --frame canonical:3+fourier:3 --state qutrit136 --steps 101
  framecoh naimark --frame coherent:3 --state qutrit136
"""


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["text", "json"], default="text", help="output format")


def _add_sweep_args(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--state",
        action="append",
        dest="states",
        help="state spec; repeat for several columns (default: rho1, or qutrit136 for interpolate)",
    )
    p.add_argument("--frame", help="frame spec (surface) or pair A+B of bases (interpolate)")
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--n-max", type=int, default=None, help="default 50 (polygon) or 30 (composite)")
    p.add_argument("--steps", type=int, default=101, help="number of t values (interpolate)")
    p.add_argument("--grid", type=int, default=51, help="points per axis (surface)")
    p.add_argument("--theta", type=float, default=0.0, help="phase of the qubit state (surface)")
    p.add_argument("--jobs", type=int, default=1, help="evaluate sweep points in parallel")
    p.add_argument("--out", help="write CSV here instead of stdout")


def create_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="framecoh",
        description="Tight frames and frame-dependent l1 coherence of quantum states",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=SPEC_HELP,
    )
    parser.add_argument("--verbose", "-v", action="store_true", help="enable debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="verify that a frame is tight")
    p.add_argument("--frame", required=True)
    _add_format(p)

    p = sub.add_parser("coherence", help="coherence of a state in a frame")
    p.add_argument("--frame", required=True)
    p.add_argument("--state", required=True)
    _add_format(p)

    p = sub.add_parser("sweep", help="emit CSV sweep data")
    p.add_argument("--family", choices=FAMILIES, required=True)
    _add_sweep_args(p)

    p = sub.add_parser("interpolate", help="coherence along the frame path between two bases")
    _add_sweep_args(p)

    p = sub.add_parser("naimark", help="Naimark extension and identity check")
    p.add_argument("--frame", required=True)
    p.add_argument("--state", required=True)
    _add_format(p)
    return parser


def _emit(doc: dict, fmt: str, lines: Sequence[str]) -> None:
    if fmt == "json":
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


def cmd_check(args) -> int:
    f = builtin_frame(args.frame)
    rep = verify_tight(f)
    verdict = "tight" if rep.tight else "not tight"
    _emit(
        {"dim": f.dim, "n": f.n, "residual": rep.residual, "tolerance": rep.tolerance, "tight": rep.tight},
        args.format,
        [f"dim {f.dim}, n {f.n}", f"residual {rep.residual:.3e} (tolerance {rep.tolerance:.1e})", verdict],
    )
    return EXIT_OK if rep.tight else EXIT_FAIL


def cmd_coherence(args) -> int:
    rep = frame_coherence(builtin_frame(args.frame), builtin_state(args.state))
    _emit(rep.to_dict(), args.format, [f"{rep.value:.12f}"])
    return EXIT_OK


def cmd_sweep(args, family: str | None = None) -> int:
    family = family or args.family
    states = args.states or (["qutrit136"] if family == "interpolate" else ["rho1"])
    spec = SweepSpec(
        family=family,
        states=tuple(states),
        n_min=args.n_min,
        n_max=args.n_max,
        steps=args.steps,
        grid=args.grid,
        theta=args.theta,
        frame=args.frame,
        jobs=args.jobs,
    )
    text = run_sweep(spec).to_csv()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        logger.info("wrote %s", args.out)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_naimark(args) -> int:
    f = builtin_frame(args.frame)
    rho = builtin_state(args.state)
    ext = naimark_extend(f)
    rep = verify_extension(ext, rho)
    status = "ok" if rep.passed else f"FAILED: {rep.first_violation}"
    _emit(
        {
            "dim": f.dim,
            "n": f.n,
            "extension_dim": ext.basis.dim,
            "element_error": rep.element_error,
            "probability_error": rep.probability_error,
            "unitarity_error": rep.unitarity_error,
            "coherence_frame": rep.frame_value,
            "coherence_extension": rep.extension_value,
            "passed": rep.passed,
        },
        args.format,
        [
            f"extension dimension {ext.basis.dim} (frame: d={f.dim}, n={f.n})",
            f"max element error {rep.element_error:.3e}",
            f"max probability error {rep.probability_error:.3e}",
            f"unitarity error {rep.unitarity_error:.3e}",
            f"coherence (frame)     {rep.frame_value:.12f}",
            f"coherence (extension) {rep.extension_value:.12f}",
            status,
        ],
    )
    return EXIT_OK if rep.passed else EXIT_FAIL


def main(argv: Sequence[str] | None = None) -> int:
    parser = create_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    handlers = {
        "check": cmd_check,
        "coherence": cmd_coherence,
        "sweep": cmd_sweep,
        "interpolate": lambda a: cmd_sweep(a, family="interpolate"),
        "naimark": cmd_naimark,
    }
    try:
        return handlers[args.command](args)
    except FrameCoherenceError as exc:
        print(f"framecoh: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"framecoh: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
