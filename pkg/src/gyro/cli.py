"""Command-line frontend.

Every subcommand prints one JSON document on stdout; diagnostics go to
stderr.  Exit codes: 0 success / all checks pass, 1 a check or
classification failed, 2 invalid input.
"""
from __future__ import annotations

import argparse
import json
import re
import sys

import numpy as np

from . import axioms, ball, disc, finite, numeric
from .numeric import FLOAT, RATIONAL, Tolerance

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2


class InputError(Exception):
    pass


# --- debug realizations -------------------------------------------------


def _clip(coords, s2, backend):
    """Pull a vector of norm >= s back inside the ball: w -> w * 0.999 s^2 / |w|^2."""
    n2 = numeric.norm_sq(coords)
    shrink = numeric.to_scalar("999/1000", backend) * s2
    if any(numeric.is_batch(c) for c in coords):
        factor = np.where(n2 >= s2, shrink / np.where(n2 == 0, 1.0, n2), 1.0)
    else:
        factor = shrink / n2 if n2 >= s2 else 1
    return tuple(c * factor for c in coords)


class ClippedBallRealization(axioms.BallRealization):
    """Ball whose operation is plain vector addition, clipped to the ball."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.name = "broken-" + self.name

    def op(self, a, b):
        coords = tuple(x + y for x, y in zip(a.coords, b.coords))
        return ball.BallPoint(_clip(coords, self.params.s_sq, self.backend), self.params)


class ClippedDiscRealization(axioms.DiscRealization):
    """Disc whose operation is plain complex addition, clipped to the disc."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.name = "broken-" + self.name

    def op(self, a, b):
        return disc.DiscPoint(*_clip((a.re + b.re, a.im + b.im), 1, self.backend))


# --- operand parsing and rendering --------------------------------------


def parse_coords(text: str, backend: str) -> tuple:
    parts = [p.strip() for p in text.split(",")]
    if not parts or any(not p for p in parts):
        raise InputError(f"malformed operand {text!r}")
    try:
        return tuple(numeric.to_scalar(p, backend) for p in parts)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"malformed operand {text!r}: {exc}") from None


def _disc_operand(text, backend):
    coords = parse_coords(text, backend)
    if len(coords) != 2:
        raise InputError(f"disc operand {text!r} must be re,im")
    try:
        return disc.DiscPoint(*coords)
    except ValueError as exc:
        raise InputError(f"operand {text!r} outside the open unit disc: {exc}") from None


def _ball_operand(text, params, ambient=False):
    coords = parse_coords(text, params.backend)
    if len(coords) != params.dim:
        raise InputError(f"operand {text!r} has {len(coords)} coordinates, expected dim={params.dim}")
    if ambient:
        return ball.AmbientVector(coords, params)
    try:
        return ball.BallPoint(coords, params)
    except ValueError as exc:
        raise InputError(f"operand {text!r} outside the open ball: {exc}") from None


def render(values, backend) -> dict:
    out = {"decimal": [numeric.format_decimal(v) for v in values]}
    if backend == RATIONAL:
        out["exact"] = [numeric.format_scalar(v) for v in values]
    return out


# --- commands -----------------------------------------------------------


def _params(args) -> ball.BallParams:
    try:
        return ball.BallParams(args.dim, args.s, args.backend)
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from None


def _tolerance(args) -> Tolerance:
    try:
        return Tolerance(args.atol, args.rtol)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _echo(args, **extra) -> dict:
    echo = {"name": args.command}
    if hasattr(args, "mode"):
        echo["mode"] = args.mode
    for key in ("backend", "dim", "s", "seed", "samples", "atol", "rtol", "break_op"):
        if hasattr(args, key):
            echo[key] = getattr(args, key)
    operands = [getattr(args, k) for k in ("a", "b", "w", "u", "v", "path") if hasattr(args, k)]
    if operands:
        echo["operands"] = [x.strip() for x in operands]
    if getattr(args, "radii", None):
        echo["radii"] = list(args.radii)
    echo.update(extra)
    return echo


def cmd_add(args) -> tuple[dict, int]:
    if args.mode == "disc":
        a, b = (_disc_operand(x, args.backend) for x in (args.a, args.b))
        out = disc.mobius_add(a, b).components()
    else:
        params = _params(args)
        a, b = (_ball_operand(x, params) for x in (args.a, args.b))
        out = ball.ball_add(a, b).coords
    return {"result": render(out, args.backend)}, EXIT_OK


def cmd_gyr(args) -> tuple[dict, int]:
    if args.mode == "disc":
        a, b, w = (_disc_operand(x, args.backend) for x in (args.a, args.b, args.w))
        g = disc.gyration(a, b)
        results = {
            "result": render(disc.apply_gyration(g, w).components(), args.backend),
            "gyration": render(g.components(), args.backend),
        }
    else:
        params = _params(args)
        a, b = (_ball_operand(x, params) for x in (args.a, args.b))
        w = _ball_operand(args.w, params, ambient=True)
        k = ball.gyration_coeffs(a, b, w)
        results = {
            "result": render(ball.gyrate(a, b, w).coords, args.backend),
            "coefficients": {
                name: render([val], args.backend) for name, val in (("A", k.A), ("B", k.B), ("D", k.D))
            },
        }
    return results, EXIT_OK


def make_realization(args) -> axioms.Realization:
    if args.mode == "disc":
        cls = ClippedDiscRealization if args.break_op else axioms.DiscRealization
        return cls(args.backend)
    params = _params(args)
    cls = ClippedBallRealization if args.break_op else axioms.BallRealization
    return cls(params.dim, params.s, params.backend)


def cmd_suite(args) -> tuple[dict, int]:
    if args.samples < 1:
        raise InputError("--samples must be at least 1")
    r = make_realization(args)
    report = axioms.run_suite(r, seed=args.seed, samples=args.samples, tol=_tolerance(args))
    return {"report": report.to_dict()}, EXIT_OK if report.passed else EXIT_FAIL


def cmd_table(args) -> tuple[dict, int]:
    try:
        with open(args.path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {args.path}: {exc}") from None
    try:
        t = finite.parse_table(text)
        c = finite.classify(t)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return {"classification": c.to_dict()}, EXIT_OK if c.is_gyrogroup else EXIT_FAIL


def cmd_limit_scan(args) -> tuple[dict, int]:
    u = parse_coords(args.u, FLOAT)
    v = parse_coords(args.v, FLOAT)
    if len(u) != len(v):
        raise InputError("u and v must have the same dimension")
    radii = [float(x) for x in args.radii] if args.radii else ball.default_radii()
    if not radii or min(radii) <= 0:
        raise InputError("radii must be positive")
    smin = min(radii)
    for name, x in (("u", u), ("v", v)):
        if numeric.norm_sq(x) >= smin * smin:
            raise InputError(f"operand {name} lies outside the smallest ball s = {smin}")
    rows = ball.limit_scan(u, v, radii)
    table = [
        {
            "s": numeric.format_decimal(row["s"]),
            "error": numeric.format_decimal(row["error"]),
            "ratio": None if row["ratio"] is None else numeric.format_decimal(row["ratio"]),
        }
        for row in rows
    ]
    return {"scan": table}, EXIT_OK


COMMANDS = {
    "add": cmd_add,
    "gyr": cmd_gyr,
    "suite": cmd_suite,
    "table": cmd_table,
    "limit-scan": cmd_limit_scan,
}


# --- argument parsing ---------------------------------------------------


def _carrier_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--disc", dest="mode", action="store_const", const="disc")
    mode.add_argument("--ball", dest="mode", action="store_const", const="ball")
    p.set_defaults(mode="disc")
    p.add_argument("--backend", choices=numeric.BACKENDS, default=FLOAT)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--s", default="1", help="ball radius (decimal or p/q)")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gyro", description="Möbius gyrogroup toolkit")
    sub = parser.add_subparsers(dest="command", required=True)
    carrier = _carrier_parent()

    p = sub.add_parser("add", parents=[carrier], help="Möbius addition a (+) b")
    p.add_argument("a")
    p.add_argument("b")

    p = sub.add_parser("gyr", parents=[carrier], help="gyration gyr[a,b]w")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("w")

    p = sub.add_parser("suite", parents=[carrier], help="run the gyrogroup axiom suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--atol", type=float, default=numeric.DEFAULT_TOLERANCE.atol)
    p.add_argument("--rtol", type=float, default=numeric.DEFAULT_TOLERANCE.rtol)
    p.add_argument("--break-op", action="store_true", help="debug: replace the operation by clipped vector addition")

    p = sub.add_parser("table", help="classify a Cayley table file")
    p.add_argument("path")

    p = sub.add_parser("limit-scan", help="distance between u (+)_s v and u + v as s grows")
    p.add_argument("u")
    p.add_argument("v")
    p.add_argument("--radii", nargs="+", help="radii to scan (default 10*2^k, k=0..10)")

    for p in sub.choices.values():
        p.add_argument("-o", "--output", help="write the JSON report here instead of stdout")
    return parser


_NEGATIVE_OPERAND = re.compile(r"^-\.?\d")


def _protect_negative_operands(argv):
    # argparse would read "-0.5,0" as an option; a leading space hides the dash
    return [" " + a if _NEGATIVE_OPERAND.match(a) else a for a in argv]


def run(argv=None) -> tuple[dict | None, int, str | None]:
    """Parse ``argv`` and execute; returns ``(document, exit_code, output_path)``."""
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_protect_negative_operands(argv))
    try:
        results, code = COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return None, EXIT_INPUT, None
    doc = {"schema_version": SCHEMA_VERSION, "command": _echo(args)}
    doc.update(results)
    return doc, code, args.output


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def main(argv=None) -> int:
    doc, code, out = run(argv)
    if doc is not None:
        text = dumps(doc)
        if out:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
