"""Command-line front end.

Subcommands: eval (sample a curve to CSV or SVG), factor (inspect per-axis
factorizations), bench (timing/accuracy report), gen (seeded instances),
elevate (degree elevation). The environment variable HANKEL_BEZIER_SEED
provides the default seed when --seed is absent.

Exit codes: 0 success, 1 error, 2 success degraded by a Casteljau fallback.
"""

import argparse
import json
import os
import re
import sys
from pathlib import Path

import numpy as np

from .backend import BACKEND
from .bench import (
    BenchmarkConfig,
    GenerationExhausted,
    compare_backends,
    emit_report,
    format_backend_table,
    generate_conditioned_instance,
    generate_control_points,
    run_benchmark,
)
from .bezier import (
    METHODS,
    ControlPolygon,
    EvenControlCount,
    degree_elevate,
    evaluate_curve,
    factorize_coordinates,
    uniform_grid,
)
from .hankel import FactorizationConfig, FactorizationError, RetriesExhausted

SEED_ENV = "HANKEL_BEZIER_SEED"


class ParseError(ValueError):
    """Input file or inline data could not be parsed."""

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line


class DimensionMismatch(ParseError):
    """A point row carried a different coordinate count than the first row."""


def parse_polygon_file(path):
    """Read the polygon text format: one point per line, whitespace-separated
    decimal coordinates, '#' comments and blank lines ignored."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(str(exc)) from None
    rows = []
    dim = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            values = [float(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(f"{path}: line {lineno}: not a number", line=lineno) from None
        if dim is None:
            dim = len(values)
        elif len(values) != dim:
            raise DimensionMismatch(
                f"{path}: line {lineno}: got {len(values)} coordinates, expected {dim}",
                line=lineno,
            )
        rows.append(values)
    if len(rows) < 2:
        raise ParseError(f"{path}: need at least two control points")
    return ControlPolygon(np.array(rows))


def polygon_to_text(poly, header=""):
    """Polygon text format writer (shortest round-trip decimals)."""
    lines = []
    if header:
        lines.append(f"# {header}")
    for row in poly.points:
        lines.append(" ".join(repr(float(v)) for v in row))
    return "\n".join(lines) + "\n"


def samples_to_csv(samples):
    """CSV rows s,x1,...,xd with shortest round-trip decimals."""
    d = samples.points.shape[1]
    lines = ["s," + ",".join(f"x{j + 1}" for j in range(d))]
    for s, point in zip(samples.svalues, samples.points):
        lines.append(",".join(repr(float(v)) for v in (s, *point)))
    return "\n".join(lines) + "\n"


def render_svg(samples, poly, width=640):
    """Static SVG: sampled curve polyline plus dashed control polygon.

    The viewBox is the padded control bounding box; the y axis is flipped so
    larger coordinates point up. One-dimensional curves are plotted as
    (s, value).
    """
    if poly.dim == 1:
        curve = np.column_stack([samples.svalues, samples.points[:, 0]])
        ctrl = np.column_stack([np.linspace(0.0, 1.0, poly.count), poly.points[:, 0]])
    else:
        curve = samples.points[:, :2]
        ctrl = poly.points[:, :2]
    lo = ctrl.min(axis=0)
    hi = ctrl.max(axis=0)
    span = np.maximum(hi - lo, 1e-9)
    pad = 0.05 * span
    lo, hi = lo - pad, hi + pad
    span = hi - lo

    def fmt(pts):
        flipped_y = hi[1] + lo[1] - pts[:, 1]
        return " ".join(f"{x:.6g},{y:.6g}" for x, y in zip(pts[:, 0], flipped_y))

    stroke = float(span.max()) / 200.0
    height = int(round(width * span[1] / span[0]))
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="{lo[0]:.6g} {lo[1]:.6g} {span[0]:.6g} {span[1]:.6g}">\n'
        f'  <polyline points="{fmt(ctrl)}" fill="none" stroke="#888" '
        f'stroke-width="{stroke:.6g}" stroke-dasharray="{2 * stroke:.6g} {2 * stroke:.6g}"/>\n'
        f'  <polyline points="{fmt(curve)}" fill="none" stroke="#d22" '
        f'stroke-width="{stroke:.6g}"/>\n'
        "</svg>\n"
    )


def _resolve_seed(args):
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ParseError(f"{SEED_ENV}={env!r} is not an integer") from None
    return 0


def _write_output(text, path):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _parse_values(spec):
    tokens = [tok for tok in re.split(r"[,\s]+", spec.strip()) if tok]
    if not tokens:
        raise ParseError("no values given")
    try:
        return np.array([float(tok) for tok in tokens])
    except ValueError:
        raise ParseError(f"could not parse values {spec!r}") from None


def _cmd_eval(args):
    poly = parse_polygon_file(args.input)
    cfg = FactorizationConfig(rng_seed=_resolve_seed(args))
    if poly.count % 2 == 0 and args.method in ("hankel", "hankel-precond"):
        print("note: even control count, degree-elevating once", file=sys.stderr)
    samples = evaluate_curve(
        poly, uniform_grid(args.grid), args.method, cfg, precondition=args.precondition
    )
    if samples.fallback:
        print(
            f"warning: {args.method} fell back to casteljau ({samples.fallback_cause})",
            file=sys.stderr,
        )
    text = render_svg(samples, poly) if args.svg else samples_to_csv(samples)
    _write_output(text, args.output)
    return 2 if samples.fallback else 0


def _complex_pairs(values):
    return [[float(v.real), float(v.imag)] for v in values]


def _cmd_factor(args):
    if args.values is not None:
        axes = [("values", _parse_values(args.values))]
    elif args.input is not None:
        poly = parse_polygon_file(args.input)
        axes = [(f"axis{j + 1}", poly.axis(j)) for j in range(poly.dim)]
    else:
        raise ParseError("factor needs an input file or --values")
    cfg = FactorizationConfig(rng_seed=_resolve_seed(args))
    records = []
    for label, coords in axes:
        try:
            F, sigma, cond = factorize_coordinates(coords, cfg, args.precondition)
        except RetriesExhausted as exc:
            print(
                f"error: {label}: {exc} (best residual {exc.best_residual:.3e})",
                file=sys.stderr,
            )
            return 1
        except (FactorizationError, ValueError) as exc:
            print(f"error: {label}: {exc}", file=sys.stderr)
            return 1
        records.append(
            {
                "label": label,
                "order": int(F.order),
                "gamma": float(F.gamma_used),
                "residual": float(F.residual),
                "condition": float(cond),
                "sigma": float(sigma),
                "nodes": _complex_pairs(F.nodes),
                "weights": _complex_pairs(F.weights),
            }
        )
    if args.json:
        _write_output(json.dumps({"axes": records}, indent=2) + "\n", args.output)
        return 0
    lines = []
    for rec in records:
        lines.append(
            f"{rec['label']}: m={rec['order']} gamma={rec['gamma']!r} "
            f"residual={rec['residual']:.3e} cond={rec['condition']:.4e}"
            + (f" sigma={rec['sigma']!r}" if rec["sigma"] else "")
        )
        lines.append(
            "  nodes:   " + "  ".join(f"{complex(re, im):.6g}" for re, im in rec["nodes"])
        )
        lines.append(
            "  weights: " + "  ".join(f"{complex(re, im):.6g}" for re, im in rec["weights"])
        )
    _write_output("\n".join(lines) + "\n", args.output)
    return 0


def _cmd_bench(args):
    if args.compare_backends:
        rows = compare_backends(seed=_resolve_seed(args))
        print(format_backend_table(rows), end="")
        return 0
    filt = None
    if args.cond_min is not None or args.cond_max is not None:
        filt = (args.cond_min, args.cond_max)
    cfg = BenchmarkConfig(
        n_values=tuple(int(tok) for tok in args.n.split(",")),
        grid_size=args.grid,
        repetitions=args.reps,
        seed=_resolve_seed(args),
        methods=tuple(args.methods.split(",")),
        condition_filter=filt,
    )
    report = run_benchmark(cfg)
    print(emit_report(report, "markdown"), end="")
    if args.output:
        _write_output(emit_report(report, args.format), args.output)
    return 0


def _cmd_gen(args):
    seed = _resolve_seed(args)
    if args.target == "random":
        poly = generate_control_points(args.n, args.d, seed)
    else:
        poly = generate_conditioned_instance(args.n, seed, args.target, d=args.d)
    header = f"n={args.n} d={args.d} seed={seed} target={args.target}"
    _write_output(polygon_to_text(poly, header), args.output)
    return 0


def _cmd_elevate(args):
    poly = parse_polygon_file(args.input)
    elevated = degree_elevate(poly)
    _write_output(polygon_to_text(elevated), args.output)
    return 0


def _add_seed(parser):
    parser.add_argument(
        "--seed",
        type=int,
        default=None,
        help=f"RNG seed (default: ${SEED_ENV} or 0)",
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hbezier",
        description=f"Bezier curve toolkit (kernel backend: {BACKEND})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="sample a curve over a uniform grid")
    p.add_argument("input", help="polygon file (one point per line)")
    p.add_argument("--method", choices=METHODS, default="casteljau")
    p.add_argument("--grid", type=int, default=129, help="grid point count (default 129)")
    p.add_argument(
        "--precondition",
        choices=("auto", "always", "never"),
        default=None,
        help="override the method's shift policy",
    )
    p.add_argument("--svg", action="store_true", help="emit an SVG plot instead of CSV")
    p.add_argument("-o", "--output", default=None, help="output path (default stdout)")
    _add_seed(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("factor", help="inspect the per-axis factorizations")
    p.add_argument("input", nargs="?", default=None, help="polygon file")
    p.add_argument("--values", default=None, help="inline anti-diagonal values, e.g. '2,1,3'")
    p.add_argument("--precondition", choices=("auto", "always", "never"), default="auto")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("-o", "--output", default=None)
    _add_seed(p)
    p.set_defaults(func=_cmd_factor)

    p = sub.add_parser("bench", help="timing/accuracy benchmark across methods")
    p.add_argument("--n", default=",".join(str(n) for n in BenchmarkConfig().n_values))
    p.add_argument("--methods", default=",".join(METHODS))
    p.add_argument("--grid", type=int, default=129)
    p.add_argument("--reps", type=int, default=11)
    p.add_argument("--cond-min", type=float, default=None)
    p.add_argument("--cond-max", type=float, default=None)
    p.add_argument("--format", choices=("csv", "markdown", "json"), default="csv")
    p.add_argument("-o", "--output", default=None, help="also write the report here")
    p.add_argument(
        "--compare-backends",
        action="store_true",
        help="time the numba and numpy kernel backends instead",
    )
    _add_seed(p)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("gen", help="generate a seeded control polygon")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--target", choices=("random", "well", "ill"), default="random")
    p.add_argument("-o", "--output", default=None)
    _add_seed(p)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("elevate", help="degree-elevate a polygon once")
    p.add_argument("input")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_elevate)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (
        ParseError,
        EvenControlCount,
        GenerationExhausted,
        FactorizationError,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
