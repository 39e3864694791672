"""Seeded benchmark harness: instance generation, method timing, accuracy
comparison against Casteljau, report emission, and a kernel-backend
(numba vs numpy) comparison."""

import json
import statistics
import sys
import time
from dataclasses import dataclass

import numpy as np

from .backend import BACKEND
from .bezier import METHODS, ControlPolygon, evaluate_curve, uniform_grid
from .hankel import FactorizationConfig, condition_estimate, hankel_from_coords

DEFAULT_N_VALUES = (15, 23, 31, 39, 47, 55, 63, 71, 79)

WELL_CONDITIONED_MAX = 1e4
ILL_CONDITIONED_MIN = 5e2

CSV_HEADER = "n,method,median_time_s,error_norm,cond,fallbacks"


class GenerationExhausted(RuntimeError):
    """Rejection sampling found no instance in the attempt budget."""


@dataclass(frozen=True)
class BenchmarkConfig:
    n_values: tuple = DEFAULT_N_VALUES
    grid_size: int = 129
    repetitions: int = 11
    seed: int = 0
    methods: tuple = METHODS
    condition_filter: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "n_values", tuple(int(n) for n in self.n_values))
        object.__setattr__(self, "methods", tuple(self.methods))
        if self.condition_filter is not None:
            lo, hi = self.condition_filter
            object.__setattr__(self, "condition_filter", (lo, hi))
        if any(n < 3 or n % 2 == 0 for n in self.n_values):
            raise ValueError("control counts must be odd and >= 3")
        if self.repetitions < 1:
            raise ValueError("need at least one repetition")
        if self.grid_size < 1:
            raise ValueError("need a nonempty grid")
        bad = [m for m in self.methods if m not in METHODS]
        if bad:
            raise ValueError(f"unknown methods {bad}; choose from {METHODS}")


@dataclass
class BenchmarkRow:
    n: int
    method: str
    median_time_s: float
    error_norm: float
    cond: float
    fallbacks: int


@dataclass
class BenchmarkReport:
    config: BenchmarkConfig
    rows: list
    environment: str = ""


def generate_control_points(n, d=2, seed=0):
    """n control points with coordinates uniform in [0, 1], seeded."""
    if n < 2:
        raise ValueError("need at least two control points")
    return ControlPolygon(np.random.default_rng(seed).uniform(size=(n, d)))


def max_axis_condition(poly):
    """Worst per-axis condition estimate of the coordinate Hankel matrices."""
    return max(
        condition_estimate(hankel_from_coords(poly.axis(j))) for j in range(poly.dim)
    )


def generate_conditioned_instance(n, seed, target, d=2, max_attempts=1000):
    """Rejection-sample a polygon whose worst axis condition matches the target.

    "well" accepts estimates below 1e4, "ill" above 5e2 (the regimes
    overlap; random instances frequently land in both).
    """
    if n % 2 == 0:
        raise ValueError("n must be odd")
    if target not in ("well", "ill"):
        raise ValueError("target must be 'well' or 'ill'")
    rng = np.random.default_rng(seed)
    for _ in range(max_attempts):
        poly = ControlPolygon(rng.uniform(size=(n, d)))
        cond = max_axis_condition(poly)
        if target == "well" and cond < WELL_CONDITIONED_MAX:
            return poly
        if target == "ill" and cond > ILL_CONDITIONED_MIN:
            return poly
    raise GenerationExhausted(f"no {target}-conditioned instance in {max_attempts} draws")


def _derived_seed(*parts):
    return int(np.random.SeedSequence([int(p) for p in parts]).generate_state(1)[0])


def _instance(cfg, n):
    seed = _derived_seed(cfg.seed, n)
    if cfg.condition_filter is None:
        return generate_control_points(n, 2, seed)
    lo, hi = cfg.condition_filter
    rng = np.random.default_rng(seed)
    for _ in range(1000):
        poly = ControlPolygon(rng.uniform(size=(n, 2)))
        cond = max_axis_condition(poly)
        if (lo is None or cond >= lo) and (hi is None or cond <= hi):
            return poly
    raise GenerationExhausted(f"no instance with condition in {cfg.condition_filter}")


def run_benchmark(cfg=None):
    """Time every configured method on one seeded instance per n.

    Each timed run covers the full grid evaluation, model build included
    for the Hankel methods; the median over `repetitions` runs is reported
    together with the Euclidean error norm against the Casteljau samples of
    the same instance. Deterministic apart from the timing columns.
    """
    cfg = cfg or BenchmarkConfig()
    svals = uniform_grid(cfg.grid_size)
    rows = []
    for n in cfg.n_values:
        poly = _instance(cfg, n)
        cond = max_axis_condition(poly)
        fcfg = FactorizationConfig(rng_seed=_derived_seed(cfg.seed, n, 1))
        base = evaluate_curve(poly, svals, "casteljau", fcfg)
        for method in cfg.methods:
            samples = evaluate_curve(poly, svals, method, fcfg)  # warm-up + reported run
            times = []
            for _ in range(cfg.repetitions):
                t0 = time.perf_counter()
                evaluate_curve(poly, svals, method, fcfg)
                times.append(time.perf_counter() - t0)
            error = (
                0.0
                if method == "casteljau"
                else float(np.linalg.norm(samples.points - base.points))
            )
            rows.append(
                BenchmarkRow(
                    n=n,
                    method=method,
                    median_time_s=float(statistics.median(times)),
                    error_norm=error,
                    cond=cond,
                    fallbacks=samples.fallback_count,
                )
            )
    env = f"python {sys.version.split()[0]}, numpy {np.__version__}, kernels={BACKEND}"
    return BenchmarkReport(config=cfg, rows=rows, environment=env)


def emit_report(report, format="csv"):
    """Render a report as csv, markdown or json text."""
    if format == "csv":
        lines = [CSV_HEADER]
        for r in report.rows:
            lines.append(
                f"{r.n},{r.method},{r.median_time_s!r},{r.error_norm!r},{r.cond!r},{r.fallbacks}"
            )
        return "\n".join(lines) + "\n"
    if format == "markdown":
        lines = [
            "| N | method | median time (s) | error vs casteljau | cond(H) | fallbacks |",
            "|---:|:---|---:|---:|---:|---:|",
        ]
        for r in report.rows:
            lines.append(
                f"| {r.n} | {r.method} | {r.median_time_s:.3e} | {r.error_norm:.4e}"
                f" | {r.cond:.4e} | {r.fallbacks} |"
            )
        if report.environment:
            lines.append("")
            lines.append(f"_{report.environment}_")
        return "\n".join(lines) + "\n"
    if format == "json":
        payload = {
            "config": {
                "n_values": list(report.config.n_values),
                "grid_size": report.config.grid_size,
                "repetitions": report.config.repetitions,
                "seed": report.config.seed,
                "methods": list(report.config.methods),
                "condition_filter": (
                    list(report.config.condition_filter)
                    if report.config.condition_filter is not None
                    else None
                ),
            },
            "environment": report.environment,
            "rows": [vars(r) for r in report.rows],
        }
        return json.dumps(payload, indent=2) + "\n"
    raise ValueError(f"unknown report format {format!r}")


def report_from_json(text):
    """Parse emit_report(..., 'json') output back into a BenchmarkReport."""
    payload = json.loads(text)
    raw_cfg = payload["config"]
    cfg = BenchmarkConfig(
        n_values=tuple(raw_cfg["n_values"]),
        grid_size=raw_cfg["grid_size"],
        repetitions=raw_cfg["repetitions"],
        seed=raw_cfg["seed"],
        methods=tuple(raw_cfg["methods"]),
        condition_filter=(
            tuple(raw_cfg["condition_filter"])
            if raw_cfg["condition_filter"] is not None
            else None
        ),
    )
    rows = [BenchmarkRow(**row) for row in payload["rows"]]
    return BenchmarkReport(config=cfg, rows=rows, environment=payload["environment"])


def compare_backends(n=63, grid_size=129, repetitions=11, seed=0):
    """Median kernel timings for every importable backend on one instance.

    Exercises the per-point hot loops (Casteljau sweep, Hankel power sum,
    split binomial-Horner, simultaneous root refinement) so the jitted and
    vectorized paths can be compared like-for-like. Returns a list of dicts
    with keys kernel, backend, median_s.
    """
    backends = {}
    from . import _kernels_numpy

    try:
        from . import _kernels_numba

        backends["numba"] = _kernels_numba
    except ImportError:
        pass
    backends["numpy"] = _kernels_numpy

    rng = np.random.default_rng(seed)
    coords = rng.uniform(size=n)
    svals = uniform_grid(grid_size)
    m = (n + 1) // 2
    nodes = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, size=m))
    weights = rng.uniform(size=m).astype(np.complex128)
    z = rng.uniform(-1.0, 1.0, size=n)
    zr = rng.uniform(-1.0, 1.0, size=n)
    poly_coeffs = np.append(rng.uniform(-1.0, 1.0, size=m), 1.0).astype(np.complex128)
    workloads = {
        "casteljau_grid": lambda k: k.casteljau_grid(coords, svals),
        "hankel_power_sum": lambda k: k.power_sum_grid(nodes, weights, svals, n - 1),
        "pascal_poly_grid": lambda k: k.pascal_poly_grid(z, zr, svals),
        "aberth_roots": lambda k: k.aberth(poly_coeffs, 1e-13, 200),
    }
    rows = []
    for backend_name, module in backends.items():
        for kernel_name, run in workloads.items():
            run(module)  # warm-up (JIT compile on the numba side)
            times = []
            for _ in range(repetitions):
                t0 = time.perf_counter()
                run(module)
                times.append(time.perf_counter() - t0)
            rows.append(
                {
                    "kernel": kernel_name,
                    "backend": backend_name,
                    "median_s": float(statistics.median(times)),
                }
            )
    return rows


def format_backend_table(rows):
    """Markdown table for compare_backends output."""
    lines = ["| kernel | backend | median time (s) |", "|:---|:---|---:|"]
    for r in rows:
        lines.append(f"| {r['kernel']} | {r['backend']} | {r['median_s']:.3e} |")
    return "\n".join(lines) + "\n"
