"""Bezier curve evaluation pipelines.

Four ways to sample a degree-(n-1) curve: the Casteljau recurrence (the
accuracy reference), the factored Hankel form (plain and with the
skew-diagonal shift), and the Pascal/Toeplitz power-basis method with split
evaluation. Hankel pipelines fall back to Casteljau, flagged, when
factorization or evaluation fails.
"""

from dataclasses import dataclass

import numpy as np

from . import pascal
from .backend import kernels
from .hankel import (
    FactorizationConfig,
    FactorizationError,
    condition_estimate,
    factorize,
    hankel_from_coords,
    precondition_shift,
    with_seed,
)

METHODS = ("casteljau", "hankel", "hankel-precond", "pascal")

# auto mode shifts an axis whose condition estimate exceeds this
AUTO_PRECONDITION_CONDITION = 1e6

# |Im| of an evaluated coordinate may not exceed this fraction of (1 + |Re|)
IMAG_REL_BOUND = 1e-6

_PRECONDITION_MODES = ("auto", "always", "never")


class EvenControlCount(ValueError):
    """Hankel pipelines need an odd control count; degree-elevate first."""


class FactorizationFailed(RuntimeError):
    """Model build failed; .causes maps axis index to the reason."""

    def __init__(self, message, causes):
        super().__init__(message)
        self.causes = causes


class ImaginaryRemnant(RuntimeError):
    """An evaluated coordinate kept an imaginary part beyond its bound,
    the observable symptom of an unstable factorization."""


@dataclass(frozen=True, eq=False)
class ControlPolygon:
    """Ordered control points, one row per point (n x d, n >= 2)."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] < 2:
            raise ValueError("need at least two control points")
        if not np.isfinite(pts).all():
            raise ValueError("control coordinates must be finite")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def count(self):
        return self.points.shape[0]

    @property
    def dim(self):
        return self.points.shape[1]

    def axis(self, j):
        """Coordinate values of axis j as a contiguous vector."""
        return np.ascontiguousarray(self.points[:, j])

    def reversed(self):
        return ControlPolygon(self.points[::-1])


@dataclass(frozen=True, eq=False)
class HankelCurveModel:
    """Per-axis factorizations of one curve; every axis shares order m.

    sigmas[j] is the skew-diagonal shift applied to axis j (0.0 when the
    axis was factored directly); conditions[j] is the condition estimate of
    the unshifted axis matrix.
    """

    factorizations: tuple
    power: int
    order: int
    sigmas: np.ndarray
    conditions: np.ndarray


@dataclass(eq=False)
class CurveSamples:
    """Evaluation grid with computed points and per-run diagnostics."""

    svalues: np.ndarray
    points: np.ndarray
    method: str
    max_imag: float = 0.0
    fallback: bool = False
    fallback_cause: str = ""

    @property
    def fallback_count(self):
        return int(self.fallback)


def uniform_grid(count):
    """count evaluation parameters spanning [0, 1] (s = k/(count-1))."""
    if count < 1:
        raise ValueError("grid needs at least one value")
    if count == 1:
        return np.zeros(1)
    return np.linspace(0.0, 1.0, count)


def _validate_grid(grid):
    s = np.atleast_1d(np.ascontiguousarray(grid, dtype=np.float64))
    if s.size == 0:
        raise ValueError("empty evaluation grid")
    if (np.diff(s) < 0.0).any():
        raise ValueError("grid values must be ascending")
    if s[0] < 0.0 or s[-1] > 1.0:
        raise ValueError("grid values must lie in [0, 1]")
    return s


def casteljau_eval(coords, s):
    """Degree-(n-1) Bernstein evaluation of one coordinate axis at s."""
    if not 0.0 <= s <= 1.0:
        raise ValueError("parameter must lie in [0, 1]")
    coords = np.ascontiguousarray(coords, dtype=np.float64)
    return float(kernels.casteljau_point(coords, float(s)))


def degree_elevate(poly):
    """Same curve, one more control point.

    Q'_0 = Q_0, Q'_n = Q_{n-1}, Q'_i = (i/n) Q_{i-1} + (1 - i/n) Q_i.
    """
    pts = poly.points
    n = poly.count
    out = np.empty((n + 1, poly.dim))
    out[0] = pts[0]
    out[n] = pts[-1]
    frac = (np.arange(1, n) / n)[:, None]
    out[1:n] = frac * pts[: n - 1] + (1.0 - frac) * pts[1:n]
    return ControlPolygon(out)


def factorize_coordinates(coords, cfg=None, precondition="auto"):
    """Factor one coordinate axis under the given shift policy.

    "always" shifts unconditionally, "never" never shifts, "auto" shifts
    when the condition estimate exceeds 1e6 and also rescues a failed
    direct factorization with one shifted retry. Returns
    (factorization, sigma, condition_estimate); sigma is 0.0 without shift.
    """
    if precondition not in _PRECONDITION_MODES:
        raise ValueError(f"precondition must be one of {_PRECONDITION_MODES}")
    cfg = cfg or FactorizationConfig()
    H = hankel_from_coords(coords)
    cond = condition_estimate(H)
    shift_now = precondition == "always" or (
        precondition == "auto" and cond > AUTO_PRECONDITION_CONDITION
    )
    if shift_now:
        shifted, sigma = precondition_shift(H)
        return factorize(shifted, cfg), sigma, cond
    try:
        return factorize(H, cfg), 0.0, cond
    except FactorizationError:
        if precondition != "auto":
            raise
        shifted, sigma = precondition_shift(H)
        return factorize(shifted, cfg), sigma, cond


def build_hankel_model(poly, cfg=None, precondition="auto"):
    """Per-axis Hankel factorizations for an odd control count n = 2m-1.

    Raises EvenControlCount for even n (callers degree-elevate first) and
    FactorizationFailed when any axis cannot be factored under the policy.
    """
    cfg = cfg or FactorizationConfig()
    n = poly.count
    if n % 2 == 0:
        raise EvenControlCount(f"{n} control points; the Hankel form needs an odd count")
    if n < 3:
        raise ValueError("need at least three control points for the Hankel form")
    factors, sigmas, conds, causes = [], [], [], {}
    for j in range(poly.dim):
        axis_cfg = with_seed(cfg, _derived_seed(cfg.rng_seed, j))
        try:
            F, sigma, cond = factorize_coordinates(poly.axis(j), axis_cfg, precondition)
        except FactorizationError as exc:
            causes[j] = str(exc)
            continue
        factors.append(F)
        sigmas.append(sigma)
        conds.append(cond)
    if causes:
        detail = "; ".join(f"axis {j}: {msg}" for j, msg in sorted(causes.items()))
        raise FactorizationFailed(f"factorization failed ({detail})", causes)
    return HankelCurveModel(
        factorizations=tuple(factors),
        power=n - 1,
        order=(n + 1) // 2,
        sigmas=np.array(sigmas),
        conditions=np.array(conds),
    )


def _derived_seed(*parts):
    return int(np.random.SeedSequence([int(p) for p in parts]).generate_state(1)[0])


def reciprocal_form(m, n, s):
    """Closed-form quadratic form of the reversal (exchange) matrix.

    (1/m) sum_j w^(j-1) (1 - s + s w^(j-1))^(n-1) with w = exp(2 pi i / m);
    the conjugate-symmetric sum is real and the tiny imaginary remnant is
    discarded.
    """
    if not 0.0 <= s <= 1.0:
        raise ValueError("parameter must lie in [0, 1]")
    return float(_reciprocal_grid(m, n, np.array([float(s)]))[0])


def _reciprocal_grid(m, n, svals):
    if n != 2 * m - 1:
        raise ValueError("need n = 2m - 1")
    j = np.arange(m)
    w = np.exp(2j * np.pi * j / m)
    return kernels.power_sum_grid(w, w / m, svals, n - 1).real


def _eval_model_grid(model, svals):
    d = len(model.factorizations)
    out = np.empty((svals.size, d))
    max_imag = 0.0
    recip = None
    for j, F in enumerate(model.factorizations):
        raw = kernels.power_sum_grid(F.nodes, F.weights, svals, model.power)
        imag = np.abs(raw.imag)
        worst = float(imag.max())
        if (imag > IMAG_REL_BOUND * (1.0 + np.abs(raw.real))).any():
            raise ImaginaryRemnant(f"axis {j}: imaginary remnant up to {worst:.3e}")
        max_imag = max(max_imag, worst)
        vals = raw.real
        if model.sigmas[j] != 0.0:
            if recip is None:
                recip = _reciprocal_grid(model.order, model.power + 1, svals)
            vals = vals - model.sigmas[j] * recip
        out[:, j] = vals
    return out, max_imag


def hankel_form_eval(model, s):
    """One curve point from the factored Hankel form.

    Per axis: sum_i d_i (1 - s + s t_i)^(n-1) by binary exponentiation,
    minus sigma times the reciprocal form on shifted axes; real parts are
    returned after the imaginary-remnant check.
    """
    if not 0.0 <= s <= 1.0:
        raise ValueError("parameter must lie in [0, 1]")
    pts, _ = _eval_model_grid(model, np.array([float(s)]))
    return pts[0]


@dataclass(frozen=True, eq=False)
class PascalModel:
    """Per-axis coefficient vectors of the power-basis method.

    forward[j] = P_n G_n(-1) x for axis j; backward[j] the same for the
    reversed coordinate vector (used for s > 1/2).
    """

    forward: np.ndarray
    backward: np.ndarray


def pascal_method_build(poly):
    """Alternating-sign scale then Pascal product, per axis plus reversed."""
    n = poly.count
    sign = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
    forward = np.empty((poly.dim, n))
    backward = np.empty_like(forward)
    for j in range(poly.dim):
        x = poly.axis(j)
        forward[j] = pascal.pascal_apply(n, sign * x)
        backward[j] = pascal.pascal_apply(n, sign * x[::-1])
    return PascalModel(forward, backward)


def pascal_method_eval(z, z_r, s):
    """One coordinate at s from the split binomial-Horner scheme.

    s <= 1/2 evaluates sum_k C(n-1,k) (-s)^k z_{k+1}; above 1/2 the same
    form at 1-s with the reversed-polygon coefficients.
    """
    if not 0.0 <= s <= 1.0:
        raise ValueError("parameter must lie in [0, 1]")
    z = np.ascontiguousarray(z, dtype=np.float64)
    z_r = np.ascontiguousarray(z_r, dtype=np.float64)
    return float(kernels.pascal_poly_grid(z, z_r, np.array([float(s)]))[0])


def power_basis_coeffs(H):
    """Coefficients a_k with coordinate(s) = sum_k a_k C(n-1,k) s^k.

    The anti-diagonals of P_m^{-1} H P_m^{-T}, via the congruence map at
    alpha = -1; used as a cross-check oracle for the other pipelines.
    """
    return pascal.hankel_congruence(H.antidiag, -1.0)


def power_basis_eval(coeffs, svals):
    """Evaluate sum_k a_k C(n-1,k) s^k on a grid (oracle companion)."""
    a = np.asarray(coeffs, dtype=np.float64)
    s = np.atleast_1d(np.asarray(svals, dtype=np.float64))
    n = a.shape[0]
    acc = np.full(s.shape, a[0])
    p = np.ones_like(s)
    c = 1.0
    for k in range(1, n):
        c *= (n - k) / k
        p = p * s
        acc += (c * a[k]) * p
    return acc


def _casteljau_points(poly, svals):
    pts = np.empty((svals.size, poly.dim))
    for j in range(poly.dim):
        pts[:, j] = kernels.casteljau_grid(poly.axis(j), svals)
    return pts


def evaluate_curve(poly, grid, method="casteljau", cfg=None, precondition=None):
    """Sample the curve over a grid with the selected pipeline.

    Hankel pipelines degree-elevate an even control count once, build the
    per-axis model, then evaluate every grid value; a failed factorization
    or an imaginary-remnant error falls back to Casteljau with the fallback
    diagnostics set. precondition overrides the method default ("auto" for
    hankel, "always" for hankel-precond).
    """
    svals = _validate_grid(grid)
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
    if method == "casteljau":
        return CurveSamples(svals, _casteljau_points(poly, svals), method)
    if method == "pascal":
        model = pascal_method_build(poly)
        pts = np.empty((svals.size, poly.dim))
        for j in range(poly.dim):
            pts[:, j] = kernels.pascal_poly_grid(model.forward[j], model.backward[j], svals)
        return CurveSamples(svals, pts, method)
    work = degree_elevate(poly) if poly.count % 2 == 0 else poly
    mode = precondition or ("always" if method == "hankel-precond" else "auto")
    try:
        model = build_hankel_model(work, cfg, mode)
        pts, max_imag = _eval_model_grid(model, svals)
        return CurveSamples(svals, pts, method, max_imag=max_imag)
    except (FactorizationFailed, ImaginaryRemnant) as exc:
        return CurveSamples(
            svals,
            _casteljau_points(poly, svals),
            method,
            fallback=True,
            fallback_cause=str(exc),
        )
