"""Vandermonde factorization of nonsingular Hankel matrices.

A random extension value completes the prediction right-hand side, a dense
pivoted solve yields the monic polynomial whose roots are the factorization
nodes, and a Vandermonde solve recovers the weights. Conditioning utilities
(1-norm estimate, skew-diagonal shift) support the ill-conditioned case.
"""

import warnings
from dataclasses import dataclass, replace

import numpy as np
import scipy.linalg

from .backend import kernels

_EPS = float(np.finfo(np.float64).eps)

# order up to which the condition estimate inverts densely
_EXACT_COND_ORDER = 64


class FactorizationError(Exception):
    """Base class for factorization failures."""


class SingularMatrix(FactorizationError):
    """A pivot fell below the singularity threshold."""


class NonConvergence(FactorizationError):
    """Root refinement hit its sweep cap; retry with a new extension value."""


class MultipleRoots(FactorizationError):
    """The companion spectrum is not simple; retry with a new extension value."""


class IllConditionedVandermonde(FactorizationError):
    """The node Vandermonde solve broke down; retry with a new extension value."""


class ResidualImaginary(FactorizationError):
    """Reconstruction left an imaginary remnant beyond its bound."""


class RetriesExhausted(FactorizationError):
    """Every extension draw failed; carries the best residual seen."""

    def __init__(self, message, best_residual):
        super().__init__(message)
        self.best_residual = best_residual


@dataclass(frozen=True, eq=False)
class HankelMatrix:
    """Order-m symmetric Hankel matrix stored as its 2m-1 anti-diagonal values."""

    antidiag: np.ndarray

    def __post_init__(self):
        arr = np.atleast_1d(np.asarray(self.antidiag))
        if arr.ndim != 1 or arr.size % 2 == 0:
            raise ValueError("anti-diagonal vector must be 1-D with odd length")
        arr = arr.astype(np.complex128 if np.iscomplexobj(arr) else np.float64)
        arr.setflags(write=False)
        object.__setattr__(self, "antidiag", arr)

    @property
    def order(self):
        return (self.antidiag.size + 1) // 2

    def toarray(self):
        m = self.order
        return self.antidiag[np.add.outer(np.arange(m), np.arange(m))]


def hankel_from_coords(coords):
    """Hankel matrix whose anti-diagonals are the given coordinate values.

    The length must be odd (order m = (len+1)/2); callers holding an even
    coordinate count degree-elevate first.
    """
    coords = np.asarray(coords)
    if coords.ndim != 1 or coords.size % 2 == 0 or coords.size < 1:
        raise ValueError(
            "need an odd number of coordinate values; degree-elevate even control counts first"
        )
    return HankelMatrix(coords)


@dataclass(frozen=True)
class FactorizationConfig:
    """Knobs for the randomized factorization.

    separation_tol is relative: roots closer than
    separation_tol * (1 + max|root|) count as multiple.
    """

    max_gamma_retries: int = 8
    root_tol: float = 1e-13
    root_max_iter: int = 200
    separation_tol: float = 1e-8
    residual_tol: float = 1e-8
    rng_seed: int = 0

    def __post_init__(self):
        if self.max_gamma_retries < 1:
            raise ValueError("need at least one retry")
        if min(self.root_tol, self.separation_tol, self.residual_tol) <= 0.0:
            raise ValueError("tolerances must be positive")
        if self.root_max_iter < 1:
            raise ValueError("need at least one root sweep")
        if self.rng_seed < 0:
            raise ValueError("rng_seed must be a nonnegative 64-bit integer")


@dataclass(frozen=True, eq=False)
class PredictionSolution:
    """Solution p of H p = (h_{m+1}, ..., h_{2m-1}, gamma)^T."""

    gamma: complex
    p: np.ndarray


@dataclass(frozen=True, eq=False)
class VandermondeFactorization:
    """H = V diag(weights) V^T with V_{ij} = nodes_j**(i-1).

    nodes are pairwise distinct; residual is the relative max-norm
    reconstruction error accepted for this factorization.
    """

    nodes: np.ndarray
    weights: np.ndarray
    gamma_used: complex
    residual: float
    real_source: bool = True

    @property
    def order(self):
        return self.nodes.size


def _checked_lu(A):
    with warnings.catch_warnings():
        # singularity is detected from the pivots below, not from the warning
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(A, check_finite=False)
    scale = float(np.abs(A).max())
    if scale == 0.0 or np.abs(np.diag(lu)).min() <= A.shape[0] * _EPS * scale:
        raise SingularMatrix("pivot below m * eps * max|H|")
    return lu, piv


def solve_prediction(H, gamma):
    """Solve the prediction system H p = (h_{m+1}, ..., h_{2m-1}, gamma)^T.

    Dense LU with partial pivoting; raises SingularMatrix when a pivot falls
    below m * eps * max|H|.
    """
    m = H.order
    rhs = np.concatenate([H.antidiag[m:], np.atleast_1d(gamma)])
    dtype = np.result_type(H.antidiag.dtype, rhs.dtype)
    lu, piv = _checked_lu(H.toarray().astype(dtype))
    p = scipy.linalg.lu_solve((lu, piv), rhs.astype(dtype), check_finite=False)
    return PredictionSolution(gamma=gamma, p=p)


def companion_spectrum(p, cfg=None):
    """All m roots of x^m - p_{m-1} x^{m-1} - ... - p_0.

    Simultaneous (Aberth-Ehrlich) refinement from a circle of radius
    1 + max|p_k|; converged when every correction drops below
    root_tol * (1 + |root|). Roots come back sorted by (real, imaginary)
    part. NonConvergence and MultipleRoots both mean "draw a new gamma".
    """
    cfg = cfg or FactorizationConfig()
    p = np.atleast_1d(np.ascontiguousarray(p, dtype=np.complex128))
    m = p.shape[0]
    coeffs = np.empty(m + 1, dtype=np.complex128)
    coeffs[:m] = -p
    coeffs[m] = 1.0
    roots, _, converged = kernels.aberth(coeffs, cfg.root_tol, cfg.root_max_iter)
    if not converged:
        raise NonConvergence(f"no convergence within {cfg.root_max_iter} sweeps")
    roots = roots[np.lexsort((roots.imag, roots.real))]
    if m > 1:
        i, j = np.triu_indices(m, 1)
        min_sep = float(np.abs(roots[i] - roots[j]).min())
        if min_sep <= cfg.separation_tol * (1.0 + float(np.abs(roots).max())):
            raise MultipleRoots(f"root separation {min_sep:.3e} below tolerance")
    return roots


def vandermonde_weights(nodes, H):
    """Recover the factorization weights d with V d = H e_1 (V_{ij} = nodes_j**(i-1)).

    The exact weights satisfy all 2m-1 moment conditions
    sum_i d_i t_i^(k-1) = h_k, so d is computed as the least-squares solution
    of the full (column-equilibrated) moment system; that floors the
    reconstruction residual near machine precision even when the square
    first-column system alone is ill-conditioned.
    """
    nodes = np.asarray(nodes, dtype=np.complex128)
    m = nodes.shape[0]
    if H.order != m:
        raise ValueError("node count does not match the Hankel order")
    A = np.vander(nodes, 2 * m - 1, increasing=True).T
    colscale = np.abs(A).max(axis=0)
    try:
        y, _, rank, _ = np.linalg.lstsq(A / colscale, H.antidiag.astype(np.complex128), rcond=None)
    except np.linalg.LinAlgError as exc:
        raise IllConditionedVandermonde(str(exc)) from None
    if rank < m:
        raise IllConditionedVandermonde(f"moment system rank {rank} < {m}")
    return y / colscale


def _moments(nodes, weights, count):
    # moment k (0-based) = sum_i weights[i] * nodes[i]**k
    return np.vander(nodes, count, increasing=True).T @ weights


def factorize(H, cfg=None):
    """Vandermonde-factorize a nonsingular Hankel matrix.

    Draws the extension value gamma uniformly from [-a, a] with a = max|h_k|
    (seeded; the entry scale keeps the companion roots near unit modulus, so
    high powers of the nodes do not amplify rounding), runs prediction solve
    -> companion spectrum -> weight solve, and accepts a draw whose
    reconstruction residual max_k |sum_i d_i t_i^(k-1) - h_k| / max|h| is at
    most residual_tol. An excellent draw (residual_tol * 1e-4) returns
    immediately; a merely accepted draw is kept while up to two further
    draws look for a better residual, since curve accuracy tracks the
    residual directly.
    """
    cfg = cfg or FactorizationConfig()
    m = H.order
    scale = float(np.abs(H.antidiag).max())
    rng = np.random.default_rng(cfg.rng_seed)
    real_source = not np.iscomplexobj(H.antidiag)
    lu_piv = _checked_lu(H.toarray())
    accepted = None
    best = np.inf
    since_accept = 0
    for _ in range(cfg.max_gamma_retries):
        if accepted is not None and since_accept >= 2:
            break
        if accepted is not None:
            since_accept += 1
        gamma = float(rng.uniform(-scale, scale))
        rhs = np.concatenate([H.antidiag[m:], [gamma]])
        p = scipy.linalg.lu_solve(lu_piv, rhs, check_finite=False)
        try:
            nodes = companion_spectrum(p, cfg)
            weights = vandermonde_weights(nodes, H)
        except (NonConvergence, MultipleRoots, IllConditionedVandermonde):
            continue
        residual = float(np.abs(_moments(nodes, weights, 2 * m - 1) - H.antidiag).max() / scale)
        best = min(best, residual)
        if residual <= cfg.residual_tol * 1e-4:
            return VandermondeFactorization(nodes, weights, gamma, residual, real_source)
        if residual <= cfg.residual_tol and (accepted is None or residual < accepted.residual):
            accepted = VandermondeFactorization(nodes, weights, gamma, residual, real_source)
    if accepted is not None:
        return accepted
    raise RetriesExhausted(
        f"no acceptable factorization in {cfg.max_gamma_retries} draws"
        f" (best residual {best:.3e})",
        best_residual=best,
    )


def reconstruct(F):
    """Hankel matrix with anti-diagonal k equal to sum_i d_i t_i^(k-1).

    For a factorization of a real matrix the moment sums must be real up to
    1e-8 * max|moment|; a larger imaginary remnant raises ResidualImaginary,
    otherwise the remnant is discarded.
    """
    moments = _moments(F.nodes, F.weights, 2 * F.order - 1)
    if not F.real_source:
        return HankelMatrix(moments)
    bound = 1e-8 * max(float(np.abs(moments.real).max()), np.finfo(np.float64).tiny)
    remnant = float(np.abs(moments.imag).max())
    if remnant > bound:
        raise ResidualImaginary(f"imaginary remnant {remnant:.3e} exceeds {bound:.3e}")
    return HankelMatrix(moments.real.copy())


def condition_estimate(H):
    """1-norm condition number of the dense expansion; +inf when singular.

    Exact (explicit inverse) up to order 64, LU plus a 1-norm estimator on
    the inverse above that.
    """
    A = H.toarray()
    m = A.shape[0]
    if m <= _EXACT_COND_ORDER or np.iscomplexobj(A):
        try:
            inv = np.linalg.inv(A)
        except np.linalg.LinAlgError:
            return float("inf")
        kappa = float(np.abs(A).sum(axis=0).max() * np.abs(inv).sum(axis=0).max())
        return kappa if np.isfinite(kappa) else float("inf")
    try:
        lu, piv = _checked_lu(A)
    except SingularMatrix:
        return float("inf")
    from scipy.sparse.linalg import LinearOperator, onenormest

    solve = lambda x: scipy.linalg.lu_solve((lu, piv), x, check_finite=False)
    op = LinearOperator(A.shape, matvec=solve, rmatvec=solve, dtype=A.dtype)
    kappa = float(np.abs(A).sum(axis=0).max() * onenormest(op))
    return kappa if np.isfinite(kappa) else float("inf")


def precondition_shift(H):
    """Shift the central anti-diagonal by the entry-absolute sum.

    sigma = sum_{i,j} |H_ij| = sum_k min(k, 2m-k) |h_k|; the shifted matrix
    adds sigma only on anti-diagonal m, making it (reversal-permuted)
    diagonally dominant whenever H is nonzero. Returns (shifted, sigma).
    """
    m = H.order
    k = np.arange(1, 2 * m)
    sigma = float((np.minimum(k, 2 * m - k) * np.abs(H.antidiag)).sum())
    shifted = H.antidiag.copy()
    shifted[m - 1] += sigma
    return HankelMatrix(shifted), sigma


def with_seed(cfg, seed):
    """Copy of cfg with a different draw seed."""
    return replace(cfg, rng_seed=int(seed))
