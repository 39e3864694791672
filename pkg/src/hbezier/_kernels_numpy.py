"""Pure-numpy kernel implementations.

Same call surface as the numba backend; the hot loops are vectorized
across the evaluation grid (or across the root set) instead of jitted.
"""

import numpy as np


def casteljau_point(coords, s):
    """One convex-combination triangle sweep; returns the curve coordinate."""
    work = np.array(coords, dtype=np.float64)
    n = work.shape[0]
    ss = 1.0 - s
    for k in range(1, n):
        work[k:] = ss * work[k - 1 : n - 1] + s * work[k:]
    return work[-1]


def casteljau_grid(coords, svals):
    """Casteljau evaluation of one coordinate axis over a whole grid."""
    coords = np.asarray(coords, dtype=np.float64)
    s = np.asarray(svals, dtype=np.float64)[None, :]
    n = coords.shape[0]
    b = np.repeat(coords[:, None], s.shape[1], axis=1)
    for k in range(1, n):
        b[k:] = (1.0 - s) * b[k - 1 : n - 1] + s * b[k:]
    return b[-1].copy()


def bernstein_apply(v, s):
    """Apply the lower-triangular Bernstein matrix to v via bidiagonal sweeps."""
    work = np.array(v, dtype=np.float64)
    n = work.shape[0]
    ss = 1.0 - s
    for k in range(1, n):
        work[k:] = ss * work[k - 1 : n - 1] + s * work[k:]
    return work


def power_sum_grid(nodes, weights, svals, power):
    """sum_i weights[i] * (1 - s + s*nodes[i])**power for every grid value.

    The integer power is applied by binary exponentiation (squarings on the
    whole (node, grid) array).
    """
    s = np.asarray(svals, dtype=np.float64)[None, :]
    base = (1.0 - s) + s * np.asarray(nodes, dtype=np.complex128)[:, None]
    acc = np.ones_like(base)
    k = int(power)
    while k:
        if k & 1:
            acc = acc * base
        k >>= 1
        if k:
            base = base * base
    return np.asarray(weights, dtype=np.complex128) @ acc


def _binom_poly(vec, t):
    # sum_k C(n-1,k) t^k vec[k], binomial factor updated multiplicatively
    n = vec.shape[0]
    acc = np.full(t.shape, vec[0])
    p = np.ones_like(t)
    c = 1.0
    for k in range(1, n):
        c *= (n - k) / k
        p = p * t
        acc += (c * vec[k]) * p
    return acc


def pascal_poly_grid(z, zr, svals):
    """Split binomial-Horner evaluation: z for s <= 1/2, reversed z above."""
    z = np.asarray(z, dtype=np.float64)
    zr = np.asarray(zr, dtype=np.float64)
    s = np.asarray(svals, dtype=np.float64)
    out = np.empty(s.shape[0])
    lo = s <= 0.5
    out[lo] = _binom_poly(z, -s[lo])
    out[~lo] = _binom_poly(zr, -(1.0 - s[~lo]))
    return out


def aberth(coeffs, tol, max_iter):
    """Simultaneous root refinement for an ascending-coefficient monic polynomial.

    Jacobi-style sweeps: every approximation is corrected from the previous
    sweep's values. Returns (roots, sweeps, converged).
    """
    c = np.asarray(coeffs, dtype=np.complex128)
    m = c.shape[0] - 1
    if m == 1:
        return np.array([-c[0]]), 0, True
    dc = c[1:] * np.arange(1, m + 1)
    radius = 1.0 + float(np.abs(c[:-1]).max())
    z = radius * np.exp(1j * (2.0 * np.pi * np.arange(m) / m + 0.4))
    for it in range(max_iter):
        pv = np.full(m, c[m])
        for k in range(m - 1, -1, -1):
            pv = pv * z + c[k]
        dv = np.full(m, dc[m - 1])
        for k in range(m - 2, -1, -1):
            dv = dv * z + dc[k]
        with np.errstate(divide="ignore", invalid="ignore"):
            newton = pv / dv
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            repel = (1.0 / diff).sum(axis=1)
            w = newton / (1.0 - newton * repel)
        bad = ~np.isfinite(w)
        if bad.any():
            w = np.where(bad, 1e-8 * (1.0 + np.abs(z)) * (1.0 + 1.0j), w)
        z = z - w
        if np.all(np.abs(w) <= tol * (1.0 + np.abs(z))):
            return z, it + 1, True
    return z, max_iter, False
