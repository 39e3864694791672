"""Numba-jitted kernel implementations (default backend).

Loop-level mirrors of the numpy backend; first call per signature pays a
one-off JIT compile that is cached on disk afterwards.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def casteljau_point(coords, s):
    n = coords.shape[0]
    work = np.empty(n)
    for i in range(n):
        work[i] = coords[i]
    ss = 1.0 - s
    for k in range(1, n):
        for i in range(n - 1, k - 1, -1):
            work[i] = ss * work[i - 1] + s * work[i]
    return work[n - 1]


@njit(cache=True)
def casteljau_grid(coords, svals):
    n = coords.shape[0]
    ng = svals.shape[0]
    out = np.empty(ng)
    work = np.empty(n)
    for g in range(ng):
        s = svals[g]
        ss = 1.0 - s
        for i in range(n):
            work[i] = coords[i]
        for k in range(1, n):
            for i in range(n - 1, k - 1, -1):
                work[i] = ss * work[i - 1] + s * work[i]
        out[g] = work[n - 1]
    return out


@njit(cache=True)
def bernstein_apply(v, s):
    n = v.shape[0]
    work = np.empty(n)
    for i in range(n):
        work[i] = v[i]
    ss = 1.0 - s
    for k in range(1, n):
        for i in range(n - 1, k - 1, -1):
            work[i] = ss * work[i - 1] + s * work[i]
    return work


@njit(cache=True)
def _cpow(z, k):
    # binary exponentiation, k >= 0
    acc = 1.0 + 0.0j
    base = z
    while k:
        if k & 1:
            acc *= base
        k >>= 1
        if k:
            base *= base
    return acc


@njit(cache=True)
def power_sum_grid(nodes, weights, svals, power):
    m = nodes.shape[0]
    ng = svals.shape[0]
    out = np.empty(ng, dtype=np.complex128)
    for g in range(ng):
        s = svals[g]
        acc = 0.0 + 0.0j
        for i in range(m):
            base = (1.0 - s) + s * nodes[i]
            acc += weights[i] * _cpow(base, power)
        out[g] = acc
    return out


@njit(cache=True)
def pascal_poly_grid(z, zr, svals):
    n = z.shape[0]
    ng = svals.shape[0]
    out = np.empty(ng)
    for g in range(ng):
        s = svals[g]
        if s <= 0.5:
            vec = z
            t = -s
        else:
            vec = zr
            t = -(1.0 - s)
        acc = vec[0]
        c = 1.0
        p = 1.0
        for k in range(1, n):
            c = c * (n - k) / k
            p = p * t
            acc += c * p * vec[k]
        out[g] = acc
    return out


@njit(cache=True, error_model="numpy")
def aberth(coeffs, tol, max_iter):
    """Simultaneous root refinement; Gauss-Seidel sweeps (corrections reuse
    already-updated approximations within a sweep)."""
    m = coeffs.shape[0] - 1
    roots = np.empty(m, dtype=np.complex128)
    if m == 1:
        roots[0] = -coeffs[0]
        return roots, 0, True
    maxc = 0.0
    for k in range(m):
        a = abs(coeffs[k])
        if a > maxc:
            maxc = a
    radius = 1.0 + maxc
    for k in range(m):
        ang = 2.0 * np.pi * k / m + 0.4
        roots[k] = radius * complex(np.cos(ang), np.sin(ang))
    dcoeffs = np.empty(m, dtype=np.complex128)
    for k in range(m):
        dcoeffs[k] = (k + 1) * coeffs[k + 1]
    for it in range(max_iter):
        done = True
        for i in range(m):
            zi = roots[i]
            pv = coeffs[m]
            for k in range(m - 1, -1, -1):
                pv = pv * zi + coeffs[k]
            if pv == 0:
                continue
            dv = dcoeffs[m - 1]
            for k in range(m - 2, -1, -1):
                dv = dv * zi + dcoeffs[k]
            repel = 0.0 + 0.0j
            for j in range(m):
                if j != i:
                    repel += 1.0 / (zi - roots[j])
            if dv == 0:
                w = 1e-8 * (1.0 + abs(zi)) * complex(1.0, 1.0)
            else:
                newton = pv / dv
                denom = 1.0 - newton * repel
                if denom == 0:
                    w = newton
                else:
                    w = newton / denom
            if not (np.isfinite(w.real) and np.isfinite(w.imag)):
                w = 1e-8 * (1.0 + abs(zi)) * complex(1.0, 1.0)
            roots[i] = zi - w
            if abs(w) > tol * (1.0 + abs(roots[i])):
                done = False
        if done:
            return roots, it + 1, True
    return roots, max_iter, False
