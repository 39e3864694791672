"""Structured transforms: generalized lower-triangular Pascal matrices,
geometric diagonals, Bernstein matrices and the balanced Toeplitz split.

All binomial-coefficient content is built by additive recurrences (never
factorial ratios), so the integer paths stay exact and the float paths do
not overflow until far beyond the orders used here.
"""

import math

import numpy as np
from scipy.special import gammaln

from .backend import kernels

# crossover to the FFT path; below it the O(n^2) shear passes are both
# faster at these sizes and exact on inputs whose transform cancels
# (a constant polygon's alternating-sign scale must map to one nonzero)
FAST_ORDER = 64


def _work_dtype(*values):
    dtype = np.result_type(*(np.asarray(v) for v in values))
    if np.issubdtype(dtype, np.integer):
        return np.int64
    if np.issubdtype(dtype, np.complexfloating):
        return np.complex128
    return np.float64


def pascal_matrix(n, alpha=1.0, dtype=None):
    """Dense lower-triangular generalized Pascal matrix of order n.

    Entry (i, j), 1-based, is alpha**(i-j) * C(i-1, j-1); built by the
    additive recurrence so integer inputs give exact integer entries.
    """
    if n < 1:
        raise ValueError("order must be >= 1")
    if dtype is None:
        dtype = _work_dtype(alpha)
    P = np.zeros((n, n), dtype=dtype)
    P[0, 0] = 1
    for i in range(1, n):
        P[i, 0] = alpha * P[i - 1, 0]
        P[i, 1 : i + 1] = alpha * P[i - 1, 1 : i + 1] + P[i - 1, 0:i]
    return P


def geometric_diagonal(n, alpha):
    """diag(1, alpha, ..., alpha**(n-1))."""
    if n < 1:
        raise ValueError("order must be >= 1")
    base = np.asarray(alpha, dtype=_work_dtype(alpha))
    return np.diag(base ** np.arange(n))


def bernstein_matrix(n, s):
    """Dense lower-triangular Bernstein matrix; row i holds the degree-(i-1)
    basis values C(i-1,j-1) s^(j-1) (1-s)^(i-j)."""
    if n < 1:
        raise ValueError("order must be >= 1")
    B = np.zeros((n, n))
    B[0, 0] = 1.0
    for i in range(1, n):
        B[i, 0] = (1.0 - s) * B[i - 1, 0]
        B[i, 1 : i + 1] = (1.0 - s) * B[i - 1, 1 : i + 1] + s * B[i - 1, 0:i]
    return B


def pascal_matvec(n, alpha, v):
    """P_n[alpha] @ v by n-1 in-place shear passes.

    O(n^2) additions; exact when alpha and v are integers (int64 working
    type, so exact until entries overflow 63 bits).
    """
    v = np.asarray(v)
    if v.shape != (n,):
        raise ValueError(f"vector length {v.shape} does not match order {n}")
    out = v.astype(_work_dtype(v, alpha))
    for k in range(1, n):
        out[k:] = out[k:] + alpha * out[k - 1 : n - 1]
    return out


def pascal_compose_check(n, alpha, beta):
    """Verify P_n[alpha] P_n[beta] == P_n[alpha+beta] entrywise.

    Exact comparison for integer inputs, tolerance 1e-12 (relative to the
    largest entry) otherwise.
    """
    left = pascal_matrix(n, alpha) @ pascal_matrix(n, beta)
    right = pascal_matrix(n, alpha + beta)
    if left.dtype.kind in "iu" and right.dtype.kind in "iu":
        return bool(np.array_equal(left, right))
    scale = max(1.0, float(np.abs(right).max()))
    return bool(np.abs(left - right).max() <= 1e-12 * scale)


def toeplitz_scale_param(n):
    """Balance parameter t = ((n-1)!)**(1/(n-1)), computed in log space.

    Equalizes the extreme column entries t^k/k! (k = 0 and k = n-1), which
    maximizes their min/max ratio over the column.
    """
    if n < 2:
        raise ValueError("order must be >= 2")
    return math.exp(math.lgamma(n) / (n - 1))


def toeplitz_kernel_column(n, t):
    """First column c_k = t**k / k! of the scaled Toeplitz factor."""
    if n < 1 or t <= 0.0:
        raise ValueError("need order >= 1 and t > 0")
    k = np.arange(n)
    return np.exp(k * math.log(t) - gammaln(k + 1.0))


def pascal_matvec_fast(n, v):
    """P_n @ v via the balanced split P_n = D1 T(t) D2 and an FFT circulant.

    D1 = diag(k!/t^k), D2 = diag(t^k/k!), T(t) lower-triangular Toeplitz
    with first column t^k/k!; the Toeplitz product is embedded in a
    circulant of the next power-of-two size >= 2n-1.
    """
    v = np.asarray(v)
    if v.shape != (n,):
        raise ValueError(f"vector length {v.shape} does not match order {n}")
    if n == 1:
        return v.astype(_work_dtype(v, 1.0))
    c = toeplitz_kernel_column(n, toeplitz_scale_param(n))
    size = 1 << (2 * n - 2).bit_length()
    w = c * v
    if np.iscomplexobj(v):
        conv = np.fft.ifft(np.fft.fft(c, size) * np.fft.fft(w, size))[:n]
    else:
        conv = np.fft.irfft(np.fft.rfft(c, size) * np.fft.rfft(w, size), size)[:n]
    return conv / c


def pascal_apply(n, v):
    """P_n @ v: direct shear passes up to order 64, the FFT split above."""
    if n <= FAST_ORDER:
        return pascal_matvec(n, 1.0, v)
    return pascal_matvec_fast(n, v)


def bernstein_matvec(s, v):
    """B_n^e(s) @ v through the bidiagonal factor sweep.

    Every sweep mixes consecutive entries with weights (1-s, s), so the
    whole product uses only nonnegative combinations.
    """
    if not 0.0 <= s <= 1.0:
        raise ValueError("parameter must lie in [0, 1]")
    return kernels.bernstein_apply(np.ascontiguousarray(v, dtype=np.float64), float(s))


def hankel_congruence(h, alpha):
    """Anti-diagonals of P_m[alpha] H P_m[alpha]^T for H with anti-diagonals h.

    The congruence maps anti-diagonals to anti-diagonals; the output vector
    is P_{2m-1}[alpha] @ h. Small orders use the direct shear passes, larger
    ones the scaled FFT path (geometric rescale, plain-Pascal fast matvec,
    rescale back). alpha = 0 short-circuits to the identity.
    """
    h = np.asarray(h)
    n2 = h.shape[0]
    if h.ndim != 1 or n2 % 2 == 0:
        raise ValueError("anti-diagonal vector must be 1-D with odd length")
    if alpha == 0:
        return h.copy()
    if n2 <= FAST_ORDER:
        return pascal_matvec(n2, alpha, h)
    a = np.asarray(alpha, dtype=_work_dtype(alpha, 1.0))
    k = np.arange(n2)
    return pascal_matvec_fast(n2, h * a ** (-k)) * a**k


def antidiagonals(M):
    """Anti-diagonal profile of a square matrix: (means, max in-diagonal spread)."""
    m = M.shape[0]
    flipped = M[:, ::-1]
    means = np.empty(2 * m - 1, dtype=M.dtype)
    spread = 0.0
    for k in range(2 * m - 1):
        vals = np.diagonal(flipped, offset=m - 1 - k)
        means[k] = vals.mean()
        if vals.size > 1:
            spread = max(spread, float(np.abs(vals - vals[0]).max()))
    return means, spread


def dense_hankel(x):
    """Dense Hankel matrix with anti-diagonal values x (odd length)."""
    x = np.asarray(x)
    m = (x.shape[0] + 1) // 2
    idx = np.add.outer(np.arange(m), np.arange(m))
    return x[idx]


def pascal_hankel_identity_check(m, x, tol=1e-12):
    """Oracle: P_{2m-1} @ x equals the anti-diagonals of P_m H_x P_m^T.

    Expands the congruence densely (O(m^3)), so use only at test orders.
    """
    x = np.asarray(x, dtype=np.float64)
    n2 = 2 * m - 1
    if x.shape != (n2,):
        raise ValueError("need 2m-1 anti-diagonal values")
    a = pascal_matvec(n2, 1.0, x)
    P = pascal_matrix(m, 1.0, dtype=np.float64)
    M = P @ dense_hankel(x) @ P.T
    means, spread = antidiagonals(M)
    scale = max(1.0, float(np.abs(M).max()))
    return bool(spread <= tol * scale and np.abs(means - a).max() <= tol * max(1.0, float(np.abs(a).max())))
