"""Pure-numpy implementations of the hot kernels.

Reference semantics for the numba backend; also the fallback selected by
``CURVCOMP_BACKEND=numpy``.
"""

from __future__ import annotations

import numpy as np

BACKEND = "numpy"


def fourier_eval(a0, coef_a, coef_b, theta):
    """Evaluate a trigonometric polynomial and its first two derivatives.

    p(t) = a0 + sum_k a_k cos(k t) + b_k sin(k t), k = 1..K.
    Returns (p, dp, ddp) with theta's shape.
    """
    theta = np.asarray(theta, dtype=float)
    k = np.arange(1, len(coef_a) + 1, dtype=float)
    if len(k) == 0:
        p = np.full_like(theta, a0)
        z = np.zeros_like(theta)
        return p, z, z.copy()
    kt = np.multiply.outer(theta, k)
    ck = np.cos(kt)
    sk = np.sin(kt)
    a = np.asarray(coef_a, dtype=float)
    b = np.asarray(coef_b, dtype=float)
    p = a0 + ck @ a + sk @ b
    dp = ck @ (k * b) - sk @ (k * a)
    ddp = -(ck @ (k * k * a)) - sk @ (k * k * b)
    return p, dp, ddp


def _pairwise_dist(c, tc, thc, tx, thx):
    """Geodesic distance matrix (nP, nX) between chart points in M^2(c)."""
    t1 = tc[:, None]
    t2 = tx[None, :]
    cosd = np.cos(thc[:, None] - thx[None, :])
    if c == 0.0:
        d2 = t1 * t1 + t2 * t2 - 2.0 * t1 * t2 * cosd
        return np.sqrt(np.maximum(d2, 0.0))
    s = np.sqrt(abs(c))
    if c > 0.0:
        arg = np.cos(s * t1) * np.cos(s * t2) + np.sin(s * t1) * np.sin(s * t2) * cosd
        return np.arccos(np.clip(arg, -1.0, 1.0)) / s
    arg = np.cosh(s * t1) * np.cosh(s * t2) - np.sinh(s * t1) * np.sinh(s * t2) * cosd
    return np.arccosh(np.maximum(arg, 1.0)) / s


def rolling_extrema(c, tc, thc, tx, thx):
    """Per-row nearest/farthest boundary sample from each ball center.

    All inputs are 1-d float64 arrays of chart polar coordinates; returns
    (dmin, imin, dmax, imax) over the ``tx``/``thx`` samples for each center.
    Ties resolve to the lowest index.
    """
    tc = np.ascontiguousarray(tc, dtype=float)
    thc = np.ascontiguousarray(thc, dtype=float)
    tx = np.ascontiguousarray(tx, dtype=float)
    thx = np.ascontiguousarray(thx, dtype=float)
    dist = _pairwise_dist(float(c), tc, thc, tx, thx)
    imin = np.argmin(dist, axis=1)
    imax = np.argmax(dist, axis=1)
    rows = np.arange(dist.shape[0])
    return dist[rows, imin], imin.astype(np.int64), dist[rows, imax], imax.astype(np.int64)
