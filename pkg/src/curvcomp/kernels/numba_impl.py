"""Numba-compiled implementations of the hot kernels.

Same contracts as ``numpy_impl``; loop bodies avoid the large temporaries
the broadcast versions allocate.  Compiled artifacts are cached on disk, so
only the first process on a machine pays the JIT cost.
"""

from __future__ import annotations

import math
import os

import numba
import numpy as np
from numba import njit

BACKEND = "numba"


def _apply_thread_cap():
    # CURVCOMP_THREADS caps the worker pool; 0 (or unset) means automatic.
    raw = os.environ.get("CURVCOMP_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        return
    if n > 0:
        numba.set_num_threads(min(n, numba.config.NUMBA_NUM_THREADS))


_apply_thread_cap()


@njit(cache=True)
def _fourier_eval_impl(a0, coef_a, coef_b, theta):
    n = theta.shape[0]
    K = coef_a.shape[0]
    p = np.empty(n)
    dp = np.empty(n)
    ddp = np.empty(n)
    for i in range(n):
        t = theta[i]
        acc = a0
        dacc = 0.0
        ddacc = 0.0
        for j in range(K):
            k = j + 1.0
            ck = math.cos(k * t)
            sk = math.sin(k * t)
            acc += coef_a[j] * ck + coef_b[j] * sk
            dacc += k * (coef_b[j] * ck - coef_a[j] * sk)
            ddacc -= k * k * (coef_a[j] * ck + coef_b[j] * sk)
        p[i] = acc
        dp[i] = dacc
        ddp[i] = ddacc
    return p, dp, ddp


def fourier_eval(a0, coef_a, coef_b, theta):
    theta = np.ascontiguousarray(np.asarray(theta, dtype=float).ravel())
    a = np.ascontiguousarray(coef_a, dtype=float)
    b = np.ascontiguousarray(coef_b, dtype=float)
    return _fourier_eval_impl(float(a0), a, b, theta)


@njit(cache=True)
def _rolling_extrema_impl(c, tc, thc, tx, thx):
    nP = tc.shape[0]
    nX = tx.shape[0]
    dmin = np.empty(nP)
    dmax = np.empty(nP)
    imin = np.empty(nP, dtype=np.int64)
    imax = np.empty(nP, dtype=np.int64)
    s = math.sqrt(abs(c))
    for i in range(nP):
        t1 = tc[i]
        th1 = thc[i]
        best_lo = np.inf
        best_hi = -np.inf
        arg_lo = 0
        arg_hi = 0
        for j in range(nX):
            t2 = tx[j]
            cosd = math.cos(th1 - thx[j])
            if c == 0.0:
                d2 = t1 * t1 + t2 * t2 - 2.0 * t1 * t2 * cosd
                d = math.sqrt(d2 if d2 > 0.0 else 0.0)
            elif c > 0.0:
                arg = math.cos(s * t1) * math.cos(s * t2) + math.sin(s * t1) * math.sin(s * t2) * cosd
                if arg > 1.0:
                    arg = 1.0
                elif arg < -1.0:
                    arg = -1.0
                d = math.acos(arg) / s
            else:
                arg = math.cosh(s * t1) * math.cosh(s * t2) - math.sinh(s * t1) * math.sinh(s * t2) * cosd
                if arg < 1.0:
                    arg = 1.0
                d = math.acosh(arg) / s
            if d < best_lo:
                best_lo = d
                arg_lo = j
            if d > best_hi:
                best_hi = d
                arg_hi = j
        dmin[i] = best_lo
        imin[i] = arg_lo
        dmax[i] = best_hi
        imax[i] = arg_hi
    return dmin, imin, dmax, imax


def rolling_extrema(c, tc, thc, tx, thx):
    tc = np.ascontiguousarray(tc, dtype=float)
    thc = np.ascontiguousarray(thc, dtype=float)
    tx = np.ascontiguousarray(tx, dtype=float)
    thx = np.ascontiguousarray(thx, dtype=float)
    return _rolling_extrema_impl(float(c), tc, thc, tx, thx)
