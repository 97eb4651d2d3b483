"""Small vectorized numerical routines used throughout the package.

Everything here is deterministic: fixed iteration counts, no adaptive
stopping rules that depend on floating-point noise.
"""

from __future__ import annotations

import numpy as np

# 2*pi / 2**52 is far below any tolerance used by callers.
BISECT_ITERS = 52


def chebyshev_levels(lo: float, hi: float, n: int) -> np.ndarray:
    """Chebyshev-Lobatto grid on [lo, hi]: clusters at both endpoints, includes them."""
    if n < 2:
        raise ValueError("need at least 2 grid points")
    i = np.arange(n, dtype=float)
    return lo + (hi - lo) * 0.5 * (1.0 - np.cos(np.pi * i / (n - 1)))


def bisect_on(f, lo, hi, iters: int = BISECT_ITERS) -> np.ndarray:
    """Vectorized bisection for roots of ``f`` bracketed by [lo, hi].

    Assumes f(lo) and f(hi) have opposite signs (zeros at the ends are fine).
    ``f`` must accept and return arrays of the bracket shape.
    """
    lo = np.array(lo, dtype=float, copy=True)
    hi = np.array(hi, dtype=float, copy=True)
    flo = np.asarray(f(lo), dtype=float)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        fm = np.asarray(f(mid), dtype=float)
        same = flo * fm > 0.0
        lo = np.where(same, mid, lo)
        flo = np.where(same, fm, flo)
        hi = np.where(same, hi, mid)
    return 0.5 * (lo + hi)


def bracketed_newton(f_df, lo, hi, iters: int = 48) -> np.ndarray:
    """Vectorized Newton iteration safeguarded by a sign-change bracket.

    ``f_df(x)`` returns ``(f, df)`` arrays.  Steps leaving the current
    bracket fall back to bisection, so convergence is at least linear even
    where f is not monotone; roots exactly at a bracket end are reached too.
    """
    lo = np.array(lo, dtype=float, copy=True)
    hi = np.array(hi, dtype=float, copy=True)
    flo, _ = f_df(lo)
    flo = np.asarray(flo, dtype=float).copy()
    x = 0.5 * (lo + hi)
    for _ in range(iters):
        f, df = f_df(x)
        f = np.asarray(f, dtype=float)
        df = np.asarray(df, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            xn = x - f / df
        same = f * flo > 0.0
        lo = np.where(same, x, lo)
        flo = np.where(same, f, flo)
        hi = np.where(same, hi, x)
        bad = ~np.isfinite(xn) | (xn <= lo) | (xn >= hi)
        x = np.where(bad, 0.5 * (lo + hi), xn)
    return x


def menger_curvature(points: np.ndarray, closed: bool = True) -> np.ndarray:
    """Unsigned curvature of a sampled plane curve via circumscribed circles.

    Exact on circles for any sample spacing; second-order accurate otherwise.
    ``points`` is (n, 2); for open curves the two end samples get no value
    (the returned array is shorter by two).
    """
    pts = np.asarray(points, dtype=float)
    if closed:
        prv = np.roll(pts, 1, axis=0)
        nxt = np.roll(pts, -1, axis=0)
        cur = pts
    else:
        prv, cur, nxt = pts[:-2], pts[1:-1], pts[2:]
    a = cur - prv
    b = nxt - cur
    c = nxt - prv
    cross = a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]
    la = np.hypot(a[:, 0], a[:, 1])
    lb = np.hypot(b[:, 0], b[:, 1])
    lc = np.hypot(c[:, 0], c[:, 1])
    with np.errstate(divide="ignore", invalid="ignore"):
        kappa = 2.0 * np.abs(cross) / (la * lb * lc)
    return np.where(la * lb * lc > 0.0, kappa, 0.0)
