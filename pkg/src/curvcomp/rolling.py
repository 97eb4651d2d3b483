"""Rolling-ball containment checks.

Part A: if the body's normal curvature is everywhere at least ``lam``, the
body lies inside every tangent ball of curvature ``lam`` (margin per
tangent point: ball radius minus the farthest boundary sample).  Part B: if
the normal curvature is everywhere at most ``lam``, every tangent ball of
curvature ``lam`` lies inside the body (margin: nearest boundary sample
minus the radius).  Tangent balls share the inner normal with the body at
the tangent point.

Containment is certified by dense sampling plus a reported Lipschitz slack
(max boundary speed times half the sample spacing) bounding what any
inter-sample dip could hide.

Also provides the Euclidean shadow check for surfaces of revolution: the
orthogonal projection of a convex revolution surface has curvature no
larger than the surface's maximum normal curvature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import HypothesisError, InputError, ResolutionError
from .hypersurface import (
    RevolutionSurface,
    Surface,
    eval_p,
    kn_range,
    normal_curvature,
)
from .modelspace import ModelSpace, dist_from_cos_delta, radius_for_curvature
from .numerics import bisect_on, menger_curvature

_HYP_SLACK = 1e-9


@dataclass(frozen=True)
class TangentPointRow:
    """Containment result at one tangent point."""

    theta_P: float
    center_t: float
    center_theta: float
    margin: float
    witness_theta: float


@dataclass(frozen=True)
class RollingReport:
    """Containment margins over all tangent points."""

    part: str  # "A" or "B"
    rows: tuple[TangentPointRow, ...]
    min_margin: float
    witness_theta_P: float
    lipschitz_slack: float
    passed: bool
    meta: dict

    def to_dict(self) -> dict:
        return {
            "part": self.part,
            "rows": [
                [r.theta_P, r.center_t, r.center_theta, r.margin, r.witness_theta]
                for r in self.rows
            ],
            "min_margin": self.min_margin,
            "witness_theta_P": self.witness_theta_P,
            "lipschitz_slack": self.lipschitz_slack,
            "pass": self.passed,
            "meta": self.meta,
        }


def _require_rolling_space(surface: Surface, space: ModelSpace) -> None:
    if not space.is_constant:
        raise InputError("rolling checks need a constant-curvature ambient space")
    if surface.m == 3 and space.c != 0.0:
        raise InputError("rolling checks for revolution surfaces are Euclidean only")


def tangent_ball(
    surface: Surface, space: ModelSpace, theta_P: float, lam: float
) -> tuple[tuple[float, ...], float]:
    """Center (polar chart point) and radius of the curvature-``lam`` ball
    tangent to the body at ``theta_P`` with matching inner normal.

    Curves in curved ambients are handled in the quadric embedding and
    re-charted; Euclidean cases are planar offsets along the inner normal.
    """
    _require_rolling_space(surface, space)
    c = space.c
    r = radius_for_curvature(c, lam)
    theta_P = float(theta_P)
    p, dp, _ = eval_p(surface, space, theta_P)

    if c == 0.0:
        big_w = math.hypot(p, dp)
        e_r = np.array([math.cos(theta_P), math.sin(theta_P)])
        e_t = np.array([-math.sin(theta_P), math.cos(theta_P)])
        point = p * e_r
        n_in = (-p * e_r + dp * e_t) / big_w
        center = point + r * n_in
        t_c = float(np.hypot(center[0], center[1]))
        th_c = float(math.atan2(center[1], center[0])) if t_c > 1e-14 else 0.0
        if surface.m == 3:
            # meridian-plane coordinates: (axis, radial); fold a negative
            # radial part back into the chart via the opposite azimuth
            alpha_c = math.atan2(abs(center[1]), center[0])
            beta_c = 0.0 if center[1] >= 0.0 or t_c <= 1e-14 else math.pi
            return (t_c, alpha_c, beta_c), r
        return (t_c, th_c % (2.0 * math.pi)), r

    s = math.sqrt(abs(c))
    R = 1.0 / s
    ct, st = math.cos(theta_P), math.sin(theta_P)
    if c > 0.0:
        sp, cp_ = math.sin(p / R), math.cos(p / R)
        X = R * np.array([sp * ct, sp * st, cp_])
        dXdt = np.array([cp_ * ct, cp_ * st, -sp])  # unit radial direction
        T = dp * dXdt + R * sp * np.array([-st, ct, 0.0])
        n0 = np.cross(X, T)
        n0 /= np.linalg.norm(n0)
        if np.dot(n0, dXdt) > 0.0:
            n0 = -n0
        Y = math.cos(r / R) * X + R * math.sin(r / R) * n0
        z = Y[2] / R
        t_c = R * math.acos(max(-1.0, min(1.0, z)))
        if t_c > math.pi * R * (1.0 - 1e-9):
            raise InputError("tangent ball center leaves the regular chart region")
        rho = math.hypot(Y[0], Y[1])
        th_c = math.atan2(Y[1], Y[0]) if rho > 1e-14 else 0.0
        return (t_c, th_c % (2.0 * math.pi)), r

    sp, cp_ = math.sinh(p / R), math.cosh(p / R)
    X = R * np.array([sp * ct, sp * st, cp_])
    dXdt = np.array([cp_ * ct, cp_ * st, sp])
    T = dp * dXdt + R * sp * np.array([-st, ct, 0.0])
    n0 = np.array([X[1] * T[2] - X[2] * T[1], X[2] * T[0] - X[0] * T[2], -(X[0] * T[1] - X[1] * T[0])])
    norm2 = n0[0] * n0[0] + n0[1] * n0[1] - n0[2] * n0[2]
    n0 /= math.sqrt(norm2)
    minkowski_dot = n0[0] * dXdt[0] + n0[1] * dXdt[1] - n0[2] * dXdt[2]
    if minkowski_dot > 0.0:
        n0 = -n0
    Y = math.cosh(r / R) * X + R * math.sinh(r / R) * n0
    t_c = R * math.acosh(max(1.0, Y[2] / R))
    rho = math.hypot(Y[0], Y[1])
    th_c = math.atan2(Y[1], Y[0]) if rho > 1e-14 else 0.0
    return (t_c, th_c % (2.0 * math.pi)), r


def _boundary_samples(surface: Surface, space: ModelSpace, n_X: int):
    """(t, theta_flat..., cosdelta machinery inputs) of the containment grid."""
    if surface.m == 2:
        thx = np.linspace(0.0, 2.0 * math.pi, n_X, endpoint=False)
        tx = np.atleast_1d(eval_p(surface, space, thx)[0])
        return thx, tx, thx
    alpha = np.linspace(0.0, math.pi, n_X)
    beta = np.linspace(0.0, 2.0 * math.pi, n_X, endpoint=False)
    A, B = np.meshgrid(alpha, beta, indexing="ij")
    talpha = np.atleast_1d(eval_p(surface, space, alpha)[0])
    TX = np.broadcast_to(talpha[:, None], A.shape)
    return (A.ravel(), B.ravel()), TX.ravel(), alpha


def _containment(
    surface: Surface,
    space: ModelSpace,
    lam: float,
    n_P: int,
    n_X: int,
    part: str,
    tol: float,
) -> RollingReport:
    _require_rolling_space(surface, space)
    k_min, k_max = kn_range(surface, space, max(256, n_P))
    if part == "A" and lam > k_min + _HYP_SLACK * max(1.0, lam):
        raise HypothesisError(
            f"ball curvature {lam:g} exceeds the body's minimum normal curvature {k_min:g}"
        )
    if part == "B" and lam < k_max - _HYP_SLACK * max(1.0, lam):
        raise HypothesisError(
            f"ball curvature {lam:g} is below the body's maximum normal curvature {k_max:g}"
        )
    lo, hi = surface.theta_domain()
    if surface.periodic:
        thetas_P = np.linspace(lo, hi, n_P, endpoint=False)
    else:
        thetas_P = np.linspace(lo, hi, n_P)
    centers = [tangent_ball(surface, space, th, lam) for th in thetas_P]
    r = centers[0][1]

    if surface.m == 2:
        thx = np.linspace(lo, hi, n_X, endpoint=False)
        px, dpx, _ = eval_p(surface, space, thx)
        ct = np.array([cen[0][0] for cen in centers])
        cth = np.array([cen[0][1] for cen in centers])
        dmin, imin, dmax, imax = kernels.rolling_extrema(space.c, ct, cth, px, thx)
        speed = np.hypot(np.atleast_1d(space.warp(px)), dpx)
        lip = float(np.max(speed)) * (hi - lo) / n_X / 2.0
        if part == "A":
            margins = r - dmax
            witnesses = thx[imax]
        else:
            margins = dmin - r
            witnesses = thx[imin]
    else:
        (alpha_f, beta_f), tx_f, alpha = _boundary_samples(surface, space, n_X)
        cos_a = np.cos(alpha_f)
        sin_a = np.sin(alpha_f)
        margins = np.empty(n_P)
        witnesses = np.empty(n_P)
        palpha, dpalpha, _ = eval_p(surface, space, alpha)
        speed = np.max(np.hypot(np.atleast_1d(palpha), dpalpha))
        lip = float(speed) * math.pi / n_X / 2.0
        for i, ((t_c, a_c, b_c), _) in enumerate(centers):
            cosd = math.cos(a_c) * cos_a + math.sin(a_c) * sin_a * np.cos(b_c - beta_f)
            dist = dist_from_cos_delta(space.c, t_c, tx_f, cosd)
            if part == "A":
                j = int(np.argmax(dist))
                margins[i] = r - dist[j]
            else:
                j = int(np.argmin(dist))
                margins[i] = dist[j] - r
            witnesses[i] = alpha_f[j]

    rows = tuple(
        TangentPointRow(
            float(thetas_P[i]),
            float(centers[i][0][0]),
            float(centers[i][0][1]),
            float(margins[i]),
            float(witnesses[i]),
        )
        for i in range(n_P)
    )
    i_min = int(np.argmin(margins))
    min_margin = float(margins[i_min])
    return RollingReport(
        part=part,
        rows=rows,
        min_margin=min_margin,
        witness_theta_P=float(thetas_P[i_min]),
        lipschitz_slack=lip,
        passed=min_margin >= -tol,
        meta={
            "lambda": lam,
            "r": r,
            "k_range": [k_min, k_max],
            "n_P": n_P,
            "n_X": n_X,
            "tol": tol,
            "certified_min_margin": min_margin - lip,
        },
    )


def check_part_a(
    surface: Surface,
    space: ModelSpace,
    lam: float,
    n_P: int = 256,
    n_X: int = 4096,
    tol: float = 1e-8,
) -> RollingReport:
    """Body inside every tangent ball of curvature lam <= min normal curvature."""
    return _containment(surface, space, lam, n_P, n_X, "A", tol)


def check_part_b(
    surface: Surface,
    space: ModelSpace,
    lam: float,
    n_P: int = 256,
    n_X: int = 4096,
    tol: float = 1e-8,
) -> RollingReport:
    """Every tangent ball of curvature lam >= max normal curvature inside the body."""
    return _containment(surface, space, lam, n_P, n_X, "B", tol)


@dataclass(frozen=True)
class ProjectionReport:
    """Shadow-curvature check of a revolution surface."""

    max_shadow_curvature: float
    k_max: float
    passed: bool
    n_silhouette: int
    meta: dict
    shadow: np.ndarray | None = None  # projected silhouette samples (n, 2)

    def to_dict(self) -> dict:
        return {
            "max_shadow_curvature": self.max_shadow_curvature,
            "k_max": self.k_max,
            "pass": self.passed,
            "n_silhouette": self.n_silhouette,
            "meta": self.meta,
        }


def projection_lemma_check(
    surface: RevolutionSurface,
    space: ModelSpace,
    direction,
    n: int = 2048,
    tol: float = 1e-4,
) -> ProjectionReport:
    """Check that the orthogonal shadow of a convex revolution surface has
    curvature at most the surface's maximum normal curvature.

    ``direction`` is the projection direction (the shadow lives in the
    orthogonal plane); it must be parallel or perpendicular to the symmetry
    axis (the chart's polar axis).  The silhouette is located by
    root-finding the normal's component along ``direction`` on parameter
    lines; the shadow curvature comes from circumscribed circles through
    consecutive silhouette samples.
    """
    if not isinstance(surface, RevolutionSurface):
        raise InputError("projection check needs a revolution surface")
    if not (space.is_constant and space.c == 0.0):
        raise InputError("projection check is Euclidean")
    v = np.asarray(direction, dtype=float)
    if v.shape != (3,) or not np.all(np.isfinite(v)) or np.linalg.norm(v) == 0.0:
        raise InputError("projection direction must be a nonzero 3-vector")
    v = v / np.linalg.norm(v)
    k_min, k_max = kn_range(surface, space, max(256, n // 4))
    if k_min <= 0.0:
        raise HypothesisError("projection check needs a convex surface")
    axis_dot = abs(v[0])  # symmetry axis is the chart polar axis (x)
    silhouette_at: dict[str, float] = {}

    if axis_dot > 1.0 - 1e-9:
        # Shadow is the silhouette parallel: on each meridian, find where the
        # meridian normal is orthogonal to the axis, i.e. d(p sin a)/da = 0.
        def g(alpha):
            p, dp, _ = eval_p(surface, space, alpha)
            return np.atleast_1d(dp * np.sin(alpha) + p * np.cos(alpha))

        grid = np.linspace(1e-9, math.pi - 1e-9, n)
        vals = g(grid)
        sign = vals[:-1] * vals[1:] < 0.0
        if not np.any(sign):
            raise ResolutionError("silhouette parallel not found at this resolution")
        a_lo = grid[:-1][sign][0]
        a_hi = grid[1:][sign][0]
        alpha_s = float(bisect_on(g, np.array([a_lo]), np.array([a_hi]))[0])
        silhouette_at["alpha"] = alpha_s
        p_s = float(eval_p(surface, space, alpha_s)[0])
        rho = p_s * math.sin(alpha_s)
        beta = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
        shadow = np.column_stack([rho * np.cos(beta), rho * np.sin(beta)])
        n_sil = n
    elif axis_dot < 1e-9:
        # Shadow is the meridian cross-section through the plane containing
        # the axis and orthogonal to v: on each parallel, solve <u(beta), v> = 0.
        vy, vz = v[1], v[2]

        def w(beta):
            return np.atleast_1d(vy * np.cos(beta) + vz * np.sin(beta))

        bgrid = np.linspace(0.0, 2.0 * math.pi, 8, endpoint=False)
        vals = w(bgrid)
        wrap = np.append(vals, vals[0])
        sign = wrap[:-1] * wrap[1:] < 0.0
        if not np.any(sign):
            raise ResolutionError("silhouette meridian plane not found")
        roots = bisect_on(w, bgrid[sign], (np.append(bgrid[1:], 2.0 * math.pi))[sign])
        silhouette_at["beta"] = float(np.min(roots))
        # Projected onto the plane spanned by the axis and u(beta0), the
        # silhouette meridian pair is the profile cross-section curve.
        alpha = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
        fold = np.where(alpha <= math.pi, alpha, 2.0 * math.pi - alpha)
        side = np.where(alpha <= math.pi, 1.0, -1.0)
        pf = np.atleast_1d(eval_p(surface, space, fold)[0])
        shadow = np.column_stack([pf * np.cos(fold), side * pf * np.sin(fold)])
        n_sil = n
    else:
        raise InputError(
            "projection direction must be parallel or perpendicular to the symmetry axis"
        )

    kappa = menger_curvature(shadow, closed=True)
    max_kappa = float(np.max(kappa))
    return ProjectionReport(
        max_shadow_curvature=max_kappa,
        k_max=k_max,
        passed=max_kappa <= k_max + tol,
        n_silhouette=n_sil,
        meta={
            "direction": [float(x) for x in v],
            "tol": tol,
            "k_min": k_min,
            "silhouette_at": silhouette_at,
        },
        shadow=shadow,
    )
