"""Verifiers for the angle and support comparisons against constant-curvature
reference spheres.

``lower`` mode checks that a body whose normal curvatures are bounded below
by ``k_ref`` (in a space of curvature bounded below by ``c_ref``) has, on
every distance level set, angle cosine and support value at least those of
the reference sphere of curvature ``k_ref`` in M(c_ref), positioned so both
bodies sit at the same distance from their base points.  ``upper`` mode
checks the reversed inequalities for upper curvature bounds.

Every verifier validates its hypotheses before sweeping; violations raise
HypothesisError rather than producing a silent pass or fail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import FeasibilityError, HypothesisError, InputError
from .hypersurface import (
    MonotoneSegment,
    Surface,
    eval_p,
    kn_range,
    monotone_segments,
    normal_angle_cos,
    rho_extrema,
    support_function,
)
from .modelspace import (
    ModelSpace,
    radius_for_curvature,
    sn,
    sphere_angle,
    sphere_support,
    validate_half_ball,
)
from .numerics import bisect_on, chebyshev_levels

# Slack for hypothesis comparisons against sampled extrema: the exact
# equality configurations (k_ref equal to the sphere curvature) must not be
# rejected for roundoff.
_HYP_SLACK = 1e-9
# Sampled level ranges may exceed the reference sphere's reach by at most
# this before the run is flagged.
_CONTAINMENT_SLACK = 1e-7

_DEFAULT_TOL_CONSTANT = 1e-7
_DEFAULT_TOL_WARPED = 1e-5


@dataclass(frozen=True)
class ComparisonConfig:
    """Reference data for one comparison run.

    ``mode`` is "lower" (k_ref, c_ref are lower bounds) or "upper" (upper
    bounds).  ``tol`` defaults per space kind: 1e-7 for constant curvature,
    1e-5 for warped profiles (extra root-finding layers).
    """

    mode: str
    k_ref: float
    c_ref: float
    n_levels: int = 64
    tol: float | None = None

    def __post_init__(self):
        if self.mode not in ("lower", "upper"):
            raise InputError(f"comparison mode must be 'lower' or 'upper', got {self.mode!r}")
        if not (self.k_ref > 0.0):
            raise InputError("reference curvature must be positive")
        if self.n_levels < 2:
            raise InputError("need at least 2 levels")

    def tolerance(self, space: ModelSpace) -> float:
        if self.tol is not None:
            return self.tol
        return _DEFAULT_TOL_CONSTANT if space.is_constant else _DEFAULT_TOL_WARPED


@dataclass(frozen=True)
class LevelRow:
    """One level of a comparison sweep."""

    l: float
    surface_value: float
    sphere_value: float
    margin: float


@dataclass(frozen=True)
class HypothesisSummary:
    """Validated scene data the verifiers (and reports) rely on."""

    k_min: float
    k_max: float
    space_curv_min: float
    space_curv_max: float
    d: float
    rho_max: float
    half_ball_ok: bool
    segments: tuple[MonotoneSegment, ...] = field(repr=False, default=())

    def to_dict(self) -> dict:
        return {
            "k_min": self.k_min,
            "k_max": self.k_max,
            "space_curvature_min": self.space_curv_min,
            "space_curvature_max": self.space_curv_max,
            "d": self.d,
            "rho_max": self.rho_max,
            "half_ball_ok": self.half_ball_ok,
        }


@dataclass(frozen=True)
class ComparisonReport:
    """Per-level margins of one sweep, with the extremal witness."""

    quantity: str  # "angle", "support", or "dual"
    rows: tuple[LevelRow, ...]
    rows_support: tuple[LevelRow, ...] | None
    min_margin: float
    witness_level: float
    witness_theta: float
    passed: bool
    meta: dict

    def all_rows(self) -> list[tuple[str, LevelRow]]:
        out = [("angle", r) for r in self.rows]
        if self.rows_support is not None:
            out.extend(("support", r) for r in self.rows_support)
        return out

    def to_dict(self) -> dict:
        payload = {
            "quantity": self.quantity,
            "rows": [
                [r.l, r.surface_value, r.sphere_value, r.margin] for r in self.rows
            ],
            "min_margin": self.min_margin,
            "witness_level": self.witness_level,
            "witness_theta": self.witness_theta,
            "pass": self.passed,
            "meta": self.meta,
        }
        if self.rows_support is not None:
            payload["rows_support"] = [
                [r.l, r.surface_value, r.sphere_value, r.margin] for r in self.rows_support
            ]
        return payload


def hypothesis_summary(surface: Surface, space: ModelSpace, n: int = 256) -> HypothesisSummary:
    """Measure the body and space quantities every hypothesis check uses."""
    k_min, k_max = kn_range(surface, space, n)
    c_min, c_max = space.curvature_bounds(n)
    ext = rho_extrema(surface, space)
    segs = tuple(monotone_segments(surface, space))
    return HypothesisSummary(
        k_min=k_min,
        k_max=k_max,
        space_curv_min=c_min,
        space_curv_max=c_max,
        d=ext.d,
        rho_max=ext.rho_max,
        half_ball_ok=validate_half_ball(c_max, ext.rho_max),
        segments=segs,
    )


def _validate_lower(hyp: HypothesisSummary, config: ComparisonConfig) -> None:
    if config.mode != "lower":
        raise InputError("this check needs a lower-bound configuration")
    if config.k_ref > hyp.k_min + _HYP_SLACK * max(1.0, config.k_ref):
        raise HypothesisError(
            f"reference curvature {config.k_ref:g} exceeds the body's minimum "
            f"normal curvature {hyp.k_min:g}"
        )
    if config.c_ref > hyp.space_curv_min + _HYP_SLACK * max(1.0, abs(config.c_ref)):
        raise HypothesisError(
            f"reference space curvature {config.c_ref:g} exceeds the ambient "
            f"minimum sectional curvature {hyp.space_curv_min:g}"
        )
    if not hyp.half_ball_ok:
        raise HypothesisError(
            f"body of radius {hyp.rho_max:g} leaves the half ball of the ambient "
            f"curvature maximum {hyp.space_curv_max:g}"
        )


def _validate_upper(hyp: HypothesisSummary, config: ComparisonConfig, star_shaped: bool) -> None:
    if config.mode != "upper":
        raise InputError("this check needs an upper-bound configuration")
    if config.k_ref < hyp.k_max - _HYP_SLACK * max(1.0, config.k_ref):
        raise HypothesisError(
            f"reference curvature {config.k_ref:g} is below the body's maximum "
            f"normal curvature {hyp.k_max:g}"
        )
    if not star_shaped and hyp.k_min <= 0.0:
        raise HypothesisError("body must have positive normal curvature")
    if config.c_ref < hyp.space_curv_max - _HYP_SLACK * max(1.0, abs(config.c_ref)):
        raise HypothesisError(
            f"reference space curvature {config.c_ref:g} is below the ambient "
            f"maximum sectional curvature {hyp.space_curv_max:g}"
        )
    if not hyp.half_ball_ok:
        raise HypothesisError("body leaves the ambient half ball")
    if not validate_half_ball(config.c_ref, hyp.rho_max):
        raise HypothesisError(
            f"body of radius {hyp.rho_max:g} leaves the half ball "
            f"pi/(2 sqrt(c2)) of the reference curvature {config.c_ref:g}"
        )


def _feasible_radius(config: ComparisonConfig, d: float) -> float:
    r_ref = radius_for_curvature(config.c_ref, config.k_ref)
    if d > r_ref * (1.0 + 1e-12):
        raise FeasibilityError(
            f"no valid base point for the comparison sphere: the body's nearest "
            f"distance d = {d:g} exceeds the sphere radius r = {r_ref:g}; choose the "
            f"origin closer to the boundary (e.g. an offset body)"
        )
    return r_ref


def _level_set_thetas(
    surface: Surface,
    space: ModelSpace,
    segments: tuple[MonotoneSegment, ...],
    levels: np.ndarray,
) -> np.ndarray:
    """Angles of every level-set point, one row per monotone segment.

    Entry (s, i) is the angle where segment s crosses levels[i], NaN where
    the segment does not reach that level.  Levels equal to a segment
    endpoint value (within roundoff) are snapped to the endpoint.
    """
    n_l = len(levels)
    thetas = np.full((len(segments), n_l), np.nan)
    for si, seg in enumerate(segments):
        snap = 1e-12 * max(1.0, seg.p_max)
        inside = (levels >= seg.p_min - snap) & (levels <= seg.p_max + snap)
        if not np.any(inside):
            continue
        lvl = np.clip(levels[inside], seg.p_min, seg.p_max)
        lo = np.full(lvl.shape, seg.theta_lo)
        hi = np.full(lvl.shape, seg.theta_hi)

        def crossing(th, lvl=lvl):
            p = np.atleast_1d(eval_p(surface, space, th)[0])
            return p - lvl

        roots = bisect_on(crossing, lo, hi)
        at_lo = np.abs(lvl - seg.p_lo) <= snap
        at_hi = np.abs(lvl - seg.p_hi) <= snap
        roots = np.where(at_lo, seg.theta_lo, np.where(at_hi, seg.theta_hi, roots))
        thetas[si, inside] = roots
    return thetas


def _sweep(
    surface: Surface,
    space: ModelSpace,
    hyp: HypothesisSummary,
    config: ComparisonConfig,
    r_ref: float,
    quantity: str,
    worst_is_max: bool,
) -> tuple[list[LevelRow], float, float, float]:
    """Common level sweep.  Returns (rows, min_margin, witness_level, witness_theta)."""
    d = hyp.d
    l_max = min(hyp.rho_max, 2.0 * r_ref - d)
    levels = chebyshev_levels(d, l_max, config.n_levels)
    thetas = _level_set_thetas(surface, space, hyp.segments, levels)
    flat = thetas.ravel()
    valid = np.isfinite(flat)
    values = np.full(flat.shape, np.nan)
    if np.any(valid):
        if quantity == "angle":
            values[valid] = np.atleast_1d(normal_angle_cos(surface, space, flat[valid]))
        else:
            values[valid] = np.atleast_1d(support_function(surface, space, flat[valid]))
    values = values.reshape(thetas.shape)

    if quantity == "angle":
        ref = np.atleast_1d(sphere_angle(config.c_ref, config.k_ref, d, levels))
    else:
        ref = np.atleast_1d(sphere_support(config.c_ref, config.k_ref, d, levels))

    if worst_is_max:
        worst = np.nanmax(values, axis=0)
        pick = np.nanargmax(np.where(np.isnan(values), -np.inf, values), axis=0)
        margins = ref - worst
    else:
        worst = np.nanmin(values, axis=0)
        pick = np.nanargmin(np.where(np.isnan(values), np.inf, values), axis=0)
        margins = worst - ref

    rows = [
        LevelRow(float(l), float(sv), float(rv), float(mg))
        for l, sv, rv, mg in zip(levels, worst, ref, margins)
    ]
    i_min = int(np.argmin(margins))
    witness_theta = float(thetas[pick[i_min], i_min])
    return rows, float(margins[i_min]), float(levels[i_min]), witness_theta


def _check_containment(hyp: HypothesisSummary, r_ref: float) -> None:
    """Under the lower-bound hypotheses every attained level must be reachable
    by the comparison sphere; flag (rather than clip) violations."""
    if hyp.rho_max > 2.0 * r_ref - hyp.d + _CONTAINMENT_SLACK:
        raise HypothesisError(
            f"body reaches distance {hyp.rho_max:g} beyond the comparison sphere's "
            f"span 2r - d = {2.0 * r_ref - hyp.d:g}; a lower-bound hypothesis must "
            "be violated"
        )


def _meta(config, space, hyp, r_ref, tol) -> dict:
    return {
        "mode": config.mode,
        "k_ref": config.k_ref,
        "c_ref": config.c_ref,
        "r_ref": r_ref,
        "d": hyp.d,
        "rho_max": hyp.rho_max,
        "k_range": [hyp.k_min, hyp.k_max],
        "space_curvature_range": [hyp.space_curv_min, hyp.space_curv_max],
        "tol": tol,
        "n_levels": config.n_levels,
    }


def verify_angle(surface: Surface, space: ModelSpace, config: ComparisonConfig) -> ComparisonReport:
    """Check the level-set angle comparison for a lower curvature bound.

    For each level l in [d, min(rho_max, 2r - d)], the minimum of the
    body's normal-angle cosine over the level set must be at least the
    reference sphere's value at the same level.
    """
    hyp = hypothesis_summary(surface, space)
    _validate_lower(hyp, config)
    r_ref = _feasible_radius(config, hyp.d)
    _check_containment(hyp, r_ref)
    tol = config.tolerance(space)
    rows, min_margin, wl, wt = _sweep(surface, space, hyp, config, r_ref, "angle", False)
    return ComparisonReport(
        "angle", tuple(rows), None, min_margin, wl, wt, min_margin >= -tol,
        _meta(config, space, hyp, r_ref, tol),
    )


def verify_support(surface: Surface, space: ModelSpace, config: ComparisonConfig) -> ComparisonReport:
    """Check the level-set support-function comparison for a lower bound.

    The margin per level is l times the angle margin, but it is computed
    independently from the support values for redundancy.
    """
    hyp = hypothesis_summary(surface, space)
    _validate_lower(hyp, config)
    r_ref = _feasible_radius(config, hyp.d)
    _check_containment(hyp, r_ref)
    tol = config.tolerance(space)
    rows, min_margin, wl, wt = _sweep(surface, space, hyp, config, r_ref, "support", False)
    return ComparisonReport(
        "support", tuple(rows), None, min_margin, wl, wt, min_margin >= -tol,
        _meta(config, space, hyp, r_ref, tol),
    )


def verify_dual(surface: Surface, space: ModelSpace, config: ComparisonConfig) -> ComparisonReport:
    """Check the reversed angle and support comparisons for an upper bound.

    The reference sphere of curvature k_ref >= k_max must dominate the
    body's worst (largest) angle cosine and support value on every level
    it reaches; levels beyond the sphere's span 2r - d are legitimately
    unattained by it and are not swept.
    """
    hyp = hypothesis_summary(surface, space)
    _validate_upper(hyp, config, getattr(surface, "star_shaped_mode", False))
    r_ref = _feasible_radius(config, hyp.d)
    tol = config.tolerance(space)
    rows_a, mm_a, wl_a, wt_a = _sweep(surface, space, hyp, config, r_ref, "angle", True)
    rows_s, mm_s, wl_s, wt_s = _sweep(surface, space, hyp, config, r_ref, "support", True)
    if mm_a <= mm_s:
        min_margin, wl, wt = mm_a, wl_a, wt_a
    else:
        min_margin, wl, wt = mm_s, wl_s, wt_s
    return ComparisonReport(
        "dual", tuple(rows_a), tuple(rows_s), min_margin, wl, wt, min_margin >= -tol,
        _meta(config, space, hyp, r_ref, tol),
    )


@dataclass(frozen=True)
class MonotoneReport:
    """Result of the trajectory monotonicity check."""

    passed: bool
    min_slope: float
    f_at_d: float
    min_f: float
    t: tuple[float, ...]
    f: tuple[float, ...]
    product: tuple[float, ...]
    meta: dict

    def to_dict(self) -> dict:
        return {
            "pass": self.passed,
            "min_slope": self.min_slope,
            "f_at_d": self.f_at_d,
            "min_f": self.min_f,
            "meta": self.meta,
        }


def verify_monotone(
    surface: Surface,
    space: ModelSpace,
    config: ComparisonConfig,
    segment: MonotoneSegment,
    n: int = 512,
) -> MonotoneReport:
    """Check the monotonicity driving the angle comparison along a trajectory.

    Along a gradient trajectory rooted at the body's nearest point, the
    deficit f(t) = cos_angle(t) - sphere_angle(c_ref, k_ref, d, t) vanishes
    at t = d, the product f(t) * sn(c_ref, t) must be nondecreasing, and
    f itself must stay nonnegative.  The segment must be rooted at the
    global minimum of the radial function.
    """
    hyp = hypothesis_summary(surface, space)
    _validate_lower(hyp, config)
    r_ref = _feasible_radius(config, hyp.d)
    _check_containment(hyp, r_ref)
    tol = config.tolerance(space)
    if abs(segment.p_min - hyp.d) > 1e-9 * max(1.0, hyp.d):
        raise InputError(
            f"segment is rooted at p = {segment.p_min:g}, not at the global "
            f"minimum d = {hyp.d:g}"
        )
    span = segment.theta_hi - segment.theta_lo
    grid = segment.theta_lo + span * np.arange(n) / (n - 1.0)
    theta = grid if segment.increasing else grid[::-1]
    p = np.atleast_1d(eval_p(surface, space, theta)[0])
    # clip roundoff outside the sphere's reach at the trajectory ends
    t_vals = np.clip(p, hyp.d, 2.0 * r_ref - hyp.d)
    cos_vals = np.atleast_1d(normal_angle_cos(surface, space, theta))
    f = cos_vals - np.atleast_1d(sphere_angle(config.c_ref, config.k_ref, hyp.d, t_vals))
    product = f * np.atleast_1d(sn(config.c_ref, t_vals))
    dt = np.diff(t_vals)
    dg = np.diff(product)
    ok = dt > 1e-14
    slopes = np.where(ok, dg / np.where(ok, dt, 1.0), np.inf)
    min_slope = float(np.min(slopes)) if len(slopes) else 0.0
    f_at_d = float(f[0])
    min_f = float(np.min(f))
    passed = abs(f_at_d) <= tol and min_slope >= -tol and min_f >= -tol
    meta = _meta(config, space, hyp, r_ref, tol)
    meta["segment"] = [segment.theta_lo, segment.theta_hi]
    return MonotoneReport(
        passed,
        min_slope,
        f_at_d,
        min_f,
        tuple(float(x) for x in t_vals),
        tuple(float(x) for x in f),
        tuple(float(x) for x in product),
        meta,
    )
