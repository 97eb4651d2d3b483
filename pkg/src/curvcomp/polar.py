"""Polar duality for convex curves in the unit-curvature model quadrics.

A convex curve in the sphere S^2 (unit round sphere in R^3) dualizes to the
curve of its in-sphere unit normals, again in S^2; a convex curve in the
hyperbolic plane (unit hyperboloid in R^{2,1}) dualizes to its unit
spacelike Minkowski normals, a spacelike curve in the de Sitter quadric
<X, X> = +1.  Corresponding points carry reciprocal normal curvatures, and
on the sphere applying the map twice returns the original curve; both facts
are checked numerically here.

Dual points and dual tangents are computed from the source's analytic
derivative data; only the dual curve's *second* derivatives (needed for its
curvature) fall back to finite differences, guarded by a refinement check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError, ResolutionError
from .hypersurface import Surface, eval_p, normal_curvature
from .modelspace import ModelSpace

_AMBIENTS = ("sphere_R3", "hyperboloid_R21", "desitter_R21")


def _mdot(a, b):
    """Minkowski inner product with signature (+, +, -)."""
    return a[..., 0] * b[..., 0] + a[..., 1] * b[..., 1] - a[..., 2] * b[..., 2]


def _mcross(a, b):
    """Minkowski cross product: <a x b, c> equals det[a; b; c]."""
    c = np.cross(a, b)
    c[..., 2] = -c[..., 2]
    return c


def _edot(a, b):
    return np.sum(a * b, axis=-1)


@dataclass(frozen=True)
class EmbeddedCurve:
    """Sampled curve on one of the model quadrics.

    ``points`` is (n, 3); ``d1``/``d2`` are derivatives in the sample
    parameter (``None`` when not analytically available); ``kappa`` holds
    the source body's analytic normal curvature at the samples when known.
    """

    ambient: str
    theta: np.ndarray
    points: np.ndarray
    d1: np.ndarray | None = None
    d2: np.ndarray | None = None
    kappa: np.ndarray | None = None
    closed: bool = True

    def __post_init__(self):
        if self.ambient not in _AMBIENTS:
            raise InputError(f"unknown ambient {self.ambient!r}")

    def quadric_residual(self) -> np.ndarray:
        """|constraint violation| of each sample on its quadric."""
        X = self.points
        if self.ambient == "sphere_R3":
            return np.abs(_edot(X, X) - 1.0)
        if self.ambient == "hyperboloid_R21":
            return np.abs(_mdot(X, X) + 1.0)
        return np.abs(_mdot(X, X) - 1.0)


def embed_curve(surface: Surface, space: ModelSpace, n: int = 2048) -> EmbeddedCurve:
    """Embed a radial-graph curve into its model quadric with analytic
    first and second parameter derivatives and analytic normal curvature.

    Only the unit-curvature spaces c = 1 (sphere) and c = -1 (hyperboloid)
    are supported.
    """
    if surface.m != 2:
        raise InputError("only curves embed here")
    if not (space.is_constant and space.c in (1.0, -1.0)):
        raise InputError("embedding requires constant curvature c = 1 or c = -1")
    theta = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
    p, dp, ddp = eval_p(surface, space, theta)
    ct, st = np.cos(theta), np.sin(theta)
    if space.c == 1.0:
        w, dw = np.sin(p), np.cos(p)
        third, dthird, ddthird = np.cos(p), -np.sin(p), -np.cos(p)
        ambient = "sphere_R3"
    else:
        w, dw = np.sinh(p), np.cosh(p)
        third, dthird, ddthird = np.cosh(p), np.sinh(p), np.cosh(p)
        ambient = "hyperboloid_R21"
    ddw = -space.c * w  # w solves w'' + c w = 0
    X = np.column_stack([w * ct, w * st, third])
    u_p = np.column_stack([dw * ct, dw * st, dthird])
    u_pp = np.column_stack([ddw * ct, ddw * st, ddthird])
    u_t = np.column_stack([-w * st, w * ct, np.zeros_like(w)])
    u_tt = np.column_stack([-w * ct, -w * st, np.zeros_like(w)])
    u_pt = np.column_stack([-dw * st, dw * ct, np.zeros_like(w)])
    d1 = dp[:, None] * u_p + u_t
    d2 = (
        ddp[:, None] * u_p
        + (dp * dp)[:, None] * u_pp
        + 2.0 * dp[:, None] * u_pt
        + u_tt
    )
    kappa = np.atleast_1d(normal_curvature(surface, space, theta))
    return EmbeddedCurve(ambient, theta, X, d1, d2, kappa)


def polar_dual(curve: EmbeddedCurve) -> EmbeddedCurve:
    """Dual curve of per-sample unit (co)normals.

    Sphere curves dualize within the sphere, hyperboloid curves into the
    de Sitter quadric.  The orientation is fixed by the source
    parameterization: the dual of the geodesic circle of radius r about the
    chart pole is the circle of radius pi/2 - r (sphere case), and applying
    the map twice is the identity.  Analytic dual tangents are produced
    whenever the source carries second derivatives.  Non-convex sources
    (kappa <= 0 somewhere) are rejected.
    """
    if curve.ambient == "desitter_R21":
        raise InputError("the de Sitter dual is out of scope; dualize sphere or hyperboloid curves")
    if curve.d1 is None:
        raise InputError("polar dual needs tangent data")
    if curve.kappa is not None and np.any(curve.kappa <= 0.0):
        raise InputError("polar dual needs a convex curve (positive normal curvature)")
    X, T = curve.points, curve.d1
    if curve.ambient == "sphere_R3":
        u = np.cross(X, T)
        norm = np.sqrt(_edot(u, u))
        Xd = u / norm[:, None]
        d1 = None
        if curve.d2 is not None:
            du = np.cross(X, curve.d2)
            d1 = (du - Xd * _edot(Xd, du)[:, None]) / norm[:, None]
        return EmbeddedCurve("sphere_R3", curve.theta, Xd, d1, None, None, curve.closed)
    u = _mcross(X, T)
    norm2 = _mdot(u, u)
    if np.any(norm2 <= 0.0):
        raise InputError("dual normal failed to be spacelike; source is not convex")
    norm = np.sqrt(norm2)
    Xd = u / norm[:, None]
    d1 = None
    if curve.d2 is not None:
        du = _mcross(X, curve.d2)
        d1 = (du - Xd * _mdot(Xd, du)[:, None]) / norm[:, None]
        if np.any(_mdot(d1, d1) <= 0.0):
            raise InputError("dual curve failed to be spacelike")
    return EmbeddedCurve("desitter_R21", curve.theta, Xd, d1, None, None, curve.closed)


def _fd_curvature(dual: EmbeddedCurve) -> np.ndarray:
    """Geodesic curvature of the dual curve within its ambient quadric.

    First derivatives are taken analytic when present; second derivatives
    come from periodic central differences in the uniform sample parameter.
    """
    if not dual.closed:
        raise InputError("finite-difference curvature needs a closed curve")
    X = dual.points
    h = dual.theta[1] - dual.theta[0]
    d2 = (np.roll(X, -1, axis=0) - 2.0 * X + np.roll(X, 1, axis=0)) / (h * h)
    if dual.d1 is not None:
        d1 = dual.d1
    else:
        d1 = (np.roll(X, -1, axis=0) - np.roll(X, 1, axis=0)) / (2.0 * h)
    if dual.ambient == "sphere_R3":
        n = np.cross(X, d1)
        n /= np.sqrt(_edot(n, n))[:, None]
        return _edot(d2, n) / _edot(d1, d1)
    n = _mcross(X, d1)
    nn = _mdot(n, n)
    if np.any(nn >= 0.0):
        raise ResolutionError("in-surface normal of the dual curve is not timelike")
    n /= np.sqrt(-nn)[:, None]
    return _mdot(d2, n) / (-_mdot(d1, d1))


@dataclass(frozen=True)
class DualCurvatureResult:
    max_deviation: float
    passed: bool
    kappa_dual: np.ndarray

    def to_dict(self) -> dict:
        return {"max_deviation": self.max_deviation, "pass": self.passed}


def dual_curvature_check(
    curve: EmbeddedCurve, dual: EmbeddedCurve, tol: float = 1e-5
) -> DualCurvatureResult:
    """Check the reciprocal law: source curvature times dual curvature is 1.

    Source curvature is analytic (carried by the embedded curve); dual
    curvature uses finite differences, so the deviation shrinks at second
    order under sample doubling.
    """
    if curve.kappa is None:
        raise InputError("source curve carries no analytic curvature")
    if len(curve.theta) != len(dual.theta):
        raise InputError("curve and dual must share their sample parameterization")
    kd = _fd_curvature(dual)
    dev = np.abs(curve.kappa * kd - 1.0)
    return DualCurvatureResult(float(np.max(dev)), bool(np.max(dev) <= tol), kd)


def dual_curvature_check_refined(
    surface: Surface, space: ModelSpace, n: int = 2048, tol: float = 1e-5
) -> tuple[DualCurvatureResult, float]:
    """Reciprocal-law check with a refinement guard.

    Runs the check at n and 2n samples; if the deviation fails the
    tolerance and does not shrink under refinement, the configuration is
    reported as unresolvable rather than failed.  Returns the result at n
    together with the measured convergence order.
    """
    curve_n = embed_curve(surface, space, n)
    res_n = dual_curvature_check(curve_n, polar_dual(curve_n), tol)
    curve_2n = embed_curve(surface, space, 2 * n)
    res_2n = dual_curvature_check(curve_2n, polar_dual(curve_2n), tol)
    if res_2n.max_deviation > 0.0:
        order = math.log2(max(res_n.max_deviation, 1e-300) / res_2n.max_deviation)
    else:
        order = math.inf
    if not res_n.passed and res_2n.max_deviation > 0.5 * res_n.max_deviation:
        raise ResolutionError(
            f"reciprocal-curvature deviation {res_n.max_deviation:g} is not "
            f"decreasing under refinement (order {order:.2f})"
        )
    return res_n, order


def involution_check(curve: EmbeddedCurve) -> float:
    """Max Euclidean distance between the double dual and the original curve.

    Sphere ambient only (the fully supported involution case); the source
    must carry second derivatives so both dualizations use analytic
    tangents.
    """
    if curve.ambient != "sphere_R3":
        raise InputError("the involution check runs on sphere curves")
    if curve.d2 is None:
        raise InputError("involution needs analytic second derivatives of the source")
    first = polar_dual(curve)
    second = polar_dual(first)
    diff = second.points - curve.points
    return float(np.max(np.sqrt(_edot(diff, diff))))
