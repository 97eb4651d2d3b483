"""Radial-graph hypersurfaces with analytic derivatives.

Every supported body is a graph ``t = p(theta)`` in the polar chart of its
ambient space, with ``p``, ``p'``, ``p''`` available in closed form (or via
implicit differentiation of a closed-form constraint).  Keeping the
derivatives analytic is what lets the curvature-identity checks measure
modeling error instead of differencing error.

Curve bodies (dimension 2) use the periodic angle ``theta`` in [0, 2*pi);
revolution bodies (dimension 3) use the colatitude ``alpha`` in [0, pi]
measured from the symmetry axis, with the profile smooth at both poles.

Conventions: all curvatures and angle cosines are taken with respect to the
inner unit normal, and cosines are stored as absolute values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import ClassVar

import numpy as np

from . import kernels
from .errors import InputError
from .modelspace import ModelSpace
from .numerics import bisect_on, bracketed_newton

_TWO_PI = 2.0 * math.pi
_CRIT_GRID = 1024
# Samples closer than this to a critical point are skipped where a formula
# divides by p'.
_CRIT_EPS = 1e-10


def _as_theta(theta):
    arr = np.asarray(theta, dtype=float)
    return arr, arr.ndim == 0


def _scalarize(is_scalar, *arrays):
    if is_scalar:
        return tuple(float(a) for a in arrays)
    return arrays


@dataclass(frozen=True)
class FourierCurve:
    """Curve p(theta) = a0 + sum_k (a_k cos k theta + b_k sin k theta)."""

    a0: float
    harmonics: tuple[tuple[float, float], ...] = ()
    star_shaped_mode: bool = False

    kind: ClassVar[str] = "fourier_curve"
    m: ClassVar[int] = 2
    periodic: ClassVar[bool] = True

    def __post_init__(self):
        object.__setattr__(self, "a0", float(self.a0))
        object.__setattr__(
            self, "harmonics", tuple((float(a), float(b)) for a, b in self.harmonics)
        )

    def theta_domain(self) -> tuple[float, float]:
        return 0.0, _TWO_PI

    def eval_p(self, space: ModelSpace, theta):
        arr, scalar = _as_theta(theta)
        coef_a = np.array([h[0] for h in self.harmonics])
        coef_b = np.array([h[1] for h in self.harmonics])
        p, dp, ddp = kernels.fourier_eval(self.a0, coef_a, coef_b, arr.ravel())
        p = p.reshape(arr.shape)
        dp = dp.reshape(arr.shape)
        ddp = ddp.reshape(arr.shape)
        return _scalarize(scalar, p, dp, ddp)


@dataclass(frozen=True)
class OffsetSphere:
    """Geodesic sphere of radius r seen from an interior point offset by a.

    The chart origin sits at distance ``a`` from the sphere's center along
    the theta = pi direction, so theta = 0 is the nearest boundary direction
    with p(0) = r - a.  In curved ambient spaces p solves the law-of-cosines
    constraint; derivatives come from implicit differentiation.
    """

    r: float
    a: float
    star_shaped_mode: bool = False

    kind: ClassVar[str] = "offset_sphere"
    m: ClassVar[int] = 2
    periodic: ClassVar[bool] = True

    def __post_init__(self):
        object.__setattr__(self, "r", float(self.r))
        object.__setattr__(self, "a", float(self.a))
        if not (0.0 <= self.a < self.r):
            raise InputError("offset sphere requires 0 <= a < r")

    def theta_domain(self) -> tuple[float, float]:
        return 0.0, _TWO_PI

    def _constraint(self, c: float):
        """F(p, theta) = 0 with analytic partials, per curvature sign."""
        r, a = self.r, self.a
        if c == 0.0:

            def F(p, th):
                cth = np.cos(th)
                f = p * p + 2.0 * a * p * cth + (a * a - r * r)
                return {
                    "f": f,
                    "fp": 2.0 * p + 2.0 * a * cth,
                    "ft": -2.0 * a * p * np.sin(th),
                    "fpp": np.full_like(p, 2.0),
                    "fpt": -2.0 * a * np.sin(th),
                    "ftt": -2.0 * a * p * cth,
                }

            return F
        s = math.sqrt(abs(c))
        if c > 0.0:
            ca, sa = math.cos(s * a), math.sin(s * a)
            cr = math.cos(s * r)

            def F(p, th):
                cth, sth = np.cos(th), np.sin(th)
                cp, sp = np.cos(s * p), np.sin(s * p)
                return {
                    "f": ca * cp - sa * sp * cth - cr,
                    "fp": s * (-ca * sp - sa * cp * cth),
                    "ft": sa * sp * sth,
                    "fpp": s * s * (-ca * cp + sa * sp * cth),
                    "fpt": s * sa * cp * sth,
                    "ftt": sa * sp * cth,
                }

            return F
        ca, sa = math.cosh(s * a), math.sinh(s * a)
        cr = math.cosh(s * r)

        def F(p, th):
            cth, sth = np.cos(th), np.sin(th)
            cp, sp = np.cosh(s * p), np.sinh(s * p)
            return {
                "f": ca * cp + sa * sp * cth - cr,
                "fp": s * (ca * sp + sa * cp * cth),
                "ft": -sa * sp * sth,
                "fpp": s * s * (ca * cp + sa * sp * cth),
                "fpt": -s * sa * cp * sth,
                "ftt": -sa * sp * cth,
            }

        return F

    def eval_p(self, space: ModelSpace, theta):
        if not space.is_constant:
            raise InputError("offset spheres are defined in constant-curvature spaces")
        arr, scalar = _as_theta(theta)
        th = arr.ravel()
        c = space.c
        if c == 0.0:
            cth = np.cos(th)
            root = np.sqrt(self.r * self.r - (self.a * np.sin(th)) ** 2)
            p = -self.a * cth + root
        else:
            F = self._constraint(c)

            def f_df(x):
                parts = F(x, th)
                return parts["f"], parts["fp"]

            lo = np.full(th.shape, (self.r - self.a) * (1.0 - 1e-9))
            hi = np.full(th.shape, (self.r + self.a) * (1.0 + 1e-9))
            p = bracketed_newton(f_df, lo, hi)
        parts = self._constraint(c)(p, th)
        dp = -parts["ft"] / parts["fp"]
        ddp = -(parts["ftt"] + 2.0 * parts["fpt"] * dp + parts["fpp"] * dp * dp) / parts["fp"]
        p = p.reshape(arr.shape)
        dp = dp.reshape(arr.shape)
        ddp = ddp.reshape(arr.shape)
        return _scalarize(scalar, p, dp, ddp)


def _ellipse_eval(A: float, B: float, e: float, theta: np.ndarray):
    """Ray-ellipse intersection p(theta) from an origin at (e, 0), with the
    first two derivatives by implicit differentiation of the quadratic
    alpha(theta) p^2 + 2 beta(theta) p + gamma = 0."""
    cth, sth = np.cos(theta), np.sin(theta)
    ia2, ib2 = 1.0 / (A * A), 1.0 / (B * B)
    al = cth * cth * ia2 + sth * sth * ib2
    be = e * cth * ia2
    ga = e * e * ia2 - 1.0
    disc = np.sqrt(be * be - al * ga)
    p = (-be + disc) / al
    s2, c2 = np.sin(2.0 * theta), np.cos(2.0 * theta)
    dal = s2 * (ib2 - ia2)
    ddal = 2.0 * c2 * (ib2 - ia2)
    dbe = -e * sth * ia2
    ddbe = -e * cth * ia2
    gp = 2.0 * al * p + 2.0 * be
    gt = dal * p * p + 2.0 * dbe * p
    dp = -gt / gp
    gtt = ddal * p * p + 2.0 * ddbe * p
    gtp = 2.0 * dal * p + 2.0 * dbe
    gpp = 2.0 * al
    ddp = -(gtt + 2.0 * gtp * dp + gpp * dp * dp) / gp
    return p, dp, ddp


@dataclass(frozen=True)
class OffsetEllipse:
    """Euclidean ellipse with semi-axes A >= B, seen from (e, 0) on the major axis."""

    A: float
    B: float
    e: float = 0.0
    star_shaped_mode: bool = False

    kind: ClassVar[str] = "offset_ellipse"
    m: ClassVar[int] = 2
    periodic: ClassVar[bool] = True

    def __post_init__(self):
        object.__setattr__(self, "A", float(self.A))
        object.__setattr__(self, "B", float(self.B))
        object.__setattr__(self, "e", float(self.e))
        if not (self.A >= self.B > 0.0):
            raise InputError("ellipse semi-axes must satisfy A >= B > 0")
        if not (0.0 <= self.e < self.A):
            raise InputError("ellipse origin offset must satisfy 0 <= e < A")

    def theta_domain(self) -> tuple[float, float]:
        return 0.0, _TWO_PI

    def eval_p(self, space: ModelSpace, theta):
        if not (space.is_constant and space.c == 0.0):
            raise InputError("offset ellipses are Euclidean bodies")
        arr, scalar = _as_theta(theta)
        p, dp, ddp = _ellipse_eval(self.A, self.B, self.e, arr)
        return _scalarize(scalar, p, dp, ddp)


@dataclass(frozen=True)
class RevolutionSurface:
    """Euclidean surface of revolution of an offset-ellipse profile.

    ``A`` is the semi-axis along the symmetry axis, ``B`` the equatorial
    one, ``e`` the origin's offset along the axis.  The chart angle is the
    colatitude from the axis; the profile automatically satisfies
    p'(0) = p'(pi) = 0, so both poles are smooth.
    """

    A: float
    B: float
    e: float = 0.0
    star_shaped_mode: bool = False

    kind: ClassVar[str] = "revolution"
    m: ClassVar[int] = 3
    periodic: ClassVar[bool] = False

    def __post_init__(self):
        object.__setattr__(self, "A", float(self.A))
        object.__setattr__(self, "B", float(self.B))
        object.__setattr__(self, "e", float(self.e))
        if not (self.A > 0.0 and self.B > 0.0):
            raise InputError("spheroid semi-axes must be positive")
        if not (0.0 <= self.e < self.A):
            raise InputError("axis offset must satisfy 0 <= e < A")

    def theta_domain(self) -> tuple[float, float]:
        return 0.0, math.pi

    def eval_p(self, space: ModelSpace, theta):
        if not (space.is_constant and space.c == 0.0):
            raise InputError("revolution surfaces are Euclidean bodies here")
        arr, scalar = _as_theta(theta)
        p, dp, ddp = _ellipse_eval(self.A, self.B, self.e, arr)
        return _scalarize(scalar, p, dp, ddp)


Surface = FourierCurve | OffsetSphere | OffsetEllipse | RevolutionSurface

_KINDS = {
    cls.kind: cls for cls in (FourierCurve, OffsetSphere, OffsetEllipse, RevolutionSurface)
}


def make_surface(kind: str, **params) -> Surface:
    """Construct a surface by kind name; parameter errors become InputError."""
    try:
        cls = _KINDS[kind]
    except KeyError:
        raise InputError(f"unknown surface kind {kind!r}") from None
    try:
        return cls(**params)
    except TypeError as exc:
        raise InputError(f"bad parameters for surface kind {kind!r}: {exc}") from None


# ---------------------------------------------------------------------------
# pointwise quantities


def eval_p(surface: Surface, space: ModelSpace, theta):
    """Radial graph value and its first two derivatives at theta."""
    return surface.eval_p(space, theta)


def normal_angle_cos(surface: Surface, space: ModelSpace, theta):
    """|cos| of the angle between the inner normal and the radial direction.

    For a radial graph this is warp(p)/sqrt(warp(p)^2 + p'^2); it equals 1
    exactly where p' = 0 and is strictly positive everywhere.
    """
    p, dp, _ = surface.eval_p(space, theta)
    w = space.warp(p)
    out = w / np.hypot(w, dp)
    return out if np.ndim(out) else float(out)


def normal_curvature(surface: Surface, space: ModelSpace, theta, direction: str = "meridian"):
    """Normal curvature of the graph at theta, toward the inner normal.

    For curves (and the meridian direction of revolution surfaces):

        k = (w^2 w' + 2 w' p'^2 - w p'') / (w^2 + p'^2)^(3/2),  w = warp(p).

    The parallel direction of a revolution surface uses the second
    fundamental form of the embedded graph; at the poles it limits to the
    meridian value (umbilic points).
    """
    if direction not in ("meridian", "parallel"):
        raise InputError(f"unknown direction {direction!r}")
    p, dp, ddp = surface.eval_p(space, theta)
    w = space.warp(p)
    dw = space.dwarp(p)
    big_w = np.hypot(w, dp)
    meridian = (w * w * dw + 2.0 * dw * dp * dp - w * ddp) / big_w**3
    if direction == "meridian":
        return meridian if np.ndim(meridian) else float(meridian)
    if surface.m != 3:
        raise InputError("parallel direction requires a revolution surface")
    arr = np.asarray(theta, dtype=float)
    sth, cth = np.sin(arr), np.cos(arr)
    with np.errstate(divide="ignore", invalid="ignore"):
        parallel = (w * dw * sth - dp * cth) / (big_w * w * sth)
    out = np.where(np.abs(sth) < 1e-9, meridian, parallel)
    return out if out.ndim else float(out)


def support_function(surface: Surface, space: ModelSpace, theta):
    """Support value p(theta) * normal_angle_cos(theta) about the chart origin."""
    p, dp, _ = surface.eval_p(space, theta)
    w = space.warp(p)
    out = p * w / np.hypot(w, dp)
    return out if np.ndim(out) else float(out)


def kn_range(surface: Surface, space: ModelSpace, n: int = 256) -> tuple[float, float]:
    """(min, max) normal curvature over a sample grid (both directions for
    revolution surfaces)."""
    if n < 64:
        raise InputError("curvature range needs at least 64 samples")
    lo, hi = surface.theta_domain()
    if surface.periodic:
        grid = np.linspace(lo, hi, n, endpoint=False)
    else:
        grid = np.linspace(lo, hi, n)
    vals = [normal_curvature(surface, space, grid, "meridian")]
    if surface.m == 3:
        vals.append(normal_curvature(surface, space, grid, "parallel"))
    allv = np.concatenate([np.atleast_1d(v) for v in vals])
    return float(np.min(allv)), float(np.max(allv))


# ---------------------------------------------------------------------------
# critical structure of the radial function


@dataclass(frozen=True)
class RadialExtrema:
    """Global range of the radial function with its critical angles."""

    d: float
    rho_max: float
    argmin: tuple[float, ...]
    argmax: tuple[float, ...]
    critical: tuple[float, ...]
    constant: bool = False


@dataclass(frozen=True)
class MonotoneSegment:
    """Maximal arc on which p is strictly monotone.

    ``theta_lo < theta_hi`` in unwrapped coordinates (a wrapping segment of
    a periodic curve may extend past 2*pi).  The trajectory of the radial
    gradient runs from the local-minimum end toward the local-maximum end.
    """

    theta_lo: float
    theta_hi: float
    p_lo: float
    p_hi: float
    increasing: bool

    @property
    def p_min(self) -> float:
        return self.p_lo if self.increasing else self.p_hi

    @property
    def p_max(self) -> float:
        return self.p_hi if self.increasing else self.p_lo

    @property
    def theta_at_min(self) -> float:
        return self.theta_lo if self.increasing else self.theta_hi

    @property
    def theta_at_max(self) -> float:
        return self.theta_hi if self.increasing else self.theta_lo


def _critical_angles(surface: Surface, space: ModelSpace, grid: int = _CRIT_GRID):
    """Roots of p' located by sign-change bracketing on a uniform cell grid.

    Returns (criticals, constant).  Bodies whose critical points are not
    resolved at 4x the base grid are rejected as under-resolved.
    """
    lo, hi = surface.theta_domain()

    def find(n_cells):
        nodes = np.linspace(lo, hi, n_cells + 1)
        _, dp, _ = surface.eval_p(space, nodes)
        dp = np.atleast_1d(dp)
        scale = max(1.0, float(np.max(np.abs(dp))))
        crits = list(nodes[np.abs(dp) == 0.0])
        sign_change = dp[:-1] * dp[1:] < 0.0
        if np.any(sign_change):
            cell_lo = nodes[:-1][sign_change]
            cell_hi = nodes[1:][sign_change]
            roots = bisect_on(
                lambda th: np.atleast_1d(surface.eval_p(space, th)[1]), cell_lo, cell_hi
            )
            crits.extend(roots.tolist())
        crits = sorted(crits)
        # merge numerically coincident roots
        merged: list[float] = []
        for th in crits:
            if not merged or th - merged[-1] > 1e-9 * (hi - lo):
                merged.append(th)
        if surface.periodic and merged and (merged[0] - lo) + (hi - merged[-1]) < 1e-9 * (hi - lo):
            merged.pop()  # same point seen at both ends of the chart
        return merged, float(np.max(np.abs(dp)))

    coarse, dp_max = find(grid)
    p0 = np.atleast_1d(surface.eval_p(space, np.array([lo]))[0])[0]
    if dp_max < 1e-12 * max(1.0, abs(p0)):
        return [], True
    fine, _ = find(4 * grid)
    if len(fine) != len(coarse):
        raise InputError(
            "critical points of the radial function are not resolved on the "
            f"{grid}-cell grid; the body is under-resolved"
        )
    if not surface.periodic:
        # poles are always critical for a smooth revolution profile
        if not coarse or coarse[0] > lo + 1e-9:
            coarse.insert(0, lo)
        if coarse[-1] < hi - 1e-9:
            coarse.append(hi)
    return coarse, False


def rho_extrema(surface: Surface, space: ModelSpace) -> RadialExtrema:
    """Global min/max of the radial function with all critical angles."""
    crits, constant = _critical_angles(surface, space)
    if constant:
        p0 = float(np.atleast_1d(surface.eval_p(space, np.array([0.0]))[0])[0])
        return RadialExtrema(p0, p0, (), (), (), constant=True)
    crit_arr = np.asarray(crits)
    pvals = np.atleast_1d(surface.eval_p(space, crit_arr)[0])
    d = float(np.min(pvals))
    rho_max = float(np.max(pvals))
    tol = 1e-10 * max(1.0, rho_max)
    argmin = tuple(float(t) for t, v in zip(crits, pvals) if v <= d + tol)
    argmax = tuple(float(t) for t, v in zip(crits, pvals) if v >= rho_max - tol)
    return RadialExtrema(d, rho_max, argmin, argmax, tuple(crits))


def monotone_segments(surface: Surface, space: ModelSpace) -> list[MonotoneSegment]:
    """Partition of the chart into maximal arcs of strictly monotone p.

    Each segment is oriented so the gradient trajectory starts at its
    local-minimum end.  Plateau arcs (constant p) are excluded; a fully
    constant body yields an empty list.
    """
    crits, constant = _critical_angles(surface, space)
    if constant:
        return []
    lo, hi = surface.theta_domain()
    if surface.periodic:
        pairs = [
            (crits[i], crits[i + 1] if i + 1 < len(crits) else crits[0] + (hi - lo))
            for i in range(len(crits))
        ]
    else:
        pairs = [(crits[i], crits[i + 1]) for i in range(len(crits) - 1)]
    segments = []
    for a, b in pairs:
        pa = float(np.atleast_1d(surface.eval_p(space, np.array([a]))[0])[0])
        pb = float(np.atleast_1d(surface.eval_p(space, np.array([b]))[0])[0])
        if abs(pb - pa) <= 1e-12 * max(1.0, abs(pa), abs(pb)):
            continue  # sphere-like plateau arc
        segments.append(MonotoneSegment(float(a), float(b), pa, pb, increasing=pb > pa))
    return segments


# ---------------------------------------------------------------------------
# gradient-trajectory sampling and the curvature identity


@dataclass(frozen=True)
class TrajectorySample:
    """One point of a radial-gradient trajectory on the hypersurface."""

    t: float
    theta: float
    cos_angle: float
    k_n: float
    mu: float


def _trajectory_arrays(surface, space, segment: MonotoneSegment, n: int):
    """Interior samples of a monotone segment, ordered from the minimum end."""
    if n < 2:
        raise InputError("need at least 2 trajectory samples")
    span = segment.theta_hi - segment.theta_lo
    inner = segment.theta_lo + span * (np.arange(1, n + 1)) / (n + 1.0)
    theta = inner if segment.increasing else inner[::-1]
    p, dp, ddp = surface.eval_p(space, theta)
    w = space.warp(p)
    dw = space.dwarp(p)
    big_w = np.hypot(w, dp)
    cos_angle = w / big_w
    k_n = (w * w * dw + 2.0 * dw * dp * dp - w * ddp) / big_w**3
    mu = space.mu(p)
    # d(cos)/dt along the trajectory; p' cancels analytically so this stays
    # finite, but samples too close to critical points are flagged anyway.
    dcos_dt = (dw * dp * dp - w * ddp) / big_w**3
    return theta, p, dp, cos_angle, k_n, mu, dcos_dt


def sample_trajectory(
    surface: Surface, space: ModelSpace, segment: MonotoneSegment, n: int
) -> list[TrajectorySample]:
    """n interior samples of the gradient trajectory living on ``segment``."""
    theta, p, _, cos_angle, k_n, mu, _ = _trajectory_arrays(surface, space, segment, n)
    return [
        TrajectorySample(float(t), float(th), float(ca), float(k), float(m))
        for t, th, ca, k, m in zip(p, theta, cos_angle, k_n, mu)
    ]


@dataclass(frozen=True)
class RiccatiResidual:
    """Worst deviation from the trajectory curvature identity on a segment."""

    max_residual: float
    theta_at_max: float
    n_used: int
    n_skipped: int


def riccati_residual(
    surface: Surface, space: ModelSpace, segment: MonotoneSegment, n: int = 256
) -> RiccatiResidual:
    """Residual of k_n = cos * mu + d(cos)/dt along a monotone segment.

    All pieces are analytic, so the residual measures only modeling error
    and floating-point noise.  Samples with |p'| < 1e-10 (too close to a
    critical point) are skipped and counted.
    """
    theta, _, dp, cos_angle, k_n, mu, dcos_dt = _trajectory_arrays(surface, space, segment, n)
    keep = np.abs(dp) >= _CRIT_EPS
    res = np.abs(k_n - cos_angle * mu - dcos_dt)
    if not np.any(keep):
        return RiccatiResidual(0.0, float(segment.theta_at_min), 0, int(len(theta)))
    res_kept = np.where(keep, res, -np.inf)
    idx = int(np.argmax(res_kept))
    return RiccatiResidual(
        float(res[idx]), float(theta[idx]), int(np.sum(keep)), int(np.sum(~keep))
    )


# ---------------------------------------------------------------------------
# validation


def validate_surface(surface: Surface, space: ModelSpace, grid: int = _CRIT_GRID) -> None:
    """Check the graph invariants of a body in its ambient space.

    Verifies positivity of p (star-shapedness about the origin), chart
    regularity, and, unless ``star_shaped_mode`` is set, positive normal
    curvature at the validation samples.  Raises InputError on violation.
    """
    if isinstance(surface, (OffsetEllipse, RevolutionSurface)):
        if not (space.is_constant and space.c == 0.0):
            raise InputError(f"surface kind {surface.kind!r} requires the Euclidean plane")
    if isinstance(surface, OffsetSphere):
        if not space.is_constant:
            raise InputError("offset spheres require a constant-curvature space")
        if space.c > 0.0:
            s = math.sqrt(space.c)
            if not (s * surface.r < math.pi / 2.0):
                raise InputError("sphere radius must stay below the equator radius pi/(2 sqrt(c))")
            if not (s * (surface.r + 2.0 * surface.a) < math.pi):
                raise InputError("offset sphere leaves the regular chart region")
    lo, hi = surface.theta_domain()
    if surface.periodic:
        theta = np.linspace(lo, hi, grid, endpoint=False)
    else:
        theta = np.linspace(lo, hi, grid)
    p, dp, _ = surface.eval_p(space, theta)
    if np.any(~np.isfinite(p)):
        raise InputError("radial function failed to evaluate")
    if np.any(p <= 0.0):
        raise InputError("body is not star-shaped about the origin: p <= 0 at a sample")
    # Chart regularity only; the half-ball bound for positively curved
    # ambients is a theorem hypothesis validated by the verifiers.
    if np.any(p >= space.conjugate_radius()):
        raise InputError("body leaves the regular chart region")
    if not surface.periodic:
        for pole in (lo, hi):
            dpole = surface.eval_p(space, pole)[1]
            if abs(float(dpole)) > 1e-9:
                raise InputError("revolution profile must be smooth at the poles (p' = 0)")
    if not surface.star_shaped_mode:
        k = np.atleast_1d(normal_curvature(surface, space, theta, "meridian"))
        if surface.m == 3:
            k = np.concatenate(
                [k, np.atleast_1d(normal_curvature(surface, space, theta, "parallel"))]
            )
        if np.any(k <= 0.0):
            bad = float(theta[int(np.argmin(k)) % len(theta)])
            raise InputError(
                f"body is not convex: normal curvature <= 0 near theta = {bad:.6f} "
                "(set star_shaped_mode to allow this)"
            )
