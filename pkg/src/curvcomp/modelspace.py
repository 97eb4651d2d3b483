"""Closed-form geometry of the comparison model spaces.

Two kinds of ambient space are supported, both in a polar chart about a
fixed origin:

* ``constant`` — the simply connected space of constant sectional
  curvature ``c`` in dimension 2 or 3.  The angular metric coefficient is
  the generalized sine ``sn(c, t)`` and geodesic spheres of radius ``t``
  have normal curvature ``sn'(c, t)/sn(c, t)`` with respect to the inner
  normal.
* ``warped`` — a rotationally symmetric surface ``dt^2 + phi(t)^2 dtheta^2``
  given by a polynomial profile ``phi`` with ``phi(0) = 0``, ``phi'(0) = 1``.
  Its radial (= only) sectional curvature is ``-phi''/phi`` and its
  geodesic circles have normal curvature ``phi'/phi``.

All functions are pure and accept scalars or numpy arrays in the sampled
argument.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import FeasibilityError, InputError

# Below |c|*t^2 = 1e-8 the trig/hyperbolic forms lose digits relative to the
# series, and continuity in c at c = 0 is a tested contract.
_SERIES_CUT = 1e-8

_VALIDATION_GRID = 1024


def _sn_series(c, t):
    x = c * t * t
    return t * (1.0 - x / 6.0 * (1.0 - x / 20.0))


def _dsn_series(c, t):
    x = c * t * t
    return 1.0 - x / 2.0 * (1.0 - x / 12.0)


def _mu_series(c, t):
    return 1.0 / t - c * t / 3.0 - c * c * t * t * t / 45.0


def sn(c: float, t) -> np.ndarray | float:
    """Generalized sine: sin(sqrt(c) t)/sqrt(c), t, or sinh(sqrt(-c) t)/sqrt(-c).

    Solves u'' + c u = 0 with u(0) = 0, u'(0) = 1, continuously in c.
    Requires t >= 0 and, for c > 0, t < pi/sqrt(c).
    """
    c = float(c)
    if not math.isfinite(c):
        raise InputError("curvature must be finite")
    tarr = np.asarray(t, dtype=float)
    if np.any(tarr < 0.0):
        raise InputError("sn requires t >= 0")
    if c > 0.0 and np.any(tarr >= math.pi / math.sqrt(c)):
        raise InputError("sn requires t < pi/sqrt(c) for c > 0")
    small = np.abs(c) * tarr * tarr < _SERIES_CUT
    if c == 0.0:
        out = tarr.copy()
    elif c > 0.0:
        s = math.sqrt(c)
        out = np.where(small, _sn_series(c, tarr), np.sin(s * tarr) / s)
    else:
        s = math.sqrt(-c)
        out = np.where(small, _sn_series(c, tarr), np.sinh(s * tarr) / s)
    return out if out.ndim else float(out)


def dsn(c: float, t) -> np.ndarray | float:
    """Derivative of ``sn`` in t: cos, 1, or cosh of the scaled argument."""
    c = float(c)
    tarr = np.asarray(t, dtype=float)
    small = np.abs(c) * tarr * tarr < _SERIES_CUT
    if c == 0.0:
        out = np.ones_like(tarr)
    elif c > 0.0:
        s = math.sqrt(c)
        out = np.where(small, _dsn_series(c, tarr), np.cos(s * tarr))
    else:
        s = math.sqrt(-c)
        out = np.where(small, _dsn_series(c, tarr), np.cosh(s * tarr))
    return out if out.ndim else float(out)


def _mu_const(c: float, t):
    """Normal curvature sn'/sn of the geodesic sphere of radius t in M(c)."""
    tarr = np.asarray(t, dtype=float)
    small = np.abs(c) * tarr * tarr < _SERIES_CUT
    if c == 0.0:
        out = 1.0 / tarr
    elif c > 0.0:
        s = math.sqrt(c)
        out = np.where(small, _mu_series(c, tarr), s / np.tan(s * tarr))
    else:
        s = math.sqrt(-c)
        out = np.where(small, _mu_series(c, tarr), s / np.tanh(s * tarr))
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class WarpedProfile:
    """Polynomial warp profile phi(t) = t + sum_{j>=2} a_j t^j on (0, T].

    ``coefficients[i]`` is a_{i+2}.  Construction fails unless phi > 0 and
    phi' > 0 on the validation grid over (0, T].
    """

    coefficients: tuple[float, ...]
    T: float

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(float(a) for a in self.coefficients))
        object.__setattr__(self, "T", float(self.T))
        if not (self.T > 0.0 and math.isfinite(self.T)):
            raise InputError("warped profile needs a positive finite domain cap T")
        t = np.linspace(0.0, self.T, _VALIDATION_GRID + 1)[1:]
        if np.any(self.phi(t) <= 0.0):
            raise InputError("warped profile must satisfy phi > 0 on (0, T]")
        if np.any(self.dphi(t) <= 0.0):
            raise InputError("warped profile must satisfy phi' > 0 on (0, T]")

    def _powers(self):
        # poly coefficients highest-first for np.polyval: [a_J, ..., a_2, 1, 0]
        return np.array(list(reversed(self.coefficients)) + [1.0, 0.0])

    def phi(self, t):
        return np.polyval(self._powers(), np.asarray(t, dtype=float))

    def dphi(self, t):
        return np.polyval(np.polyder(self._powers()), np.asarray(t, dtype=float))

    def ddphi(self, t):
        return np.polyval(np.polyder(self._powers(), 2), np.asarray(t, dtype=float))

    def radial_curvature(self, t):
        """Sectional curvature -phi''/phi of the warped surface at radius t."""
        t = np.asarray(t, dtype=float)
        return -self.ddphi(t) / self.phi(t)


@dataclass(frozen=True)
class ModelSpace:
    """Ambient space of a scene: constant curvature c, or a warped surface."""

    kind: str
    c: float = 0.0
    profile: WarpedProfile | None = None
    m: int = 2

    def __post_init__(self):
        if self.kind not in ("constant", "warped"):
            raise InputError(f"unknown space kind {self.kind!r}")
        if self.m not in (2, 3):
            raise InputError("dimension m must be 2 or 3")
        if self.kind == "constant":
            if not math.isfinite(self.c):
                raise InputError("curvature c must be finite")
        else:
            if self.profile is None:
                raise InputError("warped space needs a profile")
            if self.m != 2:
                raise InputError("warped spaces are two-dimensional here")

    @staticmethod
    def constant(c: float, m: int = 2) -> "ModelSpace":
        return ModelSpace(kind="constant", c=float(c), m=m)

    @staticmethod
    def warped(profile: WarpedProfile) -> "ModelSpace":
        return ModelSpace(kind="warped", c=0.0, profile=profile, m=2)

    @property
    def is_constant(self) -> bool:
        return self.kind == "constant"

    def conjugate_radius(self) -> float:
        """Upper end of the regular chart domain."""
        if self.is_constant:
            return math.pi / math.sqrt(self.c) if self.c > 0.0 else math.inf
        return self.profile.T

    def warp(self, t):
        """Angular metric coefficient at radius t (sn or phi)."""
        return sn(self.c, t) if self.is_constant else self.profile.phi(t)

    def dwarp(self, t):
        return dsn(self.c, t) if self.is_constant else self.profile.dphi(t)

    def mu(self, t):
        """Normal curvature of the geodesic sphere of radius t about the origin."""
        return _mu_const(self.c, t) if self.is_constant else self.profile.dphi(t) / self.profile.phi(t)

    def curvature_bounds(self, n: int = 256) -> tuple[float, float]:
        """(min, max) sectional curvature; sampled on a grid for warped spaces."""
        if self.is_constant:
            return self.c, self.c
        return warped_curvature_range(self.profile, n)


def sphere_mu(space, t) -> np.ndarray | float:
    """Normal curvature of the geodesic sphere of radius t.

    ``space`` may be a ModelSpace or a plain curvature value.  Requires
    0 < t < the conjugate radius of the chart.
    """
    if not isinstance(space, ModelSpace):
        space = ModelSpace.constant(float(space))
    tarr = np.asarray(t, dtype=float)
    cap = space.conjugate_radius()
    # for warped profiles T is a domain cap, not a conjugate point
    beyond = np.any(tarr >= cap) if space.is_constant else np.any(tarr > cap)
    if np.any(tarr <= 0.0) or beyond:
        raise InputError("sphere radius outside the regular chart domain")
    out = space.mu(tarr)
    return out if np.ndim(out) else float(out)


def radius_for_curvature(c: float, lam: float) -> float:
    """Radius of the geodesic sphere with normal curvature lam in M(c).

    Solves sn'(r)/sn(r) = lam by bisection with a Newton polish
    (mu' = -(c + mu^2)).  For c < 0 a compact sphere of curvature lam
    exists only when lam > sqrt(-c).
    """
    c = float(c)
    lam = float(lam)
    if not (lam > 0.0):
        raise InputError("sphere curvature must be positive")
    if c < 0.0 and lam <= math.sqrt(-c):
        raise InputError(
            f"no compact constant-curvature-{lam:g} sphere in curvature {c:g}: "
            f"requires lam > sqrt(-c) = {math.sqrt(-c):g}"
        )

    def mu(r):
        return _mu_const(c, r)

    # Bracket: mu decreases from +inf at r -> 0.
    if c > 0.0:
        hi = math.pi / (2.0 * math.sqrt(c)) * (1.0 - 1e-15)
    else:
        hi = 1.0 / lam
        while mu(hi) > lam:
            hi *= 2.0
    lo = min(1.0 / lam, hi) * 0.5
    while mu(lo) < lam:
        lo *= 0.5
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if mu(mid) > lam:
            lo = mid
        else:
            hi = mid
    r = 0.5 * (lo + hi)
    for _ in range(3):
        m = mu(r)
        r -= (m - lam) / (-(c + m * m))
    return r


def _cos_delta(p1, p2):
    """Cosine of the angle between the radial directions of two chart points."""

    def unpack(p):
        if len(p) == 2:
            return float(p[0]), (float(p[1]),)
        if len(p) == 3:
            return float(p[0]), (float(p[1]), float(p[2]))
        raise InputError("chart point must be (t, theta) or (t, alpha, beta)")

    t1, a1 = unpack(p1)
    t2, a2 = unpack(p2)
    if len(a1) != len(a2):
        raise InputError("chart points must share a dimension")
    if len(a1) == 1:
        return t1, t2, math.cos(a1[0] - a2[0])
    cosd = math.cos(a1[0]) * math.cos(a2[0]) + math.sin(a1[0]) * math.sin(a2[0]) * math.cos(a1[1] - a2[1])
    return t1, t2, cosd


def dist_from_cos_delta(c: float, t1, t2, cosd):
    """Geodesic distance in M(c) given two radii and the angle between them."""
    t1 = np.asarray(t1, dtype=float)
    t2 = np.asarray(t2, dtype=float)
    cosd = np.asarray(cosd, dtype=float)
    if c == 0.0:
        d2 = t1 * t1 + t2 * t2 - 2.0 * t1 * t2 * cosd
        out = np.sqrt(np.maximum(d2, 0.0))
    elif c > 0.0:
        s = math.sqrt(c)
        arg = np.cos(s * t1) * np.cos(s * t2) + np.sin(s * t1) * np.sin(s * t2) * cosd
        out = np.arccos(np.clip(arg, -1.0, 1.0)) / s
    else:
        s = math.sqrt(-c)
        arg = np.cosh(s * t1) * np.cosh(s * t2) - np.sinh(s * t1) * np.sinh(s * t2) * cosd
        out = np.arccosh(np.maximum(arg, 1.0)) / s
    return out if out.ndim else float(out)


def geodesic_distance(c: float, point1, point2) -> float:
    """Distance between two polar chart points of M(c) by the law of cosines.

    Points are (t, theta) in dimension 2 or (t, alpha, beta) in dimension 3.
    """
    c = float(c)
    t1, t2, cosd = _cos_delta(point1, point2)
    if t1 < 0.0 or t2 < 0.0:
        raise InputError("chart radii must be nonnegative")
    if c > 0.0:
        cap = math.pi / math.sqrt(c)
        if t1 >= cap or t2 >= cap:
            raise InputError("chart point beyond the regularity region")
    return float(dist_from_cos_delta(c, t1, t2, cosd))


def _angle_range_check(d: float, r: float, l):
    larr = np.asarray(l, dtype=float)
    if not (0.0 < d):
        raise InputError("base distance d must be positive")
    if d > r * (1.0 + 1e-12) + 1e-15:
        raise FeasibilityError(
            f"comparison point too deep: d = {d:g} exceeds the comparison sphere radius r = {r:g}"
        )
    lo, hi = d, 2.0 * r - d
    slack = 1e-9 * max(1.0, hi)
    if np.any(larr < lo - slack) or np.any(larr > hi + slack):
        raise InputError(f"level out of range [{lo:g}, {hi:g}] for the comparison sphere")
    return np.clip(larr, lo, hi)


def sphere_angle(c1: float, k1: float, d: float, l) -> np.ndarray | float:
    """Radial-direction cosine on the comparison sphere of curvature k1 in M(c1).

    The sphere is placed so the base point sits at distance d from it; at a
    boundary point at distance l from the base point the returned value is
    the absolute cosine of the angle between the inner normal and the radial
    direction, from the (c1-law-of-cosines) triangle with vertices at the
    sphere center, the base point and the boundary point.  Equals 1 exactly
    at l = d and l = 2r - d.
    """
    c1 = float(c1)
    r = radius_for_curvature(c1, k1)
    larr = _angle_range_check(float(d), r, l)
    a = r - float(d)
    if c1 == 0.0:
        cosang = (r * r + larr * larr - a * a) / (2.0 * r * larr)
    elif c1 > 0.0:
        s = math.sqrt(c1)
        cosang = (math.cos(s * a) - math.cos(s * r) * np.cos(s * larr)) / (
            math.sin(s * r) * np.sin(s * larr)
        )
    else:
        s = math.sqrt(-c1)
        cosang = (math.cosh(s * r) * np.cosh(s * larr) - math.cosh(s * a)) / (
            math.sinh(s * r) * np.sinh(s * larr)
        )
    cosang = np.abs(np.clip(cosang, -1.0, 1.0))
    return cosang if cosang.ndim else float(cosang)


def sphere_support(c1: float, k1: float, d: float, l) -> np.ndarray | float:
    """Support value l * sphere_angle(...) of the comparison sphere."""
    larr = np.asarray(l, dtype=float)
    out = larr * sphere_angle(c1, k1, d, larr)
    return out if out.ndim else float(out)


def warped_curvature_range(profile: WarpedProfile, n: int = 256) -> tuple[float, float]:
    """(min, max) of the radial curvature -phi''/phi on an n-point grid over (0, T]."""
    if n < 16:
        raise InputError("curvature range needs at least 16 samples")
    t = np.linspace(0.0, profile.T, n + 1)[1:]
    k = profile.radial_curvature(t)
    return float(np.min(k)), float(np.max(k))


def validate_half_ball(c2: float, rho_max: float) -> bool:
    """True iff the body fits the half-ball bound: c2 <= 0 or rho_max < pi/(2 sqrt(c2))."""
    c2 = float(c2)
    if c2 <= 0.0:
        return True
    return float(rho_max) < math.pi / (2.0 * math.sqrt(c2))
