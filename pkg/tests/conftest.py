"""Shared oracles and body generators for the test suite.

The oracles here are deliberately independent of the package's analytic
paths: curvatures come from finite differences on explicit quadric
embeddings, offset-sphere graphs from the closed-form law-of-cosines
solution, extrema from dense scans.
"""

from __future__ import annotations

import math

import numpy as np

from curvcomp import FourierCurve, ModelSpace, eval_p, validate_surface
from curvcomp.errors import InputError


def mdot(a, b):
    return a[..., 0] * b[..., 0] + a[..., 1] * b[..., 1] - a[..., 2] * b[..., 2]


def mcross(a, b):
    c = np.cross(a, b)
    c[..., 2] = -c[..., 2]
    return c


def embed_point(surface, space, theta):
    """Embed a curve point into R^2, R^3 (sphere) or R^{2,1} (hyperboloid)."""
    p = eval_p(surface, space, float(theta))[0]
    c = space.c
    if c == 0.0:
        return np.array([p * math.cos(theta), p * math.sin(theta)])
    R = 1.0 / math.sqrt(abs(c))
    if c > 0.0:
        return R * np.array(
            [
                math.sin(p / R) * math.cos(theta),
                math.sin(p / R) * math.sin(theta),
                math.cos(p / R),
            ]
        )
    return R * np.array(
        [
            math.sinh(p / R) * math.cos(theta),
            math.sinh(p / R) * math.sin(theta),
            math.cosh(p / R),
        ]
    )


def fd_curve_curvature(surface, space, theta, h):
    """Finite-difference geodesic curvature of an embedded curve (unsigned)."""
    c = space.c
    if c == 0.0:
        p1 = embed_point(surface, space, theta - h)
        p2 = embed_point(surface, space, theta)
        p3 = embed_point(surface, space, theta + h)
        a = p2 - p1
        b = p3 - p2
        chord = p3 - p1
        cross = a[0] * b[1] - a[1] * b[0]
        return abs(2.0 * cross / (np.linalg.norm(a) * np.linalg.norm(b) * np.linalg.norm(chord)))
    Xm = embed_point(surface, space, theta - h)
    X0 = embed_point(surface, space, theta)
    Xp = embed_point(surface, space, theta + h)
    d1 = (Xp - Xm) / (2.0 * h)
    d2 = (Xp - 2.0 * X0 + Xm) / (h * h)
    if c > 0.0:
        n = np.cross(X0, d1)
        n /= np.linalg.norm(n)
        return abs(float(np.dot(d2, n) / np.dot(d1, d1)))
    n = mcross(X0[None, :], d1[None, :])[0]
    nn = float(mdot(n[None, :], n[None, :])[0])
    n = n / math.sqrt(abs(nn))
    return abs(float(mdot(d2[None, :], n[None, :])[0] / mdot(d1[None, :], d1[None, :])[0]))


def embed_revolution_point(surface, space, alpha, beta):
    p = eval_p(surface, space, float(alpha))[0]
    return p * np.array(
        [math.cos(alpha), math.sin(alpha) * math.cos(beta), math.sin(alpha) * math.sin(beta)]
    )


def fd_revolution_curvature(surface, space, alpha, direction, h):
    """FD normal curvature of an embedded revolution surface (unsigned)."""
    beta = 0.0
    X0 = embed_revolution_point(surface, space, alpha, beta)
    Xa_p = embed_revolution_point(surface, space, alpha + h, beta)
    Xa_m = embed_revolution_point(surface, space, alpha - h, beta)
    Xb_p = embed_revolution_point(surface, space, alpha, beta + h)
    Xb_m = embed_revolution_point(surface, space, alpha, beta - h)
    Xa = (Xa_p - Xa_m) / (2.0 * h)
    Xb = (Xb_p - Xb_m) / (2.0 * h)
    N = np.cross(Xa, Xb)
    N /= np.linalg.norm(N)
    if direction == "meridian":
        d2 = (Xa_p - 2.0 * X0 + Xa_m) / (h * h)
        d1 = Xa
    else:
        d2 = (Xb_p - 2.0 * X0 + Xb_m) / (h * h)
        d1 = Xb
    return abs(float(np.dot(d2, N) / np.dot(d1, d1)))


def offset_sphere_closed_form(c, r, a, theta):
    """Closed-form radial graph of an offset sphere (independent of Newton)."""
    theta = np.asarray(theta, dtype=float)
    if c == 0.0:
        return -a * np.cos(theta) + np.sqrt(r * r - (a * np.sin(theta)) ** 2)
    s = math.sqrt(abs(c))
    if c > 0.0:
        A = math.cos(s * a)
        B = -math.sin(s * a) * np.cos(theta)
        R0 = np.hypot(A, B)
        psi = np.arctan2(B, A)
        return (psi + np.arccos(np.clip(math.cos(s * r) / R0, -1.0, 1.0))) / s
    A = math.cosh(s * a)
    B = math.sinh(s * a) * np.cos(theta)
    R0 = np.sqrt(A * A - B * B)
    psi = np.arctanh(B / A)
    return (np.arccosh(np.maximum(math.cosh(s * r) / R0, 1.0)) - psi) / s


def random_convex_fourier(
    rng: np.random.Generator,
    space: ModelSpace,
    base: float,
    max_k: int = 6,
    amp: float = 0.06,
    offset_amp: float = 0.0,
    predicate=None,
    max_tries: int = 200,
) -> FourierCurve:
    """Draw a validated convex body; rejection-sample until ``predicate`` holds.

    ``offset_amp`` adds a dominant first harmonic, which to first order
    shifts the body's center away from the chart origin.
    """
    for _ in range(max_tries):
        k_count = int(rng.integers(1, max_k + 1))
        harmonics = []
        for k in range(1, k_count + 1):
            scale = amp / (k * k)
            harmonics.append((rng.normal(0.0, scale), rng.normal(0.0, scale)))
        if offset_amp > 0.0:
            a1, b1 = harmonics[0]
            phase = rng.uniform(0.0, 2.0 * math.pi)
            harmonics[0] = (a1 + offset_amp * math.cos(phase), b1 + offset_amp * math.sin(phase))
        body = FourierCurve(base, tuple(harmonics))
        try:
            validate_surface(body, space)
        except InputError:
            continue
        if predicate is not None and not predicate(body):
            continue
        return body
    raise AssertionError("random body generator failed to satisfy the constraints")


def brute_force_extrema(surface, space, n=200000):
    lo, hi = surface.theta_domain()
    theta = np.linspace(lo, hi, n, endpoint=not surface.periodic)
    p = np.atleast_1d(eval_p(surface, space, theta)[0])
    return float(np.min(p)), float(np.max(p))
