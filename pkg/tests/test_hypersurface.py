"""Radial graphs: analytic derivatives, angles, curvatures, critical
structure, and the trajectory curvature identity."""

import math

import numpy as np
import pytest
from conftest import (
    brute_force_extrema,
    fd_curve_curvature,
    fd_revolution_curvature,
    offset_sphere_closed_form,
    random_convex_fourier,
)

from curvcomp import (
    FourierCurve,
    ModelSpace,
    OffsetEllipse,
    OffsetSphere,
    RevolutionSurface,
    WarpedProfile,
    eval_p,
    kn_range,
    make_surface,
    monotone_segments,
    normal_angle_cos,
    normal_curvature,
    rho_extrema,
    riccati_residual,
    sample_trajectory,
    sphere_angle,
    sphere_mu,
    support_function,
    validate_surface,
)
from curvcomp.errors import InputError
from curvcomp.numerics import bisect_on

E2 = ModelSpace.constant(0.0)
S2 = ModelSpace.constant(1.0)
H2 = ModelSpace.constant(-1.0)
E3 = ModelSpace.constant(0.0, m=3)


def test_eval_p_examples():
    assert eval_p(FourierCurve(1.0), E2, 0.37) == (1.0, 0.0, 0.0)
    p, dp, ddp = eval_p(OffsetSphere(1.0, 0.5), E2, 0.0)
    assert p == pytest.approx(0.5, abs=1e-14)
    assert dp == pytest.approx(0.0, abs=1e-14)
    assert ddp > 0.0
    p, dp, _ = eval_p(OffsetEllipse(1.2, 1.0, 0.0), E2, 0.0)
    assert p == pytest.approx(1.2, abs=1e-14)
    assert dp == pytest.approx(0.0, abs=1e-14)


def test_fourier_eval_derivatives_match_fd():
    body = FourierCurve(1.0, ((0.03, -0.02), (0.0, 0.04), (-0.01, 0.0)))
    h = 1e-5
    for th in (0.3, 1.9, 4.4):
        p0, dp0, ddp0 = eval_p(body, E2, th)
        pm = eval_p(body, E2, th - h)[0]
        pp = eval_p(body, E2, th + h)[0]
        assert dp0 == pytest.approx((pp - pm) / (2 * h), abs=1e-8)
        assert ddp0 == pytest.approx((pp - 2 * p0 + pm) / (h * h), abs=1e-5)


@pytest.mark.parametrize("space,r,a", [(S2, 0.6, 0.3), (H2, 0.8, 0.4), (S2, 1.1, 0.2)])
def test_offset_sphere_newton_matches_closed_form(space, r, a):
    body = OffsetSphere(r, a)
    theta = np.linspace(0.0, 2 * math.pi, 97, endpoint=False)
    p = eval_p(body, space, theta)[0]
    oracle = offset_sphere_closed_form(space.c, r, a, theta)
    assert np.max(np.abs(p - oracle)) <= 1e-10


@pytest.mark.parametrize("space,r,a", [(S2, 0.6, 0.3), (H2, 0.8, 0.4), (E2, 1.0, 0.5)])
def test_offset_sphere_derivatives_match_fd(space, r, a):
    body = OffsetSphere(r, a)
    h = 1e-5
    for th in (0.4, 2.0, 3.9):
        p0, dp0, ddp0 = eval_p(body, space, th)
        pm = eval_p(body, space, th - h)[0]
        pp = eval_p(body, space, th + h)[0]
        assert dp0 == pytest.approx((pp - pm) / (2 * h), abs=1e-8)
        assert ddp0 == pytest.approx((pp - 2 * p0 + pm) / (h * h), rel=1e-4, abs=1e-5)


def test_ellipse_derivatives_match_fd():
    body = OffsetEllipse(1.2, 1.0, 0.5)
    h = 1e-5
    for th in (0.0, 0.7, 2.2, 5.1):
        p0, dp0, ddp0 = eval_p(body, E2, th)
        pm = eval_p(body, E2, th - h)[0]
        pp = eval_p(body, E2, th + h)[0]
        assert dp0 == pytest.approx((pp - pm) / (2 * h), abs=1e-8)
        assert ddp0 == pytest.approx((pp - 2 * p0 + pm) / (h * h), rel=1e-4, abs=1e-5)


def test_normal_angle_cos_examples():
    assert normal_angle_cos(FourierCurve(0.8), E2, 1.3) == 1.0
    # offset sphere at the level p = 1: must match the comparison-sphere
    # triangle value 0.875
    body = OffsetSphere(1.0, 0.5)
    root = bisect_on(
        lambda th: np.atleast_1d(eval_p(body, E2, th)[0]) - 1.0,
        np.array([0.0]),
        np.array([math.pi]),
    )[0]
    assert normal_angle_cos(body, E2, root) == pytest.approx(0.875, abs=1e-11)
    assert normal_angle_cos(OffsetEllipse(1.2, 1.0, 0.0), E2, 0.0) == pytest.approx(1.0, abs=1e-14)


def test_normal_angle_cos_is_one_iff_critical():
    body = OffsetEllipse(1.2, 1.0, 0.3)
    ext = rho_extrema(body, E2)
    for th in ext.critical:
        assert normal_angle_cos(body, E2, th) == pytest.approx(1.0, abs=1e-12)
    rng = np.random.default_rng(3)
    count = 0
    while count < 128:
        th = rng.uniform(0.0, 2 * math.pi)
        if min(abs(th - t) for t in ext.critical) < 1e-2:
            continue
        count += 1
        dp = eval_p(body, E2, th)[1]
        assert abs(dp) > 0.0
        assert normal_angle_cos(body, E2, th) < 1.0


def test_normal_curvature_examples():
    assert normal_curvature(FourierCurve(2.0), E2, 0.9) == pytest.approx(0.5, abs=1e-14)
    # geodesic circle in the sphere: curvature equals the model value
    assert normal_curvature(OffsetSphere(math.pi / 4, 0.0), S2, 0.2) == pytest.approx(
        1.0, abs=1e-12
    )
    assert normal_curvature(OffsetEllipse(1.2, 1.0, 0.0), E2, 0.0) == pytest.approx(
        1.2, abs=1e-12
    )


def test_ellipse_vertex_curvature_osculating_oracle():
    # brute-force osculating circle at the major-axis vertex
    body = OffsetEllipse(1.2, 1.0, 0.0)
    k_fd = fd_curve_curvature(body, E2, 0.0, 1e-4)
    assert k_fd == pytest.approx(1.2, abs=1e-6)
    assert normal_curvature(body, E2, 0.0) == pytest.approx(k_fd, abs=1e-6)


@pytest.mark.parametrize(
    "body,space",
    [
        (OffsetEllipse(1.2, 1.0, 0.3), E2),
        (FourierCurve(1.0, ((0.0, 0.0), (0.05, 0.02))), E2),
        (FourierCurve(0.7, ((0.02, 0.0), (0.0, 0.03))), S2),
        (FourierCurve(0.9, ((0.03, -0.01), (0.02, 0.0))), H2),
        (OffsetSphere(0.6, 0.3), S2),
        (OffsetSphere(0.8, 0.4), H2),
    ],
)
def test_normal_curvature_embedding_oracle(body, space):
    # independent osculating/Frenet data from the quadric embedding, with
    # step halving to confirm the FD estimate is converged
    rng = np.random.default_rng(11)
    thetas = rng.uniform(0.0, 2 * math.pi, 128)
    h = 1e-4
    for th in thetas:
        k_analytic = abs(normal_curvature(body, space, float(th)))
        k_h = fd_curve_curvature(body, space, float(th), h)
        k_h2 = fd_curve_curvature(body, space, float(th), h / 2)
        assert abs(k_h2 - k_analytic) <= 1e-4 * max(1.0, k_analytic)
        # halving the step must not move the estimate away
        assert abs(k_h2 - k_analytic) <= abs(k_h - k_analytic) + 1e-9


@pytest.mark.parametrize("space,r,a", [(E2, 1.0, 0.5), (S2, 0.6, 0.3), (H2, 0.8, 0.4)])
def test_offset_sphere_constant_curvature(space, r, a):
    body = OffsetSphere(r, a)
    theta = np.linspace(0.0, 2 * math.pi, 257, endpoint=False)
    k = normal_curvature(body, space, theta)
    k_ref = sphere_mu(space, r)
    assert np.max(np.abs(k - k_ref)) <= 1e-10


def test_kn_range_examples():
    assert kn_range(FourierCurve(1.0), E2, 64) == (pytest.approx(1.0), pytest.approx(1.0))
    lo, hi = kn_range(OffsetEllipse(1.2, 1.0, 0.0), E2, 256)
    assert lo == pytest.approx(1.0 / 1.44, abs=1e-9)
    assert hi == pytest.approx(1.2, abs=1e-9)
    body = FourierCurve(1.0, ((0.0, 0.0), (0.05, 0.0)))
    lo, hi = kn_range(body, E2, 256)
    assert lo > 0.0
    # oracle: brute-force FD over a dense grid
    dense = np.linspace(0, 2 * math.pi, 2048, endpoint=False)
    k_fd = np.array([fd_curve_curvature(body, E2, float(t), 1e-4) for t in dense[:64]])
    k_an = np.abs(normal_curvature(body, E2, dense[:64]))
    assert np.max(np.abs(k_fd - k_an)) <= 1e-5


def test_revolution_curvatures_against_embedding():
    prolate = RevolutionSurface(1.2, 1.0)
    # poles are umbilic with curvature A/B^2, equator meridian B/A^2
    assert normal_curvature(prolate, E3, 1e-9, "parallel") == pytest.approx(1.2, rel=1e-6)
    assert normal_curvature(prolate, E3, math.pi / 2, "meridian") == pytest.approx(
        1.0 / 1.44, abs=1e-10
    )
    assert normal_curvature(prolate, E3, math.pi / 2, "parallel") == pytest.approx(
        1.0, abs=1e-10
    )
    for alpha in (0.3, 0.9, 1.4, 2.2, 2.9):
        for direction in ("meridian", "parallel"):
            k_an = abs(normal_curvature(prolate, E3, alpha, direction))
            k_fd = fd_revolution_curvature(prolate, E3, alpha, direction, 1e-4)
            assert k_fd == pytest.approx(k_an, rel=1e-4)
    lo, hi = kn_range(prolate, E3, 512)
    assert lo == pytest.approx(1.0 / 1.44, abs=1e-4)
    assert hi == pytest.approx(1.2, abs=1e-6)


def test_rho_extrema_examples():
    ext = rho_extrema(OffsetSphere(1.0, 0.5), E2)
    assert (ext.d, ext.rho_max) == (pytest.approx(0.5, abs=1e-10), pytest.approx(1.5, abs=1e-10))
    ext = rho_extrema(OffsetEllipse(1.2, 1.0, 0.0), E2)
    assert ext.d == pytest.approx(1.0, abs=1e-10)
    assert ext.rho_max == pytest.approx(1.2, abs=1e-10)
    assert len(ext.argmin) == 2 and len(ext.argmax) == 2
    body = OffsetEllipse(1.2, 1.0, 0.5)
    ext = rho_extrema(body, E2)
    assert ext.d == pytest.approx(0.7, abs=1e-10)
    assert ext.rho_max == pytest.approx(1.7, abs=1e-10)
    lo, hi = brute_force_extrema(body, E2)
    assert ext.d == pytest.approx(lo, abs=1e-8)
    assert ext.rho_max == pytest.approx(hi, abs=1e-8)


def test_monotone_segments_examples():
    assert monotone_segments(FourierCurve(1.0), E2) == []
    segs = monotone_segments(OffsetSphere(1.0, 0.5), E2)
    assert len(segs) == 2
    segs = monotone_segments(OffsetEllipse(1.2, 1.0, 0.0), E2)
    assert len(segs) == 4
    for seg in segs:
        assert seg.p_min < seg.p_max
    # each segment starts at a local minimum of p
    mins = sorted(seg.p_min for seg in segs)
    assert mins[0] == pytest.approx(1.0, abs=1e-9)


def test_monotone_segments_revolution():
    segs = monotone_segments(RevolutionSurface(1.2, 1.0), E3)
    assert len(segs) == 2
    assert {round(s.p_min, 6) for s in segs} == {1.0}


def test_support_function_bounds():
    for body, space in (
        (OffsetEllipse(1.2, 1.0, 0.4), E2),
        (OffsetSphere(0.8, 0.4), H2),
        (FourierCurve(0.7, ((0.02, 0.0), (0.0, 0.03))), S2),
    ):
        ext = rho_extrema(body, space)
        theta = np.linspace(0, 2 * math.pi, 256, endpoint=False)
        h = np.atleast_1d(support_function(body, space, theta))
        p = np.atleast_1d(eval_p(body, space, theta)[0])
        assert np.all(h <= p + 1e-12)
        assert np.all(p <= ext.rho_max + 1e-9)
        assert np.max(h) >= ext.d - 1e-9


def test_support_function_examples():
    assert support_function(FourierCurve(0.9), E2, 0.1) == pytest.approx(0.9, abs=1e-14)
    assert support_function(OffsetEllipse(1.2, 1.0, 0.0), E2, 0.0) == pytest.approx(
        1.2, abs=1e-12
    )
    body = OffsetSphere(1.0, 0.5)
    root = bisect_on(
        lambda th: np.atleast_1d(eval_p(body, E2, th)[0]) - 1.0,
        np.array([0.0]),
        np.array([math.pi]),
    )[0]
    assert support_function(body, E2, root) == pytest.approx(0.875, abs=1e-11)


@pytest.mark.parametrize(
    "body,space,bound",
    [
        (OffsetSphere(1.0, 0.5), E2, 1e-8),
        (OffsetEllipse(1.2, 1.0, 0.0), E2, 1e-8),
        (OffsetSphere(0.6, 0.3), S2, 1e-8),
        (OffsetSphere(0.8, 0.4), H2, 1e-8),
    ],
)
def test_riccati_identity_constant_curvature(body, space, bound):
    for seg in monotone_segments(body, space):
        res = riccati_residual(body, space, seg, 256)
        assert res.max_residual <= bound
        assert res.n_used > 0


def test_riccati_identity_warped():
    prof = WarpedProfile((0.0, 0.1), 1.0)
    space = ModelSpace.warped(prof)
    body = FourierCurve(0.5, ((0.0, 0.0), (0.02, 0.0)))
    validate_surface(body, space)
    for seg in monotone_segments(body, space):
        res = riccati_residual(body, space, seg, 256)
        assert res.max_residual <= 1e-6


def test_sample_trajectory_fields():
    body = OffsetEllipse(1.2, 1.0, 0.0)
    seg = monotone_segments(body, E2)[0]
    samples = sample_trajectory(body, E2, seg, 32)
    assert len(samples) == 32
    ext = rho_extrema(body, E2)
    ts = [s.t for s in samples]
    assert ts == sorted(ts)  # ordered from the minimum end
    for s in samples:
        assert 0.0 < s.cos_angle <= 1.0
        assert ext.d - 1e-9 <= s.t <= ext.rho_max + 1e-9
        assert s.k_n > 0.0
        # trajectory cosine matches the reference formula inputs
        assert s.mu == pytest.approx(sphere_mu(E2, s.t), abs=1e-12)


def test_riccati_skips_near_critical_samples():
    body = OffsetEllipse(1.2, 1.0, 0.0)
    seg = monotone_segments(body, E2)[0]
    res = riccati_residual(body, E2, seg, 256)
    assert res.n_used + res.n_skipped == 256


def test_validate_surface_guards():
    with pytest.raises(InputError, match="not convex"):
        validate_surface(FourierCurve(1.0, ((0.0, 0.0), (0.0, 0.0), (0.2, 0.0))), E2)
    # the same body is accepted in star-shaped mode
    validate_surface(
        FourierCurve(1.0, ((0.0, 0.0), (0.0, 0.0), (0.2, 0.0)), star_shaped_mode=True), E2
    )
    with pytest.raises(InputError, match="star-shaped"):
        validate_surface(FourierCurve(0.1, ((0.5, 0.0),)), E2)
    with pytest.raises(InputError):
        validate_surface(OffsetEllipse(1.2, 1.0, 0.0), S2)
    with pytest.raises(InputError):
        validate_surface(OffsetSphere(1.8, 0.0), S2)  # beyond the equator
    with pytest.raises(InputError):
        OffsetSphere(1.0, 1.0)
    with pytest.raises(InputError):
        OffsetEllipse(1.0, 1.2, 0.0)
    with pytest.raises(InputError):
        make_surface("nonagon", size=1)


def test_make_surface_roundtrip():
    body = make_surface("fourier_curve", a0=1.0, harmonics=((0.01, 0.0),))
    assert isinstance(body, FourierCurve)
    body = make_surface("offset_sphere", r=1.0, a=0.25)
    assert isinstance(body, OffsetSphere)


def test_random_bodies_have_consistent_extrema():
    rng = np.random.default_rng(5)
    for space in (E2, S2, H2):
        base = 0.7 if space.c > 0 else 1.0
        for _ in range(5):
            body = random_convex_fourier(rng, space, base, max_k=4, amp=0.05)
            ext = rho_extrema(body, space)
            lo, hi = brute_force_extrema(body, space)
            assert ext.d == pytest.approx(lo, abs=1e-7)
            assert ext.rho_max == pytest.approx(hi, abs=1e-7)
            segs = monotone_segments(body, space)
            assert len(segs) >= 2
            assert min(s.p_min for s in segs) == pytest.approx(ext.d, abs=1e-9)
