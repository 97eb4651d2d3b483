"""Desk-scale numerical verification of curvature comparison inequalities.

Convex radial-graph bodies in constant-curvature (and rotationally
symmetric warped) model spaces are checked against their constant-curvature
reference spheres: level-set angle and support comparisons, trajectory
monotonicity, the curvature identity along radial-gradient trajectories,
rolling-ball containment, shadow curvature of projections, and polar
duality with its reciprocal-curvature and involution laws.
"""

from .comparison import (
    ComparisonConfig,
    ComparisonReport,
    LevelRow,
    MonotoneReport,
    hypothesis_summary,
    verify_angle,
    verify_dual,
    verify_monotone,
    verify_support,
)
from .errors import (
    CurvCompError,
    FeasibilityError,
    HypothesisError,
    InputError,
    ResolutionError,
)
from .hypersurface import (
    FourierCurve,
    MonotoneSegment,
    OffsetEllipse,
    OffsetSphere,
    RadialExtrema,
    RevolutionSurface,
    TrajectorySample,
    eval_p,
    kn_range,
    make_surface,
    monotone_segments,
    normal_angle_cos,
    normal_curvature,
    rho_extrema,
    riccati_residual,
    sample_trajectory,
    support_function,
    validate_surface,
)
from .modelspace import (
    ModelSpace,
    WarpedProfile,
    geodesic_distance,
    radius_for_curvature,
    sn,
    sphere_angle,
    sphere_mu,
    sphere_support,
    validate_half_ball,
    warped_curvature_range,
)
from .polar import (
    EmbeddedCurve,
    dual_curvature_check,
    dual_curvature_check_refined,
    embed_curve,
    involution_check,
    polar_dual,
)
from .rolling import (
    ProjectionReport,
    RollingReport,
    check_part_a,
    check_part_b,
    projection_lemma_check,
    tangent_ball,
)

__version__ = "0.1.0"
