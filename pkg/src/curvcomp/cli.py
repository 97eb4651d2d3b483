"""Scene-driven command line front end.

A scene is a single JSON document naming the ambient space, the body, one
check to run, sampling sizes and tolerances.  Running a scene always
validates the check's hypotheses first, then emits a JSON summary and
plot-ready CSV rows.  Reruns of the same scene produce byte-identical
files.

Exit codes: 0 all checks pass; 1 a verified inequality fails or a
hypothesis of the theorem under test is violated; 2 invalid input or I/O
failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import comparison, hypersurface, modelspace, polar, rolling
from .errors import CurvCompError, HypothesisError, InputError, ResolutionError

SCHEMA_VERSION = 1

_CHECK_TYPES = (
    "angle",
    "support",
    "dual",
    "monotone",
    "riccati",
    "roll_a",
    "roll_b",
    "polar",
    "projection",
)

_DEFAULT_SAMPLING = {"n_l": 64, "n_P": 256, "n_X": 4096, "n": 256}
_POLAR_DEFAULT_N = 2048

_CSV_HEADERS = {
    "angle": "l,surface_value,sphere_value,margin",
    "support": "l,surface_value,sphere_value,margin",
    "dual": "l,surface_value,sphere_value,margin",
    "monotone": "t,f_value,product_value",
    "riccati": "segment,theta,t,residual",
    "roll_a": "theta_P,margin,witness_theta",
    "roll_b": "theta_P,margin,witness_theta",
    "polar": "theta,x0,x1,x2",
    "projection": "param,shadow_x,shadow_y",
}


@dataclass(frozen=True)
class SceneSpec:
    """Validated, defaults-filled description of one verification run."""

    space: dict
    surface: dict
    check: dict
    sampling: dict
    tol: float
    seed: int
    output: dict

    def to_dict(self) -> dict:
        return {
            "space": self.space,
            "surface": self.surface,
            "check": self.check,
            "sampling": self.sampling,
            "tol": self.tol,
            "seed": self.seed,
            "output": self.output,
        }


@dataclass
class RunReport:
    """Everything one scene run produced."""

    scene: SceneSpec
    hypotheses: dict
    check_type: str
    payload: dict
    passed: bool
    csv_rows: list[tuple] = field(default_factory=list)
    error: dict | None = None
    wall_time_s: float = 0.0

    def to_json_dict(self) -> dict:
        # wall time is intentionally not serialized: identical scenes must
        # produce byte-identical reports.
        return {
            "schema_version": SCHEMA_VERSION,
            "scene": self.scene.to_dict(),
            "hypotheses": self.hypotheses,
            "check": {"type": self.check_type, "payload": self.payload},
            "pass": self.passed,
            "error": self.error,
        }


def _require(mapping: dict, key: str, context: str):
    if key not in mapping:
        raise InputError(f"scene is missing required field {context}{key!r}")
    return mapping[key]


def _no_unknown(mapping: dict, allowed: set[str], context: str):
    unknown = set(mapping) - allowed
    if unknown:
        raise InputError(f"unknown field(s) in {context}: {sorted(unknown)}")


def _build_space(spec: dict) -> modelspace.ModelSpace:
    kind = _require(spec, "kind", "space.")
    if kind == "constant":
        _no_unknown(spec, {"kind", "c", "m"}, "space")
        return modelspace.ModelSpace.constant(float(_require(spec, "c", "space.")), int(spec.get("m", 2)))
    if kind == "warped":
        _no_unknown(spec, {"kind", "coefficients", "T"}, "space")
        profile = modelspace.WarpedProfile(
            tuple(float(a) for a in _require(spec, "coefficients", "space.")),
            float(_require(spec, "T", "space.")),
        )
        return modelspace.ModelSpace.warped(profile)
    raise InputError(f"unknown space kind {kind!r}")


def _build_surface(spec: dict) -> hypersurface.Surface:
    kind = _require(spec, "kind", "surface.")
    params = {k: v for k, v in spec.items() if k != "kind"}
    if kind == "fourier_curve" and "harmonics" in params:
        params["harmonics"] = tuple(
            (float(a), float(b)) for a, b in params["harmonics"]
        )
    return hypersurface.make_surface(kind, **params)


def parse_scene(path: str | Path) -> SceneSpec:
    """Load, validate and default-fill a scene file.

    Structural problems (missing blocks, unknown fields, infeasible
    reference data) raise InputError naming the offending field.
    """
    path = Path(path)
    if not path.exists():
        raise InputError(f"scene file {path} does not exist")
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InputError(f"scene file {path} is not valid JSON: {exc}") from None
    return scene_from_dict(raw)


def scene_from_dict(raw: dict) -> SceneSpec:
    """Validate a scene given as a dict (the file-free entry point)."""
    if not isinstance(raw, dict):
        raise InputError("scene must be a JSON object")
    _no_unknown(raw, {"space", "surface", "check", "sampling", "tol", "seed", "output"}, "scene")
    space_spec = dict(_require(raw, "space", ""))
    surface_spec = dict(_require(raw, "surface", ""))
    check_spec = dict(_require(raw, "check", ""))

    space = _build_space(space_spec)
    surface = _build_surface(surface_spec)
    hypersurface.validate_surface(surface, space)

    ctype = _require(check_spec, "type", "check.")
    if ctype not in _CHECK_TYPES:
        raise InputError(f"unknown check type {ctype!r} (expected one of {_CHECK_TYPES})")
    allowed = {"type"}
    if ctype in ("angle", "support", "monotone"):
        allowed |= {"k1", "c1"}
        k = float(_require(check_spec, "k1", "check."))
        c1 = float(_require(check_spec, "c1", "check."))
        if ctype == "monotone":
            allowed |= {"segment"}
        # surfaces this check can't pair with a compact comparison sphere are
        # structural scene errors, caught here rather than at run time
        modelspace.radius_for_curvature(c1, k)
    elif ctype == "dual":
        allowed |= {"k2", "c2"}
        k = float(_require(check_spec, "k2", "check."))
        c2 = float(_require(check_spec, "c2", "check."))
        modelspace.radius_for_curvature(c2, k)
    elif ctype in ("roll_a", "roll_b"):
        allowed |= {"lambda"}
        lam = float(_require(check_spec, "lambda", "check."))
        modelspace.radius_for_curvature(space.c if space.is_constant else 0.0, lam)
    elif ctype == "projection":
        allowed |= {"direction"}
        direction = _require(check_spec, "direction", "check.")
        if len(direction) != 3:
            raise InputError("check.direction must be a 3-vector")
    elif ctype == "riccati":
        allowed |= {"segment"}

    _no_unknown(check_spec, allowed, "check")

    sampling = dict(_DEFAULT_SAMPLING)
    if ctype == "polar":
        sampling["n"] = _POLAR_DEFAULT_N
    user_sampling = raw.get("sampling", {})
    _no_unknown(user_sampling, set(_DEFAULT_SAMPLING), "sampling")
    sampling.update({k: int(v) for k, v in user_sampling.items()})
    for key, val in sampling.items():
        if val < 2:
            raise InputError(f"sampling.{key} must be at least 2")

    if "tol" in raw:
        tol = float(raw["tol"])
        if not (tol > 0.0):
            raise InputError("tol must be positive")
    else:
        tol = 1e-7 if space.is_constant else 1e-5

    seed = int(raw.get("seed", 0))
    output = dict(raw.get("output", {}))
    _no_unknown(output, {"json", "csv"}, "output")
    output.setdefault("json", "report.json")
    output.setdefault("csv", "rows.csv")

    return SceneSpec(
        space=space_spec,
        surface=surface_spec,
        check=check_spec,
        sampling=sampling,
        tol=tol,
        seed=seed,
        output=output,
    )


def _comparison_csv(report: comparison.ComparisonReport) -> list[tuple]:
    rows = [(r.l, r.surface_value, r.sphere_value, r.margin) for r in report.rows]
    if report.rows_support is not None:
        rows.extend((r.l, r.surface_value, r.sphere_value, r.margin) for r in report.rows_support)
    return rows


def run_scene(spec: SceneSpec) -> RunReport:
    """Execute a validated scene: hypothesis summary first, then the check.

    Hypothesis failures are captured in the report (pass = false) instead of
    propagating, so the caller can still emit the summary; structural errors
    propagate as InputError/ResolutionError.
    """
    start = time.perf_counter()
    space = _build_space(spec.space)
    surface = _build_surface(spec.surface)
    hypersurface.validate_surface(surface, space)

    hyp = comparison.hypothesis_summary(surface, space, n=spec.sampling["n"])
    hyp_dict = hyp.to_dict()
    ctype = spec.check["type"]
    payload: dict = {}
    csv_rows: list[tuple] = []
    error = None
    passed = False

    try:
        if ctype in ("angle", "support"):
            cfg = comparison.ComparisonConfig(
                "lower",
                float(spec.check["k1"]),
                float(spec.check["c1"]),
                n_levels=spec.sampling["n_l"],
                tol=spec.tol,
            )
            fn = comparison.verify_angle if ctype == "angle" else comparison.verify_support
            rep = fn(surface, space, cfg)
            payload = rep.to_dict()
            passed = rep.passed
            csv_rows = _comparison_csv(rep)
        elif ctype == "dual":
            cfg = comparison.ComparisonConfig(
                "upper",
                float(spec.check["k2"]),
                float(spec.check["c2"]),
                n_levels=spec.sampling["n_l"],
                tol=spec.tol,
            )
            rep = comparison.verify_dual(surface, space, cfg)
            payload = rep.to_dict()
            passed = rep.passed
            csv_rows = _comparison_csv(rep)
        elif ctype == "monotone":
            cfg = comparison.ComparisonConfig(
                "lower",
                float(spec.check["k1"]),
                float(spec.check["c1"]),
                n_levels=spec.sampling["n_l"],
                tol=spec.tol,
            )
            segments = [s for s in hyp.segments if abs(s.p_min - hyp.d) <= 1e-9 * max(1.0, hyp.d)]
            if not segments:
                raise InputError("no monotone segment is rooted at the global minimum")
            index = int(spec.check.get("segment", 0))
            if not (0 <= index < len(segments)):
                raise InputError(
                    f"segment index {index} out of range ({len(segments)} rooted segments)"
                )
            rep = comparison.verify_monotone(surface, space, cfg, segments[index], n=spec.sampling["n"])
            payload = rep.to_dict()
            passed = rep.passed
            csv_rows = list(zip(rep.t, rep.f, rep.product))
        elif ctype == "riccati":
            segments = list(hyp.segments)
            if "segment" in spec.check:
                index = int(spec.check["segment"])
                if not (0 <= index < len(segments)):
                    raise InputError(f"segment index {index} out of range")
                segments = [segments[index]]
            worst = 0.0
            seg_payload = []
            for si, seg in enumerate(segments):
                res = hypersurface.riccati_residual(surface, space, seg, n=spec.sampling["n"])
                seg_payload.append(
                    {
                        "segment": [seg.theta_lo, seg.theta_hi],
                        "max_residual": res.max_residual,
                        "theta_at_max": res.theta_at_max,
                        "n_used": res.n_used,
                        "n_skipped": res.n_skipped,
                    }
                )
                samples = hypersurface.sample_trajectory(surface, space, seg, spec.sampling["n"])
                for s in samples:
                    resid = abs(s.k_n - s.cos_angle * s.mu - _dcos_dt(surface, space, s.theta))
                    csv_rows.append((float(si), s.theta, s.t, resid))
                worst = max(worst, res.max_residual)
            payload = {"segments": seg_payload, "max_residual": worst}
            passed = worst <= spec.tol
        elif ctype in ("roll_a", "roll_b"):
            lam = float(spec.check["lambda"])
            fn = rolling.check_part_a if ctype == "roll_a" else rolling.check_part_b
            rep = fn(
                surface,
                space,
                lam,
                n_P=spec.sampling["n_P"],
                n_X=spec.sampling["n_X"],
                tol=spec.tol,
            )
            payload = rep.to_dict()
            passed = rep.passed
            csv_rows = [(r.theta_P, r.margin, r.witness_theta) for r in rep.rows]
        elif ctype == "polar":
            payload, passed, csv_rows = _run_polar(surface, space, spec, hyp)
        elif ctype == "projection":
            rep = rolling.projection_lemma_check(
                surface, space, spec.check["direction"], n=spec.sampling["n"]
            )
            payload = rep.to_dict()
            passed = rep.passed
            params = np.arange(len(rep.shadow), dtype=float)
            csv_rows = [
                (float(i), float(x), float(y)) for i, (x, y) in zip(params, rep.shadow)
            ]
        else:  # pragma: no cover - parse_scene guarantees the type
            raise InputError(f"unhandled check type {ctype!r}")
    except HypothesisError as exc:
        error = {"class": "hypothesis", "message": str(exc)}
        passed = False

    report = RunReport(
        scene=spec,
        hypotheses=hyp_dict,
        check_type=ctype,
        payload=payload,
        passed=passed,
        csv_rows=csv_rows,
        error=error,
    )
    report.wall_time_s = time.perf_counter() - start
    return report


def _dcos_dt(surface, space, theta: float) -> float:
    """Analytic d(cos angle)/dt at one sample (for the CSV residual rows)."""
    p, dp, ddp = hypersurface.eval_p(surface, space, theta)
    w = space.warp(p)
    dw = space.dwarp(p)
    big_w = math.hypot(w, dp)
    return (dw * dp * dp - w * ddp) / big_w**3


def _run_polar(surface, space, spec: SceneSpec, hyp) -> tuple[dict, bool, list[tuple]]:
    if not (space.is_constant and space.c in (1.0, -1.0)):
        raise InputError("polar check requires constant curvature c = 1 or c = -1")
    if hyp.k_min <= 0.0:
        raise HypothesisError("polar check needs a convex body")
    if space.c == 1.0 and not modelspace.validate_half_ball(1.0, hyp.rho_max):
        raise HypothesisError("spherical body must stay inside the open half ball")
    n = spec.sampling["n"]
    curve = polar.embed_curve(surface, space, n)
    dual = polar.polar_dual(curve)
    res, order = polar.dual_curvature_check_refined(surface, space, n, tol=max(spec.tol, 1e-5))
    quadric = float(np.max(dual.quadric_residual()))
    payload = {
        "ambient": curve.ambient,
        "dual_ambient": dual.ambient,
        "max_quadric_residual": quadric,
        "dual_curvature": res.to_dict(),
        "convergence_order": order,
    }
    passed = res.passed and quadric <= 1e-10
    if space.c == 1.0:
        inv = polar.involution_check(curve)
        payload["max_involution_distance"] = inv
        passed = passed and inv <= 1e-8
    csv_rows = [
        (float(t), float(x[0]), float(x[1]), float(x[2]))
        for t, x in zip(dual.theta, dual.points)
    ]
    return payload, passed, csv_rows


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def emit_report(report: RunReport, out_dir: str | Path, write_csv: bool = True) -> list[Path]:
    """Write the JSON summary (and CSV rows) under ``out_dir``.

    Output is deterministic: sorted keys, fixed float formatting, CRLF
    row terminators in the CSV.
    """
    out_dir = Path(out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        paths = []
        json_path = out_dir / report.scene.output["json"]
        json_path.write_text(
            json.dumps(report.to_json_dict(), sort_keys=True, indent=2) + "\n",
            encoding="utf-8",
        )
        paths.append(json_path)
        if write_csv:
            csv_path = out_dir / report.scene.output["csv"]
            header = _CSV_HEADERS[report.check_type]
            lines = [header]
            lines.extend(",".join(_fmt(v) for v in row) for row in report.csv_rows)
            csv_path.write_text("\r\n".join(lines) + "\r\n", encoding="utf-8")
            paths.append(csv_path)
        return paths
    except OSError as exc:
        raise InputError(f"cannot write report: {exc}") from None


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="curvcomp",
        description="Run one scene of curvature-comparison verification checks.",
    )
    parser.add_argument("--scene", required=True, help="path to the scene JSON file")
    parser.add_argument("--out", default=".", help="output directory (default: current)")
    parser.add_argument("--csv", dest="csv", action="store_true", default=True)
    parser.add_argument("--no-csv", dest="csv", action="store_false", help="skip CSV rows")
    parser.add_argument("--tol", type=float, default=None, help="override the scene tolerance")
    parser.add_argument("--quiet", action="store_true", help="suppress the console summary")
    args = parser.parse_args(argv)

    try:
        spec = parse_scene(args.scene)
        if args.tol is not None:
            if not (args.tol > 0.0):
                raise InputError("--tol must be positive")
            spec = SceneSpec(
                spec.space, spec.surface, spec.check, spec.sampling, args.tol, spec.seed, spec.output
            )
        report = run_scene(spec)
        emit_report(report, args.out, write_csv=args.csv)
    except (InputError, ResolutionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except HypothesisError as exc:
        print(f"hypothesis violated: {exc}", file=sys.stderr)
        return 1
    except CurvCompError as exc:  # pragma: no cover - safety net
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if not args.quiet:
        status = "PASS" if report.passed else "FAIL"
        detail = ""
        if report.error is not None:
            detail = f" ({report.error['message']})"
        print(
            f"{status} {report.check_type} scene in {report.wall_time_s:.3f}s{detail}"
        )
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
