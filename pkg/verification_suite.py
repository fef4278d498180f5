"""Check drivers behind ``cli_verify verify``.

Every check is a function of a :class:`VerificationContext` returning an
:class:`Outcome`. ``run_suite`` times each one and turns any exception into a
FAIL entry, so one broken check never aborts a run.
"""

import json
import math
import os
import sys
import time
import traceback
import zlib
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Optional

import numpy as np

from config_manager import get_profile_grid
from envelope_map import (
    F_alt_eval,
    F_eval,
    G_eval,
    G_wirtinger,
    H_rt,
    K_rt,
    Phi_r,
    ReG_on_circle,
    critical_angles,
    dg_r_dtheta,
    dg_r_dtheta_closed,
    dg_r_lower_bound,
    dPhi_r,
    dphi_dtheta,
    dReG_dtheta,
    envelope_circle,
    envelope_extremality,
    envelope_point,
    envelope_tangency_residual,
    g_r,
    h_prime,
    jacobian_G,
    jacobian_numerator,
    phi_and_h,
)
from extremal_families import (
    ExtremalParams,
    FamilyKind,
    close_to_convex_certificate,
    f_ab,
    f_ab_deriv,
    f_ab_zlogderiv,
    family_map,
    mobius_U_st,
)
from geom_kernel import curvature_sign_changes, directed_hausdorff, is_simple_polyline
from region_builder import (
    RegionFamily,
    RegionSpec,
    SampleCloud,
    boundary_curve,
    cloud_containment,
    exp_relation_check,
    gamma_errors,
    limit_curve_gamma,
    limit_curve_tau,
    monotone_nesting_check,
    oracle_cloud,
    region_membership,
    vertical_crossings,
    vertical_line_positions,
)
from theorem_solvers import (
    LV_STRIP,
    LW_STRIP,
    STARLIKE_EXACT,
    OutOfStripError,
    corner_limit,
    lu_corner_asymptote,
    lv_full_plane,
    lv_witness,
    lw_full_plane,
    lw_witness,
    min_real_F,
    nonconvexity_report,
    nonconvexity_threshold,
    starlike_radius,
)

ARTIFACT_VERSION = "1.0.0"
STATUSES = ("PASS", "FAIL", "SKIP")
ORACLE_RADII = (0.2, 0.5, 0.8)
HAUSDORFF_REFERENCE_GRID = 256
EDGE_MARGIN = 1e-4
FD_H = 1e-5


@dataclass
class Outcome:
    passed: bool
    measured: Any
    tolerance: Any
    witness: Optional[dict[str, Any]] = None
    skipped: bool = False


@dataclass
class CheckResult:
    check_id: str
    status: str
    measured: Any
    tolerance: Any
    runtime_ms: float
    witness: Optional[dict[str, Any]] = None

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


@dataclass
class VerificationReport:
    suite: str
    results: list[CheckResult]
    provenance: dict[str, Any] = field(default_factory=dict)

    def counts(self) -> dict[str, int]:
        out = {status: 0 for status in STATUSES}
        for result in self.results:
            out[result.status] += 1
        return out

    @property
    def passed(self) -> bool:
        return all(result.status != "FAIL" for result in self.results)

    def total_runtime_ms(self) -> float:
        return float(sum(result.runtime_ms for result in self.results))

    def to_dict(self) -> dict[str, Any]:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "summary": self.counts(),
            "provenance": self.provenance,
            "results": [result.to_dict() for result in self.results],
        }

    def to_json(self) -> str:
        return json.dumps(_jsonable(self.to_dict()), indent=2, sort_keys=False) + "\n"


class VerificationContext:
    def __init__(self, config: dict[str, Any]):
        self.config = config
        self.seed = int(config["seed"])
        self.grid = get_profile_grid(config)
        self.tol = config["tolerances"]
        self.solvers = config["solvers"]
        self.verify = config["verify"]
        self.oracle = config["oracle"]

    def rng(self, check_id: str) -> np.random.Generator:
        """Generator that depends on the seed and the check id only."""
        return np.random.default_rng([self.seed, zlib.crc32(check_id.encode())])

    @property
    def radii(self) -> list[float]:
        return list(self.verify["radii"])

    @property
    def boundary_n(self) -> int:
        return int(self.grid["boundary_samples"])

    def cloud(self, spec: RegionSpec, n_outer: int, n_inner: int) -> SampleCloud:
        return oracle_cloud(
            spec,
            n_outer,
            n_inner,
            log_min_steps=int(self.oracle["log_min_steps"]),
            log_max_steps=int(self.oracle["log_max_steps"]),
            stable_tol=float(self.oracle["log_stable_tol"]),
        )


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [_jsonable(float(value.real)), _jsonable(float(value.imag))]
    if isinstance(value, (float, np.floating)):
        x = float(value)
        if not math.isfinite(x):
            return str(x)
        return x + 0.0
    return value


def _worst(values: np.ndarray, where: np.ndarray, **extra: Any) -> dict[str, Any]:
    k = int(np.argmax(values))
    return {"value": float(values[k]), "at": where.ravel()[k], **extra}


def _disk_samples(rng: np.random.Generator, count: int, rmax: float) -> np.ndarray:
    radius = rmax * np.sqrt(rng.uniform(0.0, 1.0, count))
    return radius * np.exp(1j * rng.uniform(-math.pi, math.pi, count))


def _theta_grid(count: int, hi: float = math.pi) -> np.ndarray:
    return np.linspace(EDGE_MARGIN, hi - EDGE_MARGIN, count)


# ---------------------------------------------------------------- envelope


def check_F_alternate_form(ctx: VerificationContext) -> Outcome:
    z = _disk_samples(ctx.rng("envelope_F_alternate_form"), 10_000, 0.999)
    direct = np.asarray(F_eval(z))
    alt = np.asarray(F_alt_eval(z))
    err = np.abs(direct - alt) / np.abs(direct)
    tol = 1e-12
    return Outcome(float(err.max()) <= tol, float(err.max()), tol, _worst(err, z))


def check_expG_equals_F(ctx: VerificationContext) -> Outcome:
    z = _disk_samples(ctx.rng("envelope_expG_equals_F"), 10_000, 0.99)
    f = np.asarray(F_eval(z))
    err = np.abs(np.exp(np.asarray(G_eval(z))) - f) / np.abs(f)
    tol = 1e-12
    return Outcome(float(err.max()) <= tol, float(err.max()), tol, _worst(err, z))


def check_G_symmetry(ctx: VerificationContext) -> Outcome:
    z = _disk_samples(ctx.rng("envelope_G_symmetry"), 10_000, 0.99)
    err = np.abs(np.asarray(G_eval(np.conj(z))) - np.conj(np.asarray(G_eval(z))))
    tol = 1e-13
    zero = abs(complex(G_eval(0j)))
    return Outcome(
        float(err.max()) <= tol and zero == 0.0,
        {"symmetry": float(err.max()), "G(0)": zero},
        tol,
        _worst(err, z),
    )


def check_wirtinger_fd(ctx: VerificationContext) -> Outcome:
    z = _disk_samples(ctx.rng("envelope_wirtinger_fd"), 500, 0.9)
    pair = G_wirtinger(z)
    worst = np.zeros(z.size)
    for e in (1.0, 1j):
        fd = (np.asarray(G_eval(z + FD_H * e)) - np.asarray(G_eval(z - FD_H * e))) / (
            2 * FD_H
        )
        closed = np.asarray(pair.d_z) * e + np.asarray(pair.d_zbar) * np.conj(e)
        worst = np.maximum(worst, np.abs(fd - closed))
    tol = float(ctx.tol["fd"])
    return Outcome(float(worst.max()) <= tol, float(worst.max()), tol, _worst(worst, z))


def check_envelope_circles(ctx: VerificationContext) -> Outcome:
    alphas = 2.0 * math.pi * np.arange(256) / 256
    worst_on, worst_tan, worst_ratio = 0.0, 0.0, 0.0
    where: dict[str, Any] = {}
    for r in ctx.radii:
        for alpha in alphas:
            disk = envelope_circle(r, alpha)
            zeta = envelope_point(r, alpha)
            scale = max(1.0, abs(disk.center))
            on = abs(abs(zeta - disk.center) - disk.radius) / scale
            tan = abs(envelope_tangency_residual(r, alpha)) / scale**2
            worst_ratio = max(worst_ratio, envelope_extremality(r, alpha, 1e-4))
            if on > worst_on:
                worst_on = on
                where["on_circle_at"] = {"r": r, "alpha": float(alpha)}
            if tan > worst_tan:
                worst_tan = tan
                where["tangency_at"] = {"r": r, "alpha": float(alpha)}
    tol = {"on_circle": 1e-10, "tangency": 1e-10}
    passed = (
        worst_on <= tol["on_circle"]
        and worst_tan <= tol["tangency"]
        and math.isfinite(worst_ratio)
    )
    return Outcome(
        passed,
        {
            "on_circle": worst_on,
            "tangency": worst_tan,
            "extremality_constant": worst_ratio,
        },
        tol,
        where,
    )


def check_G_circle_images_simple(ctx: VerificationContext) -> Outcome:
    n = min(ctx.boundary_n, 1024)
    bad = []
    for r in ctx.radii:
        if not is_simple_polyline(boundary_curve(RegionSpec(RegionFamily.LU, r), n)):
            bad.append(r)
    return Outcome(not bad, len(bad), 0, {"self_intersecting_radii": bad})


def check_oracle_equivalence(ctx: VerificationContext) -> Outcome:
    """Brute-force U_r cloud lies inside F(|z| = r) and reaches all of it."""
    n_cloud = int(ctx.grid["oracle_n"])
    n_inner = int(ctx.grid["oracle_n_inner"])
    inflate = float(ctx.tol["inflate"])
    hd_tol = float(ctx.tol["hausdorff"]) * max(
        1.0, HAUSDORFF_REFERENCE_GRID / min(n_cloud, n_inner)
    )
    measured: dict[str, Any] = {}
    witness: dict[str, Any] = {}
    passed = True
    for r in ORACLE_RADII:
        spec = RegionSpec(RegionFamily.U, r)
        cloud = ctx.cloud(spec, n_cloud, n_inner)
        contained = cloud_containment(cloud, spec, ctx.boundary_n, inflate)
        verts, _ = boundary_curve(spec, ctx.boundary_n).vertices()
        reach = directed_hausdorff(verts, cloud.points)
        measured[str(r)] = {
            "points": contained.total,
            "inside": contained.inside,
            "boundary_to_cloud": reach,
        }
        if not contained.passed or reach > hd_tol:
            passed = False
            witness[str(r)] = {
                "worst_point": contained.worst_point,
                "worst_distance": contained.worst_distance,
                "boundary_to_cloud": reach,
            }
    return Outcome(passed, measured, {"inflate": inflate, "hausdorff": hd_tol}, witness)


# ---------------------------------------------------------------- lemmas


def check_jacobian_positive(ctx: VerificationContext) -> Outcome:
    m = int(ctx.grid["jacobian_grid"])
    radii = np.linspace(0.0, 0.999, m)
    angles = 2.0 * math.pi * np.arange(m) / m
    z = (radii[:, None] * np.exp(1j * angles[None, :])).ravel()
    jac = np.asarray(jacobian_G(z))
    k = int(np.argmin(jac))
    return Outcome(
        bool(np.all(jac > 0)),
        float(jac[k]),
        0.0,
        {"argmin": z[k], "points": int(z.size)},
    )


def check_jacobian_identity(ctx: VerificationContext) -> Outcome:
    z = _disk_samples(ctx.rng("lemma_jacobian_identity"), 10_000, 0.999)
    raw, factored = jacobian_numerator(z)
    err = np.abs(np.asarray(raw) - np.asarray(factored))
    tol = 1e-10
    return Outcome(float(err.max()) <= tol, float(err.max()), tol, _worst(err, z))


def check_ReG_decreasing(ctx: VerificationContext) -> Outcome:
    theta = np.linspace(0.0, math.pi, 1025)
    tol = 1e-12
    worst, where = -math.inf, {}
    for r in ctx.radii:
        steps = np.diff(np.asarray(ReG_on_circle(r, theta)))
        k = int(np.argmax(steps))
        if steps[k] > worst:
            worst, where = float(steps[k]), {"r": r, "theta": float(theta[k])}
    return Outcome(worst <= tol, worst, tol, where)


def check_ImG_positive(ctx: VerificationContext) -> Outcome:
    theta = _theta_grid(128)
    worst_min, worst_diff, where = math.inf, 0.0, {}
    for r in ctx.radii:
        g = np.asarray(g_r(r, theta))
        im = np.asarray(G_eval(r * np.exp(1j * theta))).imag
        worst_diff = max(worst_diff, float(np.max(np.abs(g - im))))
        k = int(np.argmin(g))
        if g[k] < worst_min:
            worst_min, where = float(g[k]), {"r": r, "theta": float(theta[k])}
    tol = 1e-12
    return Outcome(
        worst_min > 0 and worst_diff <= tol,
        {"min_g": worst_min, "g_vs_ImG": worst_diff},
        tol,
        where,
    )


def check_g_prime_positive(ctx: VerificationContext) -> Outcome:
    worst_fd, worst_closed_gap, worst_bound_gap = math.inf, 0.0, math.inf
    where: dict[str, Any] = {}
    for r in ctx.radii:
        x_star = math.pi - math.acos(r)
        theta = _theta_grid(64, x_star)
        fd = np.asarray(dg_r_dtheta(r, theta))
        closed = np.asarray(dg_r_dtheta_closed(r, theta))
        bound = np.asarray(dg_r_lower_bound(r, theta))
        worst_closed_gap = max(worst_closed_gap, float(np.max(np.abs(fd - closed))))
        worst_bound_gap = min(worst_bound_gap, float(np.min(closed - bound)))
        k = int(np.argmin(fd))
        if fd[k] < worst_fd:
            worst_fd, where = float(fd[k]), {"r": r, "theta": float(theta[k])}
    tol = float(ctx.tol["fd"])
    passed = worst_fd > 0 and worst_closed_gap <= tol and worst_bound_gap >= -1e-12
    return Outcome(
        passed,
        {
            "min_g_prime": worst_fd,
            "fd_vs_closed": worst_closed_gap,
            "closed_minus_bound": worst_bound_gap,
        },
        tol,
        where,
    )


def _central_diff(fn: Callable[..., Any], r: float, theta: np.ndarray) -> np.ndarray:
    upper = np.asarray(fn(r, theta + FD_H))
    return (upper - np.asarray(fn(r, theta - FD_H))) / (2 * FD_H)


def _max_abs(a: Any, b: Any) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def check_closed_derivatives(ctx: VerificationContext) -> Outcome:
    theta = _theta_grid(64)
    errs: dict[str, float] = {"dPhi": 0.0, "dReG": 0.0, "h_prime": 0.0, "dphi": 0.0}

    def phi_only(r: float, th: np.ndarray) -> Any:
        return phi_and_h(r, th)[0]

    def h_only(r: float, th: np.ndarray) -> Any:
        return phi_and_h(r, th)[1]

    pairs = {
        "dPhi": (Phi_r, dPhi_r),
        "dReG": (ReG_on_circle, dReG_dtheta),
        "h_prime": (h_only, h_prime),
        "dphi": (phi_only, dphi_dtheta),
    }
    for r in ctx.radii:
        for name, (fn, closed) in pairs.items():
            err = _max_abs(_central_diff(fn, r, theta), closed(r, theta))
            errs[name] = max(errs[name], err)
    tol = float(ctx.tol["fd"])
    return Outcome(max(errs.values()) <= tol, errs, tol, errs)


def check_Phi_concave(ctx: VerificationContext) -> Outcome:
    x = _theta_grid(512)
    worst, where = -math.inf, {}
    for r in ctx.radii:
        steps = np.diff(np.asarray(dPhi_r(r, x)))
        k = int(np.argmax(steps))
        if steps[k] > worst:
            worst, where = float(steps[k]), {"r": r, "x": float(x[k])}
    tol = 1e-12
    return Outcome(worst <= tol, worst, tol, where)


def check_h_monotone(ctx: VerificationContext) -> Outcome:
    theta = np.linspace(0.0, math.pi, 1025)
    worst_step, worst_end = math.inf, 0.0
    for r in ctx.radii:
        _, h = phi_and_h(r, theta)
        hh = np.asarray(h)
        worst_step = min(worst_step, float(np.min(np.diff(hh))))
        worst_end = max(worst_end, abs(hh[0]), abs(hh[-1] - math.pi))
    return Outcome(
        worst_step > 0 and worst_end <= 1e-15,
        {"min_step": worst_step, "endpoint_error": worst_end},
        1e-15,
        {"min_step": worst_step},
    )


def check_H_K_endpoints(ctx: VerificationContext) -> Outcome:
    worst = 0.0
    for r in ctx.radii:
        h_err = abs(float(H_rt(r, math.pi)) - (1 - r) * (3 - r) * (3 - r * r))
        k_err = abs(float(K_rt(r, math.pi)) - (3 - r) ** 2 * (1 - r) ** 2)
        worst = max(worst, h_err, k_err)
    tol = 1e-12
    return Outcome(worst <= tol, worst, tol, {"max_error": worst})


def check_critical_angles(ctx: VerificationContext) -> Outcome:
    worst_res = 0.0
    bad: list[float] = []
    for r in ctx.radii:
        ang = critical_angles(r)
        ordered = 0 < ang.x_minus < ang.x_star < ang.x_plus < math.pi
        if not ordered or ang.x_minus > ang.x_star / 3:
            bad.append(r)
        for x in (ang.x_minus, ang.x_plus):
            worst_res = max(worst_res, abs(3 * float(Phi_r(r, x)) - math.asin(r)))
    tol = 1e-9
    return Outcome(not bad and worst_res <= tol, worst_res, tol, {"bad_radii": bad})


def check_certificates(ctx: VerificationContext) -> Outcome:
    rng = ctx.rng("lemma_close_to_convex_certificates")
    a = _disk_samples(rng, 100, 1.0)
    b = _disk_samples(rng, 100, 1.0)
    failed = []
    worst = math.inf
    for ai, bi in zip(a, b):
        report = close_to_convex_certificate(ExtremalParams(ai, bi), 64)
        worst = min(worst, report.min_value)
        if not report.passed:
            failed.append(report.to_dict())
    return Outcome(not failed, worst, 0.0, {"failed": failed[:5]})


def _rel_err(got: Any, want: Any) -> float:
    want = complex(want)
    return abs(complex(got) - want) / max(1.0, abs(want))


def check_extremal_identities(ctx: VerificationContext) -> Outcome:
    rng = ctx.rng("lemma_extremal_identities")
    count = 1000
    a = _disk_samples(rng, count, 1.0)
    b = _disk_samples(rng, count, 1.0)
    rho = rng.uniform(0.0, 0.95, count)
    errs = {"W": 0.0, "V": 0.0, "mobius": 0.0, "fd": 0.0}
    for ai, bi, r in zip(a, b, rho):
        p = ExtremalParams(ai, bi)
        w = complex(family_map(FamilyKind.W, 1 + ai * r, 1 + bi * r))
        v = complex(family_map(FamilyKind.V, 1 + ai * r, 1 + bi * r))
        errs["W"] = max(errs["W"], _rel_err(f_ab_zlogderiv(p, r), w))
        errs["V"] = max(errs["V"], _rel_err(f_ab_deriv(p, r), v))
        s, t = ai * r, bi * r
        u_direct = (1 + s) ** 2 / (1 + (s + t) / 2)
        errs["mobius"] = max(errs["mobius"], _rel_err(mobius_U_st(s, t), u_direct))
        z = 0.5 * r * complex(math.cos(r * 7), math.sin(r * 7))
        fd = (complex(f_ab(p, z + FD_H)) - complex(f_ab(p, z - FD_H))) / (2 * FD_H)
        errs["fd"] = max(errs["fd"], _rel_err(fd, f_ab_deriv(p, z)))
    tol = {"W": 1e-12, "V": 1e-12, "mobius": 1e-12, "fd": 1e-6}
    passed = all(errs[k] <= tol[k] for k in tol)
    return Outcome(passed, errs, tol, errs)


# ---------------------------------------------------------------- regions


def check_W_scaling(ctx: VerificationContext) -> Outcome:
    worst = 0.0
    for r in ctx.radii:
        w = boundary_curve(RegionSpec(RegionFamily.W, r), ctx.boundary_n).points
        u = boundary_curve(RegionSpec(RegionFamily.U, r), ctx.boundary_n).points
        worst = max(worst, float(np.max(np.abs(w - u / (1 - r * r)))))
    tol = 1e-13
    return Outcome(worst <= tol, worst, tol, {"max_error": worst})


def check_W_scaling_oracle(ctx: VerificationContext) -> Outcome:
    """The zf'/f cloud fits inside the U boundary scaled by 1/(1-r^2)."""
    n_cloud = max(8, int(ctx.grid["oracle_n"]) // 2)
    inflate = float(ctx.tol["inflate"])
    measured: dict[str, Any] = {}
    witness: dict[str, Any] = {}
    passed = True
    for r in ORACLE_RADII:
        spec = RegionSpec(RegionFamily.W, r)
        cloud = ctx.cloud(spec, n_cloud, n_cloud)
        contained = cloud_containment(cloud, spec, ctx.boundary_n, inflate)
        peak = float(np.max(cloud.points.real))
        expected = (1 + r) / (1 - r)
        measured[str(r)] = {
            "inside": contained.inside,
            "total": contained.total,
            "max_re": peak,
        }
        if not contained.passed or peak > expected * (1 + 1e-12):
            passed = False
            witness[str(r)] = {
                "worst_point": contained.worst_point,
                "worst_distance": contained.worst_distance,
                "max_re": peak,
                "expected_max_re": expected,
            }
    return Outcome(passed, measured, {"inflate": inflate}, witness)


def check_krzyz_curve(ctx: VerificationContext) -> Outcome:
    n = max(ctx.boundary_n, 1024)
    worst_gap, flips_at = 0.0, []
    over = []
    for r in ctx.radii:
        curve = boundary_curve(RegionSpec(RegionFamily.LV, r), n)
        if curvature_sign_changes(curve):
            flips_at.append(r)
        bound = 4 * math.asin(r)
        peak = float(np.max(np.abs(curve.points.imag)))
        if peak > bound + 1e-12:
            over.append(r)
        worst_gap = max(worst_gap, bound - peak)
    tol = 1e-3
    return Outcome(
        not flips_at and not over and worst_gap <= tol,
        {"max_gap": worst_gap},
        tol,
        {"non_convex_radii": flips_at, "over_bound_radii": over},
    )


def check_LU_vertical_convexity(ctx: VerificationContext) -> Outcome:
    worst, where = 0, {}
    for r in ctx.radii:
        curve = boundary_curve(RegionSpec(RegionFamily.LU, r), ctx.boundary_n)
        xs = vertical_line_positions(curve, 257)
        hits = vertical_crossings(curve, xs)
        k = int(np.argmax(hits))
        if hits[k] > worst:
            worst, where = int(hits[k]), {"r": r, "x": float(xs[k])}
    return Outcome(worst <= 2, worst, 2, where)


def check_gamma_convergence(ctx: VerificationContext) -> Outcome:
    t = np.linspace(-0.9 * math.pi, 0.9 * math.pi, 64)
    errs = gamma_errors(t, (1e-2, 1e-3, 1e-4))
    decreasing = np.all(np.diff(errs, axis=0) < 0, axis=0)
    bad = t[~decreasing]
    return Outcome(
        bool(np.all(decreasing)),
        float(errs[-1].max()),
        "decreasing over delta",
        {"non_decreasing_t": bad},
    )


def check_limit_curves(ctx: VerificationContext) -> Outcome:
    eps = 1e-9
    at_pi = complex(limit_curve_gamma(math.pi))
    jump = abs(complex(limit_curve_gamma(math.pi - eps)) - at_pi)
    start = abs(complex(limit_curve_gamma(0.0)) - math.log(4))
    near_end = complex(limit_curve_gamma(2 * math.pi - 1e-6))
    tau_edge = complex(limit_curve_tau(math.pi - 1e-9))
    checks = {
        "gamma_continuity_at_pi": jump,
        "gamma_at_0": start,
        "gamma_im_near_2pi": abs(near_end.imag - 1.5 * math.pi),
        "tau_im_near_pi": abs(tau_edge.imag - 0.5 * math.pi),
    }
    tol = 1e-6
    return Outcome(
        max(checks.values()) <= tol and near_end.real < -10, checks, tol, checks
    )


def check_exp_relation(ctx: VerificationContext) -> Outcome:
    measured: dict[str, Any] = {}
    passed = True
    for family in (RegionFamily.LU, RegionFamily.LW, RegionFamily.LV):
        report = exp_relation_check(
            RegionSpec(family, 0.5),
            ctx.boundary_n,
            pointwise_tol=float(ctx.tol["pointwise"]),
        )
        measured[family.value] = {
            "pointwise": report.pointwise_error,
            "cloud_hausdorff": report.cloud_hausdorff,
            "cloud_tol": report.cloud_tol,
            "cloud_outside": report.cloud_outside,
        }
        passed = passed and report.passed
    tol = {"pointwise": ctx.tol["pointwise"], "hausdorff": 1e-2}
    return Outcome(passed, measured, tol, measured)


def check_nesting(ctx: VerificationContext) -> Outcome:
    failed = {}
    for family in RegionFamily:
        radii = ctx.verify["nesting_radii"]
        report = monotone_nesting_check(family, radii, ctx.boundary_n)
        if not report.passed:
            failed[family.value] = {
                "worst_violation": report.worst_violation,
                "pair": report.worst_pair,
                "note": report.note,
            }
    return Outcome(not failed, len(failed), 0, failed)


def check_LW_cloud_in_strip(ctx: VerificationContext) -> Outcome:
    n = max(8, int(ctx.grid["oracle_n"]) // 4)
    cloud = ctx.cloud(RegionSpec(RegionFamily.LW, 0.99), n, n)
    peak = float(np.max(np.abs(cloud.points.imag)))
    k = int(np.argmax(np.abs(cloud.points.imag)))
    return Outcome(
        peak < LW_STRIP,
        peak,
        LW_STRIP,
        {"point": cloud.points[k], "log_steps": cloud.meta.get("log_steps")},
    )


def check_membership_examples(ctx: VerificationContext) -> Outcome:
    n = ctx.boundary_n
    spec = RegionSpec(RegionFamily.U, 0.5)
    got = {
        "1": region_membership(1.0, spec, n).status,
        "10": region_membership(10.0, spec, n).status,
        "0": region_membership(0.0, spec, n).status,
    }
    want = {"1": "inside", "10": "outside", "0": "outside"}
    return Outcome(got == want, got, want, got)


# ---------------------------------------------------------------- witnesses


def _lw_targets(rng: np.random.Generator, count: int) -> np.ndarray:
    re = rng.uniform(-5.0, 5.0, count)
    im = rng.uniform(-(LW_STRIP - 0.1), LW_STRIP - 0.1, count)
    return re + 1j * im


def check_lw_roundtrip(ctx: VerificationContext) -> Outcome:
    count = int(ctx.grid["witness_targets"])
    targets = _lw_targets(ctx.rng("witnesses_lw_roundtrip"), count)
    tol = float(ctx.solvers["witness_tol"])
    worst_res, worst_e2e, worst_at = 0.0, 0.0, 0j
    for z0 in targets:
        witness = lw_witness(complex(z0), tol)
        if witness.residual > worst_res:
            worst_res, worst_at = witness.residual, complex(z0)
        worst_e2e = max(worst_e2e, witness.end_to_end_error)
    limits = {"residual": tol, "end_to_end": 1e-8}
    return Outcome(
        worst_res <= tol and worst_e2e <= 1e-8,
        {"residual": worst_res, "end_to_end": worst_e2e},
        limits,
        {"target": worst_at},
    )


def check_lv_roundtrip(ctx: VerificationContext) -> Outcome:
    rng = ctx.rng("witnesses_lv_roundtrip")
    count = int(ctx.grid["witness_targets"])
    targets = rng.uniform(-5.0, 5.0, count) + 1j * rng.uniform(
        -(LV_STRIP - 0.1), LV_STRIP - 0.1, count
    )
    tol = float(ctx.solvers["witness_tol"])
    worst, worst_at = 0.0, 0j
    for z0 in targets:
        witness = lv_witness(complex(z0), tol)
        if witness.residual > worst:
            worst, worst_at = witness.residual, complex(z0)
    return Outcome(worst <= tol, worst, tol, {"target": worst_at})


def check_full_plane(ctx: VerificationContext) -> Outcome:
    rng = ctx.rng("witnesses_full_plane")
    count = int(ctx.grid["plane_targets"])
    log_mod = rng.uniform(-5.0, 5.0, count)
    zetas = np.exp(log_mod + 1j * rng.uniform(-math.pi, math.pi, count))
    worst = {"W": 0.0, "V": 0.0}
    for zeta in zetas:
        _, err_w = lw_full_plane(complex(zeta))
        _, err_v = lv_full_plane(complex(zeta))
        worst["W"] = max(worst["W"], err_w)
        worst["V"] = max(worst["V"], err_v)
    tol = 1e-8
    return Outcome(max(worst.values()) <= tol, worst, tol, worst)


def check_strip_bounds(ctx: VerificationContext) -> Outcome:
    rejected = {}
    for name, solver, target in (
        ("lw", lw_witness, complex(0, 4.8)),
        ("lv", lv_witness, complex(0, 6.3)),
    ):
        try:
            solver(target)
            rejected[name] = False
        except OutOfStripError:
            rejected[name] = True
    return Outcome(all(rejected.values()), rejected, True, rejected)


# ---------------------------------------------------------------- thresholds


def check_starlike_radius(ctx: VerificationContext) -> Outcome:
    tol = float(ctx.solvers["starlike_tol"])
    n = int(ctx.solvers["theta_scan"])
    radius = starlike_radius(tol, n)
    doubled = starlike_radius(tol, 2 * n)
    below = min_real_F(0.6, n)[0]
    above = min_real_F(0.7, n)[0]
    error = abs(radius - STARLIKE_EXACT)
    passed = error <= 1e-6 and abs(doubled - radius) <= 2 * tol and below > 0 > above
    return Outcome(
        passed,
        {
            "radius": radius,
            "doubled_scan": doubled,
            "min_ReF_0.6": below,
            "min_ReF_0.7": above,
        },
        {"vs_exact": 1e-6, "exact": STARLIKE_EXACT},
        {"error": error},
    )


def check_nonconvexity(ctx: VerificationContext) -> Outcome:
    samples = int(ctx.solvers["nonconvexity_samples"])
    r0 = nonconvexity_threshold(float(ctx.solvers["nonconvexity_tol"]), samples)
    report = nonconvexity_report(r0, samples)
    return Outcome(
        report.passed,
        {"r0": r0},
        {"range": [0, 1]},
        {
            "above": report.above,
            "above_flips": report.above_flips,
            "below": report.below,
            "below_flips": report.below_flips,
        },
    )


def check_corner_asymptote(ctx: VerificationContext) -> Outcome:
    measured: dict[str, Any] = {}
    passed = True
    for a in ctx.verify["corner_a"]:
        report = lu_corner_asymptote(a, ctx.verify["corner_deltas"])
        limit = corner_limit(a)
        in_band = math.pi < limit.imag < LW_STRIP
        measured[str(a)] = {
            "limit": report.limit,
            "final_error": report.errors[-1],
            "exponent": report.exponent,
            "decreasing": report.decreasing,
        }
        passed = passed and report.passed and in_band
    return Outcome(passed, measured, {"exponent": [0.2, 0.45]}, measured)


Check = Callable[[VerificationContext], Outcome]

SUITES: dict[str, list[tuple[str, Check]]] = {
    "envelope": [
        ("envelope_F_alternate_form", check_F_alternate_form),
        ("envelope_expG_equals_F", check_expG_equals_F),
        ("envelope_G_symmetry", check_G_symmetry),
        ("envelope_wirtinger_fd", check_wirtinger_fd),
        ("envelope_circles", check_envelope_circles),
        ("envelope_G_circle_images_simple", check_G_circle_images_simple),
        ("envelope_oracle_equivalence", check_oracle_equivalence),
    ],
    "lemmas": [
        ("lemma_jacobian_positive", check_jacobian_positive),
        ("lemma_jacobian_identity", check_jacobian_identity),
        ("lemma_ReG_decreasing", check_ReG_decreasing),
        ("lemma_ImG_positive", check_ImG_positive),
        ("lemma_g_prime_positive", check_g_prime_positive),
        ("lemma_closed_derivatives", check_closed_derivatives),
        ("lemma_Phi_concave", check_Phi_concave),
        ("lemma_h_monotone", check_h_monotone),
        ("lemma_H_K_endpoints", check_H_K_endpoints),
        ("lemma_critical_angles", check_critical_angles),
        ("lemma_close_to_convex_certificates", check_certificates),
        ("lemma_extremal_identities", check_extremal_identities),
    ],
    "regions": [
        ("regions_W_scaling", check_W_scaling),
        ("regions_W_scaling_oracle", check_W_scaling_oracle),
        ("regions_krzyz_curve", check_krzyz_curve),
        ("regions_LU_vertical_convexity", check_LU_vertical_convexity),
        ("regions_gamma_convergence", check_gamma_convergence),
        ("regions_limit_curves", check_limit_curves),
        ("regions_exp_relation", check_exp_relation),
        ("regions_nesting", check_nesting),
        ("regions_LW_cloud_in_strip", check_LW_cloud_in_strip),
        ("regions_membership_examples", check_membership_examples),
    ],
    "witnesses": [
        ("witnesses_lw_roundtrip", check_lw_roundtrip),
        ("witnesses_lv_roundtrip", check_lv_roundtrip),
        ("witnesses_full_plane", check_full_plane),
        ("witnesses_strip_bounds", check_strip_bounds),
    ],
    "thresholds": [
        ("thresholds_starlike_radius", check_starlike_radius),
        ("thresholds_nonconvexity", check_nonconvexity),
        ("thresholds_corner_asymptote", check_corner_asymptote),
    ],
}
SUITE_NAMES = ("all",) + tuple(SUITES)


def suite_checks(suite: str) -> list[tuple[str, Check]]:
    if suite == "all":
        return [check for checks in SUITES.values() for check in checks]
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}; expected one of {SUITE_NAMES}")
    return list(SUITES[suite])


def run_check(
    ctx: VerificationContext,
    check_id: str,
    fn: Check,
) -> CheckResult:
    started = time.perf_counter()
    try:
        outcome = fn(ctx)
        if outcome.skipped:
            status = "SKIP"
        else:
            status = "PASS" if outcome.passed else "FAIL"
        witness = outcome.witness
        if status == "FAIL" and not witness:
            witness = {"measured": outcome.measured}
        result = CheckResult(
            check_id=check_id,
            status=status,
            measured=outcome.measured,
            tolerance=outcome.tolerance,
            runtime_ms=0.0,
            witness=witness if status == "FAIL" else None,
        )
    except Exception as exc:
        result = CheckResult(
            check_id=check_id,
            status="FAIL",
            measured=None,
            tolerance=None,
            runtime_ms=0.0,
            witness={
                "error": f"{type(exc).__name__}: {exc}",
                "traceback": traceback.format_exc(),
            },
        )
    if ctx.verify["include_timing"]:
        result.runtime_ms = round((time.perf_counter() - started) * 1000.0, 3)
    print(f"[verify] {result.status} {check_id}", file=sys.stderr)
    return result


def run_suite(suite: str, config: dict[str, Any]) -> VerificationReport:
    ctx = VerificationContext(config)
    checks = suite_checks(suite)
    print(
        f"[verify] suite={suite} checks={len(checks)} profile={config['profile']} "
        f"seed={ctx.seed}",
        file=sys.stderr,
    )
    results = [run_check(ctx, check_id, fn) for check_id, fn in checks]
    report = VerificationReport(
        suite=suite,
        results=results,
        provenance={
            "artifact_version": ARTIFACT_VERSION,
            "seed": ctx.seed,
            "profile": config["profile"],
            "grid": ctx.grid,
            "tolerances": dict(ctx.tol),
            "solvers": dict(ctx.solvers),
        },
    )
    _write_telemetry(config, report)
    return report


def _write_telemetry(config: dict[str, Any], report: VerificationReport) -> None:
    telemetry = config.get("telemetry", {})
    if not telemetry.get("enabled", True):
        return
    output_path = telemetry.get("log_path", "logs/verify_metrics.jsonl")
    abs_path = output_path
    if not os.path.isabs(output_path):
        root = os.path.dirname(os.path.abspath(__file__))
        abs_path = os.path.join(root, output_path)
    try:
        os.makedirs(os.path.dirname(abs_path), exist_ok=True)
        counts = report.counts()
        line = {
            "ts": int(time.time()),
            "suite": report.suite,
            "pass": counts["PASS"],
            "fail": counts["FAIL"],
            "skip": counts["SKIP"],
            "runtime_ms": round(report.total_runtime_ms(), 3),
            "profile": config.get("profile", "balanced"),
            "seed": config.get("seed"),
        }
        with open(abs_path, "a", encoding="utf-8") as f:
            f.write(json.dumps(line, ensure_ascii=False) + "\n")
    except OSError as exc:
        print(f"[verify] telemetry not written: {exc}", file=sys.stderr)
