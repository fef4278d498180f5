"""Boundary curves and brute-force sample clouds of the six variability
regions, plus the limit curves of the r -> 1 regions."""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Sequence

import numpy as np

from envelope_map import F_eval, G_eval
from extremal_families import FamilyKind, family_map
from geom_kernel import (
    BoundaryError,
    DomainError,
    Polyline,
    ResolutionError,
    directed_hausdorff,
    distance_to_polyline,
    hausdorff,
    points_inside,
    polar_disk_grid,
    track_log,
    winding_number,
    winding_numbers,
)

MIN_BOUNDARY_SAMPLES = 4
NESTING_TOL = 1e-9
_CLOUD_CHUNK = 1024


class RegionFamily(str, Enum):
    U = "U"
    V = "V"
    W = "W"
    LU = "LU"
    LV = "LV"
    LW = "LW"

    @property
    def is_log(self) -> bool:
        return self.value.startswith("L")

    @property
    def base(self) -> FamilyKind:
        return FamilyKind(self.value[-1])


@dataclass(frozen=True)
class RegionSpec:
    family: RegionFamily
    r: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", RegionFamily(self.family))
        r = float(self.r)
        if not (0.0 < r < 1.0):
            raise DomainError(f"region radius must satisfy 0 < r < 1, got {self.r}")
        object.__setattr__(self, "r", r)


@dataclass(frozen=True, eq=False)
class BoundaryCurve(Polyline):
    approximate: bool = False


@dataclass
class SampleCloud:
    points: np.ndarray
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        pts = np.asarray(self.points, dtype=np.complex128).ravel()
        if pts.size == 0:
            raise DomainError("sample cloud is empty")
        if not np.all(np.isfinite(pts)):
            raise DomainError("sample cloud contains non-finite points")
        self.points = pts

    def __len__(self) -> int:
        return int(self.points.size)


@dataclass
class Membership:
    status: str
    distance: float
    winding: int = 0


@dataclass
class ContainmentReport:
    total: int
    inside: int
    inflation: float
    worst_distance: float
    worst_point: complex

    @property
    def passed(self) -> bool:
        return self.inside == self.total


@dataclass
class NestingReport:
    family: RegionFamily
    radii: list[float]
    passed: bool
    worst_violation: float
    worst_pair: tuple[float, float] | None = None
    note: str = ""


@dataclass
class ExpRelationReport:
    family: RegionFamily
    r: float
    pointwise_error: float
    cloud_hausdorff: float
    passed: bool
    cloud_outside: int = 0
    cloud_tol: float = 0.0


def _param_grid(family: RegionFamily, n: int) -> np.ndarray:
    if family in (RegionFamily.LV, RegionFamily.V):
        return np.linspace(-math.pi, math.pi, n, endpoint=False)
    return np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)


def krzyz_angles(r: float, t: Any) -> tuple[np.ndarray, np.ndarray]:
    tt = np.asarray(t, dtype=np.float64)
    shift = np.arcsin(r * np.sin(tt))
    return tt - shift, math.pi + tt + shift


def krzyz_uv(r: float, t: Any) -> tuple[np.ndarray, np.ndarray]:
    """u = 1 - r e^{i theta_2(t)}, v = 1 - r e^{i theta_1(t)}; sigma_r = log u/v^3."""
    th1, th2 = krzyz_angles(r, t)
    return 1 - r * np.exp(1j * th2), 1 - r * np.exp(1j * th1)


def krzyz_sigma(r: float, t: Any) -> np.ndarray:
    u, v = krzyz_uv(r, t)
    return np.log(u) - 3 * np.log(v)


def curve_point(spec: RegionSpec, params: Any) -> np.ndarray:
    """Exact boundary parametrization of ``spec`` evaluated at ``params``."""
    r = spec.r
    prm = np.asarray(params, dtype=np.float64)
    family = spec.family
    if family in (RegionFamily.LV, RegionFamily.V):
        sigma = krzyz_sigma(r, prm)
        return np.exp(sigma) if family is RegionFamily.V else sigma
    z = r * np.exp(1j * prm)
    if family is RegionFamily.U:
        return np.asarray(F_eval(z))
    if family is RegionFamily.W:
        return np.asarray(F_eval(z)) / (1 - r * r)
    values = np.asarray(G_eval(z))
    if family is RegionFamily.LW:
        return values - math.log(1 - r * r)
    return values


def boundary_curve(spec: RegionSpec, n: int) -> BoundaryCurve:
    """Closed boundary of X_r sampled at n parameter values.

    V_r has no closed-form boundary; exp of the LV boundary is returned and
    flagged approximate.
    """
    if int(n) != n or n < MIN_BOUNDARY_SAMPLES:
        raise DomainError(f"boundary needs n >= {MIN_BOUNDARY_SAMPLES}, got {n}")
    params = _param_grid(spec.family, int(n))
    return BoundaryCurve(
        points=curve_point(spec, params),
        params=params,
        closed=True,
        approximate=spec.family is RegionFamily.V,
    )


def chord_deviation(spec: RegionSpec, n: int) -> float:
    """Largest distance from the exact curve at edge midpoints to the chords."""
    curve = boundary_curve(spec, n)
    step = 2.0 * math.pi / n
    mids = curve_point(spec, curve.params + 0.5 * step)
    a, b = curve.segments()
    ab = b - a
    t = np.clip(((mids - a) * np.conj(ab)).real / np.abs(ab) ** 2, 0.0, 1.0)
    return float(np.max(np.abs(a + t * ab - mids)))


def _pair_grid(r: float, n_outer: int, n_inner: int) -> tuple[np.ndarray, np.ndarray]:
    s = polar_disk_grid(0j, r, n_outer)
    t = polar_disk_grid(0j, r, n_inner)
    ss, tt = np.meshgrid(s, t, indexing="ij")
    return ss.ravel(), tt.ravel()


def _log_endpoints(
    base: FamilyKind, s: np.ndarray, t: np.ndarray, steps: int
) -> np.ndarray:
    lam = np.linspace(0.0, 1.0, steps + 1)
    u = 1 + s[:, None] * lam[None, :]
    v = 1 + t[:, None] * lam[None, :]
    return track_log(family_map(base, u, v))[:, -1]


def _tracked_logs(
    base: FamilyKind,
    s: np.ndarray,
    t: np.ndarray,
    min_steps: int,
    max_steps: int,
    stable_tol: float,
) -> tuple[np.ndarray, int]:
    out = np.empty(s.size, dtype=np.complex128)
    used = min_steps
    for start in range(0, s.size, _CLOUD_CHUNK):
        cs, ct = s[start : start + _CLOUD_CHUNK], t[start : start + _CLOUD_CHUNK]
        steps = min_steps
        ends: np.ndarray | None = None
        while True:
            try:
                finer: np.ndarray | None = _log_endpoints(base, cs, ct, steps)
            except ResolutionError:
                finer = None
            if (
                finer is not None
                and ends is not None
                and np.max(np.abs(finer - ends)) <= stable_tol
            ):
                break
            ends = finer
            steps *= 2
            if steps > max_steps:
                raise ResolutionError(
                    f"branch tracking did not stabilize within {max_steps} steps"
                )
        out[start : start + _CLOUD_CHUNK] = finer
        used = max(used, steps)
    return out, used


def oracle_cloud(
    spec: RegionSpec,
    n_outer: int,
    n_inner: int,
    log_min_steps: int = 64,
    log_max_steps: int = 4096,
    stable_tol: float = 1e-10,
) -> SampleCloud:
    """Brute-force sweep of both parameter disks |s| <= r, |t| <= r.

    Log families continue the logarithm from 1 along the radial segment of the
    extremal function, so the branch is the one fixed by log g(0) = 0.
    """
    if n_outer < 8 or n_inner < 8:
        raise DomainError("oracle grids need n_outer, n_inner >= 8")
    s, t = _pair_grid(spec.r, n_outer, n_inner)
    meta: dict[str, Any] = {
        "family": spec.family.value,
        "r": spec.r,
        "n_outer": n_outer,
        "n_inner": n_inner,
    }
    if spec.family.is_log:
        points, steps = _tracked_logs(
            spec.family.base, s, t, log_min_steps, log_max_steps, stable_tol
        )
        meta["log_steps"] = steps
    else:
        points = np.asarray(family_map(spec.family.base, 1 + s, 1 + t))
    return SampleCloud(points=points, meta=meta)


def limit_curve_gamma(t: Any) -> Any:
    """Boundary of LU_{1^-}: Log(1+3e^{it}) for |t| < pi, else Log(1-e^{it}) +- pi i."""
    tt = np.asarray(t, dtype=np.float64)
    if not np.all(np.isfinite(tt)) or np.any(np.abs(tt) >= 2 * math.pi):
        raise DomainError("gamma is defined for -2pi < t < 2pi")
    e = np.exp(1j * tt)
    inner = np.abs(tt) < math.pi
    with np.errstate(divide="ignore", invalid="ignore"):
        outer_val = np.log(1 - e) + np.sign(tt) * math.pi * 1j
    out = np.where(inner, np.log(1 + 3 * e), outer_val)
    return complex(out) if out.ndim == 0 else out


def limit_curve_tau(t: Any) -> Any:
    """Log(1+e^{it}) = log(2 cos t/2) + i t/2 for |t| < pi."""
    tt = np.asarray(t, dtype=np.float64)
    if not np.all(np.isfinite(tt)) or np.any(np.abs(tt) >= math.pi):
        raise DomainError("tau is defined for -pi < t < pi")
    out = np.log(2 * np.cos(tt / 2)) + 0.5j * tt
    return complex(out) if out.ndim == 0 else out


def gamma_errors(t: Any, deltas: Sequence[float]) -> np.ndarray:
    """|G((1-delta) e^{it}) - gamma(t)|, one row per delta."""
    tt = np.asarray(t, dtype=np.float64)
    target = np.asarray(limit_curve_gamma(tt))
    rows = [
        np.abs(np.asarray(G_eval((1 - d) * np.exp(1j * tt))) - target) for d in deltas
    ]
    return np.vstack(rows)


def region_membership(p: complex, spec: RegionSpec, n: int) -> Membership:
    curve = boundary_curve(spec, n)
    try:
        wind = winding_number(p, curve)
    except BoundaryError as exc:
        return Membership(status="boundary", distance=exc.distance)
    dist = float(distance_to_polyline([p], curve)[0])
    status = "inside" if wind else "outside"
    return Membership(status=status, distance=dist, winding=wind)


def cloud_containment(
    cloud: SampleCloud, spec: RegionSpec, n: int, inflate: float
) -> ContainmentReport:
    """How many cloud points lie inside boundary_curve(spec, n).

    The inflation adds twice the measured chord deviation, so points on the
    true curve between two vertices still count as inside.
    """
    curve = boundary_curve(spec, n)
    allowance = inflate + 2.0 * chord_deviation(spec, n)
    inside = points_inside(cloud.points, curve, allowance)
    worst_d, worst_p = 0.0, 0j
    bad = np.flatnonzero(~inside)
    if bad.size:
        dist = distance_to_polyline(cloud.points[bad], curve)
        k = int(np.argmax(dist))
        worst_d, worst_p = float(dist[k]), complex(cloud.points[bad[k]])
    return ContainmentReport(
        total=len(cloud),
        inside=int(np.count_nonzero(inside)),
        inflation=allowance,
        worst_distance=worst_d,
        worst_point=worst_p,
    )


def monotone_nesting_check(
    family: Any, r_list: Sequence[float], n: int
) -> NestingReport:
    family = RegionFamily(family)
    radii = [float(r) for r in r_list]
    report = NestingReport(family=family, radii=radii, passed=True, worst_violation=0.0)
    for r, s in zip(radii, radii[1:]):
        if s == r:
            report.passed = False
            report.note = "equal radii"
            return report
        if s < r:
            report.passed = False
            report.note = "radii not increasing"
            return report
        inner = boundary_curve(RegionSpec(family, r), n)
        outer = boundary_curve(RegionSpec(family, s), n)
        verts, _ = inner.vertices()
        wind = winding_numbers(verts, outer)
        dist = distance_to_polyline(verts, outer)
        outside = (wind == 0) & (dist > NESTING_TOL)
        if np.any(outside):
            worst = float(np.max(dist[outside]))
            report.passed = False
            if worst > report.worst_violation:
                report.worst_violation = worst
                report.worst_pair = (r, s)
    return report


def _krzyz_reach_tol(r: float, n_outer: int, n_inner: int) -> float:
    """Lipschitz bound on the gap between sigma_r and the LV torus grid.

    sigma = log u - 3 log v with u, v on circles of radius r about 1, and the
    outer grid rings put every angle within pi/count of a sample.
    """
    speed = r / (1.0 - r)
    return speed * math.pi / max(8, n_outer) + 3.0 * speed * math.pi / max(8, n_inner)


def exp_relation_check(
    spec: RegionSpec,
    n: int,
    n_cloud: int = 64,
    pointwise_tol: float = 1e-9,
    hausdorff_tol: float = 1e-2,
) -> ExpRelationReport:
    """X_r = exp(LX_r) on boundaries, and LX clouds inside the LX boundary.

    For LU and LW the lifted boundary is compared with the closed-form U or W
    boundary. LV has no closed form: sigma_r is compared with the logarithm
    continued from (1, 1) to the same (u, v), and the LV cloud must reach
    every boundary vertex within the grid's Lipschitz bound.
    """
    if not spec.family.is_log:
        raise DomainError("exp relation is checked for LU, LV and LW")
    log_curve = boundary_curve(spec, n)
    log_cloud = oracle_cloud(spec, n_cloud, n_cloud)
    contained = cloud_containment(log_cloud, spec, n, pointwise_tol)
    cloud_tol = hausdorff_tol
    if spec.family is RegionFamily.LV:
        u, v = krzyz_uv(spec.r, log_curve.params)
        continued, _ = _tracked_logs(FamilyKind.V, u - 1, v - 1, 64, 4096, 1e-12)
        pointwise = float(np.max(np.abs(log_curve.points - continued)))
        verts, _ = log_curve.vertices()
        cloud_gap = directed_hausdorff(verts, log_cloud.points)
        cloud_tol = max(hausdorff_tol, _krzyz_reach_tol(spec.r, n_cloud, n_cloud))
    else:
        plain = RegionSpec(RegionFamily(spec.family.base.value), spec.r)
        lifted = np.exp(log_curve.points)
        pointwise = float(np.max(np.abs(lifted - boundary_curve(plain, n).points)))
        plain_cloud = oracle_cloud(plain, n_cloud, n_cloud)
        cloud_gap = hausdorff(np.exp(log_cloud.points), plain_cloud.points)
    return ExpRelationReport(
        family=spec.family,
        r=spec.r,
        pointwise_error=pointwise,
        cloud_hausdorff=cloud_gap,
        passed=(
            pointwise <= pointwise_tol
            and cloud_gap <= cloud_tol
            and contained.passed
        ),
        cloud_outside=contained.total - contained.inside,
        cloud_tol=cloud_tol,
    )


def vertical_crossings(curve: Polyline, xs: Any) -> np.ndarray:
    a, b = curve.segments()
    x = np.asarray(xs, dtype=np.float64)[:, None]
    return np.count_nonzero((a.real - x) * (b.real - x) < 0, axis=1)


def vertical_line_positions(curve: Polyline, count: int) -> np.ndarray:
    """Abscissae strictly inside the real extent of the curve, off the vertices."""
    re = curve.points.real
    lo, hi = float(np.min(re)), float(np.max(re))
    xs = lo + (hi - lo) * (np.arange(count) + 0.5) / count
    verts = np.sort(re)
    for k, x in enumerate(xs):
        j = np.searchsorted(verts, x)
        near = verts[max(j - 1, 0) : j + 1]
        if near.size and np.min(np.abs(near - x)) < 1e-12:
            xs[k] = x + 1e-9
    return xs
