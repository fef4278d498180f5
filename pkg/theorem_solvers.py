"""Derived constants and constructive witnesses for the limit regions."""

import math
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from envelope_map import F_eval, G_eval
from extremal_families import (
    ExtremalParams,
    FamilyKind,
    extremal_from_uv,
    f_ab,
    f_ab_deriv,
    f_ab_zlogderiv,
    family_map,
)
from geom_kernel import (
    BracketError,
    DomainError,
    bisect,
    curvature_sign_changes,
    principal_log,
    require_finite,
)
from region_builder import RegionFamily, RegionSpec, boundary_curve

LW_STRIP = 1.5 * math.pi
LV_STRIP = 2.0 * math.pi
STARLIKE_EXACT = 4.0 * math.sqrt(2.0) - 5.0
_T_EDGE = 0.5 * math.pi
_MAX_S_RETRIES = 20
# z = (1+z) - 1 loses digits as c grows
_C_GROWTH = 1.25
_MAX_C_STEPS = 256


class OutOfStripError(DomainError):
    def __init__(self, value: complex, bound: float):
        super().__init__(
            f"target {value} is outside the open strip |Im w| < {bound:.6f}"
        )
        self.value = value
        self.bound = bound


@dataclass(frozen=True)
class WitnessTriple:
    r: float
    s: float
    t: float

    def __post_init__(self) -> None:
        r, s, t = float(self.r), float(self.s), float(self.t)
        if not all(math.isfinite(x) for x in (r, s, t)):
            raise DomainError("witness triple must be finite")
        if not (r > 0 and 0 < s < 2 and 0 < r * s * s < 2 and abs(t) < _T_EDGE):
            raise DomainError(f"({r}, {s}, {t}) is not in the witness domain")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "t", t)

    def uv(self) -> tuple[complex, complex]:
        c = math.cos(self.t)
        rot = complex(math.cos(self.t), math.sin(self.t))
        return self.r * self.s**2 * c * c * rot, self.s * c / rot


@dataclass(frozen=True)
class ExtremalWitness:
    a: complex
    b: complex
    rho: float

    def __post_init__(self) -> None:
        if not (0.0 < self.rho < 1.0):
            raise DomainError(f"witness radius needs 0 < rho < 1, got {self.rho}")
        ExtremalParams(self.a, self.b)

    @property
    def params(self) -> ExtremalParams:
        return ExtremalParams(self.a, self.b)


@dataclass
class LWWitness:
    target: complex
    triple: WitnessTriple
    extremal: ExtremalWitness
    residual: float
    zlogderiv_error: float
    end_to_end_error: float
    s_retries: int = 0
    extremal_verified: bool = True

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": "lw",
            "target": [self.target.real, self.target.imag],
            "r": self.triple.r,
            "s": self.triple.s,
            "t": self.triple.t,
            "a": [self.extremal.a.real, self.extremal.a.imag],
            "b": [self.extremal.b.real, self.extremal.b.imag],
            "rho": self.extremal.rho,
            "residual": self.residual,
            "zlogderiv_error": self.zlogderiv_error,
            "end_to_end_error": self.end_to_end_error,
            "extremal_verified": self.extremal_verified,
            "s_retries": self.s_retries,
        }


@dataclass
class LVWitness:
    target: complex
    z: complex
    w: complex
    c: float
    residual: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": "lv",
            "target": [self.target.real, self.target.imag],
            "z": [self.z.real, self.z.imag],
            "w": [self.w.real, self.w.imag],
            "c": self.c,
            "residual": self.residual,
        }


@dataclass
class CornerReport:
    a: float
    limit: complex
    deltas: list[float]
    errors: list[float]
    exponent: float
    decreasing: bool
    passed: bool
    values: list[complex] = field(default_factory=list)


@dataclass
class NonconvexityReport:
    r0: float
    above: list[float]
    below: list[float]
    above_flips: list[int]
    below_flips: list[int]

    @property
    def passed(self) -> bool:
        return 0 < self.r0 < 1 and all(self.above_flips) and not any(self.below_flips)


def min_real_F(r: float, n: int = 1024) -> tuple[float, float]:
    """min over theta of Re F(r e^{i theta}) and where it is attained."""
    if not (0.0 < r < 1.0):
        raise DomainError(f"radius must satisfy 0 < r < 1, got {r}")
    theta = 2.0 * math.pi * np.arange(n) / n
    values = np.asarray(F_eval(r * np.exp(1j * theta))).real
    k = int(np.argmin(values))
    step = 2.0 * math.pi / n
    res = minimize_scalar(
        lambda th: complex(F_eval(r * complex(math.cos(th), math.sin(th)))).real,
        bounds=(theta[k] - step, theta[k] + step),
        method="bounded",
        options={"xatol": 1e-12},
    )
    if res.fun < values[k]:
        return float(res.fun), float(res.x)
    return float(values[k]), float(theta[k])


def starlike_radius(tol: float = 1e-7, n: int = 1024) -> float:
    """Largest r with Re F >= 0 on |z| = r, i.e. U_r in the closed right half-plane."""
    if tol < 1e-12:
        raise DomainError("starlike radius tolerance must be >= 1e-12")
    return bisect(lambda r: min_real_F(r, n)[0], 0.1, 0.99, tol)


def _has_inflection(r: float, samples: int) -> bool:
    curve = boundary_curve(RegionSpec(RegionFamily.LU, r), samples)
    return bool(curvature_sign_changes(curve))


def nonconvexity_threshold(tol: float = 1e-6, samples: int = 4096) -> float:
    """Smallest r at which the LU_r boundary stops being convex.

    LW_r is a real translate of LU_r, so the same radius applies to it.
    """
    if tol < 1e-6:
        raise DomainError("nonconvexity tolerance must be >= 1e-6")
    try:
        return bisect(
            lambda r: 1.0 if _has_inflection(r, samples) else -1.0, 0.01, 0.999, tol
        )
    except BracketError as exc:
        msg = f"no convexity change for r in [0.01, 0.999]: {exc}"
        raise BracketError(msg) from exc


def nonconvexity_report(r0: float, samples: int = 4096) -> NonconvexityReport:
    above = [float(x) for x in r0 + (0.999 - r0) * np.array([0.1, 0.3, 0.5, 0.7, 0.9])]
    below = [float(x) for x in r0 * np.array([0.2, 0.4, 0.6, 0.8, 0.95])]

    def count(r: float) -> int:
        curve = boundary_curve(RegionSpec(RegionFamily.LU, r), samples)
        return len(curvature_sign_changes(curve))

    return NonconvexityReport(
        r0=r0,
        above=above,
        below=below,
        above_flips=[count(r) for r in above],
        below_flips=[count(r) for r in below],
    )


def w_value(r: float, s: float, t: float) -> complex:
    """log(2r) + 3it - Log(1 + r s e^{2it} cos t)."""
    q = r * s * math.cos(t) * complex(math.cos(2 * t), math.sin(2 * t))
    return math.log(2 * r) + 3j * t - complex(principal_log(1 + q))


def _check_target(z0: complex, bound: float) -> complex:
    z = complex(z0)
    require_finite(z, "target")
    if abs(z.imag) >= bound:
        raise OutOfStripError(z, bound)
    return z


def _im_w_increasing(r: float, s: float, samples: int = 257) -> bool:
    """Im w(r, s, .) strictly increasing on the bisection bracket."""
    t = np.linspace(-_T_EDGE, _T_EDGE, samples)
    q = r * s * np.cos(t) * np.exp(2j * t)
    return bool(np.all(np.diff(3 * t - np.angle(1 + q)) > 0))


def lw_witness(z0: complex, tol: float = 1e-9) -> LWWitness:
    """Parameters (r, s, t) with w(r, s, t) = z0, plus the matching extremal.

    zf'/f = e^{z0} is checked on (u, v) directly. Re-forming 1 + a rho loses
    digits when u is near 0 (large Re z0 with |Im z0| near the strip edge), so
    that route is reported as ``extremal_verified`` instead of raising.
    """
    target = _check_target(z0, LW_STRIP)
    x0, y0 = target.real, target.imag
    r0 = math.exp(x0) / 2.0
    s0 = min(0.1, 1.0 / (4.0 * r0))

    t0 = None
    retries = 0
    for retries in range(_MAX_S_RETRIES + 1):
        if _im_w_increasing(r0, s0):
            t0 = bisect(
                lambda t: w_value(r0, s0, t).imag - y0, -_T_EDGE, _T_EDGE, 1e-15
            )
            break
        s0 *= 0.5
    if t0 is None:
        raise BracketError(f"Im w is not monotone in t for target {target}")
    # the log term depends on r s only, so this shift fixes Re w exactly
    x1 = x0 - w_value(r0, s0, t0).real
    triple = WitnessTriple(r0 * math.exp(x1), s0 * math.exp(-x1), t0)
    residual = abs(w_value(triple.r, triple.s, triple.t) - target)

    u, v = triple.uv()
    if abs(u - 1) >= 1 or abs(v - 1) >= 1:
        raise DomainError(f"witness for {target} leaves the parameter disks")
    expected = complex(np.exp(target))
    scale = max(1.0, abs(expected))
    uv_err = abs(complex(family_map(FamilyKind.W, u, v)) - expected) / scale
    if residual > tol or uv_err > 10 * tol:
        raise DomainError(
            f"witness for {target} misses: residual {residual:.3e}, "
            f"zf'/f error {uv_err:.3e}"
        )
    params, rho = extremal_from_uv(u, v)
    extremal = ExtremalWitness(params.a, params.b, rho)
    zlog_err = abs(complex(f_ab_zlogderiv(params, rho)) - expected) / scale
    direct = rho * complex(f_ab_deriv(params, rho)) / complex(f_ab(params, rho))
    e2e_err = abs(direct - expected) / scale
    return LWWitness(
        target=target,
        triple=triple,
        extremal=extremal,
        residual=residual,
        zlogderiv_error=zlog_err,
        end_to_end_error=e2e_err,
        s_retries=retries,
        extremal_verified=zlog_err <= 10 * tol,
    )


def lv_witness(z0: complex, tol: float = 1e-10) -> LVWitness:
    """(z, w) in the unit bidisk with Log(1+z) - 3 Log(1+w) = z0.

    z is returned as a double, so Log(1+z) is only good to about
    1e-16 / |1+z|. Re z0 below roughly -15 drives |1+z| under 1e-7, past what
    the default tolerance allows; such targets raise DomainError.
    """
    target = _check_target(z0, LV_STRIP)
    if target == 0:
        return LVWitness(target=target, z=0j, w=0j, c=0.0, residual=0.0)
    a, b = target.real, target.imag / 4.0
    # |rho e^{i b} - 1| < 1 exactly when rho < 2 cos b
    reach = math.log(2.0 * math.cos(b))
    c = 1.0
    for _ in range(_MAX_C_STEPS):
        if a - 3 * c < reach and -c < reach:
            break
        c *= _C_GROWTH
    else:
        raise DomainError(f"no admissible c for target {target}")
    z = complex(np.exp(complex(a - 3 * c, b))) - 1
    w = complex(np.exp(complex(-c, -b))) - 1
    if abs(z) >= 1 or abs(w) >= 1:
        raise DomainError(
            f"witness for {target} leaves the unit bidisk: "
            f"|z|={abs(z):.3e}, |w|={abs(w):.3e}"
        )
    value = complex(principal_log(1 + z)) - 3 * complex(principal_log(1 + w))
    residual = abs(value - target)
    if residual > tol:
        raise DomainError(
            f"witness for {target} has residual {residual:.3e} > {tol:.1e}: "
            f"|1+z| = {abs(1 + z):.1e} is below what z as a double resolves"
        )
    return LVWitness(target=target, z=z, w=w, c=c, residual=residual)


def lw_full_plane(zeta: complex, tol: float = 1e-9) -> tuple[LWWitness, float]:
    """Extremal f and radius with rho f'(rho)/f(rho) = zeta for any zeta != 0."""
    value = complex(zeta)
    require_finite(value, "zeta")
    if value == 0:
        raise DomainError("0 is not attained by z f'(z)/f(z)")
    # Im Log lies in (-pi, pi], inside the LW strip with no shift
    witness = lw_witness(complex(principal_log(value)), tol)
    got = complex(f_ab_zlogderiv(witness.extremal.params, witness.extremal.rho))
    return witness, abs(got - value) / max(1.0, abs(value))


def lv_full_plane(zeta: complex, tol: float = 1e-10) -> tuple[LVWitness, float]:
    value = complex(zeta)
    require_finite(value, "zeta")
    if value == 0:
        raise DomainError("0 is not attained by f'")
    witness = lv_witness(complex(principal_log(value)), tol)
    got = complex(family_map(FamilyKind.V, 1 + witness.z, 1 + witness.w))
    return witness, abs(got - value) / max(1.0, abs(value))


def corner_limit(a: float) -> complex:
    """pi i + Log(1 + (a+2i)/(a-2i))."""
    return math.pi * 1j + complex(principal_log(1 + complex(a, 2) / complex(a, -2)))


def lu_corner_asymptote(
    a: float,
    deltas: Sequence[float] = (1e-2, 1e-3, 1e-4, 1e-5, 1e-6),
    exponent_window: tuple[float, float] = (0.2, 0.45),
) -> CornerReport:
    """Approach z = -1 along (1-delta) e^{i(pi - (a delta)^{1/3})}."""
    if not (a > 0):
        raise DomainError(f"corner slope must be positive, got {a}")
    ds = np.asarray(deltas, dtype=np.float64)
    if ds.size < 2 or np.any(ds <= 0) or np.any(ds >= 1) or np.any(np.diff(ds) >= 0):
        raise DomainError("deltas must be in (0, 1) and strictly decreasing")
    limit = corner_limit(a)
    angles = math.pi - np.cbrt(a * ds)
    values = np.asarray(G_eval((1 - ds) * np.exp(1j * angles)))
    errors = np.abs(values - limit)
    slope = float(np.polyfit(np.log(ds), np.log(errors), 1)[0])
    decreasing = bool(np.all(np.diff(errors) < 0))
    lo, hi = exponent_window
    return CornerReport(
        a=float(a),
        limit=limit,
        deltas=[float(d) for d in ds],
        errors=[float(e) for e in errors],
        exponent=slope,
        decreasing=decreasing,
        passed=decreasing and lo <= slope <= hi,
        values=[complex(v) for v in values],
    )
