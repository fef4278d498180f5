"""Extremal close-to-convex functions f_{a,b} and the Mobius parametrizations
of the variability regions U_r, V_r and W_r."""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np

from geom_kernel import DomainError, require_finite

POLE_TOL = 1e-14
_UNIT_SLACK = 1e-12


class FamilyKind(str, Enum):
    U = "U"
    V = "V"
    W = "W"


@dataclass(frozen=True)
class ExtremalParams:
    a: complex
    b: complex

    def __post_init__(self) -> None:
        a, b = complex(self.a), complex(self.b)
        require_finite(np.array([a, b]), "extremal parameters")
        if abs(a) > 1 + _UNIT_SLACK or abs(b) > 1 + _UNIT_SLACK:
            raise DomainError(f"extremal parameters need |a|,|b| <= 1, got {a}, {b}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)


@dataclass
class CertificateReport:
    a: complex
    b: complex
    grid_n: int
    min_value_lambda0: float
    argmin_lambda0: complex
    lam: float
    min_value: float
    argmin: complex
    passed: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "a": [self.a.real, self.a.imag],
            "b": [self.b.real, self.b.imag],
            "grid_n": self.grid_n,
            "min_value_lambda0": self.min_value_lambda0,
            "argmin_lambda0": [self.argmin_lambda0.real, self.argmin_lambda0.imag],
            "lambda": self.lam,
            "min_value": self.min_value,
            "argmin": [self.argmin.real, self.argmin.imag],
            "passed": self.passed,
        }


def _scalar_or_array(arr: np.ndarray) -> Any:
    return complex(arr) if arr.ndim == 0 else arr


def _disk_point(z: Any) -> np.ndarray:
    arr = np.asarray(z, dtype=np.complex128)
    require_finite(arr, "z")
    if np.any(np.abs(arr) >= 1):
        raise DomainError("evaluation point must satisfy |z| < 1")
    return arr


def _pole_guard(den: np.ndarray, what: str) -> None:
    if np.any(np.abs(den) < POLE_TOL):
        raise DomainError(f"pole: {what} vanishes")


def f_ab(p: ExtremalParams, z: Any) -> Any:
    zz = _disk_point(z)
    den = 1 + p.b * zz
    _pole_guard(den, "1 + b z")
    return _scalar_or_array(zz * (1 + (p.a + p.b) * zz / 2) / den**2)


def f_ab_deriv(p: ExtremalParams, z: Any) -> Any:
    zz = _disk_point(z)
    den = 1 + p.b * zz
    _pole_guard(den, "1 + b z")
    return _scalar_or_array((1 + p.a * zz) / den**3)


def f_ab_zlogderiv(p: ExtremalParams, z: Any) -> Any:
    """z f'(z) / f(z) through 2(1+az) / ((1+bz)(2+(a+b)z))."""
    zz = _disk_point(z)
    den_b = 1 + p.b * zz
    den_ab = 2 + (p.a + p.b) * zz
    _pole_guard(den_b, "1 + b z")
    _pole_guard(den_ab, "2 + (a+b) z")
    return _scalar_or_array(2 * (1 + p.a * zz) / (den_b * den_ab))


def close_to_convex_certificate(p: ExtremalParams, grid_n: int) -> CertificateReport:
    """Sample Re[e^{i lam} (1+az)/(1+bz)] over a polar grid of the disk.

    f'_{a,b} / g' = (1+az)/(1+bz) for the convex g(z) = z/(1+bz). lam = 0 is
    tried first; otherwise lam is centred on the sampled argument range.
    """
    if grid_n < 64:
        raise DomainError("certificate grid needs grid_n >= 64")
    radii = 0.999 * np.arange(1, grid_n + 1) / grid_n
    angles = 2.0 * math.pi * np.arange(grid_n) / grid_n
    z = np.concatenate([[0j], (radii[:, None] * np.exp(1j * angles[None, :])).ravel()])
    ratio = (1 + p.a * z) / (1 + p.b * z)

    k0 = int(np.argmin(ratio.real))
    min0 = float(ratio.real[k0])
    lam = 0.0
    rotated = ratio
    if min0 <= 0:
        args = np.angle(ratio)
        lam = -0.5 * (float(np.max(args)) + float(np.min(args)))
        rotated = np.exp(1j * lam) * ratio
    k = int(np.argmin(rotated.real))
    min_val = float(rotated.real[k])
    return CertificateReport(
        a=p.a,
        b=p.b,
        grid_n=grid_n,
        min_value_lambda0=min0,
        argmin_lambda0=complex(z[k0]),
        lam=lam,
        min_value=min_val,
        argmin=complex(z[k]),
        passed=bool(min_val > 0 and abs(lam) < math.pi / 2),
    )


def family_map(kind: Any, u: Any, v: Any, check_domain: bool = True) -> Any:
    """U: 2u^2/(u+v), W: 2u/(v(u+v)), V: u/v^3."""
    kind = FamilyKind(kind)
    uu = np.asarray(u, dtype=np.complex128)
    vv = np.asarray(v, dtype=np.complex128)
    require_finite(uu, "u")
    require_finite(vv, "v")
    if check_domain and (
        np.any(np.abs(uu - 1) > 1 + _UNIT_SLACK)
        or np.any(np.abs(vv - 1) > 1 + _UNIT_SLACK)
    ):
        raise DomainError("family parameters need |u-1| <= 1 and |v-1| <= 1")
    if kind is FamilyKind.V:
        _pole_guard(vv, "v")
        return _scalar_or_array(uu / vv**3)
    total = uu + vv
    _pole_guard(total, "u + v")
    if kind is FamilyKind.U:
        return _scalar_or_array(2 * uu**2 / total)
    _pole_guard(vv, "v")
    return _scalar_or_array(2 * uu / (vv * total))


def mobius_U_st(s: Any, t: Any) -> Any:
    """(1+s)^2 / (1+(s+t)/2), evaluated through family_map(U, 1+s, 1+t)."""
    ss = np.asarray(s, dtype=np.complex128)
    tt = np.asarray(t, dtype=np.complex128)
    return family_map(FamilyKind.U, 1 + ss, 1 + tt, check_domain=False)


def extremal_from_uv(u: complex, v: complex) -> tuple[ExtremalParams, float]:
    """(a, b, rho) with 1 + a rho = u and 1 + b rho = v."""
    rho = max(abs(u - 1), abs(v - 1))
    if rho == 0:
        return ExtremalParams(0j, 0j), 0.0
    if rho >= 1:
        raise DomainError("u and v must lie in the open disks |w-1| < 1")
    return ExtremalParams((u - 1) / rho, (v - 1) / rho), rho
