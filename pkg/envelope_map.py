"""The non-analytic map F, its logarithm G and the auxiliary real functions
used to show that G is univalent on the unit disk."""

import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from geom_kernel import Disk, DomainError, bisect, require_finite

DEN_TOL = 1e-14
FD_STEP = 1e-6
ROOT_TOL = 1e-12


@dataclass(frozen=True)
class WirtingerPair:
    d_z: Any
    d_zbar: Any


@dataclass(frozen=True)
class CriticalAngles:
    x_minus: float
    x_star: float
    x_plus: float


def _out(arr: np.ndarray) -> Any:
    if arr.ndim == 0:
        return complex(arr) if np.iscomplexobj(arr) else float(arr)
    return arr


def _check_radius(r: float) -> float:
    r = float(r)
    if not (0.0 < r < 1.0):
        raise DomainError(f"radius must satisfy 0 < r < 1, got {r}")
    return r


def _closed_disk(z: Any) -> np.ndarray:
    arr = np.asarray(z, dtype=np.complex128)
    require_finite(arr, "z")
    if np.any(np.abs(arr) > 1 + 1e-12):
        raise DomainError("F is defined on the closed unit disk")
    return arr


def _open_disk(z: Any) -> np.ndarray:
    arr = np.asarray(z, dtype=np.complex128)
    require_finite(arr, "z")
    if np.any(np.abs(arr) >= 1):
        raise DomainError("G is evaluated on the open unit disk only")
    return arr


def _denominator(z: np.ndarray) -> np.ndarray:
    den = 3 + 3 * z + np.conj(z) + z * z
    if np.any(np.abs(den) <= DEN_TOL):
        raise DomainError("denominator 3+3z+conj(z)+z^2 vanishes")
    return den


def F_eval(z: Any) -> Any:
    """F(z) = (3+conj z)(1+z)^3 / (3+3z+conj z+z^2)."""
    zz = _closed_disk(z)
    return _out((3 + np.conj(zz)) * (1 + zz) ** 3 / _denominator(zz))


def F_alt_eval(z: Any) -> Any:
    zz = _closed_disk(z)
    den = 1 + zz * (3 + zz) / (3 + np.conj(zz))
    if np.any(np.abs(den) <= DEN_TOL):
        raise DomainError("denominator 1+z(3+z)/(3+conj z) vanishes")
    return _out((1 + zz) ** 3 / den)


def G_eval(z: Any) -> Any:
    """Branch of log F with G(0) = 0: 3 Log(1+z) - Log(1+z e^{2i phi})."""
    zz = _open_disk(z)
    phi = np.angle(3 + zz)
    return _out(3 * np.log(1 + zz) - np.log(1 + zz * np.exp(2j * phi)))


def G_wirtinger(z: Any) -> WirtingerPair:
    zz = _open_disk(z)
    den = _denominator(zz)
    d_z = (6 + 4 * zz + 3 * np.conj(zz) + zz * zz) / ((1 + zz) * den)
    d_zbar = zz * (3 + zz) / ((3 + np.conj(zz)) * den)
    return WirtingerPair(_out(d_z), _out(d_zbar))


def jacobian_G(z: Any) -> Any:
    pair = G_wirtinger(z)
    return _out(np.abs(pair.d_z) ** 2 - np.abs(pair.d_zbar) ** 2)


def jacobian_numerator(z: Any) -> tuple[Any, Any]:
    """|6+4z+3conj z+z^2|^2 - |z(1+z)|^2, raw and in factored form."""
    zz = np.asarray(z, dtype=np.complex128)
    raw = np.abs(6 + 4 * zz + 3 * np.conj(zz) + zz * zz) ** 2 - np.abs(
        zz * (1 + zz)
    ) ** 2
    c = 1 + zz.real
    factored = 12 * c * (2 * c * c + 1 - np.abs(zz) ** 2)
    return _out(raw), _out(factored)


def phi_and_h(r: float, theta: Any) -> tuple[Any, Any]:
    th = np.asarray(theta, dtype=np.float64)
    phi = np.angle(3 + r * np.exp(1j * th))
    return _out(phi), _out(th + 2 * phi)


def dphi_dtheta(r: float, theta: Any) -> Any:
    c = np.cos(np.asarray(theta, dtype=np.float64))
    return _out(r * (3 * c + r) / (9 + 6 * r * c + r * r))


def h_prime(r: float, theta: Any) -> Any:
    c = np.cos(np.asarray(theta, dtype=np.float64))
    return _out(3 * (3 + 4 * r * c + r * r) / (9 + 6 * r * c + r * r))


def Phi_r(r: float, x: Any) -> Any:
    """Arg(1 + r e^{ix})."""
    xx = np.asarray(x, dtype=np.float64)
    return _out(np.angle(1 + r * np.exp(1j * xx)))


def dPhi_r(r: float, x: Any) -> Any:
    c = np.cos(np.asarray(x, dtype=np.float64))
    return _out(r * (r + c) / (1 + 2 * r * c + r * r))


def g_r(r: float, theta: Any) -> Any:
    """Im G(r e^{i theta}) = 3 Phi_r(theta) - Phi_r(theta + 2 phi)."""
    _check_radius(r)
    th = np.asarray(theta, dtype=np.float64)
    _, h = phi_and_h(r, th)
    return _out(3 * np.asarray(Phi_r(r, th)) - np.asarray(Phi_r(r, h)))


def H_rt(r: float, theta: Any) -> Any:
    th = np.asarray(theta, dtype=np.float64)
    c, s = np.cos(th), np.sin(th)
    return _out(9 + 12 * r * c - 4 * r**2 * s**2 - 4 * r**3 * c - r**4)


def K_rt(r: float, theta: Any) -> Any:
    c = np.cos(np.asarray(theta, dtype=np.float64))
    return _out(
        9 - 2 * r**2 + r**4 + 24 * r * c + 24 * r**2 * c**2 + 8 * r**3 * c**3
    )


def dReG_dtheta(r: float, theta: Any) -> Any:
    _check_radius(r)
    th = np.asarray(theta, dtype=np.float64)
    c, s = np.cos(th), np.sin(th)
    num = 6 * r * s * (3 + 4 * r * c + r**2 * np.cos(2 * th)) * H_rt(r, th)
    den = (1 + 2 * r * c + r**2) * (9 + 6 * r * c + r**2) * K_rt(r, th)
    return _out(-num / den)


def ReG_on_circle(r: float, theta: Any) -> Any:
    th = np.asarray(theta, dtype=np.float64)
    return _out(np.asarray(G_eval(r * np.exp(1j * th))).real)


def dg_r_dtheta(r: float, theta: Any, step: float = FD_STEP) -> Any:
    th = np.asarray(theta, dtype=np.float64)
    ahead = np.asarray(g_r(r, th + step))
    behind = np.asarray(g_r(r, th - step))
    return _out((ahead - behind) / (2 * step))


def dg_r_dtheta_closed(r: float, theta: Any) -> Any:
    """3 Phi_r'(theta) - (1 + 2 phi') Phi_r'(theta + 2 phi)."""
    _check_radius(r)
    th = np.asarray(theta, dtype=np.float64)
    _, h = phi_and_h(r, th)
    dphi = np.asarray(dphi_dtheta(r, th))
    outer = np.asarray(dPhi_r(r, h))
    return _out(3 * np.asarray(dPhi_r(r, th)) - (1 + 2 * dphi) * outer)


def dg_r_lower_bound(r: float, theta: Any) -> Any:
    th = np.asarray(theta, dtype=np.float64)
    return _out(2 * (1 - np.asarray(dphi_dtheta(r, th))) * np.asarray(dPhi_r(r, th)))


def critical_angles(r: float) -> CriticalAngles:
    """x_r = pi - arccos r and the two roots of 3 Phi_r(x) = arcsin r."""
    r = _check_radius(r)
    x_star = math.pi - math.acos(r)
    peak = math.asin(r)

    def excess(x: float) -> float:
        return 3 * float(Phi_r(r, x)) - peak

    x_minus = bisect(excess, 0.0, x_star, ROOT_TOL)
    x_plus = bisect(excess, x_star, math.pi, ROOT_TOL)
    return CriticalAngles(x_minus=x_minus, x_star=x_star, x_plus=x_plus)


def envelope_circle(r: float, alpha: float) -> Disk:
    """The disk Delta_s, s = r e^{i alpha}, covering part of 1/U_r."""
    r = _check_radius(r)
    s = r * complex(math.cos(alpha), math.sin(alpha))
    center = (2 - s) / (2 * (1 - s) ** 2)
    return Disk(center=center, radius=r / (2 * abs(1 - s) ** 2))


def envelope_point(r: float, alpha: float) -> complex:
    """Point of the outer envelope of the circles Delta_s: 1 / F(-s)."""
    r = _check_radius(r)
    s = r * complex(math.cos(alpha), math.sin(alpha))
    return 1 / complex(F_eval(-s))


def envelope_tangency_residual(r: float, alpha: float) -> float:
    """Re[c'(alpha) e^{-i beta}] + rho'(alpha), beta taken from the envelope point."""
    r = _check_radius(r)
    s = r * complex(math.cos(alpha), math.sin(alpha))
    disk = envelope_circle(r, alpha)
    zeta = envelope_point(r, alpha)
    direction = (zeta - disk.center) / disk.radius
    dc = 1j * s * (3 - s) / (2 * (1 - s) ** 3)
    drho = -(r**2) * math.sin(alpha) / abs(1 - s) ** 4
    return float((dc * direction.conjugate()).real + drho)


def envelope_extremality(r: float, alpha: float, eps: float) -> float:
    """max over alpha +- eps of dist(zeta(alpha), circle) / (2 eps)."""
    zeta = envelope_point(r, alpha)
    worst = 0.0
    for shifted in (alpha - eps, alpha + eps):
        disk = envelope_circle(r, shifted)
        worst = max(worst, abs(abs(zeta - disk.center) - disk.radius))
    return worst / (2 * eps)
