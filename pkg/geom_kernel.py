import math
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np
from matplotlib.path import Path
from scipy.spatial import cKDTree

BOUNDARY_TOL = 1e-12
CURVATURE_ZERO = 1e-12
CLOSURE_TOL = 1e-12
_STEP_SLACK = 1e-12
_CHUNK = 2048


class GeometryError(ValueError):
    pass


class DomainError(GeometryError):
    pass


class ResolutionError(GeometryError):
    pass


class BracketError(GeometryError):
    pass


class BoundaryError(GeometryError):
    def __init__(self, message: str, distance: float):
        super().__init__(message)
        self.distance = float(distance)


@dataclass(frozen=True)
class Disk:
    center: complex
    radius: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.radius) or self.radius < 0:
            raise DomainError(f"disk radius must be finite and >= 0, got {self.radius}")
        if not np.isfinite(complex(self.center)):
            raise DomainError("disk center must be finite")


@dataclass(frozen=True, eq=False)
class Polyline:
    """Ordered samples of a curve together with their parameter values.

    Closed polylines are stored with implicit closure: the segment from the
    last vertex back to the first is part of the curve. A repeated endpoint
    (within CLOSURE_TOL) is tolerated and dropped when segments are built.
    """

    points: np.ndarray
    params: np.ndarray
    closed: bool = False

    def __post_init__(self) -> None:
        pts = np.asarray(self.points, dtype=np.complex128).ravel()
        prm = np.asarray(self.params, dtype=np.float64).ravel()
        if pts.size < 2:
            raise DomainError("a polyline needs at least 2 points")
        if pts.size != prm.size:
            raise DomainError(
                f"points/params length mismatch: {pts.size} != {prm.size}"
            )
        if not np.all(np.isfinite(pts)) or not np.all(np.isfinite(prm)):
            raise DomainError("polyline contains non-finite values")
        if np.any(np.diff(prm) <= 0):
            raise DomainError("polyline params must be strictly increasing")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "params", prm)

    def __len__(self) -> int:
        return int(self.points.size)

    def vertices(self) -> tuple[np.ndarray, np.ndarray]:
        """Vertices and params with a duplicated closing point removed."""
        pts, prm = self.points, self.params
        if self.closed and pts.size > 2 and abs(pts[-1] - pts[0]) <= CLOSURE_TOL:
            return pts[:-1], prm[:-1]
        return pts, prm

    def segments(self) -> tuple[np.ndarray, np.ndarray]:
        verts, _ = self.vertices()
        if self.closed:
            return verts, np.roll(verts, -1)
        return verts[:-1], verts[1:]


def _as_points(values: Any) -> np.ndarray:
    pts = getattr(values, "points", values)
    arr = np.asarray(pts, dtype=np.complex128)
    return np.atleast_1d(arr)


def require_finite(z: Any, name: str = "value") -> None:
    if not np.all(np.isfinite(np.asarray(z))):
        raise DomainError(f"{name} must be finite")


def principal_log(z: Any) -> Any:
    """Log z with Im in (-pi, pi]; works on scalars and arrays."""
    arr = np.asarray(z, dtype=np.complex128)
    require_finite(arr, "log argument")
    if np.any(arr == 0):
        raise DomainError("logarithm of zero")
    out = np.log(arr)
    # np.log gives -pi on the negative axis when the imaginary part is -0.0
    out = np.where(out.imag == -math.pi, out.real + 1j * math.pi, out)
    if out.ndim == 0:
        return complex(out)
    return out


def track_log(values: Any, base: Any = 0.0) -> np.ndarray:
    """Branch-tracked logarithm along the last axis of ``values``.

    Each step adds the branch of log nearest to the previous value, which is
    Arg of the ratio of consecutive samples. ``base`` is the log assigned to
    the first sample of every row.
    """
    vals = np.asarray(values, dtype=np.complex128)
    require_finite(vals, "path")
    if np.any(vals == 0):
        raise DomainError("path passes through zero")
    steps = np.angle(vals[..., 1:] / vals[..., :-1])
    if steps.size and np.max(np.abs(steps)) >= math.pi - _STEP_SLACK:
        raise ResolutionError(
            "angular step along the path reaches pi; sample the path densely"
        )
    base_arr = np.asarray(base, dtype=np.complex128)
    if base_arr.ndim:
        base_arr = base_arr[..., np.newaxis]
    mag = np.log(np.abs(vals))
    imag = np.concatenate(
        [np.zeros(vals.shape[:-1] + (1,)), np.cumsum(steps, axis=-1)], axis=-1
    )
    real = mag - mag[..., :1]
    return base_arr + real + 1j * imag


def continuous_log_along(path: Polyline, base_value: complex) -> Polyline:
    base = complex(base_value)
    require_finite(base, "base_value")
    first = path.points[0]
    if first == 0:
        raise DomainError("path passes through zero")
    if abs(np.exp(base) - first) > 1e-9 * abs(first):
        raise DomainError("base_value is not a logarithm of the first path point")
    logs = track_log(path.points, base)
    return Polyline(points=logs, params=path.params.copy(), closed=False)


def distance_to_polyline(points: Any, curve: Polyline) -> np.ndarray:
    pts = _as_points(points)
    a, b = curve.segments()
    ab = b - a
    len2 = np.abs(ab) ** 2
    len2 = np.where(len2 == 0, 1.0, len2)
    out = np.empty(pts.size, dtype=np.float64)
    for start in range(0, pts.size, _CHUNK):
        p = pts[start : start + _CHUNK, np.newaxis]
        t = np.clip(((p - a) * np.conj(ab)).real / len2, 0.0, 1.0)
        out[start : start + _CHUNK] = np.min(np.abs(a + t * ab - p), axis=1)
    return out


def winding_numbers(points: Any, curve: Polyline) -> np.ndarray:
    """Winding numbers of many points, without the boundary check."""
    if not curve.closed:
        raise DomainError("winding number needs a closed curve")
    pts = _as_points(points)
    a, b = curve.segments()
    out = np.empty(pts.size, dtype=np.int64)
    for start in range(0, pts.size, _CHUNK):
        p = pts[start : start + _CHUNK, np.newaxis]
        with np.errstate(divide="ignore", invalid="ignore"):
            turn = np.angle((b - p) / (a - p)).sum(axis=1)
        out[start : start + _CHUNK] = np.rint(turn / (2.0 * math.pi)).astype(np.int64)
    return out


def winding_number(p: complex, curve: Polyline) -> int:
    point = complex(p)
    require_finite(point, "point")
    dist = float(distance_to_polyline([point], curve)[0])
    if dist <= BOUNDARY_TOL:
        raise BoundaryError(
            f"point {point} lies on the curve (distance {dist:.3e})", dist
        )
    return int(winding_numbers([point], curve)[0])


def points_inside(points: Any, curve: Polyline, inflate: float) -> np.ndarray:
    """Bulk nonzero-winding membership for a closed curve inflated by ``inflate``.

    matplotlib's even-odd test settles most points. Points it rejects are
    inside when they lie within ``inflate`` of the curve or when the curve
    winds around them, which happens where the curve overlaps itself.
    """
    pts = _as_points(points)
    verts, _ = curve.vertices()
    ring = np.append(verts, verts[0])
    path = Path(np.column_stack([ring.real, ring.imag]), closed=True)
    inside = path.contains_points(np.column_stack([pts.real, pts.imag]))
    outside = np.flatnonzero(~inside)
    if outside.size:
        near = distance_to_polyline(pts[outside], curve) <= inflate
        inside[outside[near]] = True
        rest = outside[~near]
        if rest.size:
            inside[rest] = winding_numbers(pts[rest], curve) != 0
    return inside


def directed_hausdorff(a: Any, b: Any) -> float:
    pa, pb = _as_points(a), _as_points(b)
    if pa.size == 0 or pb.size == 0:
        raise DomainError("hausdorff distance of an empty set")
    require_finite(pa, "cloud")
    require_finite(pb, "cloud")
    tree = cKDTree(np.column_stack([pb.real, pb.imag]))
    dist, _ = tree.query(np.column_stack([pa.real, pa.imag]))
    return float(np.max(dist))


def hausdorff(a: Any, b: Any) -> float:
    return max(directed_hausdorff(a, b), directed_hausdorff(b, a))


def _turn_cross(curve: Polyline) -> tuple[np.ndarray, np.ndarray]:
    verts, params = curve.vertices()
    edges = np.roll(verts, -1) - verts
    if np.any(np.abs(edges) == 0):
        raise ResolutionError("curve has duplicate consecutive vertices")
    nxt = np.roll(edges, -1)
    cross = (np.conj(edges) * nxt).imag
    # cross[k] is the turn at vertex k+1
    return cross, np.roll(params, -1)


def curvature_sign_changes(curve: Polyline) -> list[float]:
    if not curve.closed:
        raise DomainError("curvature analysis needs a closed curve")
    verts, _ = curve.vertices()
    if verts.size < 16:
        raise ResolutionError("curvature analysis needs at least 16 samples")
    cross, at = _turn_cross(curve)
    keep = np.abs(cross) >= CURVATURE_ZERO
    signs = np.sign(cross[keep])
    where = at[keep]
    if signs.size < 2:
        return []
    flips = np.flatnonzero(signs != np.roll(signs, 1))
    return [float(where[k]) for k in flips]


def is_simple_polyline(curve: Polyline) -> bool:
    """True when no two non-adjacent segments cross."""
    a, b = curve.segments()
    n = a.size
    d = b - a

    def orient(p: np.ndarray, q: np.ndarray, r: np.ndarray) -> np.ndarray:
        return (np.conj(q - p) * (r - p)).imag

    o1 = orient(a[:, None], b[:, None], a[None, :])
    o2 = orient(a[:, None], b[:, None], b[None, :])
    o3 = orient(a[None, :], b[None, :], a[:, None])
    o4 = orient(a[None, :], b[None, :], b[:, None])
    # orientations below rounding level count as collinear, not crossing
    eps = 1e-12 * max(1.0, float(np.max(np.abs(a)))) * float(np.max(np.abs(d)))
    firm = (np.minimum(np.abs(o1), np.abs(o2)) > eps) & (
        np.minimum(np.abs(o3), np.abs(o4)) > eps
    )
    cross = (o1 * o2 < 0) & (o3 * o4 < 0) & firm
    idx = np.arange(n)
    gap = np.abs(idx[:, None] - idx[None, :])
    adjacent = gap <= 1
    if curve.closed:
        adjacent |= gap == n - 1
    return not bool(np.any(cross & ~adjacent))


def bisect(f: Callable[[float], float], lo: float, hi: float, tol: float) -> float:
    if not (tol > 0):
        raise DomainError("bisection tolerance must be positive")
    flo, fhi = float(f(lo)), float(f(hi))
    if flo == 0.0:
        return float(lo)
    if fhi == 0.0:
        return float(hi)
    if not (math.isfinite(flo) and math.isfinite(fhi)) or flo * fhi > 0:
        raise BracketError(f"no sign change on [{lo}, {hi}]: f={flo:.3e}, {fhi:.3e}")
    for _ in range(400):
        mid = 0.5 * (lo + hi)
        if 0.5 * (hi - lo) <= tol:
            return mid
        fmid = float(f(mid))
        if fmid == 0.0:
            return mid
        if (fmid < 0) == (flo < 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def polar_disk_grid(center: complex, radius: float, n: int) -> np.ndarray:
    """Polar sample grid of a closed disk; the boundary circle gets n points."""
    if n < 8:
        raise DomainError("disk grid needs at least 8 boundary samples")
    rings = max(2, min(4, n // 16))
    pts: list[np.ndarray] = [np.array([0j])]
    for k in range(1, rings + 1):
        count = max(8, int(round(n * k / rings)))
        ang = 2.0 * math.pi * np.arange(count) / count
        pts.append(radius * k / rings * np.exp(1j * ang))
    return complex(center) + np.concatenate(pts)
