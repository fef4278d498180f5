"""Tests for the geometry kernel."""

import math

import numpy as np
import pytest

from geom_kernel import (
    BoundaryError,
    BracketError,
    DomainError,
    Disk,
    Polyline,
    ResolutionError,
    bisect,
    continuous_log_along,
    curvature_sign_changes,
    directed_hausdorff,
    distance_to_polyline,
    hausdorff,
    is_simple_polyline,
    points_inside,
    polar_disk_grid,
    principal_log,
    track_log,
    winding_number,
    winding_numbers,
)
from region_builder import limit_curve_gamma


def _circle(n: int = 256, radius: float = 1.0, center: complex = 0j) -> Polyline:
    t = 2.0 * math.pi * np.arange(n) / n
    return Polyline(points=center + radius * np.exp(1j * t), params=t, closed=True)


def _square() -> Polyline:
    pts = np.array([0, 1, 1 + 1j, 1j], dtype=complex)
    return Polyline(points=pts, params=np.arange(4.0), closed=True)


class TestPolyline:
    def test_rejects_single_point(self):
        with pytest.raises(DomainError):
            Polyline(points=np.array([0j]), params=np.array([0.0]))

    def test_rejects_length_mismatch(self):
        with pytest.raises(DomainError):
            Polyline(points=np.array([0j, 1j]), params=np.array([0.0]))

    def test_rejects_non_increasing_params(self):
        with pytest.raises(DomainError):
            Polyline(points=np.array([0j, 1j, 2j]), params=np.array([0.0, 1.0, 1.0]))

    def test_rejects_nan(self):
        with pytest.raises(DomainError):
            Polyline(points=np.array([0j, complex(math.nan, 0)]), params=np.arange(2.0))

    def test_repeated_closing_point_dropped(self):
        pts = np.array([0, 1, 1j, 0], dtype=complex)
        curve = Polyline(points=pts, params=np.arange(4.0), closed=True)
        verts, _ = curve.vertices()
        assert verts.size == 3

    def test_closed_segments_wrap(self):
        a, b = _square().segments()
        assert a.size == 4
        assert b[-1] == 0


class TestDisk:
    def test_negative_radius(self):
        with pytest.raises(DomainError):
            Disk(center=0j, radius=-1.0)


class TestLogs:
    def test_principal_log_negative_axis(self):
        assert principal_log(complex(-1.0, -0.0)).imag == pytest.approx(math.pi)

    def test_principal_log_zero(self):
        with pytest.raises(DomainError):
            principal_log(0j)

    def test_exp_inverts_principal_log(self):
        rng = np.random.default_rng(3)
        mod = 10.0 ** rng.uniform(-6.0, 6.0, 10_000)
        z = mod * np.exp(1j * rng.uniform(-math.pi, math.pi, 10_000))
        logs = principal_log(z)
        assert np.max(np.abs(np.exp(logs) - z) / np.abs(z)) <= 1e-14
        assert np.all((logs.imag > -math.pi) & (logs.imag <= math.pi))

    def test_track_log_full_turn(self):
        t = np.linspace(0.0, 2.0 * math.pi, 65)
        logs = track_log(np.exp(1j * t))
        assert logs[-1].imag == pytest.approx(2.0 * math.pi)
        assert abs(logs[-1].real) < 1e-12

    def test_track_log_coarse_step_raises(self):
        with pytest.raises(ResolutionError):
            track_log(np.array([1.0, -1.0 + 1e-20j]))

    def test_track_log_through_zero(self):
        with pytest.raises(DomainError):
            track_log(np.array([1.0, 0.0]))

    def test_continuous_log_checks_base(self):
        path = Polyline(points=np.array([1.0, 1j]), params=np.arange(2.0))
        with pytest.raises(DomainError):
            continuous_log_along(path, 1.0)

    def test_continuous_log_two_turns(self):
        t = np.linspace(0.0, 4.0 * math.pi, 200)
        path = Polyline(points=2.0 * np.exp(1j * t), params=t)
        logs = continuous_log_along(path, math.log(2.0))
        assert logs.points[-1].imag == pytest.approx(4.0 * math.pi)

    def test_loop_not_around_zero_returns_to_base(self):
        t = np.linspace(0.0, 2.0 * math.pi, 257)
        path = Polyline(points=3 + np.exp(1j * t), params=t)
        logs = continuous_log_along(path, math.log(4.0))
        assert abs(logs.points[-1] - math.log(4.0)) <= 1e-10


class TestWinding:
    def test_center_of_circle(self):
        assert winding_number(0j, _circle()) == 1

    def test_outside(self):
        assert winding_number(3.0, _circle()) == 0

    def test_double_loop(self):
        t = np.linspace(0.0, 4.0 * math.pi, 512, endpoint=False)
        curve = Polyline(points=np.exp(1j * t), params=t, closed=True)
        assert int(winding_numbers([0j], curve)[0]) == 2

    def test_stable_under_resampling(self):
        def limacon(n: int) -> Polyline:
            t = 2.0 * math.pi * np.arange(n) / n
            rho = 1 + 0.8 * np.cos(t)
            return Polyline(points=rho * np.exp(1j * t), params=t, closed=True)

        coarse, fine = limacon(256), limacon(512)
        rng = np.random.default_rng(17)
        samples = rng.uniform(-1.0, 2.5, 1000) + 1j * rng.uniform(-1.5, 1.5, 1000)
        clear = (distance_to_polyline(samples, coarse) > 1e-2) & (
            distance_to_polyline(samples, fine) > 1e-2
        )
        samples = samples[clear]
        assert samples.size > 500
        assert np.array_equal(
            winding_numbers(samples, coarse), winding_numbers(samples, fine)
        )

    def test_on_curve_raises(self):
        with pytest.raises(BoundaryError) as info:
            winding_number(0.5, _square())
        assert info.value.distance == pytest.approx(0.0, abs=1e-12)

    def test_open_curve_rejected(self):
        with pytest.raises(DomainError):
            open_curve = Polyline(points=np.array([0j, 1j]), params=np.arange(2.0))
            winding_numbers([0j], open_curve)


class TestDistances:
    def test_distance_to_square(self):
        d = distance_to_polyline([0.5 + 0.5j, 2.0], _square())
        assert d[0] == pytest.approx(0.5)
        assert d[1] == pytest.approx(1.0)

    def test_points_inside_with_inflation(self):
        pts = np.array([0.5 + 0.5j, 1.0 + 1e-10 + 0.5j, 1.1 + 0.5j])
        inside = points_inside(pts, _square(), 1e-9)
        assert inside.tolist() == [True, True, False]

    def test_points_inside_double_cover(self):
        t = np.linspace(0.0, 4.0 * math.pi, 512, endpoint=False)
        rho = 1 + 0.1 * np.cos(t / 2)
        curve = Polyline(points=rho * np.exp(1j * t), params=t, closed=True)
        # even-odd calls the centre outside; the curve winds twice around it
        assert points_inside([0j, 0.5 + 0j, 3 + 0j], curve, 0.0).tolist() == [
            True,
            True,
            False,
        ]

    def test_hausdorff_symmetric_and_triangle(self):
        rng = np.random.default_rng(29)
        for _ in range(20):
            a, b, c = (
                rng.normal(size=40) + 1j * rng.normal(size=40) for _ in range(3)
            )
            assert hausdorff(a, b) == hausdorff(b, a)
            assert hausdorff(a, c) <= hausdorff(a, b) + hausdorff(b, c) + 1e-12

    def test_rotated_circle_within_chord_bound(self):
        t = 2.0 * math.pi * np.arange(512) / 512
        a = np.exp(1j * t)
        b = np.exp(1j * (t + math.pi / 512))
        assert hausdorff(a, b) <= 2.0 * math.pi / 512

    def test_hausdorff_of_shifted_sets(self):
        a = np.array([0j, 1 + 0j])
        b = a + 0.25j
        assert hausdorff(a, b) == pytest.approx(0.25)

    def test_directed_is_one_sided(self):
        a = np.array([0j])
        b = np.array([0j, 10 + 0j])
        assert directed_hausdorff(a, b) == 0.0
        assert directed_hausdorff(b, a) == pytest.approx(10.0)

    def test_empty_set(self):
        with pytest.raises(DomainError):
            hausdorff(np.array([], dtype=complex), np.array([0j]))


class TestShape:
    def test_circle_has_no_curvature_flips(self):
        assert curvature_sign_changes(_circle()) == []

    def test_limacon_has_flips(self):
        t = 2.0 * math.pi * np.arange(512) / 512
        rho = 1 + 0.8 * np.cos(t)
        curve = Polyline(points=rho * np.exp(1j * t) + 3, params=t, closed=True)
        assert curvature_sign_changes(curve)

    def test_gamma_flips_where_cos_t_is_minus_a_third(self):
        t = np.linspace(-2.0 * math.pi + 0.05, 2.0 * math.pi - 0.05, 4096)
        pts = np.asarray(limit_curve_gamma(t))
        flips = curvature_sign_changes(Polyline(points=pts, params=t, closed=True))
        edge = math.acos(-1.0 / 3.0)
        for target in (-edge, edge):
            assert min(abs(p - target) for p in flips) < 0.01

    def test_too_few_samples(self):
        with pytest.raises(ResolutionError):
            curvature_sign_changes(_circle(8))

    def test_simple(self):
        assert is_simple_polyline(_circle())

    def test_figure_eight_not_simple(self):
        t = 2.0 * math.pi * (np.arange(256) + 0.5) / 256
        pts = np.sin(t) + 1j * np.sin(t) * np.cos(t)
        curve = Polyline(points=pts, params=t, closed=True)
        assert not is_simple_polyline(curve)


class TestBisect:
    def test_sqrt_two(self):
        root = bisect(lambda x: x * x - 2.0, 0.0, 2.0, 1e-12)
        assert root == pytest.approx(math.sqrt(2.0), abs=1e-12)

    def test_no_sign_change(self):
        with pytest.raises(BracketError):
            bisect(lambda x: x * x + 1.0, -1.0, 1.0, 1e-9)

    def test_bad_tolerance(self):
        with pytest.raises(DomainError):
            bisect(lambda x: x, -1.0, 1.0, 0.0)


class TestPolarDiskGrid:
    def test_includes_center_and_rim(self):
        pts = polar_disk_grid(1 + 0j, 0.5, 32)
        assert pts[0] == 1 + 0j
        assert np.max(np.abs(pts - 1)) == pytest.approx(0.5)

    def test_rim_count(self):
        pts = polar_disk_grid(0j, 1.0, 64)
        rim = np.isclose(np.abs(pts), 1.0)
        assert int(np.count_nonzero(rim)) == 64

    def test_too_small(self):
        with pytest.raises(DomainError):
            polar_disk_grid(0j, 1.0, 4)
