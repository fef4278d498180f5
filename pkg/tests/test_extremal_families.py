"""Tests for the extremal family f_{a,b} and the Mobius parametrizations."""

import numpy as np
import pytest

from extremal_families import (
    ExtremalParams,
    FamilyKind,
    close_to_convex_certificate,
    extremal_from_uv,
    f_ab,
    f_ab_deriv,
    f_ab_zlogderiv,
    family_map,
    mobius_U_st,
)
from geom_kernel import DomainError


class TestExtremalParams:
    def test_coerces_to_complex(self):
        p = ExtremalParams(1, 0)
        assert isinstance(p.a, complex)

    def test_rejects_outside_disk(self):
        with pytest.raises(DomainError):
            ExtremalParams(1.1, 0)

    def test_rejects_nan(self):
        with pytest.raises(DomainError):
            ExtremalParams(complex(float("nan"), 0), 0)


class TestExtremalFunction:
    def test_koebe_like_case(self):
        # a = b = 1 collapses to z/(1+z)
        p = ExtremalParams(1, 1)
        assert f_ab(p, 0.5) == pytest.approx(0.5 / 1.5)

    def test_normalization(self):
        p = ExtremalParams(0.3 - 0.4j, -0.9j)
        assert f_ab(p, 0.0) == 0
        assert f_ab_deriv(p, 0.0) == pytest.approx(1.0)

    def test_derivative_matches_finite_difference(self):
        p = ExtremalParams(0.6 + 0.2j, -0.5 + 0.5j)
        z, h = 0.3 + 0.2j, 1e-6
        fd = (f_ab(p, z + h) - f_ab(p, z - h)) / (2 * h)
        assert abs(fd - f_ab_deriv(p, z)) < 1e-8

    def test_zlogderiv_matches_direct(self):
        p = ExtremalParams(-0.7j, 0.8)
        z = 0.4 - 0.3j
        direct = z * f_ab_deriv(p, z) / f_ab(p, z)
        assert abs(f_ab_zlogderiv(p, z) - direct) < 1e-12

    def test_array_input(self):
        p = ExtremalParams(0.5, -0.5)
        out = f_ab_deriv(p, np.array([0.0, 0.1, 0.2]))
        assert out.shape == (3,)

    def test_outside_unit_disk(self):
        with pytest.raises(DomainError):
            f_ab(ExtremalParams(0, 0), 1.0)

    def test_pole_detected(self):
        with pytest.raises(DomainError):
            f_ab_zlogderiv(ExtremalParams(-1, -1), 0.999999999999999)


class TestCertificate:
    def test_lambda_zero_accepted(self):
        report = close_to_convex_certificate(ExtremalParams(1, -1), 64)
        assert report.passed
        assert report.lam == 0.0
        assert report.min_value_lambda0 > 0

    def test_rotation_needed(self):
        # (1+iz)/(1-z) maps the disk onto the half-plane -pi/4 < arg w < 3pi/4
        report = close_to_convex_certificate(ExtremalParams(1j, -1), 128)
        assert report.min_value_lambda0 < 0
        assert report.lam != 0.0
        assert report.passed
        assert report.min_value > 0

    def test_small_grid_rejected(self):
        with pytest.raises(DomainError):
            close_to_convex_certificate(ExtremalParams(0, 0), 8)

    def test_to_dict_is_plain(self):
        data = close_to_convex_certificate(ExtremalParams(0.5, 0.5j), 64).to_dict()
        assert data["a"] == [0.5, 0.0]
        assert isinstance(data["passed"], bool)


class TestFamilyMap:
    def test_u_at_extremes(self):
        assert family_map(FamilyKind.U, 1.5, 0.5) == pytest.approx(2.25)

    def test_w_is_zlogderiv(self):
        p = ExtremalParams(0.2 + 0.1j, -0.6)
        rho = 0.7
        w = family_map("W", 1 + p.a * rho, 1 + p.b * rho)
        assert w == pytest.approx(f_ab_zlogderiv(p, rho))

    def test_v_is_derivative(self):
        p = ExtremalParams(-0.4, 0.9j)
        rho = 0.6
        v = family_map(FamilyKind.V, 1 + p.a * rho, 1 + p.b * rho)
        assert v == pytest.approx(f_ab_deriv(p, rho))

    def test_domain_checked(self):
        with pytest.raises(DomainError):
            family_map(FamilyKind.U, 3.0, 1.0)

    def test_domain_check_can_be_skipped(self):
        value = family_map(FamilyKind.U, 3.0, 1.0, check_domain=False)
        assert value == pytest.approx(4.5)

    def test_mobius_form(self):
        s, t = 0.3 + 0.1j, -0.2j
        assert mobius_U_st(s, t) == pytest.approx((1 + s) ** 2 / (1 + (s + t) / 2))

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            family_map("X", 1.0, 1.0)


class TestExtremalFromUV:
    def test_roundtrip(self):
        u, v = 1 + 0.3j, 0.8 + 0.1j
        params, rho = extremal_from_uv(u, v)
        assert rho == pytest.approx(0.3)
        assert 1 + params.a * rho == pytest.approx(u)
        assert 1 + params.b * rho == pytest.approx(v)

    def test_origin(self):
        params, rho = extremal_from_uv(1, 1)
        assert rho == 0.0
        assert params.a == 0

    def test_outside(self):
        with pytest.raises(DomainError):
            extremal_from_uv(2.5, 1.0)
